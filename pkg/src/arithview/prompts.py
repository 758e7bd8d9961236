"""Prompt wrappers used when emitting questions for specific model families."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PromptWrapper:
    name: str
    prefix: str = ""
    suffix: str = ""


BUILTIN_WRAPPERS = {
    w.name: w
    for w in (
        PromptWrapper("none"),
        PromptWrapper("t0_trivia", prefix="Answer the following question. "),
        PromptWrapper("webqa", prefix="Question: ", suffix=" Answer: "),
        PromptWrapper("flan_trivia", prefix="Please answer this question: "),
        PromptWrapper("nt5", prefix="answer_me: "),
    )
}


def get_wrapper(name: str) -> PromptWrapper:
    if name not in BUILTIN_WRAPPERS:
        raise KeyError(f"unknown prompt wrapper {name!r}; known: {sorted(BUILTIN_WRAPPERS)}")
    return BUILTIN_WRAPPERS[name]


def wrap_prompt(question: str, wrapper: PromptWrapper) -> str:
    return wrapper.prefix + question + wrapper.suffix


def unwrap_prompt(text: str, wrapper: PromptWrapper) -> str:
    """Strip the wrapper's prefix and suffix back off a wrapped question."""
    if wrapper.prefix and text.startswith(wrapper.prefix):
        text = text[len(wrapper.prefix):]
    if wrapper.suffix and text.endswith(wrapper.suffix):
        text = text[: len(text) - len(wrapper.suffix)]
    return text
