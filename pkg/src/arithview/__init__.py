"""Multi-view arithmetic word-problem toolkit.

Generates evaluation suites that vary how numbers are written, builds
template-based training sets under exact answer constraints, classifies test
expressions by training-data overlap, and scores model prediction files per
view.
"""

from .aspects import (
    Aspect,
    AspectSkip,
    CorpusError,
    EvalSuite,
    Instance,
    PlacedNumber,
    SeedInstance,
    default_registry,
    expand_instance,
    expand_suite,
    validate_seed_corpus,
)
from .dependency import DependencyClass, TrainingIndex, breakdown, classify, match_level
from .exact import Rational, is_terminating, to_decimal_string, within_digit_limit
from .expressions import (
    EVAL_SHAPES,
    EXPERT_SHAPES,
    Expression,
    ExpressionError,
    OperationSignature,
    TEMPLATE_SHAPES,
    bind,
    canonicalize,
    commuted_variants,
    evaluate,
    op_signature,
    parse_expression,
    serialize,
)
from .numbers import (
    NumberFormatError,
    NumberLiteral,
    NumberTypeSpec,
    gen_number,
    parse_number,
    render,
    shift_magnitude,
    to_words,
    words_to_int,
)
from .prompts import BUILTIN_WRAPPERS, PromptWrapper, unwrap_prompt, wrap_prompt
from .records import (
    RunConfig,
    SchemaError,
    load_instances,
    load_predictions,
    load_seeds,
    load_templates,
)
from .sampling import AnswerConstraint, SamplingError, sample_bindings
from .scoring import (
    ScoreReport,
    ScoringError,
    diagnose_magnitude,
    extract_answer,
    is_correct,
    score_predictions,
)
from .templates import Recipe, Template, build_recipe, instantiate, inventory, standard_recipe

__version__ = "0.1.0"
