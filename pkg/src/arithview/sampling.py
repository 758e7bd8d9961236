"""Constraint-aware sampling of numbers for expression shapes.

Rejection sampling alone cannot hit terminating quotients or the answer digit
cap in bounded time, so division nodes are built constructively: the divisor
is drawn first, an integer quotient is chosen from the feasible range, and the
dividend subtree is forced to the exact product.  Everything else is sampled
freely with upper caps threaded through multiplication chains.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import MAX_ANSWER_DIGITS, is_terminating, within_digit_limit
from .expressions import ADD, DIV, MUL, SUB, BinOp, Expression, Node, Slot, bind, intermediate_values
from .numbers import NumberLiteral, NumberTypeSpec, literal_from_units


class SamplingError(RuntimeError):
    """No constraint-satisfying assignment found within the retry budget."""


class _Infeasible(Exception):
    pass


@dataclass(frozen=True)
class AnswerConstraint:
    """Gold-answer requirements enforced during generation."""

    max_digits: int = MAX_ANSWER_DIGITS
    require_terminating: bool = True
    require_nonnegative_answer: bool = True
    require_nonnegative_intermediates: bool = True


DEFAULT_CONSTRAINT = AnswerConstraint()


Grid = tuple[int, int, int]  # (lo_units, hi_units, scale); value = units / 10**scale


def _as_grid(spec: NumberTypeSpec | Grid) -> Grid:
    if isinstance(spec, NumberTypeSpec):
        return (spec.lo_units, spec.hi_units, spec.scale)
    return spec


class _ShapeSampler:
    def __init__(self, grid: Grid, rng: random.Random, constraint: AnswerConstraint):
        self.lo_u, self.hi_u, self.scale = grid
        if self.lo_u < 0 or self.lo_u > self.hi_u:
            raise ValueError(f"bad sampling grid {grid}")
        self.denom = 10**self.scale
        self.lo = Fraction(self.lo_u, self.denom)
        self.hi = Fraction(self.hi_u, self.denom)
        self.rng = rng
        self.constraint = constraint
        self.cap: Fraction | None = Fraction(10**constraint.max_digits)
        self.assigned: dict[int, int] = {}

    # -- leaf helpers ------------------------------------------------------

    def _leaf_units(self, node: Node, lo_v: Fraction, hi_v: Fraction) -> Fraction:
        if not isinstance(node, Slot):
            raise _Infeasible
        lo_units = max(self.lo_u, math.ceil(lo_v * self.denom))
        hi_units = min(self.hi_u, math.floor(hi_v * self.denom))
        if lo_units > hi_units:
            raise _Infeasible
        units = self.rng.randint(lo_units, hi_units)
        self._assign(node.index, units)
        return Fraction(units, self.denom)

    def _assign(self, slot: int, units: int) -> None:
        if slot in self.assigned:
            raise _Infeasible
        self.assigned[slot] = units

    # -- bounds ------------------------------------------------------------

    def _natural(self, node: Node) -> tuple[Fraction, Fraction]:
        if not isinstance(node, BinOp):
            return (self.lo, self.hi)
        llo, lhi = self._natural(node.left)
        rlo, rhi = self._natural(node.right)
        if node.op == ADD:
            return (llo + rlo, lhi + rhi)
        if node.op == SUB:
            lo = max(Fraction(0), llo - rhi) if self.constraint.require_nonnegative_intermediates else llo - rhi
            return (lo, lhi - rlo)
        if node.op == MUL:
            return (llo * rlo, lhi * rhi)
        return (Fraction(0), lhi)  # DIV: loose; not used as a dividend in the taxonomy

    # -- forcing a subtree to an exact value --------------------------------

    def _force(self, node: Node, target: Fraction) -> None:
        if isinstance(node, Slot):
            units = target * self.denom
            if units.denominator != 1 or not self.lo_u <= units.numerator <= self.hi_u:
                raise _Infeasible
            self._assign(node.index, units.numerator)
            return
        if not isinstance(node, BinOp):
            raise _Infeasible
        if node.op == ADD:
            llo, lhi = self._natural(node.left)
            rlo, rhi = self._natural(node.right)
            left = self._pick(max(llo, target - rhi), min(lhi, target - rlo))
            self._force(node.left, left)
            self._force(node.right, target - left)
            return
        if node.op == SUB:
            rlo, rhi = self._natural(node.right)
            llo, lhi = self._natural(node.left)
            right = self._pick(max(rlo, llo - target), min(rhi, lhi - target))
            self._force(node.left, target + right)
            self._force(node.right, right)
            return
        raise _Infeasible  # forcing a product is never needed for taxonomy shapes

    def _pick(self, lo_v: Fraction, hi_v: Fraction) -> Fraction:
        lo_units = math.ceil(lo_v * self.denom)
        hi_units = math.floor(hi_v * self.denom)
        if lo_units > hi_units:
            raise _Infeasible
        return Fraction(self.rng.randint(lo_units, hi_units), self.denom)

    # -- free generation -----------------------------------------------------

    def _gen(self, node: Node, cap: Fraction | None) -> Fraction:
        if isinstance(node, Slot):
            return self._leaf_units(node, self.lo, cap if cap is not None else self.hi)
        if not isinstance(node, BinOp):
            raise _Infeasible
        if node.op == ADD:
            rlo, _ = self._natural(node.right)
            left = self._gen(node.left, None if cap is None else cap - rlo)
            right = self._gen(node.right, None if cap is None else cap - left)
            return left + right
        if node.op == SUB:
            left = self._gen(node.left, None)
            lo_r = self.lo if cap is None else max(self.lo, left - cap)
            hi_r = min(self.hi, left) if self.constraint.require_nonnegative_intermediates else self.hi
            if isinstance(node.right, Slot):
                right = self._leaf_units(node.right, lo_r, hi_r)
            else:
                right = self._gen(node.right, None)
                if right > hi_r or right < lo_r:
                    raise _Infeasible
            return left - right
        if node.op == MUL:
            rlo, _ = self._natural(node.right)
            left_cap = None
            if cap is not None and rlo > 0:
                left_cap = cap / rlo
            left = self._gen(node.left, left_cap)
            right_cap = None
            if cap is not None and left > 0:
                right_cap = cap / left
            right = self._gen(node.right, right_cap)
            return left * right
        if node.op == DIV:
            return self._gen_div(node, cap)
        raise _Infeasible

    def _gen_div(self, node: BinOp, cap: Fraction | None) -> Fraction:
        if isinstance(node.left, BinOp) and node.left.op == MUL and isinstance(node.right, Slot):
            return self._gen_product_quotient(node, cap)
        # divisor first; it must be nonzero
        if isinstance(node.right, Slot):
            divisor = self._leaf_units(node.right, max(self.lo, Fraction(1, self.denom)), self.hi)
        else:
            divisor = self._gen(node.right, None)
            if divisor == 0:
                raise _Infeasible
        nat_lo, nat_hi = self._natural(node.left)
        q_lo = max(0, math.ceil(nat_lo / divisor))
        q_hi = math.floor(nat_hi / divisor)
        if cap is not None:
            q_hi = min(q_hi, math.floor(cap))
        if q_lo > q_hi:
            raise _Infeasible
        quotient = self.rng.randint(q_lo, q_hi)
        self._force(node.left, quotient * divisor)
        return Fraction(quotient)

    def _gen_product_quotient(self, node: BinOp, cap: Fraction | None) -> Fraction:
        # (x*y)/c: pick c, make y an exact multiple of c, sample x under the cap
        divisor = self._leaf_units(node.right, max(self.lo, Fraction(1, self.denom)), self.hi)
        t_lo = max(0, math.ceil(self.lo / divisor))
        t_hi = math.floor(self.hi / divisor)
        if t_lo > t_hi:
            raise _Infeasible
        t = self.rng.randint(t_lo, t_hi)
        self._force(node.left.right, t * divisor)
        x_cap = None
        if cap is not None and t > 0:
            x_cap = cap / t
        x = self._gen(node.left.left, x_cap)
        return x * t

    # -- entry point ---------------------------------------------------------

    def run(self, expr: Expression) -> dict[int, NumberLiteral]:
        self.assigned = {}
        self._gen(expr.root, self.cap)
        literals = {
            slot: literal_from_units(units, self.scale)
            for slot, units in self.assigned.items()
        }
        if set(literals) != set(expr.slots()):
            raise _Infeasible
        bound = bind(expr, literals)
        values = intermediate_values(bound)
        answer = values[-1]
        c = self.constraint
        if c.require_nonnegative_intermediates and any(v < 0 for v in values):
            raise _Infeasible
        if c.require_nonnegative_answer and answer < 0:
            raise _Infeasible
        if c.require_terminating and not is_terminating(answer):
            raise _Infeasible
        if not within_digit_limit(answer, c.max_digits):
            raise _Infeasible
        return literals


def sample_bindings(
    expr: Expression,
    spec: NumberTypeSpec | Grid,
    rng: random.Random,
    constraint: AnswerConstraint = DEFAULT_CONSTRAINT,
    max_tries: int = 100,
) -> dict[int, NumberLiteral]:
    """Bind every slot of ``expr`` to a fresh literal from the spec's grid.

    Raises :class:`SamplingError` when no assignment satisfying the answer
    constraint is found within ``max_tries`` attempts.
    """
    grid = _as_grid(spec)
    sampler = _ShapeSampler(grid, rng, constraint)
    for _ in range(max_tries):
        try:
            return sampler.run(expr)
        except _Infeasible:
            continue
    raise SamplingError(f"no valid sample for {expr} on grid {grid} after {max_tries} tries")
