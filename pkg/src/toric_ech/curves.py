"""Index and writhe arithmetic for holomorphic curves with cylindrical ends.

Conley-Zehnder indices are inputs here; nothing in this module looks at the
geometry of a domain.  Writhes may be known only up to bounds, so they are
carried as :class:`Range` values and every operation propagates the bounds
conservatively.  Counterclockwise twists count positively.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .domains import InvalidParameter

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Range:
    """Closed interval of numbers; ``None`` marks an unbounded side."""

    lo: Optional[Number] = None
    hi: Optional[Number] = None

    def __post_init__(self) -> None:
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise InvalidParameter(f"empty range [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: Number) -> "Range":
        return cls(value, value)

    @classmethod
    def at_most(cls, value: Number) -> "Range":
        return cls(None, value)

    @classmethod
    def at_least(cls, value: Number) -> "Range":
        return cls(value, None)

    def __add__(self, other: "Range | Number") -> "Range":
        other = _as_range(other)
        lo = None if self.lo is None or other.lo is None else self.lo + other.lo
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return Range(lo, hi)

    __radd__ = __add__

    def __neg__(self) -> "Range":
        return Range(None if self.hi is None else -self.hi, None if self.lo is None else -self.lo)

    def __sub__(self, other: "Range | Number") -> "Range":
        return self + (-_as_range(other))

    def scaled(self, factor: Number) -> "Range":
        if factor < 0:
            return (-self).scaled(-factor)
        lo = None if self.lo is None else self.lo * factor
        hi = None if self.hi is None else self.hi * factor
        return Range(lo, hi)

    def __contains__(self, value: Number) -> bool:
        return (self.lo is None or self.lo <= value) and (self.hi is None or value <= self.hi)


def _as_range(value: "Range | Number") -> Range:
    return value if isinstance(value, Range) else Range.exact(value)


class EndSign(str, Enum):
    POSITIVE = "+"
    NEGATIVE = "-"


@dataclass(frozen=True)
class EndSpec:
    """An end of a curve at the d-fold cover of an orbit with CZ index ``cz``."""

    sign: EndSign
    cz: int
    d: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "sign", EndSign(self.sign))
        if self.d < 1:
            raise InvalidParameter(f"covering multiplicity must be >= 1, got {self.d}")


@dataclass(frozen=True)
class CurveHomologyData:
    euler_characteristic: int
    rel_chern: int
    rel_self_intersection: int
    writhe: Union[int, Range]
    singularity_count: Optional[int] = None

    def __post_init__(self) -> None:
        if self.singularity_count is not None and self.singularity_count < 0:
            raise InvalidParameter("singularity count must be nonnegative")


def fredholm_index(euler_characteristic: int, rel_chern: int, ends: Sequence[EndSpec]) -> int:
    """-chi + 2 c_tau + sum of CZ over positive ends - sum over negative ends."""
    total = -euler_characteristic + 2 * rel_chern
    for end in ends:
        total += end.cz if end.sign is EndSign.POSITIVE else -end.cz
    return total


def automatic_transversality(genus: int, num_pos_hyperbolic: int, ind: int) -> bool:
    if genus < 0 or num_pos_hyperbolic < 0:
        raise InvalidParameter("genus and hyperbolic end count must be nonnegative")
    return 2 * genus - 2 + num_pos_hyperbolic < ind


def positive_end_bounds(cz: int, d: int) -> tuple[int, int]:
    """Upper bounds (winding, writhe) for the braid at a positive end."""
    if d < 1:
        raise InvalidParameter("d must be >= 1")
    wind_max = math.floor(Fraction(cz, 2))
    return wind_max, (d - 1) * wind_max


def negative_end_bounds(cz: int, d: int) -> tuple[int, int]:
    """Lower bounds (winding, writhe) for the braid at a negative end."""
    if d < 1:
        raise InvalidParameter("d must be >= 1")
    wind_min = math.ceil(Fraction(cz, 2))
    return wind_min, (d - 1) * wind_min


def braid_union_writhe(w1: Union[int, Range], w2: Union[int, Range],
                       linking: Union[int, Range]) -> Union[int, Range]:
    """Writhe of the union of two disjoint braids around the same orbit."""
    if all(isinstance(v, int) for v in (w1, w2, linking)):
        return w1 + w2 + 2 * linking
    return _as_range(w1) + _as_range(w2) + _as_range(linking).scaled(2)


def adjunction_delta(data: CurveHomologyData) -> Union[Fraction, Range]:
    """Singularity count forced by the relative adjunction formula.

    delta = (chi + Q_tau + w_tau - c_tau) / 2.  A negative or non-integral
    value means no curve with this data exists; callers test for that.
    """
    base = data.euler_characteristic + data.rel_self_intersection - data.rel_chern
    if isinstance(data.writhe, Range):
        return (data.writhe + base).scaled(Fraction(1, 2))
    return Fraction(base + data.writhe, 2)


class UniquenessVerdict(str, Enum):
    IMPOSSIBLE = "two distinct cylinders impossible"
    NOT_FORCED = "not forced"


@dataclass(frozen=True)
class TraceStep:
    quantity: str
    relation: str
    value: Number


@dataclass
class UniquenessResult:
    verdict: UniquenessVerdict
    trace: list[TraceStep] = field(default_factory=list)

    def value(self, quantity: str) -> Number:
        for step in self.trace:
            if step.quantity == quantity:
                return step.value
        raise KeyError(quantity)


def two_cylinder_uniqueness(cz_top: int = 1, cz_bottom: int = 1) -> UniquenessResult:
    """Try to rule out two distinct cylinders from gamma_c (top) to gamma_a (bottom).

    The two cylinders give one-strand braids around gamma_c and gamma_a.  Their
    winding bounds feed the writhe of each two-component braid, the writhe of
    u1 + u2 is w(zeta_c) - w(zeta_a), and the adjunction formula with
    c_tau = Q_tau = chi = 0 then bounds delta(u1 + u2) from above.
    """
    wind_c, writhe_c = positive_end_bounds(cz_top, 1)
    wind_a, writhe_a = negative_end_bounds(cz_bottom, 1)
    # each strand of a two-strand union links the other with the winding number
    w_zeta_c = braid_union_writhe(Range.at_most(writhe_c), Range.at_most(writhe_c),
                                  Range.at_most(wind_c))
    w_zeta_a = braid_union_writhe(Range.at_least(writhe_a), Range.at_least(writhe_a),
                                  Range.at_least(wind_a))
    w_total = w_zeta_c - w_zeta_a
    delta = adjunction_delta(CurveHomologyData(0, 0, 0, w_total))
    trace = [
        TraceStep("wind(zeta_c_i)", "<=", wind_c),
        TraceStep("wind(zeta_a_i)", ">=", wind_a),
        TraceStep("w(zeta_c)", "<=", w_zeta_c.hi),
        TraceStep("w(zeta_a)", ">=", w_zeta_a.lo),
        TraceStep("w(u1+u2)", "<=", w_total.hi),
        TraceStep("delta(u1+u2)", "<=", delta.hi),
    ]
    verdict = UniquenessVerdict.IMPOSSIBLE if delta.hi < 0 else UniquenessVerdict.NOT_FORCED
    return UniquenessResult(verdict, trace)
