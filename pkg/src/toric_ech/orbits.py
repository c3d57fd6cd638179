"""Embedded Reeb orbits on the boundary of a convex toric domain.

Label convention: the family labeled (p, q) sits where the boundary has slope
-q/p, winds (q, p) times around (theta_1, theta_2), and has action

    max over Omega of (q*x + p*y) = support(Omega, q, p).

So e_{0,1} has action a and e_{1,0} has action f(0).  Each family with
p, q >= 1 is split symbolically into an elliptic and a hyperbolic orbit of
equal action; no perturbed contact form is ever built.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

from .domains import ConvexToricDomain, InvalidParameter, RationalLike, as_rational, support


class OrbitKind(str, Enum):
    ELLIPTIC = "e"
    HYPERBOLIC = "h"


@dataclass(frozen=True, order=True)
class OrbitFamilyLabel:
    p: int
    q: int
    kind: OrbitKind = OrbitKind.ELLIPTIC

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0 or (self.p, self.q) == (0, 0):
            raise InvalidParameter(f"bad orbit label ({self.p}, {self.q})")
        if math.gcd(self.p, self.q) != 1:
            raise InvalidParameter(f"orbit label ({self.p}, {self.q}) is not primitive")
        kind = OrbitKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is OrbitKind.HYPERBOLIC and (self.p == 0 or self.q == 0):
            raise InvalidParameter(f"e_{{{self.p},{self.q}}} has no hyperbolic partner")

    @property
    def hyperbolic(self) -> bool:
        return self.kind is OrbitKind.HYPERBOLIC

    def __str__(self) -> str:
        return f"{self.kind.value}_{{{self.p},{self.q}}}"


def e(p: int, q: int) -> OrbitFamilyLabel:
    return OrbitFamilyLabel(p, q, OrbitKind.ELLIPTIC)


def h(p: int, q: int) -> OrbitFamilyLabel:
    return OrbitFamilyLabel(p, q, OrbitKind.HYPERBOLIC)


def _label_key(label: OrbitFamilyLabel) -> tuple[int, int, str]:
    return (label.p, label.q, label.kind.value)


@dataclass(frozen=True)
class OrbitSet:
    """Finite multiset of embedded orbits; hyperbolic orbits appear at most once."""

    entries: tuple[tuple[OrbitFamilyLabel, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[OrbitFamilyLabel, int] = {}
        for label, mult in self.entries:
            if not isinstance(label, OrbitFamilyLabel):
                raise InvalidParameter(f"not an orbit label: {label!r}")
            if mult < 1:
                raise InvalidParameter(f"multiplicity must be positive, got {mult}")
            merged[label] = merged.get(label, 0) + mult
        for label, mult in merged.items():
            if label.hyperbolic and mult != 1:
                raise InvalidParameter(f"hyperbolic orbit {label} must have multiplicity 1")
        ordered = tuple(sorted(merged.items(), key=lambda kv: _label_key(kv[0])))
        object.__setattr__(self, "entries", ordered)

    @classmethod
    def of(cls, mapping: Mapping[OrbitFamilyLabel, int] | Iterable[OrbitFamilyLabel] = ()) -> "OrbitSet":
        if isinstance(mapping, Mapping):
            return cls(tuple(mapping.items()))
        return cls(tuple((label, 1) for label in mapping))

    def as_dict(self) -> dict[OrbitFamilyLabel, int]:
        return dict(self.entries)

    def action(self, domain: ConvexToricDomain) -> Fraction:
        return sum((m * orbit_action(domain, lab) for lab, m in self.entries), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __str__(self) -> str:
        if not self.entries:
            return "{}"
        parts = []
        for label, mult in self.entries:
            parts.append(str(label) if mult == 1 else f"{label}^{mult}")
        return " ".join(parts)


def orbit_action(domain: ConvexToricDomain, label: OrbitFamilyLabel) -> Fraction:
    return support(domain, label.q, label.p)


class OrbitFamily(NamedTuple):
    label: OrbitFamilyLabel
    action: Fraction


def primitive_directions(q_max: int, p_max: int) -> Iterator[tuple[int, int]]:
    """Primitive (p, q) with 0 <= p <= p_max and 0 <= q <= q_max."""
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            if (p, q) != (0, 0) and math.gcd(p, q) == 1:
                yield p, q


def directions_within(domain: ConvexToricDomain, bound: Fraction) -> list[tuple[int, int, Fraction]]:
    """All primitive (p, q) whose orbit action is at most ``bound``, with that action.

    Actions satisfy support(q, p) >= q*a and >= p*f(0), which caps the search.
    """
    if bound < 0:
        return []
    q_max = math.floor(bound / domain.a)
    p_max = math.floor(bound / domain.f0)
    out = []
    for p, q in primitive_directions(q_max, p_max):
        act = support(domain, q, p)
        if act <= bound:
            out.append((p, q, act))
    return out


def enumerate_orbit_families(domain: ConvexToricDomain, bound: RationalLike) -> list[OrbitFamily]:
    """Embedded orbits with action <= ``bound``, sorted by (action, label)."""
    bound = as_rational(bound)
    if bound <= 0:
        raise InvalidParameter("action bound must be positive")
    fams = []
    for p, q, act in directions_within(domain, bound):
        fams.append(OrbitFamily(e(p, q), act))
        if p and q:
            fams.append(OrbitFamily(h(p, q), act))
    fams.sort(key=lambda f: (f.action, _label_key(f.label)))
    return fams


class ScoredOrbitSet(NamedTuple):
    orbit_set: OrbitSet
    action: Fraction
    index: int


def enumerate_orbit_sets(domain: ConvexToricDomain, bound: RationalLike) -> list[ScoredOrbitSet]:
    """Every orbit set (the empty one included) with total action <= ``bound``.

    Each entry carries its ECH index.  Sorted by (action, index, labels).
    """
    from .ech import enumerate_generators, ech_index

    bound = as_rational(bound)
    if bound <= 0:
        raise InvalidParameter("action bound must be positive")
    out = []
    for gen in enumerate_generators(domain, bound):
        oset = gen.to_orbit_set()
        out.append(ScoredOrbitSet(oset, gen.action(domain), ech_index(gen)))
    out.sort(key=lambda s: (s.action, s.index, _orbit_set_key(s.orbit_set)))
    return out


def _orbit_set_key(oset: OrbitSet) -> tuple:
    return tuple((_label_key(lab), m) for lab, m in oset.entries)
