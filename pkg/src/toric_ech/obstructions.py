"""Embedding obstructions and the loop certificates built on ECH capacities.

Verdicts are three-valued.  A loop of embeddings X_1 -> X_2 (rotations of the
first factor) is certified noncontractible when

    X_1 subset X_2,   a < c < f_1(0) < f_2(0)  (or  f_1(0) < f_2(0) < a < c),
    c_1(X_2) < c_2(X_1),

and certified contractible when a ball fits between the two domains.  Every
other input is reported as inconclusive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from .domains import (
    ConvexToricDomain,
    RadiusInterval,
    ToricError,
    ball_inradius,
    ball_outradius,
    as_rational,
    check_ball_sandwich,
    contains,
    make_ellipsoid,
    RationalLike,
)
from .ech import capacities, capacity
from .orbits import OrbitSet, e, enumerate_orbit_sets, h, orbit_action


class InvalidInput(ToricError):
    pass


class InvalidEllipsoid(ToricError):
    pass


class Verdict(str, Enum):
    NONCONTRACTIBLE = "Noncontractible"
    CONTRACTIBLE_BY_BALL_SANDWICH = "ContractibleByBallSandwich"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Check:
    name: str
    left: Fraction
    relation: str
    right: Fraction
    passed: bool


_RELATIONS = {
    "<": lambda x, y: x < y,
    "<=": lambda x, y: x <= y,
    "=": lambda x, y: x == y,
}


def _check(name: str, left: Fraction, relation: str, right: Fraction) -> Check:
    return Check(name, left, relation, right, _RELATIONS[relation](left, right))


@dataclass
class CertificateReport:
    verdict: Verdict
    checks: list[Check]
    nested: bool = False
    ball_interval: Optional[RadiusInterval] = None
    c1_target: Optional[Fraction] = None
    c2_source: Optional[Fraction] = None
    variant: Optional[str] = None
    notes: list[str] = field(default_factory=list)


def embedding_obstruction(
    source: ConvexToricDomain, target: ConvexToricDomain, top: int
) -> Optional[int]:
    """Smallest k <= top with c_k(source) > c_k(target), if any.

    A returned k proves that no symplectic embedding source -> target exists.
    """
    if top < 1:
        raise InvalidInput("need at least one capacity to compare")
    cs, ct = capacities(source, top), capacities(target, top)
    for k in range(top + 1):
        if cs[k] > ct[k]:
            return k
    return None


def noncontractibility_certificate(
    inner: ConvexToricDomain, outer: ConvexToricDomain
) -> CertificateReport:
    a, f1 = inner.a, inner.f0
    c, f2 = outer.a, outer.f0
    c1_outer = capacity(outer, 1)
    c2_inner = capacity(inner, 2)

    nested = contains(inner, outer)
    checks: list[Check] = []
    main = [_check("a < c", a, "<", c), _check("c < f1(0)", c, "<", f1),
            _check("f1(0) < f2(0)", f1, "<", f2)]
    mirror = [_check("f1(0) < f2(0)", f1, "<", f2), _check("f2(0) < a", f2, "<", a),
              _check("a < c", a, "<", c)]
    variant = None
    if all(ch.passed for ch in main):
        variant, order = "a<c<f1(0)<f2(0)", main
    elif all(ch.passed for ch in mirror):
        variant, order = "f1(0)<f2(0)<a<c", mirror
    else:
        order = main
    checks.extend(order)
    checks.append(_check("c1(outer) < c2(inner)", c1_outer, "<", c2_inner))

    report = CertificateReport(Verdict.INCONCLUSIVE, checks, nested=nested, c1_target=c1_outer,
                               c2_source=c2_inner, variant=variant)
    if nested and variant is not None and c1_outer < c2_inner:
        report.verdict = Verdict.NONCONTRACTIBLE
        return report

    interval = check_ball_sandwich(inner, outer)
    report.checks.append(_check("outradius(inner) <= inradius(outer)",
                                ball_outradius(inner), "<=", ball_inradius(outer)))
    if interval is not None:
        report.verdict = Verdict.CONTRACTIBLE_BY_BALL_SANDWICH
        report.ball_interval = interval
    return report


def ellipsoid_certificate(
    a: RationalLike, b: RationalLike, c: RationalLike, d: RationalLike
) -> CertificateReport:
    """Loop certificate for E(a, b) inside E(c, d); argument order matters."""
    a, b, c, d = (as_rational(v) for v in (a, b, c, d))
    if min(a, b, c, d) <= 0:
        raise InvalidEllipsoid("ellipsoid sizes must be positive")
    if a > b or c > d:
        raise InvalidEllipsoid(f"expected a <= b and c <= d, got E({a}, {b}), E({c}, {d})")
    report = noncontractibility_certificate(make_ellipsoid(a, b), make_ellipsoid(c, d))
    direct = a < c < b < d and c < 2 * a
    if direct != (report.verdict is Verdict.NONCONTRACTIBLE):
        raise AssertionError(f"ellipsoid criterion disagrees with the general certificate at "
                             f"({a}, {b}, {c}, {d})")
    report.checks.append(_check("c < 2a", c, "<", 2 * a))
    return report


class CandidateStatus(str, Enum):
    CANDIDATE = "candidate"
    EXCLUDED_BY_ACTION = "excluded-by-action"
    EXCLUDED_BY_INDEX_ACTION_BOUND = "excluded-by-index-action-bound"


@dataclass(frozen=True)
class BreakingCandidate:
    orbit_set: OrbitSet
    action: Fraction
    index: int
    status: CandidateStatus


@dataclass
class BreakingReport:
    window: tuple[Fraction, Fraction]
    candidates: list[BreakingCandidate]
    survivors: list[OrbitSet]
    hypothesis_held: bool
    c_source: str
    outer_x_intercept: Fraction
    c2_inner: Fraction
    h11_action: Fraction
    index_two_audit: list[BreakingCandidate] = field(default_factory=list)
    consistency_failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def breaking_analysis(inner: ConvexToricDomain, outer: ConvexToricDomain) -> BreakingReport:
    """Orbit sets on the inner boundary through which the cylinders could break.

    A building from gamma_c down to gamma_a must pass through orbit sets whose
    action lies in [a, c], where a = A(gamma_a) and c = A(gamma_c) = c_1(outer).
    """
    if not contains(inner, outer):
        raise InvalidInput("breaking analysis needs the first domain inside the second")
    a = inner.a
    c = capacity(outer, 1)
    c2_inner = capacity(inner, 2)
    h11 = orbit_action(inner, h(1, 1))
    c_source = "c1(outer)"
    notes = []
    if c != outer.a:
        notes.append(f"window top uses c1(outer) = {c}, not the x-intercept {outer.a}")

    enumerated = enumerate_orbit_sets(inner, c) if c > 0 else []
    candidates = []
    failures = []
    for s in enumerated:
        if s.index >= 5 and s.action < c2_inner:
            failures.append(f"{s.orbit_set} has index {s.index} but action {s.action} < c2 = {c2_inner}")
        if s.action < a:
            status = CandidateStatus.EXCLUDED_BY_ACTION
        elif s.index >= 5 and c < c2_inner:
            status = CandidateStatus.EXCLUDED_BY_INDEX_ACTION_BOUND
        else:
            status = CandidateStatus.CANDIDATE
        candidates.append(BreakingCandidate(s.orbit_set, s.action, s.index, status))
    survivors = [cand.orbit_set for cand in candidates if cand.status is CandidateStatus.CANDIDATE]

    audit = []
    for label in (e(0, 1), e(1, 0)):
        oset = OrbitSet.of([label])
        act = oset.action(inner)
        status = CandidateStatus.CANDIDATE if a <= act <= c else CandidateStatus.EXCLUDED_BY_ACTION
        audit.append(BreakingCandidate(oset, act, 2, status))

    held = c < c2_inner and c < h11
    return BreakingReport((a, c), candidates, survivors, held, c_source, outer.a, c2_inner, h11,
                          audit, failures, notes)
