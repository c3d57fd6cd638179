"""Exact convex toric domains in dimension four.

A convex toric domain X_Omega is described by its moment region

    Omega = {(x, y) : 0 <= x <= a, 0 <= y <= f(x)}

with f nonincreasing and concave.  Only piecewise-linear f is stored; all
coordinates are :class:`fractions.Fraction` so every derived quantity is exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class ToricError(ValueError):
    """Base class for invalid input to the toric-domain machinery."""


class InvalidParameter(ToricError):
    pass


class InvalidProfile(ToricError):
    pass


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Strings must look like ``"n"`` or ``"n/d"``; floats are rejected because
    they would smuggle rounding into the core computations.
    """
    if isinstance(value, bool):
        raise InvalidParameter(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if not match:
            raise InvalidParameter(f"not a rational string: {value!r}")
        num, den = match.group(1), match.group(2)
        if den is not None and int(den) == 0:
            raise InvalidParameter(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den is not None else 1)
    raise InvalidParameter(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return str(value)


Point = tuple[Fraction, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class ToricProfile:
    """Graph of a concave nonincreasing piecewise-linear function on [0, a].

    Breakpoints are normalized on construction: repeated points and collinear
    interior points are dropped, so two profiles describing the same region
    compare equal.
    """

    breakpoints: tuple[Point, ...]

    def __post_init__(self) -> None:
        pts = [(as_rational(x), as_rational(y)) for x, y in self.breakpoints]
        deduped: list[Point] = []
        for pt in pts:
            if deduped and pt == deduped[-1]:
                continue
            deduped.append(pt)
        if len(deduped) < 2:
            raise InvalidProfile("a profile needs at least two distinct breakpoints")
        if deduped[0][0] != 0:
            raise InvalidProfile("first breakpoint must have x = 0")
        if deduped[0][1] <= 0:
            raise InvalidProfile("f(0) must be positive")
        for (x0, y0), (x1, y1) in zip(deduped, deduped[1:]):
            if x1 <= x0:
                raise InvalidProfile("breakpoint x-coordinates must strictly increase")
            if y1 > y0:
                raise InvalidProfile("profile must be nonincreasing")
        if deduped[-1][1] < 0:
            raise InvalidProfile("f(a) must be nonnegative")

        merged: list[Point] = [deduped[0]]
        for pt in deduped[1:]:
            while len(merged) >= 2 and _cross(merged[-2], merged[-1], pt) == 0:
                merged.pop()
            merged.append(pt)
        for o, m, e in zip(merged, merged[1:], merged[2:]):
            # strict right turn <=> strictly decreasing slopes
            if _cross(o, m, e) >= 0:
                raise InvalidProfile("profile must be concave")
        object.__setattr__(self, "breakpoints", tuple(merged))

    @property
    def a(self) -> Fraction:
        return self.breakpoints[-1][0]

    @property
    def f0(self) -> Fraction:
        return self.breakpoints[0][1]

    @property
    def f_end(self) -> Fraction:
        return self.breakpoints[-1][1]

    def value_at(self, x: RationalLike) -> Optional[Fraction]:
        """f(x) by linear interpolation, or None outside [0, a]."""
        x = as_rational(x)
        if x < 0 or x > self.a:
            return None
        pts = self.breakpoints
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        raise AssertionError("unreachable")

    def slopes(self) -> list[Fraction]:
        pts = self.breakpoints
        return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]

    def vertices(self) -> list[Point]:
        """Vertices of Omega in counterclockwise order starting at the origin."""
        out: list[Point] = [(Fraction(0), Fraction(0)), (self.a, Fraction(0))]
        rest = list(reversed(self.breakpoints))
        if rest[0][1] == 0:
            rest = rest[1:]
        out.extend(rest)
        return out


class DomainKind(str, Enum):
    ELLIPSOID = "ellipsoid"
    POLYDISK = "polydisk"
    BALL = "ball"
    POLYGON = "polygon"
    POLYGONALIZED = "polygonalized-smooth"


@dataclass(frozen=True)
class ConvexToricDomain:
    profile: ToricProfile
    kind: DomainKind = DomainKind.POLYGON
    params: tuple[Fraction, ...] = ()

    @property
    def a(self) -> Fraction:
        return self.profile.a

    @property
    def f0(self) -> Fraction:
        return self.profile.f0

    @property
    def breakpoints(self) -> tuple[Point, ...]:
        return self.profile.breakpoints

    def __str__(self) -> str:
        if self.kind is DomainKind.ELLIPSOID:
            return "E({}, {})".format(*self.params)
        if self.kind is DomainKind.POLYDISK:
            return "P({}, {})".format(*self.params)
        if self.kind is DomainKind.BALL:
            return "B({})".format(*self.params)
        pts = ", ".join(f"({x}, {y})" for x, y in self.breakpoints)
        return f"polygon[{pts}]"


def _positive(name: str, value: RationalLike) -> Fraction:
    value = as_rational(value)
    if value <= 0:
        raise InvalidParameter(f"{name} must be positive, got {value}")
    return value


def make_polygon(breakpoints: Iterable[tuple[RationalLike, RationalLike]]) -> ConvexToricDomain:
    return ConvexToricDomain(ToricProfile(tuple(breakpoints)))


def make_ellipsoid(a: RationalLike, b: RationalLike) -> ConvexToricDomain:
    """E(a, b): the triangle with legs a on the x-axis and b on the y-axis."""
    a, b = _positive("a", a), _positive("b", b)
    prof = ToricProfile(((Fraction(0), b), (a, Fraction(0))))
    return ConvexToricDomain(prof, DomainKind.ELLIPSOID, (a, b))


def make_ball(r: RationalLike) -> ConvexToricDomain:
    r = _positive("r", r)
    prof = ToricProfile(((Fraction(0), r), (r, Fraction(0))))
    return ConvexToricDomain(prof, DomainKind.BALL, (r,))


def make_polydisk(a: RationalLike, b: RationalLike) -> ConvexToricDomain:
    """P(a, b) = B^2(a) x B^2(b); f is constant b on [0, a]."""
    a, b = _positive("a", a), _positive("b", b)
    prof = ToricProfile(((Fraction(0), b), (a, b)))
    return ConvexToricDomain(prof, DomainKind.POLYDISK, (a, b))


def support(domain: ConvexToricDomain, p: int, q: int) -> Fraction:
    """max of p*x + q*y over Omega, for a nonnegative direction (p, q)."""
    if p < 0 or q < 0:
        raise InvalidParameter(f"direction must be nonnegative, got ({p}, {q})")
    if p == 0 and q == 0:
        raise InvalidParameter("direction (0, 0) has no support value")
    # the origin and (a, 0) are dominated by breakpoints for p, q >= 0
    return max(p * x + q * y for x, y in domain.breakpoints)


def contains(inner: ConvexToricDomain, outer: ConvexToricDomain) -> bool:
    """Whether Omega_inner is a subset of Omega_outer."""
    for x, y in inner.breakpoints:
        fx = outer.profile.value_at(x)
        if fx is None or y > fx:
            return False
    return True


def ball_inradius(domain: ConvexToricDomain) -> Fraction:
    """Largest r with B^4(r) inside X_Omega."""
    return min(domain.a, domain.f0)


def ball_outradius(domain: ConvexToricDomain) -> Fraction:
    """Smallest r with X_Omega inside B^4(r)."""
    return support(domain, 1, 1)


class RadiusInterval(NamedTuple):
    lo: Fraction
    hi: Fraction


def check_ball_sandwich(
    inner: ConvexToricDomain, outer: ConvexToricDomain
) -> Optional[RadiusInterval]:
    """Radii r with X_inner in B^4(r) in X_outer, or None when there are none."""
    lo, hi = ball_outradius(inner), ball_inradius(outer)
    if lo <= hi:
        return RadiusInterval(lo, hi)
    return None


def scale(domain: ConvexToricDomain, factor: RationalLike) -> ConvexToricDomain:
    factor = _positive("scale factor", factor)
    prof = ToricProfile(tuple((x * factor, y * factor) for x, y in domain.breakpoints))
    return ConvexToricDomain(prof, domain.kind, tuple(v * factor for v in domain.params))


def reflect(domain: ConvexToricDomain) -> ConvexToricDomain:
    """Mirror Omega across the diagonal x = y.

    The mirrored region is again a hypograph over [0, f(0)]; a vertical last
    edge (coming from a horizontal first edge) is implicit in the profile.
    """
    pts = [(Fraction(0), domain.a)] + [(y, x) for x, y in reversed(domain.breakpoints)]
    if pts[-1][0] == pts[-2][0]:
        pts.pop()
    kind, params = domain.kind, tuple(reversed(domain.params))
    if kind is DomainKind.POLYGONALIZED:
        kind = DomainKind.POLYGON
    return ConvexToricDomain(ToricProfile(tuple(pts)), kind, params)


def _upper_hull_ok(samples: Sequence[Point]) -> bool:
    return all(_cross(o, m, e) <= 0 for o, m, e in zip(samples, samples[1:], samples[2:]))


def polygonalize(
    samples: Sequence[Sequence[Optional[RationalLike]]], mode: str = "inner"
) -> ConvexToricDomain:
    """Piecewise-linear bracket of a smooth concave nonincreasing profile.

    ``samples`` are points (x, y) on the graph of f with x_0 = 0 and the last
    sample at x = a.  ``mode="inner"`` joins the samples (an inscribed polygon).
    ``mode="outer"`` needs a third coordinate per sample, the slope f'(x_i)
    (``None`` for a vertical tangent, allowed only at x = a), and returns the
    envelope of those tangent lines.  The true region lies between the two.
    """
    if mode not in ("inner", "outer"):
        raise InvalidParameter(f"unknown polygonalize mode {mode!r}")
    if len(samples) < 2:
        raise InvalidProfile("need at least two samples")
    pts = [(as_rational(s[0]), as_rational(s[1])) for s in samples]
    if pts[0][0] != 0:
        raise InvalidProfile("first sample must have x = 0")
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if x1 <= x0 or y1 > y0:
            raise InvalidProfile("samples must be increasing in x and nonincreasing in y")
    if not _upper_hull_ok(pts):
        raise InvalidProfile("samples are not concave")

    if mode == "inner":
        dom = make_polygon(pts)
        return ConvexToricDomain(dom.profile, DomainKind.POLYGONALIZED)

    slopes: list[Optional[Fraction]] = []
    for i, s in enumerate(samples):
        if len(s) < 3:
            raise InvalidProfile("outer mode needs a slope for every sample")
        if s[2] is None:
            if i != len(samples) - 1:
                raise InvalidProfile("vertical tangent only allowed at x = a")
            slopes.append(None)
            continue
        sl = as_rational(s[2])
        if sl > 0:
            raise InvalidProfile("slopes of a nonincreasing profile must be <= 0")
        slopes.append(sl)
    for i, (xi, yi) in enumerate(pts):
        sl = slopes[i]
        if sl is None:
            continue
        if any(yj > yi + sl * (xj - xi) for xj, yj in pts):
            raise InvalidProfile(f"tangent at sample {i} cuts below another sample")
    for s0, s1 in zip(slopes, slopes[1:]):
        if s0 is not None and s1 is not None and s1 > s0:
            raise InvalidProfile("tangent slopes must be nonincreasing")

    a = pts[-1][0]
    lines = [(pts[i], slopes[i]) for i in range(len(pts)) if slopes[i] is not None]

    def envelope(x: Fraction) -> Fraction:
        return min(y + sl * (x - x0) for (x0, y), sl in lines)

    xs = {Fraction(0), a}
    for ((x0, y0), s0), ((x1, y1), s1) in zip(lines, lines[1:]):
        if s0 != s1:
            xc = (y1 - s1 * x1 - y0 + s0 * x0) / (s0 - s1)
            if 0 < xc < a:
                xs.add(xc)
    env = [(x, envelope(x)) for x in sorted(xs)]
    dom = make_polygon(env)
    return ConvexToricDomain(dom.profile, DomainKind.POLYGONALIZED)
