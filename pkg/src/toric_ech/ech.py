"""Convex generators and ECH capacities of convex toric domains.

An orbit set on the boundary of X_Omega is encoded as a convex lattice path
from the y-axis to the x-axis.  The orbit e_{p,q}^m (or e_{p,q}^{m-1} h_{p,q})
becomes an edge with displacement m*(q, -p), labeled ``e`` (or ``h``).  Edges
are ordered by decreasing slope, so the path together with the axes bounds a
convex lattice polygon.  With L the number of lattice points in that polygon
(boundary included) and h the number of h-labeled edges,

    I = 2 (L - 1) - h          A = sum over edges of m * support(Omega, q, p)

and c_k = min{A : I = 2k}.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

from .domains import ConvexToricDomain, InvalidParameter, RationalLike, as_rational, support
from .orbits import (
    OrbitFamilyLabel,
    OrbitKind,
    OrbitSet,
    directions_within,
    primitive_directions,
)

E, H = OrbitKind.ELLIPTIC, OrbitKind.HYPERBOLIC


class Edge(NamedTuple):
    p: int
    q: int
    m: int
    label: OrbitKind = E


def slope_key(p: int, q: int) -> tuple[bool, Fraction]:
    """Sort key putting flatter edges (smaller p/q) first and (1, 0) last."""
    return (q == 0, Fraction(p, q) if q else Fraction(0))


def _edge_sort_key(edge: Edge) -> tuple:
    return (edge.p, edge.q, edge.m, edge.label.value)


@dataclass(frozen=True)
class ConvexGenerator:
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        edges = tuple(Edge(int(ed.p), int(ed.q), int(ed.m), OrbitKind(ed.label)) for ed in self.edges)
        for ed in edges:
            if ed.p < 0 or ed.q < 0 or (ed.p, ed.q) == (0, 0) or math.gcd(ed.p, ed.q) != 1:
                raise InvalidParameter(f"edge direction ({ed.p}, {ed.q}) is not primitive")
            if ed.m < 1:
                raise InvalidParameter(f"edge multiplicity must be positive, got {ed.m}")
            if ed.label is H and (ed.p == 0 or ed.q == 0):
                raise InvalidParameter("axis edges cannot carry an h label")
        for e0, e1 in zip(edges, edges[1:]):
            if not slope_key(e0.p, e0.q) < slope_key(e1.p, e1.q):
                raise InvalidParameter("edges must be sorted by strictly decreasing slope")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges: Sequence[Edge | tuple]) -> "ConvexGenerator":
        """Build from edges in any order; sorting makes the path convex."""
        eds = [Edge(*ed) for ed in edges]
        eds.sort(key=lambda ed: slope_key(ed.p, ed.q))
        return cls(tuple(eds))

    @classmethod
    def from_orbit_set(cls, oset: OrbitSet) -> "ConvexGenerator":
        total: dict[tuple[int, int], int] = {}
        hyper: set[tuple[int, int]] = set()
        for label, mult in oset.entries:
            key = (label.p, label.q)
            total[key] = total.get(key, 0) + mult
            if label.hyperbolic:
                hyper.add(key)
        return cls.from_edges([Edge(p, q, m, H if (p, q) in hyper else E) for (p, q), m in total.items()])

    def to_orbit_set(self) -> OrbitSet:
        entries: list[tuple[OrbitFamilyLabel, int]] = []
        for ed in self.edges:
            if ed.label is H:
                entries.append((OrbitFamilyLabel(ed.p, ed.q, H), 1))
                if ed.m > 1:
                    entries.append((OrbitFamilyLabel(ed.p, ed.q, E), ed.m - 1))
            else:
                entries.append((OrbitFamilyLabel(ed.p, ed.q, E), ed.m))
        return OrbitSet(tuple(entries))

    @property
    def x_intercept(self) -> int:
        return sum(ed.m * ed.q for ed in self.edges)

    @property
    def y_intercept(self) -> int:
        return sum(ed.m * ed.p for ed in self.edges)

    @property
    def h_count(self) -> int:
        return sum(1 for ed in self.edges if ed.label is H)

    def vertices(self) -> list[tuple[int, int]]:
        pt = (0, self.y_intercept)
        out = [pt]
        for ed in self.edges:
            pt = (pt[0] + ed.m * ed.q, pt[1] - ed.m * ed.p)
            out.append(pt)
        return out

    def action(self, domain: ConvexToricDomain) -> Fraction:
        return generator_action(self, domain)

    def key(self) -> tuple:
        return tuple(_edge_sort_key(ed) for ed in self.edges)

    def __str__(self) -> str:
        return str(self.to_orbit_set()) if self.edges else "{}"


def generator_from_orbit_set(oset: OrbitSet) -> ConvexGenerator:
    return ConvexGenerator.from_orbit_set(oset)


def lattice_count(gen: ConvexGenerator) -> int:
    """Lattice points in the closed region cut out by the path and both axes."""
    verts = gen.vertices()
    heights: dict[int, Fraction] = {0: Fraction(verts[0][1])}
    for (x0, y0), (x1, y1) in zip(verts, verts[1:]):
        if x1 == x0:
            heights[x0] = max(heights.get(x0, Fraction(0)), Fraction(y0))
            continue
        for x in range(x0, x1 + 1):
            y = Fraction(y0) + Fraction((y1 - y0) * (x - x0), x1 - x0)
            heights[x] = max(heights.get(x, Fraction(0)), y)
    return sum(math.floor(y) + 1 for y in heights.values())


def ech_index(gen: ConvexGenerator) -> int:
    return 2 * (lattice_count(gen) - 1) - gen.h_count


def _index_step(p: int, q: int, m: int, x_before: int) -> int:
    """Growth of 2(L - 1) when an e-edge m*(q, -p) is appended after x_before.

    By Pick's theorem 2(L - 1) = 2 * area + (boundary lattice points), and
    both pieces are additive edge by edge once the cross term is included.
    """
    return m * m * p * q + m * (p + q + 1) + 2 * m * p * x_before


def index_by_pick(gen: ConvexGenerator) -> int:
    total, x = 0, 0
    for ed in gen.edges:
        total += _index_step(ed.p, ed.q, ed.m, x)
        x += ed.m * ed.q
    return total - gen.h_count


def generator_action(gen: ConvexGenerator, domain: ConvexToricDomain) -> Fraction:
    return sum((ed.m * support(domain, ed.q, ed.p) for ed in gen.edges), Fraction(0))


class ScoredGenerator(NamedTuple):
    generator: ConvexGenerator
    action: Fraction
    index: int


Direction = tuple[int, int, Fraction]


def _sorted_directions(dirs: list[Direction]) -> list[Direction]:
    return sorted(dirs, key=lambda d: slope_key(d[0], d[1]))


def _index_directions(domain: ConvexToricDomain, max_index: int) -> list[Direction]:
    """Directions whose cheapest single edge already fits under max_index."""
    out = []
    for p, q in primitive_directions(max_index, max_index):
        cheapest = _index_step(p, q, 1, 0) - (1 if p and q else 0)
        if cheapest <= max_index:
            out.append((p, q, support(domain, q, p)))
    return out


def _integerize(
    dirs: Sequence[Direction], budget: Optional[Fraction]
) -> tuple[list[tuple[int, int, int]], Optional[int], int]:
    """Rescale actions by a common denominator so the search runs on ints."""
    denom = 1
    for _p, _q, cost in dirs:
        denom = math.lcm(denom, cost.denominator)
    if budget is not None:
        denom = math.lcm(denom, budget.denominator)
    int_dirs = [(p, q, int(cost * denom)) for p, q, cost in dirs]
    int_budget = None if budget is None else int(budget * denom)
    return int_dirs, int_budget, denom


RawGenerator = tuple[tuple[Edge, ...], int, int]


def _search(
    dirs: Sequence[tuple[int, int, int]],
    emit: Callable[[tuple[Edge, ...], int, int], None],
    budget: Optional[int],
    max_index: Optional[int],
    all_e: bool,
    start: int = 0,
    first_only: bool = False,
) -> None:
    """Depth-first walk over generators built from ``dirs`` (in slope order).

    Action and index both grow strictly when an edge is added, so either
    bound prunes a whole subtree.  With ``first_only`` the walk is restricted
    to generators whose first edge uses ``dirs[start]``.
    """
    n = len(dirs)
    edges: list[Edge] = []

    def rec(i0: int, i_end: int, x: int, idx: int, act: int) -> None:
        for i in range(i0, i_end):
            p, q, cost = dirs[i]
            with_h = p > 0 and q > 0 and not all_e
            m = 1
            while True:
                new_act = act + m * cost
                if budget is not None and new_act > budget:
                    break
                ie = idx + _index_step(p, q, m, x)
                if max_index is not None and (ie - 1 if with_h else ie) > max_index:
                    break
                options = ((E, ie), (H, ie - 1)) if with_h else ((E, ie),)
                for lab, ii in options:
                    if max_index is not None and ii > max_index:
                        continue
                    edges.append(Edge(p, q, m, lab))
                    emit(tuple(edges), new_act, ii)
                    rec(i + 1, n, x + m * q, ii, new_act)
                    edges.pop()
                m += 1

    if first_only:
        rec(start, start + 1, 0, 0, 0)
    else:
        emit((), 0, 0)
        rec(start, n, 0, 0, 0)


def _branch_worker(args: tuple) -> list[RawGenerator]:
    dirs, budget, max_index, all_e, start = args
    out: list[RawGenerator] = []
    _search(dirs, lambda eds, act, idx: out.append((eds, act, idx)), budget, max_index, all_e,
            start=start, first_only=True)
    return out


def resolve_workers(workers: Optional[int] = None) -> int:
    """Worker count from the argument or TORIC_ECH_THREADS (0 means one per CPU)."""
    if workers is None:
        raw = os.environ.get("TORIC_ECH_THREADS", "1").strip() or "1"
        try:
            workers = int(raw)
        except ValueError:
            raise InvalidParameter(f"TORIC_ECH_THREADS must be an integer, got {raw!r}") from None
    if workers < 0:
        raise InvalidParameter("worker count must be >= 0")
    if workers == 0:
        workers = os.cpu_count() or 1
    return workers


def _collect(
    dirs: list[Direction],
    budget: Optional[Fraction],
    max_index: Optional[int],
    all_e: bool,
    workers: Optional[int],
) -> list[ScoredGenerator]:
    int_dirs, int_budget, denom = _integerize(dirs, budget)
    nworkers = resolve_workers(workers)
    raw: list[RawGenerator] = []
    if nworkers <= 1 or len(dirs) < 2:
        _search(int_dirs, lambda eds, act, idx: raw.append((eds, act, idx)),
                int_budget, max_index, all_e)
    else:
        raw.append(((), 0, 0))
        jobs = [(int_dirs, int_budget, max_index, all_e, i) for i in range(len(dirs))]
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            for chunk in pool.map(_branch_worker, jobs):
                raw.extend(chunk)
    out = [ScoredGenerator(_trusted(eds), Fraction(act, denom), idx) for eds, act, idx in raw]
    out.sort(key=lambda s: (s.action, s.index, s.generator.key()))
    return out


def _trusted(edges: tuple[Edge, ...]) -> ConvexGenerator:
    # edges produced by _search are valid by construction
    gen = object.__new__(ConvexGenerator)
    object.__setattr__(gen, "edges", edges)
    return gen


def enumerate_scored_generators(
    domain: ConvexToricDomain,
    budget: RationalLike,
    *,
    all_e: bool = False,
    max_index: Optional[int] = None,
    workers: Optional[int] = None,
) -> list[ScoredGenerator]:
    """Generators with action <= budget (and index <= max_index if given)."""
    budget = as_rational(budget)
    if budget <= 0:
        raise InvalidParameter("budget must be positive")
    dirs = _sorted_directions(directions_within(domain, budget))
    return _collect(dirs, budget, max_index, all_e, workers)


def enumerate_generators(
    domain: ConvexToricDomain,
    budget: RationalLike,
    *,
    all_e: bool = False,
    workers: Optional[int] = None,
) -> list[ConvexGenerator]:
    """All convex generators with action <= budget, canonically sorted."""
    return [s.generator for s in enumerate_scored_generators(domain, budget, all_e=all_e, workers=workers)]


def generators_up_to_index(domain: ConvexToricDomain, max_index: int) -> list[ScoredGenerator]:
    if max_index < 0:
        raise InvalidParameter("max_index must be >= 0")
    dirs = _sorted_directions(_index_directions(domain, max_index))
    return _collect(dirs, None, max_index, False, 1)


def classify_low_index(domain: ConvexToricDomain, max_index: int) -> dict[int, list[OrbitSet]]:
    """Orbit sets grouped by ECH index, for every index 0..max_index."""
    table: dict[int, list[OrbitSet]] = {i: [] for i in range(max_index + 1)}
    for s in generators_up_to_index(domain, max_index):
        table[s.index].append(s.generator.to_orbit_set())
    return table


@dataclass(frozen=True)
class CapacitySequence:
    domain: ConvexToricDomain
    values: tuple[Fraction, ...]
    witnesses: tuple[ConvexGenerator, ...] = ()

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


def _area(domain: ConvexToricDomain) -> Fraction:
    verts = domain.profile.vertices()
    twice = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(verts, verts[1:] + verts[:1]))
    return abs(twice) / 2


def _capacity_table(
    domain: ConvexToricDomain, top: int, budget: Fraction
) -> list[Optional[tuple[Fraction, tuple[Edge, ...]]]]:
    """Min action (and a minimizer) for each index 2k <= 2*top, within ``budget``.

    Dynamic program over directions in slope order.  The state is
    (index so far, x-intercept so far): the index gained by later edges only
    depends on those two numbers, and actions add up, so keeping the cheapest
    path per state is exact.  Anything not found within ``budget`` is None.
    """
    max_index = 2 * top
    dirs, int_budget, denom = _integerize(_sorted_directions(directions_within(domain, budget)), budget)
    states: dict[tuple[int, int], tuple[int, tuple[Edge, ...]]] = {(0, 0): (0, ())}

    def relax(table, key, act, edges) -> None:
        cur = table.get(key)
        if cur is None or act < cur[0] or (act == cur[0] and _key(edges) < _key(cur[1])):
            table[key] = (act, edges)

    for p, q, cost in dirs:
        mixed = p > 0 and q > 0
        nxt = dict(states)
        for (idx, x), (act, edges) in states.items():
            m = 1
            while True:
                new_act = act + m * cost
                if new_act > int_budget:
                    break
                ie = idx + _index_step(p, q, m, x)
                if (ie - 1 if mixed else ie) > max_index:
                    break
                nx = x + m * q
                if ie <= max_index:
                    relax(nxt, (ie, nx), new_act, edges + (Edge(p, q, m, E),))
                if mixed:
                    relax(nxt, (ie - 1, nx), new_act, edges + (Edge(p, q, m, H),))
                m += 1
        states = nxt

    best: list[Optional[tuple[int, tuple[Edge, ...]]]] = [None] * (top + 1)
    for (idx, _x), (act, edges) in states.items():
        if idx % 2:
            continue
        k = idx // 2
        cur = best[k]
        if cur is None or act < cur[0] or (act == cur[0] and _key(edges) < _key(cur[1])):
            best[k] = (act, edges)
    return [None if entry is None else (Fraction(entry[0], denom), entry[1]) for entry in best]


def _key(edges: tuple[Edge, ...]) -> tuple:
    return tuple(_edge_sort_key(ed) for ed in edges)


def capacity_upper_bound(domain: ConvexToricDomain, k: int) -> Fraction:
    """k parallel unit edges along the shorter axis realize index 2k."""
    return k * min(domain.a, domain.f0)


def capacities(domain: ConvexToricDomain, top: int) -> CapacitySequence:
    """c_0, ..., c_top computed in one shared search.

    The action budget is deepened from a volume-based guess until every index
    0, 2, ..., 2*top is reached; the budget top * min(a, f(0)) always suffices.
    """
    if top < 0:
        raise InvalidParameter("capacity index must be >= 0")
    if top == 0:
        return CapacitySequence(domain, (Fraction(0),), (ConvexGenerator(),))
    upper = capacity_upper_bound(domain, top)
    guess = Fraction(math.isqrt(math.ceil(4 * _area(domain) * top * 64)) + 1, 8)
    budget = min(upper, max(guess, min(domain.a, domain.f0)))
    while True:
        table = _capacity_table(domain, top, budget)
        if all(entry is not None for entry in table):
            break
        if budget >= upper:
            raise AssertionError("capacity search failed below the proven upper bound")
        budget = min(upper, budget * Fraction(3, 2))
    values = tuple(entry[0] for entry in table)
    witnesses = tuple(ConvexGenerator(entry[1]) for entry in table)
    return CapacitySequence(domain, values, witnesses)


def capacity(domain: ConvexToricDomain, k: int) -> Fraction:
    if k < 0:
        raise InvalidParameter("capacity index must be >= 0")
    return capacities(domain, k)[k]


def capacity_minimizers(domain: ConvexToricDomain, k: int) -> list[ConvexGenerator]:
    """Every generator of index 2k whose action equals c_k."""
    ck = capacity(domain, k)
    if k == 0:
        return [ConvexGenerator()]
    found = enumerate_scored_generators(domain, ck, max_index=2 * k, workers=1)
    return [s.generator for s in found if s.index == 2 * k and s.action == ck]
