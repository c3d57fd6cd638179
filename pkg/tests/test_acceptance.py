"""The ten acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""
import random
import time
from fractions import Fraction as F

import pytest

from toric_ech import (
    EndSpec,
    RadiusInterval,
    UniquenessVerdict,
    Verdict,
    automatic_transversality,
    breaking_analysis,
    capacities,
    capacity,
    classify_low_index,
    contains,
    ech_index,
    ellipsoid_certificate,
    enumerate_generators,
    enumerate_orbit_sets,
    fredholm_index,
    generator_action,
    make_ellipsoid,
    noncontractibility_certificate,
    h,
    orbit_action,
    reflect,
    scale,
    two_cylinder_uniqueness,
)

from oracles import (
    ellipsoid_capacities,
    hull_domain,
    random_domain,
    random_nested_pair,
    support_by_vertices,
)

LOW_INDEX_TABLE = {
    0: ["{}"],
    1: [],
    2: ["e_{0,1}", "e_{1,0}"],
    3: ["h_{1,1}"],
    4: ["e_{0,1}^2", "e_{1,1}", "e_{1,0}^2"],
}


def _domains(seed: int, count: int):
    rng = random.Random(seed)
    return [random_domain(rng) for _ in range(count)]


@pytest.mark.criterion(1, "low-index classification on 25 random profiles")
def test_criterion_1_low_index_classification():
    for dom in _domains(101, 25):
        start = time.perf_counter()
        table = classify_low_index(dom, 4)
        elapsed = time.perf_counter() - start
        got = {i: sorted(str(s) for s in sets) for i, sets in table.items()}
        assert got == {i: sorted(v) for i, v in LOW_INDEX_TABLE.items()}, str(dom)
        assert elapsed < 1.0, f"{dom}: {elapsed:.2f} s"


@pytest.mark.criterion(2, "closed forms for c_1 and c_2 on 200 random profiles")
def test_criterion_2_closed_form_capacities():
    start = time.perf_counter()
    for dom in _domains(202, 200):
        assert capacity(dom, 1) == min(dom.a, dom.f0), str(dom)
        assert capacity(dom, 2) == min(2 * dom.a, support_by_vertices(dom, 1, 1), 2 * dom.f0), str(dom)
    assert time.perf_counter() - start < 30


@pytest.mark.criterion(3, "ellipsoid capacities against the sorted {ma+nb} oracle, k <= 50")
def test_criterion_3_ellipsoid_oracle():
    start = time.perf_counter()
    for a, b in [(1, 1), (1, 2), (3, 5), (2, 7), (F(13, 5), 3)]:
        got = list(capacities(make_ellipsoid(a, b), 50).values)
        assert got == ellipsoid_capacities(a, b, 50), (a, b)
    assert time.perf_counter() - start < 60


def naive_capacities(dom, top: int) -> list:
    """Exhaustive enumeration within a growing budget, no index pruning."""
    budget = min(dom.a, dom.f0)
    while True:
        best = {}
        for gen in enumerate_generators(dom, budget):
            idx = ech_index(gen)
            if idx % 2 == 0 and idx <= 2 * top:
                act = generator_action(gen, dom)
                best[idx // 2] = min(best.get(idx // 2, act), act)
        if len(best) == top + 1:
            return [best[k] for k in range(top + 1)]
        budget *= F(5, 4)


@pytest.mark.criterion(4, "optimized search equals unpruned enumeration, k <= 12, 20 profiles")
def test_criterion_4_naive_equivalence():
    for dom in _domains(404, 20):
        assert list(capacities(dom, 12).values) == naive_capacities(dom, 12), str(dom)


@pytest.mark.criterion(5, "monotonicity on 200 nested pairs and exact scaling, k <= 20")
def test_criterion_5_monotonicity_and_scaling():
    rng = random.Random(505)
    for _ in range(200):
        inner, outer = random_nested_pair(rng)
        assert contains(inner, outer)
        ci, co = capacities(inner, 20).values, capacities(outer, 20).values
        assert all(x <= y for x, y in zip(ci, co)), (str(inner), str(outer))
        lam = F(rng.randint(1, 9), rng.randint(1, 9))
        assert capacities(scale(inner, lam), 20).values == tuple(lam * v for v in ci)


@pytest.mark.criterion(6, "index >= 5 forces action >= c_2, 50 profiles")
def test_criterion_6_index_action_bound():
    for dom in _domains(606, 50):
        c2 = capacity(dom, 2)
        checked = 0
        for s in enumerate_orbit_sets(dom, 3 * c2):
            if s.index >= 5:
                checked += 1
                assert s.action >= c2, (str(dom), str(s.orbit_set))
        assert checked > 0


@pytest.mark.criterion(7, "ellipsoid certificates: noncontractible, ball sandwich, open regime")
def test_criterion_7_certificates():
    start = time.perf_counter()
    assert ellipsoid_certificate(1, 2, F(3, 2), 3).verdict is Verdict.NONCONTRACTIBLE
    rep = ellipsoid_certificate(1, 2, 3, 4)
    assert rep.verdict is Verdict.CONTRACTIBLE_BY_BALL_SANDWICH
    assert rep.ball_interval == RadiusInterval(2, 3)
    assert ellipsoid_certificate(1, 3, F(5, 2), 4).verdict is Verdict.INCONCLUSIVE
    assert time.perf_counter() - start < 1


def hypothesis_instances(seed: int, count: int):
    """Nested pairs meeting every hypothesis: a < c < f1(0) < f2(0), c_1(outer) < c_2(inner)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        inner = random_domain(rng)
        if inner.a > inner.f0:
            inner = reflect(inner)
        if inner.a == inner.f0:
            continue
        top = min(inner.f0, capacity(inner, 2))
        if top <= inner.a:
            continue
        c = inner.a + F(rng.randint(1, 9), 10) * (top - inner.a)
        f2 = inner.f0 + F(rng.randint(1, 8), 4)
        outer = hull_domain(inner.breakpoints, [(inner.a, 0)], [(c, 0), (0, f2)])
        assert outer.a == c and outer.f0 == f2
        out.append((inner, outer))
    return out


@pytest.mark.criterion(8, "breaking analysis leaves only e_{0,1} on 50 hypothesis instances")
def test_criterion_8_breaking_analysis():
    for inner, outer in hypothesis_instances(808, 50):
        cert = noncontractibility_certificate(inner, outer)
        assert cert.verdict is Verdict.NONCONTRACTIBLE, (str(inner), str(outer))
        rep = breaking_analysis(inner, outer)
        assert [str(s) for s in rep.survivors] == ["e_{0,1}"], (str(inner), str(outer))
        assert rep.hypothesis_held
        assert rep.window[1] < orbit_action(inner, h(1, 1))
        assert rep.consistency_failures == []


@pytest.mark.criterion(9, "two-cylinder uniqueness chain for CZ = 1, 1")
def test_criterion_9_uniqueness():
    res = two_cylinder_uniqueness(1, 1)
    assert res.verdict is UniquenessVerdict.IMPOSSIBLE
    steps = {(s.quantity, s.relation): s.value for s in res.trace}
    assert steps[("w(zeta_a)", ">=")] == 2
    assert steps[("w(zeta_c)", "<=")] == 0
    assert steps[("w(u1+u2)", "<=")] == -2
    assert steps[("delta(u1+u2)", "<=")] == -1


@pytest.mark.criterion(10, "cylinder index 0 and automatic transversality")
def test_criterion_10_fredholm_transversality():
    assert fredholm_index(0, 0, [EndSpec("+", 1), EndSpec("-", 1)]) == 0
    assert automatic_transversality(0, 0, 0)
