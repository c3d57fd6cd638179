from fractions import Fraction as F

import pytest

from toric_ech import (
    InvalidParameter,
    OrbitFamilyLabel,
    OrbitSet,
    e,
    enumerate_orbit_families,
    enumerate_orbit_sets,
    h,
    make_ball,
    make_ellipsoid,
    make_polydisk,
    make_polygon,
    orbit_action,
    scale,
)

TRI12 = make_ellipsoid(1, 2)


class TestLabels:
    @pytest.mark.parametrize("p,q", [(0, 0), (2, 2), (-1, 1), (2, 4)])
    def test_invalid(self, p, q):
        with pytest.raises(InvalidParameter):
            e(p, q)

    def test_axis_orbits_are_elliptic(self):
        with pytest.raises(InvalidParameter):
            h(0, 1)
        with pytest.raises(InvalidParameter):
            h(1, 0)

    def test_rendering(self):
        assert str(e(0, 1)) == "e_{0,1}"
        assert str(h(2, 1)) == "h_{2,1}"
        assert str(OrbitSet.of({e(0, 1): 2, h(1, 1): 1})) == "e_{0,1}^2 h_{1,1}"
        assert str(OrbitSet()) == "{}"

    def test_hyperbolic_multiplicity(self):
        with pytest.raises(InvalidParameter):
            OrbitSet.of({h(1, 1): 2})
        with pytest.raises(InvalidParameter):
            OrbitSet.of({e(1, 1): 0})

    def test_orbit_set_normalizes(self):
        a = OrbitSet(((e(1, 0), 1), (e(0, 1), 1), (e(1, 0), 1)))
        assert a == OrbitSet.of({e(0, 1): 1, e(1, 0): 2})


class TestActions:
    def test_axis_orbits(self):
        dom = make_polygon([(0, 3), (1, 3), ("5/2", 0)])
        assert orbit_action(dom, e(0, 1)) == dom.a == F(5, 2)
        assert orbit_action(dom, e(1, 0)) == dom.f0 == 3

    def test_mixed(self):
        assert orbit_action(make_polydisk(1, 1), e(1, 1)) == 2
        assert orbit_action(TRI12, h(1, 1)) == orbit_action(TRI12, e(1, 1)) == 2

    def test_orbit_set_action(self):
        assert OrbitSet.of({e(0, 1): 2, h(1, 1): 1}).action(TRI12) == 4


def _families(dom, bound):
    return [(str(f.label), f.action) for f in enumerate_orbit_families(dom, bound)]


class TestEnumerateFamilies:
    def test_ball(self):
        # support of the unit triangle in direction (q, p) is max(q, p)
        assert _families(make_ball(1), F(5, 2)) == [
            ("e_{0,1}", 1), ("e_{1,0}", 1), ("e_{1,1}", 1), ("h_{1,1}", 1),
            ("e_{1,2}", 2), ("h_{1,2}", 2), ("e_{2,1}", 2), ("h_{2,1}", 2),
        ]

    def test_below_minimum(self):
        assert enumerate_orbit_families(make_ellipsoid(2, 3), F(3, 2)) == []

    def test_triangle(self):
        assert _families(TRI12, 1) == [("e_{0,1}", 1)]
        assert _families(TRI12, 2) == [("e_{0,1}", 1), ("e_{1,0}", 2), ("e_{1,1}", 2), ("h_{1,1}", 2),
                                       ("e_{1,2}", 2), ("h_{1,2}", 2)]

    def test_bound_must_be_positive(self):
        with pytest.raises(InvalidParameter):
            enumerate_orbit_families(TRI12, 0)


def _sets(dom, bound):
    return {str(s.orbit_set): (s.action, s.index) for s in enumerate_orbit_sets(dom, bound)}


class TestEnumerateSets:
    def test_ball_unit(self):
        assert _sets(make_ball(1), 1) == {"{}": (0, 0), "e_{0,1}": (1, 2), "e_{1,0}": (1, 2),
                                          "e_{1,1}": (1, 4), "h_{1,1}": (1, 3)}

    def test_below_minimum(self):
        assert _sets(make_ellipsoid(2, 3), 1) == {"{}": (0, 0)}

    def test_triangle(self):
        assert _sets(TRI12, 2) == {
            "{}": (0, 0), "e_{0,1}": (1, 2), "e_{0,1}^2": (2, 4), "e_{1,0}": (2, 2),
            "e_{1,1}": (2, 4), "h_{1,1}": (2, 3), "e_{1,2}": (2, 6), "h_{1,2}": (2, 5),
        }

    def test_sorted(self):
        found = enumerate_orbit_sets(make_polydisk(1, 2), 3)
        keys = [(s.action, s.index) for s in found]
        assert keys == sorted(keys)

    def test_scaling(self):
        dom = make_polygon([(0, 2), (1, 1), ("3/2", 0)])
        base = _sets(dom, 2)
        scaled = _sets(scale(dom, 3), 6)
        assert {k: (3 * a, i) for k, (a, i) in base.items()} == scaled
