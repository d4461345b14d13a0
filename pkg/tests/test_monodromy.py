"""Singular points, loops, continuation, and monodromy groups."""

import random

import pytest

from finitude.algebra import (BivariatePolynomial, UnivariatePolynomial,
                              parse_bivariate)
from finitude.errors import SquareFreeRequired
from finitude.monodromy import (auto_base_point, continue_roots,
                                generate_loops, loop_at_infinity_permutation,
                                monodromy_group, ordered_product,
                                singular_points)
from finitude.permgroups import cycle_type, cycles_string, inverse


class TestSingularPoints:
    def test_sqrt(self):
        s = singular_points(parse_bivariate("y^2 - x"))
        assert len(s) == 1 and abs(s.centers()[0]) < 1e-9

    def test_two_points(self):
        s = singular_points(parse_bivariate("y^2 - (x^2 - 1)"))
        got = sorted(z.real for z in s.centers())
        assert got == pytest.approx([-1.0, 1.0])

    def test_quintic_four_points(self):
        s = singular_points(parse_bivariate("y^5 + y - x"))
        assert len(s) == 4
        for z in s.centers():
            # roots of 3125 x^4 + 256
            assert abs(3125 * z ** 4 + 256) < 1e-6

    def test_squarefree_required(self):
        with pytest.raises(SquareFreeRequired):
            singular_points(parse_bivariate("(y - x)^2"))


class TestLoops:
    def test_single_point_radius(self):
        s = singular_points(parse_bivariate("y^2 - (x - 0)"))
        loops = generate_loops(s, base=2.0)
        assert len(loops) == 1
        # circular part has radius 1 (half the distance to the base)
        circle_pts = [w for w in loops[0].waypoints if abs(abs(w) - 1.0) < 1e-9]
        assert len(circle_pts) >= 64

    def test_empty_singular_set(self):
        s = singular_points(parse_bivariate("y^2 - (x^2 + 1) - x^4"))
        if len(s) == 0:
            assert generate_loops(s) == []

    def test_ordering_convention(self):
        s = singular_points(parse_bivariate("y^2 - (x^2 - 1)"))
        loops = generate_loops(s, base=3.0)
        ordered_centers = [s.centers()[l.singular_index] for l in loops]
        # documented convention: the sweep angle lives in (0, 2 pi], so the
        # point on the base direction (+1) closes the sweep and is listed
        # after -1 (and traveled first in the ordered product)
        assert ordered_centers[0].real < 0 < ordered_centers[1].real


class TestContinuation:
    def test_sqrt_transposition(self):
        P = parse_bivariate("y^2 - x")
        act = monodromy_group(P)
        assert [cycles_string(g) for g in act.generators] == ["(1 2)"]

    def test_cyclic_cover(self):
        for n in (3, 5, 8):
            act = monodromy_group(parse_bivariate(f"y^{n} - x"))
            assert act.group.order() == n
            assert cycle_type(act.generators[0]) == (n,)

    def test_contractible_loop_identity(self):
        P = parse_bivariate("y^2 - x")
        s = singular_points(P)
        from finitude.monodromy import Loop, base_roots
        base = auto_base_point(s)
        roots = base_roots(P, base)
        square = [base, base + 0.5, base + 0.5 + 0.5j, base + 0.5j, base]
        sigma = continue_roots(P, Loop(base, square, -1), roots)
        assert sigma == tuple(range(2))


class TestGroups:
    def test_quintic_s5(self):
        act = monodromy_group(parse_bivariate("y^5 + y - x"))
        assert act.group.order() == 120
        assert act.transitive

    def test_determinism(self):
        a = monodromy_group(parse_bivariate("y^5 + y - x"))
        b = monodromy_group(parse_bivariate("y^5 + y - x"))
        assert a.generators == b.generators
        assert a.base_point == b.base_point
        assert a.roots == b.roots

    def test_reducible_orbits(self):
        # (y^2 - x)(y - x^2) splits into a degree-2 and a degree-1 factor
        P = parse_bivariate("(y^2 - x)*(y - x^2)")
        act = monodromy_group(P)
        assert not act.transitive
        sizes = sorted(len(o) for o in act.orbits())
        assert sizes == [1, 2]
        for orbit, group in act.orbit_groups():
            assert group.degree == len(orbit)

    def test_generic_curves_sn(self):
        # dense random curves of degree n have full symmetric monodromy
        rng = random.Random(3)
        import math
        for n in (3, 4, 5, 6, 7):
            while True:
                rows = [UnivariatePolynomial([rng.randint(-5, 5),
                                              rng.randint(-5, 5)])
                        for _ in range(n)]
                rows.append(UnivariatePolynomial([1]))
                P = BivariatePolynomial(rows)
                if P.squarefree_y():
                    act = monodromy_group(P)
                    if act.group.order() == math.factorial(n):
                        break
            assert act.group.order() == math.factorial(n)


class TestProductRelation:
    CURVES = ["y^2 - x", "y^5 + y - x", "y^7 - x", "y^2 - (x^2 - 1)",
              "y^3 - x^2 - x - 1", "y^4 + x*y + x^3 + 1",
              "y^3 - 3*x*y - 2*x", "y^3 - 3*x*y - 2*x + x^3"]

    @pytest.mark.parametrize("expr", CURVES)
    def test_composite_equals_inverse_of_clockwise_circle(self, expr):
        P = parse_bivariate(expr)
        act = monodromy_group(P)
        if not act.generators:
            return
        s = singular_points(P)
        big_cw = loop_at_infinity_permutation(P, s, act.roots,
                                              clockwise=True)
        assert ordered_product(act.generators) == inverse(big_cw)


class TestReport:
    def test_report_shape(self):
        P = parse_bivariate("y^3 - x")
        act = monodromy_group(P)
        s = singular_points(P)
        report = act.report(s)
        assert report["group_order"] == 3
        assert report["transitive"] is True
        assert isinstance(report["generators"][0], str)
        assert len(report["singular_points"]) == 1
