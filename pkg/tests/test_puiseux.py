"""Newton polygons and Puiseux expansions."""

from fractions import Fraction

import pytest

from finitude.algebra import parse_bivariate
from finitude.errors import NonExactCenter, OrderTooSmall
from finitude.monodromy import monodromy_group, singular_points
from finitude.permgroups import cycle_type
from finitude.puiseux import (INFINITY, newton_polygon, puiseux_expand,
                              ramification_multiset, residual_error)


class TestPolygon:
    def test_sqrt(self):
        poly = newton_polygon(parse_bivariate("y^2 - x"), 0)
        assert poly.edges == [(Fraction(1, 2), 2)]

    def test_cusp(self):
        poly = newton_polygon(parse_bivariate("y^3 - x^2"), 0)
        assert poly.edges == [(Fraction(2, 3), 3)]

    def test_quintic_at_infinity(self):
        poly = newton_polygon(parse_bivariate("y^5 + y - x"), INFINITY)
        assert poly.edges == [(Fraction(1, 5), 5)]

    def test_length_conservation(self):
        poly = newton_polygon(parse_bivariate("y^4 - x*y - x^3"), 0)
        assert sum(length for _s, length in poly.edges) == 4

    def test_non_exact_center(self):
        with pytest.raises(NonExactCenter):
            puiseux_expand(parse_bivariate("y^2 - x"), 0.123456789j,
                           exact=True)


class TestExpansion:
    def test_sqrt_pair(self):
        series = puiseux_expand(parse_bivariate("y^2 - x"), 0, order=3)
        assert len(series) == 2
        leads = sorted(s.leading_coefficient.real for s in series)
        assert leads == pytest.approx([-1.0, 1.0])
        for s in series:
            assert s.leading_exponent == Fraction(1, 2)
            assert s.ramification == 2

    def test_binomial_series(self):
        series = puiseux_expand(parse_bivariate("y^2 - (1 + x)"), 0, order=2)
        plus = max(series, key=lambda s: s.leading_coefficient.real)
        got = {e: c for e, c in plus.terms}
        assert got[Fraction(0)] == pytest.approx(1.0)
        assert got[Fraction(1)] == pytest.approx(0.5)
        assert got[Fraction(2)] == pytest.approx(-0.125)

    def test_conjugate_cyclic(self):
        n = 5
        series = puiseux_expand(parse_bivariate(f"y^{n} - x"), 0, order=1)
        assert len(series) == n
        coeffs = sorted((s.leading_coefficient for s in series),
                        key=lambda z: (round(z.real, 9), round(z.imag, 9)))
        for c in coeffs:
            assert abs(abs(c) - 1) < 1e-9

    def test_pole_branches(self):
        series = puiseux_expand(parse_bivariate("x*y^2 - 1"), 0, order=2)
        assert len(series) == 2
        for s in series:
            assert s.leading_exponent == Fraction(-1, 2)

    def test_tangential_double_point(self):
        P = parse_bivariate("(y - x)^2 - x^3")
        series = puiseux_expand(P, 0, order=3)
        assert len(series) == 2
        for s in series:
            terms = dict(s.terms)
            assert terms[Fraction(1)] == pytest.approx(1.0)
            assert abs(terms[Fraction(3, 2)]) == pytest.approx(1.0)

    def test_order_too_small(self):
        with pytest.raises(OrderTooSmall):
            puiseux_expand(parse_bivariate("x*y^2 - 1"), 0, order=Fraction(-2))

    def test_residuals(self):
        for expr, pt in [("y^2 - x", 0), ("y^3 - x^2", 0),
                         ("y^2 - (1+x)", 0), ("y^5 + y - x", INFINITY)]:
            P = parse_bivariate(expr)
            for s in puiseux_expand(P, pt, order=5):
                assert residual_error(P, s) < 1e-10

    def test_json_shape(self):
        s = puiseux_expand(parse_bivariate("y^2 - x"), 0, order=2)[0]
        data = s.to_json()
        assert data["ramification"] == 2
        assert data["exponents"][0] == "1/2"
        assert len(data["coefficients"][0]) == 2


class TestMonodromyConsistency:
    def test_cycle_types_match_ramification(self):
        for expr in ["y^5 + y - x", "y^3 - x^2", "y^4 + x*y + x^3 + 1"]:
            P = parse_bivariate(expr)
            act = monodromy_group(P)
            sing = singular_points(P)
            for loop, gen in zip(act.loops, act.generators):
                center = sing.points[loop.singular_index].center
                ram = ramification_multiset(P, center)
                assert ram == cycle_type(gen), (expr, center)

    def test_degree_conservation(self):
        for expr in ["y^5 + y - x", "y^4 - 2*x^2*y + x*y + x^4 - 1"]:
            P = parse_bivariate(expr)
            sing = singular_points(P)
            for enc in sing.points:
                ram = ramification_multiset(P, enc.center)
                assert sum(ram) == P.degree_y()
