"""Planar fields: homogeneous split, infinity chart change, invariant curves,
variational coefficients, Darboux verification."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from ratcert.algebra import Poly, RatFunc
from ratcert.planar import (
    BivarPoly,
    BivarRatFunc,
    DegenerateCurveError,
    InvariantCurve,
    PlanarField,
    family_from_P,
    fields_equivalent,
    foliation_derivatives,
    homogeneous_parts,
    infinity_transform,
    is_invariant_curve,
    lve2_coefficients_from_parts,
    verify_darboux_integral,
)
from conftest import projective_relations_hold, rand_bivar, rand_family

Z1, Z2 = BivarPoly.var(0), BivarPoly.var(1)
XV, YV = BivarPoly.var(0), BivarPoly.var(1)
X = Poly.x()


def cubic_example_field(a=1, b=1, c=1) -> PlanarField:
    """(x^3 - y) d/dx + y*(x^2 - c*x - b - a*y) d/dy"""
    q = YV * (XV**2 - c * XV - BivarPoly.const(b) - a * YV)
    return PlanarField(XV**3 - YV, q)


def elementary_example_field(a=1) -> PlanarField:
    """(x^2 - y) d/dx + y*(x + a) d/dy"""
    return PlanarField(XV**2 - YV, YV * (XV + BivarPoly.const(a)))


class TestHomogeneousParts:
    def test_two_parts(self):
        parts = homogeneous_parts(Z2**2 - Z1)
        assert parts == [BivarPoly.zero(), -Z1, Z2**2]

    def test_zero(self):
        assert homogeneous_parts(BivarPoly.zero()) == []

    def test_quadratic_field_component(self):
        # a*b*z1^2 + c*z1*z2 - z2^2 + z1 at a = b = c = 1
        p = Z1**2 + Z1 * Z2 - Z2**2 + Z1
        parts = homogeneous_parts(p)
        assert parts[1] == Z1
        assert parts[2] == Z1**2 + Z1 * Z2 - Z2**2

    def test_sum_recovers_and_degrees_match(self):
        rng = random.Random(31)
        for _ in range(50):
            p = rand_bivar(rng, 5)
            parts = homogeneous_parts(p)
            total = BivarPoly.zero()
            for d, part in enumerate(parts):
                assert part.is_homogeneous(d)
                total = total + part
            assert total == p


class TestInfinityTransform:
    def test_rotation_like_field(self):
        out = infinity_transform(PlanarField(Z2, Z1))
        assert out.p == XV**2 - 1
        assert out.q == XV * YV

    def test_radial_component(self):
        out = infinity_transform(PlanarField(Z1, BivarPoly.zero()))
        assert out.p == XV
        assert out.q == YV

    def test_family_round_trip_to_quotient_form(self):
        # transformed family must be exactly (x^k - y, y*sum P_j(1,x)*y^(n-j))
        rng = random.Random(4)
        for _ in range(40):
            parts, n, k = rand_family(rng)
            field = family_from_P(parts, n, k)
            out = infinity_transform(field)
            expected_p = BivarPoly.from_univar(Poly.monomial(k), 0) - YV
            inner = BivarPoly.zero()
            for j in range(1, n + 1):
                pj = BivarPoly.from_univar(parts[j].at_first_one(), 0)
                inner = inner + pj * YV ** (n - j)
            assert out.p == expected_p
            assert out.q == YV * inner

    def test_chart_relations(self):
        rng = random.Random(9)
        count = 0
        while count < 25:
            p = rand_bivar(rng, 4)
            q = rand_bivar(rng, 4)
            if p.is_zero and q.is_zero:
                continue
            assert projective_relations_hold(PlanarField(p, q))
            count += 1

    @given(
        terms_p=st.dictionaries(
            st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=5
        ),
        terms_q=st.dictionaries(
            st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=5
        ),
    )
    @settings(deadline=None, max_examples=80)
    def test_chart_relations_property(self, terms_p, terms_q):
        p, q = BivarPoly(terms_p), BivarPoly(terms_q)
        if p.is_zero and q.is_zero:
            return
        assert projective_relations_hold(PlanarField(p, q))


class TestFamilyFromP:
    def test_minimal_quadratic_family(self):
        fam = family_from_P([BivarPoly.zero(), BivarPoly.zero(), Z1**2], 2, 2)
        parts = homogeneous_parts(fam.q)
        assert parts[1] == Z1
        assert parts[2] == Z1 * Z2 - Z2**2
        out = infinity_transform(fam)
        assert fields_equivalent(out, PlanarField(XV**2 - YV, YV))

    def test_cubic_family_constant_profile(self):
        # P_3(1,x) = a, P_2(1,x) = b gives foliation y*(b*y + a)/(x^3 - y)
        a, b = 1, 1
        parts = [BivarPoly.zero(), BivarPoly.zero(), b * Z1**2, a * Z1**3]
        out = infinity_transform(family_from_P(parts, 3, 3))
        expected = PlanarField(XV**3 - YV, YV * (b * YV + BivarPoly.const(a)))
        assert fields_equivalent(out, expected)

    def test_cubic_family_linear_profile(self):
        # P_3 = a*z1^3 + b*z1^2*z2 gives P_3(1,x) = a + b*x
        a, b = 1, 1
        parts = [BivarPoly.zero(), BivarPoly.zero(), BivarPoly.zero(), a * Z1**3 + b * Z1**2 * Z2]
        out = infinity_transform(family_from_P(parts, 3, 3))
        expected = PlanarField(XV**3 - YV, YV * (BivarPoly.const(a) + b * XV))
        assert fields_equivalent(out, expected)

    def test_precondition_failures_name_the_part(self):
        with pytest.raises(ValueError, match="part 2"):
            family_from_P([BivarPoly.zero(), BivarPoly.zero(), Z2**2], 2, 2)
        with pytest.raises(ValueError, match="part 0"):
            family_from_P([BivarPoly.const(1), BivarPoly.zero(), Z1**2], 2, 2)
        with pytest.raises(ValueError, match="part 1"):
            family_from_P([BivarPoly.zero(), Z1**2, Z1**2], 2, 2)
        with pytest.raises(ValueError):
            family_from_P([BivarPoly.zero(), BivarPoly.zero(), Z1**2], 2, 5)
        with pytest.raises(ValueError):
            family_from_P([BivarPoly.zero(), Z1], 1, 1)


class TestInvariantCurve:
    def test_cubic_example_keeps_zero_line(self):
        assert is_invariant_curve(cubic_example_field(), RatFunc.zero())

    def test_elementary_example_keeps_zero_line(self):
        assert is_invariant_curve(elementary_example_field(), RatFunc.zero())

    def test_translation_field_does_not(self):
        field = PlanarField(BivarPoly.const(1), BivarPoly.const(1))
        assert not is_invariant_curve(field, RatFunc.zero())

    def test_degenerate_parametrisation_distinct_error(self):
        field = PlanarField(YV, YV + XV)
        with pytest.raises(DegenerateCurveError):
            is_invariant_curve(field, RatFunc.zero())

    def test_nonzero_graph_curve(self):
        # y = x is invariant for x d/dx + y d/dy
        field = PlanarField(XV, YV)
        assert is_invariant_curve(field, RatFunc(X))
        assert InvariantCurve(RatFunc(X)).holds_for(field)


def _series_derivatives(field: PlanarField, phi: RatFunc, count: int) -> list[RatFunc]:
    """Independent route to the curve-restricted y-derivatives: expand
    Q(x, phi + t)/P(x, phi + t) as a power series in t by exact series
    division and scale the Taylor coefficients."""
    import math

    def shifted_coeffs(p: BivarPoly) -> list[RatFunc]:
        rows = p.rows_by_second()
        maxj = max(rows, default=0)
        out = [RatFunc.zero()] * (maxj + 1)
        for j, rowpoly in rows.items():
            base = RatFunc(rowpoly)
            for t_pow in range(j + 1):
                out[t_pow] = out[t_pow] + base * math.comb(j, t_pow) * phi ** (j - t_pow)
        return out

    num = shifted_coeffs(field.q)
    den = shifted_coeffs(field.p)
    order = count + 1
    num += [RatFunc.zero()] * (order - len(num))
    den += [RatFunc.zero()] * (order - len(den))
    inv = [RatFunc.zero()] * order
    inv[0] = RatFunc.one() / den[0]
    for r in range(1, order):
        acc = RatFunc.zero()
        for i in range(1, r + 1):
            acc = acc + den[i] * inv[r - i]
        inv[r] = -acc / den[0]
    series = [RatFunc.zero()] * order
    for r in range(order):
        for i in range(r + 1):
            series[r] = series[r] + num[i] * inv[r - i]
    return [series[j] * math.factorial(j) for j in range(1, count + 1)]


class TestFoliationDerivatives:
    def test_cubic_example_values(self):
        b1, b2 = foliation_derivatives(cubic_example_field(), RatFunc.zero(), 2)
        assert b1 == RatFunc(X**2 - X - 1, X**3)
        assert b2 == -2 * (RatFunc(1, X**3) - RatFunc(X**2 - X - 1, X**6))

    def test_linear_slope(self):
        field = PlanarField(BivarPoly.const(1), YV)  # slope y
        b1, b2 = foliation_derivatives(field, RatFunc.zero(), 2)
        assert b1 == RatFunc.one()
        assert b2.is_zero

    def test_elementary_example_against_part_formula(self):
        field = elementary_example_field()
        b1, b2 = foliation_derivatives(field, RatFunc.zero(), 2)
        assert b1 == RatFunc(X + 1, X**2)
        # read the part data off the field shape: q = y*(x+1) means
        # P_N(1,x) = x+1, q has no y^2 row so P_{N-1}(1,x) = 0, and the
        # y-rows of p give x*P_{N-1} - Q_{N-1} = -1, x*P_N - Q_N = x^2
        pn = X + 1
        qn = X * pn - X**2
        qn1 = Poly.one()
        beta_formula = RatFunc(2 * (pn * qn1 - Poly.zero() * qn), (X * pn - qn) ** 2)
        assert b2 == beta_formula

    def test_matches_series_division_route(self):
        rng = random.Random(12)
        checked = 0
        while checked < 25:
            parts, n, k = rand_family(rng, max_n=4)
            field = infinity_transform(family_from_P(parts, n, k))
            phi = RatFunc.zero()
            direct = foliation_derivatives(field, phi, 4)
            oracle = _series_derivatives(field, phi, 4)
            assert direct == oracle
            checked += 1

    def test_nonzero_curve_matches_series_route(self):
        field = PlanarField(XV, YV)  # foliation y/x, y = x invariant
        phi = RatFunc(X)
        direct = foliation_derivatives(field, phi, 3)
        oracle = _series_derivatives(field, phi, 3)
        assert direct == oracle

    def test_requires_invariance(self):
        field = PlanarField(BivarPoly.const(1), BivarPoly.const(1))
        with pytest.raises(ValueError):
            foliation_derivatives(field, RatFunc.zero(), 2)


class TestLve2FromParts:
    def test_constant_profile_family(self):
        for k in (2, 3, 4):
            n = max(k, 2)
            parts = [BivarPoly.zero()] * (n + 1)
            parts[n] = Z1**n
            if n - 1 >= 1:
                parts[n - 1] = Z1 ** (n - 1)
            field = family_from_P(parts, n, k)
            alpha, beta = lve2_coefficients_from_parts(field)
            assert alpha == RatFunc(1, X**k)
            assert beta == RatFunc(2, X ** (2 * k)) + RatFunc(2, X**k)

    def test_linear_profile_quadratic_family(self):
        parts = [BivarPoly.zero(), BivarPoly.zero(), Z1**2 + Z1 * Z2]
        field = family_from_P(parts, 2, 2)
        alpha, beta = lve2_coefficients_from_parts(field)
        assert alpha == RatFunc(X + 1, X**2)
        assert beta == RatFunc(2 * (X + 1), X**4)

    def test_agrees_with_curve_derivatives(self):
        rng = random.Random(21)
        checked = 0
        while checked < 30:
            parts, n, k = rand_family(rng, max_n=5)
            field = family_from_P(parts, n, k)
            alpha, beta = lve2_coefficients_from_parts(field)
            b1, b2 = foliation_derivatives(infinity_transform(field), RatFunc.zero(), 2)
            assert alpha == b1 and beta == b2
            checked += 1


class TestDarboux:
    def test_elementary_example_integral(self):
        field = elementary_example_field()
        r = BivarRatFunc(XV + YV, YV)
        s = BivarRatFunc(-(XV + 1), XV + YV)
        assert verify_darboux_integral(field, r, s)

    def test_constants_always_pass(self):
        field = cubic_example_field()
        assert verify_darboux_integral(field, BivarRatFunc(BivarPoly.const(1)), BivarRatFunc(BivarPoly.zero()))

    def test_non_integral_rejected(self):
        field = PlanarField(BivarPoly.const(1), BivarPoly.zero())
        assert not verify_darboux_integral(field, BivarRatFunc(XV), BivarRatFunc(BivarPoly.zero()))

    def test_zero_r_rejected(self):
        with pytest.raises(ValueError):
            verify_darboux_integral(cubic_example_field(), BivarRatFunc(BivarPoly.zero()), BivarRatFunc(XV))


class TestFieldEquivalence:
    def test_scaling_is_equivalent(self):
        a = PlanarField(XV, YV)
        b = PlanarField(3 * XV, 3 * YV)
        c = PlanarField(XV * XV, XV * YV)
        assert fields_equivalent(a, b)
        assert fields_equivalent(a, c)

    def test_different_foliation(self):
        assert not fields_equivalent(PlanarField(XV, YV), PlanarField(YV, XV))
