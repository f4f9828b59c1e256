"""Factored meromorphic algebra: evaluation, orders, residues."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spheremin.algebra import (
    INF,
    FactoredMeromorphic,
    default_contour_radius,
    infinity_chart,
    is_infinity,
    monomial,
    one_form_order_at,
    residue_at,
    residue_at_infinity,
    residue_contour,
    residue_limit,
    same_point,
    shifted_power,
)
from spheremin.errors import (
    PoleEvaluation,
    SingularityInsideContour,
    SingularPoint,
    UnsupportedOrder,
)


def _poly_oracle(f: FactoredMeromorphic, z):
    """Independent evaluation through numpy polynomial expansion.

    Only valid when all exponents are positive (a plain polynomial)."""
    poly = np.polynomial.Polynomial([f.coefficient])
    for fac in f.factors:
        base = np.polynomial.Polynomial(
            [-fac.c] + [0.0] * (fac.degree - 1) + [1.0]
            if fac.kind == 1
            else [0.0, 1.0]
        )
        for _ in range(fac.exponent):
            poly = poly * base
    return poly(z)


# -- construction and evaluation --------------------------------------


def test_eval_simple_product():
    f = FactoredMeromorphic(2.0, [monomial(1), shifted_power(2, 1.0, -1)])
    # 2 z / (z^2 - 1)
    assert f.eval(2.0) == pytest.approx(4.0 / 3.0)
    assert f.eval(0.5j) == pytest.approx(1.0j / (-0.25 - 1.0))


def test_eval_matches_polynomial_expansion():
    f = FactoredMeromorphic(
        1.5, [monomial(2), shifted_power(3, 2.0 + 1.0j), shifted_power(1, -0.5, 2)]
    )
    rng = np.random.default_rng(7)
    z = rng.normal(size=40) + 1j * rng.normal(size=40)
    got = f.eval_array(z)
    want = _poly_oracle(f, z)
    assert np.allclose(got, want, rtol=1e-12)


def test_eval_zero_and_pole():
    f = FactoredMeromorphic(1.0, [shifted_power(2, 4.0), monomial(-1)])
    assert f.eval(2.0) == 0.0  # zero of z^2 - 4
    with pytest.raises(PoleEvaluation):
        f.eval(0.0)


def test_zero_coefficient_rejected():
    with pytest.raises(ValueError):
        FactoredMeromorphic(0.0, [monomial(1)])


def test_factor_merging_and_cancellation():
    f = FactoredMeromorphic(3.0, [monomial(2), monomial(-2)])
    assert f.factors == ()
    assert f.eval(123.0) == 3.0
    g = FactoredMeromorphic(
        1.0, [shifted_power(2, 1.0), shifted_power(2, 1.0)]
    )
    assert len(g.factors) == 1
    assert g.factors[0].exponent == 2


def test_shifted_power_zero_shift_collapses():
    f = shifted_power(3, 0.0, 2)
    assert f.kind == 0
    assert f.exponent == 6


def test_immutability():
    f = FactoredMeromorphic(1.0, [monomial(1)])
    with pytest.raises(AttributeError):
        f.coefficient = 2.0


def test_str_format():
    f = FactoredMeromorphic(-1.0, [monomial(-1), shifted_power(2, 0.25, -2)])
    assert str(f) == "-1 * z^-1 * (z^2 - 0.25)^-2"


def test_mul_and_inverse():
    f = FactoredMeromorphic(2.0, [monomial(1), shifted_power(2, 1.0)])
    g = f * f.inverse()
    assert g.factors == ()
    assert g.eval(0.7) == pytest.approx(1.0)
    h = f * 3.0
    assert h.eval(2.0) == pytest.approx(3.0 * f.eval(2.0))


def test_log_derivative_against_finite_difference():
    f = FactoredMeromorphic(
        2.0, [monomial(2), shifted_power(3, 1.0 + 0.5j, -1)]
    )
    z = 1.7 - 0.3j
    h = 1e-6
    fd = (cmath.log(f.eval(z + h)) - cmath.log(f.eval(z - h))) / (2.0 * h)
    assert f.log_derivative(z) == pytest.approx(fd, rel=1e-8)


def test_log_derivative_at_singular_point_raises():
    f = FactoredMeromorphic(1.0, [monomial(1)])
    with pytest.raises(SingularPoint):
        f.log_derivative(0.0)


# -- structure queries -------------------------------------------------


def test_orders_and_roots():
    f = FactoredMeromorphic(
        1.0, [monomial(-1), shifted_power(2, 4.0), shifted_power(2, 1.0, -2)]
    )
    assert f.order_at(0.0) == -1
    assert f.order_at(2.0) == 1
    assert f.order_at(-2.0) == 1
    assert f.order_at(1.0) == -2
    assert f.order_at(5.0) == 0
    assert f.order_at(INF) == -f.degree == 3
    assert sorted(f.finite_poles(), key=lambda z: z.real) == pytest.approx(
        [-1.0, 0.0, 1.0]
    )


def test_finite_roots_aggregate_shared_locations():
    # (z^2 - 1) / (z - 1): the shared root at 1 nets to order 0
    f = FactoredMeromorphic(
        1.0, [shifted_power(2, 1.0), shifted_power(1, 1.0, -1)]
    )
    roots = dict(
        (round(r.real, 9), o) for r, o in f.finite_roots()
    )
    assert roots == {-1.0: 1}


def test_one_form_order_at_infinity():
    # dz/z has simple poles at both 0 and infinity as a one-form
    f = FactoredMeromorphic(1.0, [monomial(-1)])
    assert f.order_at(0.0) == -1
    assert one_form_order_at(f, INF) == -1
    # constant one-form dz: double pole at infinity
    g = FactoredMeromorphic(1.0)
    assert one_form_order_at(g, INF) == -2


def test_infinity_chart_function_values():
    f = FactoredMeromorphic(2.0, [monomial(1), shifted_power(2, 3.0, -1)])
    g = infinity_chart(f)
    for z in (0.5 + 0.2j, 2.0, -1.3j):
        assert g.eval(1.0 / z) == pytest.approx(f.eval(z), rel=1e-12)


def test_same_point_and_infinity():
    assert same_point(INF, INF)
    assert not same_point(INF, 1e300)
    assert same_point(1.0, 1.0 + 1e-12)
    assert is_infinity(INF)
    assert not is_infinity(0.0)


# -- residues ----------------------------------------------------------


def test_residue_contour_simple_pole():
    f = FactoredMeromorphic(1.0, [monomial(-1)])
    assert residue_contour(f, 0.0) == pytest.approx(1.0, abs=1e-13)


def test_residue_contour_double_pole():
    # z / (z - 1)^2 has residue 1 at z = 1
    f = FactoredMeromorphic(1.0, [monomial(1), shifted_power(1, 1.0, -2)])
    assert residue_contour(f, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_residue_contour_callable_requires_radius():
    with pytest.raises(ValueError):
        residue_contour(lambda z: 1.0 / z, 0.0)
    val = residue_contour(lambda z: 1.0 / z, 0.0, radius=0.5)
    assert val == pytest.approx(1.0, abs=1e-13)


def test_residue_contour_rejects_enclosed_pole():
    f = FactoredMeromorphic(
        1.0, [monomial(-1), shifted_power(1, 0.1, -1)]
    )
    with pytest.raises(SingularityInsideContour):
        residue_contour(f, 0.0, radius=0.5)


def test_residue_limit_orders():
    f1 = FactoredMeromorphic(2.0, [shifted_power(2, 1.0, -1)])
    # 2/(z^2-1) = 2/((z-1)(z+1)): residue 1 at z=1
    assert residue_limit(f1, 1.0, 1) == pytest.approx(1.0)
    f2 = FactoredMeromorphic(1.0, [monomial(1), shifted_power(1, 1.0, -2)])
    assert residue_limit(f2, 1.0, 2) == pytest.approx(1.0)
    with pytest.raises(UnsupportedOrder):
        residue_limit(f2, 1.0, 3)
    with pytest.raises(ValueError):
        residue_limit(f1, 0.5, 1)  # not a pole there


def test_residue_limit_matches_contour():
    f = FactoredMeromorphic(
        1.5, [monomial(2), shifted_power(3, 8.0, -2), shifted_power(1, -4.0)]
    )
    for p in [2.0 * cmath.exp(2j * math.pi * j / 3) for j in range(3)]:
        lim = residue_limit(f, p, 2)
        con = residue_contour(f, p)
        assert lim == pytest.approx(con, rel=1e-10)


def test_residue_at_infinity_values():
    # dz/z: residue -1 at infinity (sum with +1 at 0 vanishes)
    f = FactoredMeromorphic(1.0, [monomial(-1)])
    assert residue_at_infinity(f) == pytest.approx(-1.0)
    # constant one-form: no residue anywhere
    assert residue_at_infinity(FactoredMeromorphic(3.0)) == 0.0
    # z dz: still no residue at infinity (order -3, even Laurent tail)
    assert residue_at_infinity(
        FactoredMeromorphic(1.0, [monomial(1)])
    ) == pytest.approx(0.0, abs=1e-13)


def test_residue_at_dispatch():
    # 1 / (z (z - 1)^3): simple pole at 0 (exact), order-3 pole at 1 (contour)
    f = FactoredMeromorphic(1.0, [monomial(-1), shifted_power(1, 1.0, -3)])
    assert residue_at(f, 0.0) == pytest.approx(-1.0, rel=1e-12)
    assert residue_at(f, 1.0) == pytest.approx(1.0, rel=1e-10)
    # regular point gives exactly zero
    assert residue_at(f, 5.0) == 0.0
    assert residue_at(f, INF) == pytest.approx(residue_at_infinity(f), rel=1e-10)


def test_default_contour_radius():
    f = FactoredMeromorphic(1.0, [monomial(1), shifted_power(1, 1.0)])
    assert default_contour_radius(f, 0.0) == pytest.approx(0.5)
    # entire function: falls back to a fixed radius
    assert default_contour_radius(FactoredMeromorphic(2.0), 0.0) == 1.0


def test_global_residue_theorem_fixed_cases():
    cases = [
        FactoredMeromorphic(1.0, [monomial(-1)]),
        FactoredMeromorphic(2.0, [monomial(-2), shifted_power(2, 1.0, -1)]),
        FactoredMeromorphic(
            1.0, [shifted_power(3, 1.0, -1), shifted_power(1, 2.0, -2)]
        ),
        FactoredMeromorphic(0.5j, [monomial(3), shifted_power(2, -1.0, -3)]),
    ]
    for f in cases:
        total = residue_at_infinity(f)
        for p in f.finite_poles():
            total += residue_at(f, p)
        assert abs(total) < 1e-10


# -- property tests ----------------------------------------------------

_nice = st.sampled_from([0.25, 0.5, 1.0, 2.0, -1.0, 1.0 + 1.0j, -0.5j])
_factors = st.lists(
    st.one_of(
        st.integers(-2, 2).filter(bool).map(monomial),
        st.tuples(st.integers(1, 3), _nice, st.integers(-2, 2).filter(bool)).map(
            lambda t: shifted_power(*t)
        ),
    ),
    min_size=1,
    max_size=3,
)


@settings(max_examples=40, deadline=None)
@given(_factors, st.complex_numbers(min_magnitude=3.0, max_magnitude=8.0))
def test_scalar_and_array_evaluation_agree(factors, z):
    f = FactoredMeromorphic(1.3, factors)
    got = f.eval_array(np.array([z]))[0]
    want = f.eval(z)
    assert cmath.isclose(got, want, rel_tol=1e-10)


@settings(max_examples=40, deadline=None)
@given(_factors, _factors)
def test_order_additivity_under_product(fa, fb):
    f, g = FactoredMeromorphic(1.0, fa), FactoredMeromorphic(1.0, fb)
    fg = f * g
    for p in [0.0, 1.0, -1.0, 0.5, INF]:
        assert fg.order_at(p) == f.order_at(p) + g.order_at(p)


@settings(max_examples=40, deadline=None)
@given(_factors)
def test_sphere_orders_balance(factors):
    # a meromorphic function on the sphere has equally many zeros and poles
    f = FactoredMeromorphic(2.0, factors)
    total = sum(o for _, o in f.finite_roots()) + f.order_at(INF)
    assert total == 0


@settings(max_examples=25, deadline=None)
@given(_factors)
def test_infinity_chart_round_trip(factors):
    f = FactoredMeromorphic(1.0 - 0.5j, factors)
    g = infinity_chart(infinity_chart(f))
    for z in (0.37 + 0.61j, -1.84, 2.0 + 3.0j):
        try:
            want = f.eval(z)
        except PoleEvaluation:
            continue
        assert cmath.isclose(g.eval(z), want, rel_tol=1e-9, abs_tol=1e-12)
