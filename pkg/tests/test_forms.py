from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torickit.forms import (
    FORM_S,
    FORM_T,
    BinaryForm,
    factor_form,
    form_gcd,
    form_gcd_many,
    linear_root,
    params_equal,
)


def test_zero_normalization():
    assert BinaryForm((Fraction(0), Fraction(0))).is_zero
    assert BinaryForm.zero().is_zero
    with pytest.raises(ValueError):
        BinaryForm.zero().degree


def test_arithmetic_and_evaluation():
    s, t = FORM_S, FORM_T
    sq = s * s
    assert sq.evaluate(3, 1) == 9
    assert (s * t).evaluate(2, 5) == 10
    assert (2 * s + 3 * t).coefficients == (Fraction(3), Fraction(2))
    assert (s + (-1) * s).is_zero
    assert s.power(3).coefficients == (0, 0, 0, 1)


def test_gcd_examples():
    s, t = FORM_S, FORM_T
    assert form_gcd(s, t).degree == 0
    g = form_gcd(s * t * t, t * t * (s + t))
    assert g.coefficients == (Fraction(1), Fraction(0), Fraction(0))  # t^2
    double = (s + (-1) * t) * (s + (-1) * t)
    assert form_gcd(double, s + (-1) * t).degree == 1
    assert form_gcd_many([BinaryForm.zero(), s, t]).degree == 0
    assert form_gcd_many([BinaryForm.zero(), BinaryForm.zero()]).is_zero


def test_factor_examples():
    s, t = FORM_S, FORM_T
    product = s * t * (s + (-2) * t) * (s * s + t * t)
    factors = factor_form(product)
    degrees = sorted(f.degree for f, _ in factors)
    assert degrees == [1, 1, 1, 2]
    roots = {linear_root(f) for f, _ in factors if f.degree == 1}
    # roots at (0:1), (1:0), (2:1)
    assert any(params_equal(r, (0, 1)) for r in roots)
    assert any(params_equal(r, (1, 0)) for r in roots)
    assert any(params_equal(r, (2, 1)) for r in roots)


@given(
    st.lists(
        st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda p: any(p)),
        min_size=1,
        max_size=4,
    )
)
def test_factor_recovers_linear_roots(points):
    product = BinaryForm.constant(1)
    for s0, t0 in points:
        product = product * BinaryForm((-Fraction(s0), Fraction(t0)))
    factors = factor_form(product)
    assert sum(f.degree * m for f, m in factors) == product.degree
    recovered = []
    for f, mult in factors:
        assert f.degree == 1
        recovered.extend([linear_root(f)] * mult)
    assert len(recovered) == len(points)
    for s0, t0 in points:
        assert any(params_equal(r, (s0, t0)) for r in recovered)


@given(
    st.lists(st.integers(-9, 9), min_size=2, max_size=5),
    st.lists(st.integers(-9, 9), min_size=2, max_size=5),
)
def test_gcd_divides_both(a, b):
    f = BinaryForm(tuple(Fraction(x) for x in a))
    g = BinaryForm(tuple(Fraction(x) for x in b))
    d = form_gcd(f, g)
    if d.is_zero:
        assert f.is_zero and g.is_zero
        return
    for h in (f, g):
        if h.is_zero:
            continue
        # polynomial division: gcd divides h when the remainder vanishes
        from torickit.forms import _dehomogenize, _poly_divmod

        th, ph = _dehomogenize(h)
        td, pd = _dehomogenize(d)
        assert th >= td
        _, rem = _poly_divmod(ph, pd)
        assert not rem


def test_params_equal():
    assert params_equal((1, 0), (2, 0))
    assert params_equal((1, 2), (2, 4))
    assert not params_equal((1, 2), (1, 3))
    with pytest.raises(ValueError):
        params_equal((0, 0), (1, 1))
