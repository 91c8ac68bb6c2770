import numpy as np
import pytest
from hypothesis import given, strategies as st

from minstab.errors import CapacityError
from minstab.series import (CoefficientSeries, antiderivative, default_n_max, derivative,
                            evaluate, multiply, rescale_lemma)

complexes = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
coeff_lists = st.lists(complexes, min_size=1, max_size=8)


def S(c, cap=None):
    return CoefficientSeries(c, cap)


def test_multiply_difference_of_squares():
    assert multiply(S([1, 1]), S([1, -1])) == S([1, 0, -1])


def test_multiply_zero_absorbs():
    assert multiply(S([0]), S([3, 2j, 1])).is_zero()


def test_enneper_conformality_identity():
    a1 = S([0.5, 0, -0.5])
    a2 = S([0.5j, 0, 0.5j])
    a3 = S([0, 1])
    total = multiply(a1, a1) + multiply(a2, a2) + multiply(a3, a3)
    assert total.is_zero()


@pytest.mark.parametrize("coeffs, z, expected", [
    ([1, 2j], 0.5, 1 + 1j),
    ([0, 1], 3 - 1j, 3 - 1j),
    ([1, 0, -1], 2, -3),
])
def test_evaluate_examples(coeffs, z, expected):
    assert evaluate(S(coeffs), z) == pytest.approx(expected)


def test_derivative_and_antiderivative_examples():
    assert derivative(S([0, 0, 0, 1], cap=8)) == S([0, 0, 3], cap=7)
    assert antiderivative(S([1], cap=8)) == S([0, 1], cap=9)
    assert antiderivative(S([2, 3]))[0] == 0


@pytest.mark.parametrize("coeffs, r, expected", [
    ([1, 1, 1], 2, [1, 2, 4]),
    ([0, 1], 0.5, [0, 0.5]),
])
def test_rescale_examples(coeffs, r, expected):
    assert rescale_lemma(S(coeffs), r) == S(expected)


def test_rescale_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        rescale_lemma(S([1]), 0.0)


def test_out_of_range_access_is_zero():
    s = S([1, 2], cap=4)
    assert s[-1] == 0 and s[3] == 0 and s[100] == 0
    assert np.array_equal(s.window(-2, 1), [0, 0, 1, 2])


def test_capacity_is_enforced():
    with pytest.raises(CapacityError):
        S([1, 2, 3], cap=1)
    a = S([1, 1], cap=3)
    with pytest.raises(CapacityError):
        multiply(a, S([0, 0, 0, 1], cap=3))
    with pytest.raises(CapacityError):
        multiply(a, a, cap=5)
    assert multiply(a, S([0, 0, 0, 1], cap=3), truncate=True) == S([0, 0, 0, 1], cap=3)


def test_trailing_zeros_beyond_cap_are_allowed():
    assert S([1, 2, 0, 0], cap=1) == S([1, 2], cap=1)


def test_default_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MINSTAB_N_MAX", "12")
    assert default_n_max() == 12
    assert S([1]).degree_cap == 12
    monkeypatch.setenv("MINSTAB_N_MAX", "twelve")
    with pytest.raises(ValueError):
        default_n_max()


def test_series_is_immutable():
    s = S([1, 2])
    with pytest.raises(ValueError):
        s.coeffs[0] = 5


@given(coeff_lists, coeff_lists)
def test_multiply_commutes(a, b):
    ab, ba = multiply(S(a), S(b)), multiply(S(b), S(a))
    assert ab.allclose(ba, rtol=1e-13)


@given(coeff_lists, coeff_lists, coeff_lists, complexes)
def test_multiply_bilinear(a, b, c, lam):
    left = multiply(S(a) + S(b).scale(lam), S(c))
    right = multiply(S(a), S(c)) + multiply(S(b), S(c)).scale(lam)
    scale = 1 + max(np.max(np.abs(left.coeffs)), np.max(np.abs(right.coeffs)))
    assert np.max(np.abs(left.coeffs - right.coeffs)) <= 1e-12 * scale


@given(coeff_lists, coeff_lists,
       st.complex_numbers(max_magnitude=1, allow_nan=False, allow_infinity=False))
def test_evaluate_is_multiplicative(a, b, z):
    lhs = evaluate(multiply(S(a), S(b)), z)
    rhs = evaluate(S(a), z) * evaluate(S(b), z)
    bound = np.sum(np.abs(a)) * np.sum(np.abs(b))
    assert abs(lhs - rhs) <= 1e-10 * max(bound, 1e-300)


@given(coeff_lists)
def test_derivative_inverts_antiderivative(a):
    assert derivative(antiderivative(S(a))).allclose(S(a))


@given(coeff_lists, st.floats(0.2, 5.0))
def test_rescale_roundtrip(a, r):
    back = rescale_lemma(rescale_lemma(S(a), r), 1 / r)
    assert back.allclose(S(a), rtol=1e-12)
