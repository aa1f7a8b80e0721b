import numpy as np
import pytest

from freudquad.errors import DomainError
from freudquad.specfun import airy_ai, airy_ai_prime, airy_zero
from freudquad.specfun import _zero_series

from oracles import airy_ref, airy_zero_ref

A1 = -2.3381074104597670


def test_ai_at_zero():
    # 3^(-2/3)/Gamma(2/3)
    assert abs(airy_ai(0.0) - 0.3550280538878172) < 1e-15


def test_aip_at_zero():
    # -3^(-1/3)/Gamma(1/3)
    assert abs(airy_ai_prime(0.0) - (-0.2588194037928068)) < 1e-15


def test_ai_vanishes_at_first_zero():
    assert abs(airy_ai(A1)) <= 1e-13


def test_aip_at_first_zero():
    assert abs(airy_ai_prime(A1) - 0.7012108227206906) < 1e-12


def test_ai_positive_decreasing_on_positive_axis():
    x = np.linspace(0.0, 30.0, 400)
    v = airy_ai(x)
    assert np.all(v > 0.0)
    assert np.all(np.diff(v) < 0.0)
    assert np.all(airy_ai_prime(x[1:]) < 0.0)


@pytest.mark.parametrize("x", [-12.5, -5.0, -1.0, 0.0, 0.5, 2.0, 8.9,
                               9.1, 15.0, 30.0, 60.0, 100.0])
def test_ai_matches_mpmath(x):
    ai, aip = airy_ref(x)
    scale_ai = max(abs(ai), 1e-300)
    assert abs(airy_ai(x) - ai) <= 1e-13*scale_ai + 1e-15
    assert abs(airy_ai_prime(x) - aip) <= 1e-12*max(abs(aip), 1e-300) + 1e-15


def test_ai_relative_accuracy_deep_decay():
    # |Ai| falls below 1e-300 near x = 103; relative accuracy must hold
    # the whole way down
    for x in [40.0, 70.0, 100.0]:
        ai, _ = airy_ref(x)
        assert abs(airy_ai(x) - ai) <= 1e-13*abs(ai)


def test_airy_zero_first():
    assert abs(airy_zero(1) - A1) < 1e-14


def test_airy_zero_rejects_nonpositive_index():
    with pytest.raises(DomainError):
        airy_zero(0)
    with pytest.raises(DomainError):
        airy_zero(-3)


def test_airy_zero_eleven_from_series():
    # the m=11 value must come out of the s_m formula and still be a zero
    assert airy_zero(11) == float(_zero_series(11))
    assert abs(airy_ai(airy_zero(11))) <= 1e-12
    assert abs(airy_zero(11) - airy_zero_ref(11)) < 1e-10


def test_airy_zero_monotone_and_negative():
    z = np.array([airy_zero(m) for m in range(1, 101)])
    assert np.all(z < 0.0)
    assert np.all(np.diff(z) < 0.0)


def test_airy_zero_residuals_small():
    for m in range(1, 21):
        assert abs(airy_ai(airy_zero(m))) <= 1e-12


def test_table_formula_seam():
    assert abs(airy_zero(10) - float(_zero_series(10))) <= 1e-9


def test_aip_zero_interlacing():
    # exactly one zero of Ai' between consecutive zeros of Ai
    for m in range(1, 20):
        lo, hi = airy_zero(m + 1), airy_zero(m)
        grid = np.linspace(lo + 1e-9, hi - 1e-9, 2000)
        signs = np.sign(airy_ai_prime(grid))
        flips = np.count_nonzero(np.diff(signs) != 0)
        assert flips == 1


def test_non_finite_input_rejected():
    with pytest.raises(DomainError):
        airy_ai(np.nan)
    with pytest.raises(DomainError):
        airy_ai_prime(np.inf)
