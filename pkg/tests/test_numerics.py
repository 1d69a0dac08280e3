import cmath
import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zrl.config import PrecisionConfig
from zrl.errors import ConvergenceError, DomainError, PoleError
from zrl.numerics import (
    bernoulli_number,
    compensated_sum,
    divisors,
    gamma_fn,
    hurwitz_zeta,
    hurwitz_zeta_s_derivative_at_0,
    integrate,
    is_prime,
    kronecker_symbol,
    log_gamma,
    mobius,
    primes_up_to,
    riemann_zeta,
)

mp.mp.dps = 30


# ---------------------------------------------------------------------------
# compensated summation


def test_compensated_sum_cancellation():
    assert compensated_sum([1.0, 1e100, 1.0, -1e100]) == 2.0


def test_compensated_sum_complex():
    total = compensated_sum([complex(0.1, 1e16), complex(0.2, 1.0), complex(0.0, -1e16)])
    assert total.real == pytest.approx(0.3, abs=1e-16)
    assert total.imag == 1.0


def test_compensated_sum_empty():
    assert compensated_sum([]) == 0


# ---------------------------------------------------------------------------
# gamma


@pytest.mark.parametrize(
    "z",
    [0.5, 1.0, 2.0, 7.5, complex(0.5, 3.0), complex(2.0, -5.0), complex(-1.5, 0.5), complex(-3.2, -2.0)],
)
def test_gamma_matches_reference(z):
    want = complex(mp.gamma(z))
    got = gamma_fn(z)
    assert abs(got - want) <= 1e-12 * abs(want)


def test_gamma_special_values():
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-14)


@pytest.mark.parametrize("z", [0.0, -1.0, -2.0, -7.0])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        gamma_fn(z)


@pytest.mark.parametrize(
    "z", [1.0, 4.5, complex(2.0, 3.0), complex(0.3, -1.0), complex(6.0, 10.0)]
)
def test_log_gamma_matches_reference(z, cfg):
    want = complex(mp.loggamma(z))
    got = log_gamma(z, cfg)
    assert abs(got - want) <= 1e-11 * max(1.0, abs(want))


def test_log_gamma_rejects_cut():
    with pytest.raises(DomainError):
        log_gamma(-2.5)


# ---------------------------------------------------------------------------
# bernoulli


def test_bernoulli_values():
    # exact rationals: B_2 = 1/6, B_4 = -1/30, B_12 = -691/2730
    assert bernoulli_number(2) == pytest.approx(float(Fraction(1, 6)), rel=1e-15)
    assert bernoulli_number(4) == pytest.approx(float(Fraction(-1, 30)), rel=1e-15)
    assert bernoulli_number(12) == pytest.approx(float(Fraction(-691, 2730)), rel=1e-15)
    assert bernoulli_number(3) == 0.0


# ---------------------------------------------------------------------------
# hurwitz zeta


@pytest.mark.parametrize(
    "s,z",
    [
        (2.0, 1.0),
        (3.5, 0.25),
        (complex(0.5, 2.0), 1.0),
        (complex(2.0, -4.0), complex(1.5, 0.5)),
        (complex(-0.5, 1.0), 2.0),
        (complex(0.1, 9.0), complex(0.7, -0.2)),
    ],
)
def test_hurwitz_matches_reference(s, z, cfg):
    want = complex(mp.zeta(s, z))
    got = hurwitz_zeta(s, z, cfg)
    assert abs(got - want) <= 1e-11 * max(1.0, abs(want))


def test_hurwitz_at_zero_is_half_minus_z(cfg):
    for z in (1.0, 2.5, complex(1.0, 3.0), complex(0.3, -0.7)):
        assert abs(hurwitz_zeta(0.0, z, cfg) - (0.5 - z)) < 1e-12


def test_hurwitz_pole():
    with pytest.raises(PoleError):
        hurwitz_zeta(1.0, 2.0)


@given(
    s=st.complex_numbers(min_magnitude=0.0, max_magnitude=4.0, allow_nan=False, allow_infinity=False),
    z=st.floats(min_value=0.3, max_value=5.0),
)
@settings(max_examples=40, deadline=None)
def test_hurwitz_recurrence(s, z):
    # zeta(s, z) - zeta(s, z+1) = z^(-s)
    if abs(s - 1.0) < 0.05:
        return
    cfg = PrecisionConfig()
    lhs = hurwitz_zeta(s, z, cfg) - hurwitz_zeta(s, z + 1.0, cfg)
    rhs = cmath.exp(-s * cmath.log(z))
    assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))


def test_lerch_derivative(cfg):
    # d/ds zeta(s, z) at 0 equals log(Gamma(z)/sqrt(2 pi))
    for z in (0.5, 1.0, 3.7, complex(2.0, 1.5), complex(0.8, -2.0)):
        want = complex(mp.loggamma(z)) - 0.5 * math.log(2.0 * math.pi)
        got = hurwitz_zeta_s_derivative_at_0(z, cfg)
        assert abs(got - want) < 1e-11


def test_riemann_zeta_values(cfg):
    assert abs(riemann_zeta(2.0) - math.pi**2 / 6.0) < 1e-12
    assert abs(riemann_zeta(complex(0.5, 14.0)) - complex(mp.zeta(mp.mpc(0.5, 14.0)))) < 1e-10


# ---------------------------------------------------------------------------
# quadrature


def test_integrate_polynomial(cfg):
    assert abs(integrate(lambda t: t * t, 0.0, 1.0, cfg) - 1.0 / 3.0) < 1e-14


def test_integrate_oscillatory(cfg):
    got = integrate(lambda t: np.exp(1j * 7.0 * t), 0.0, 2.0, cfg)
    want = (cmath.exp(14j) - 1.0) / 7j
    assert abs(got - want) < 1e-12


def test_integrate_vectorized_callable(cfg):
    # integrand sees node arrays, not scalars
    seen = []

    def f(t):
        seen.append(np.ndim(t))
        return np.exp(-t)

    got = integrate(f, 0.0, 3.0, cfg)
    assert abs(got - (1.0 - math.exp(-3.0))) < 1e-13
    assert all(d == 1 for d in seen)


def test_integrate_reports_nonconvergence():
    cfg = PrecisionConfig(target_abs_error=1e-12, quadrature_max_depth=2)
    with pytest.raises(ConvergenceError):
        integrate(lambda t: np.abs(t - math.pi / 16.0) ** 0.1, 0.0, 1.0, cfg)


# ---------------------------------------------------------------------------
# integer helpers


def test_mobius_and_divisors():
    assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


def test_primes_up_to():
    assert list(primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert list(primes_up_to(1.5)) == []


def test_is_prime():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1)


def _legendre_bruteforce(d: int, p: int) -> int:
    if d % p == 0:
        return 0
    return 1 if any((x * x - d) % p == 0 for x in range(1, p)) else -1


@pytest.mark.parametrize("d", [-4, -3, -8, 5, 8, 12, -7, 13])
@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17])
def test_kronecker_symbol_against_bruteforce(d, p):
    if p == 2:
        # (d/2): 0 for even d, +1 for d = 1,7 mod 8, -1 for d = 3,5 mod 8
        want = 0 if d % 2 == 0 else (1 if d % 8 in (1, 7) else -1)
    else:
        want = _legendre_bruteforce(d, p)
    assert kronecker_symbol(d, p) == want
