import cmath
import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosmoqc.specfun import GammaPoleError, complex_gamma, complex_loggamma

mpmath.mp.dps = 40


def _ref(z):
    return complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))


def _sample(n, radius, seed):
    rnd = random.Random(seed)
    out = []
    while len(out) < n:
        r, th = radius * math.sqrt(rnd.random()), rnd.uniform(0, 2 * math.pi)
        z = complex(r * math.cos(th), r * math.sin(th))
        if abs(z.imag) < 1e-3 and abs(z.real - round(z.real)) < 1e-3 and z.real < 0.5:
            continue
        out.append(z)
    return out


def test_factorials():
    assert complex_gamma(1) == pytest.approx(1, rel=1e-15)
    assert complex_gamma(5) == pytest.approx(24, rel=1e-14)
    assert complex_gamma(5).imag == 0.0


def test_half_integer():
    assert complex_gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("y", [0.01, 0.1, 1.0, 1.5, 5.0, 20.0])
def test_pure_imaginary_modulus(y):
    g = complex_gamma(1j * y)
    expected = math.pi / (y * math.sinh(math.pi * y))
    assert abs(abs(g) ** 2 - expected) <= 1e-11 * abs(g) ** 2


def test_matches_mpmath_on_strip():
    rnd = random.Random(7)
    worst = 0.0
    for _ in range(3000):
        z = complex(rnd.uniform(-10, 10), rnd.uniform(-100, 100))
        ref = _ref(z)
        worst = max(worst, abs(complex_gamma(z) - ref) / abs(ref))
    assert worst < 1e-12


def test_conjugate_symmetry():
    for z in _sample(1000, 20.0, seed=1):
        g = complex_gamma(z)
        assert abs(complex_gamma(z.conjugate()) - g.conjugate()) <= 1e-12 * abs(g)


def test_recurrence():
    for z in _sample(1000, 20.0, seed=2):
        g1 = complex_gamma(z + 1)
        assert abs(g1 - z * complex_gamma(z)) <= 1e-11 * abs(g1)


@pytest.mark.parametrize("z", [0, -1, -2, -7, 0j, complex(-3, 0)])
def test_poles_raise(z):
    with pytest.raises(GammaPoleError):
        complex_gamma(z)


def test_far_imaginary_underflows_quietly():
    # |Gamma(1000i)| ~ exp(-1570): below the double range, returned as zero
    g = complex_gamma(1000j)
    assert g == 0
    lg = complex_loggamma(1000j)
    ref = mpmath.loggamma(mpmath.mpc(0, 1000))
    assert lg.real == pytest.approx(float(ref.real), rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(min_value=0.5, max_value=30.0),
    st.floats(min_value=-200.0, max_value=200.0),
)
def test_loggamma_real_part_matches_mpmath(x, y):
    ref = mpmath.loggamma(mpmath.mpc(x, y))
    lg = complex_loggamma(complex(x, y))
    assert lg.real == pytest.approx(float(ref.real), abs=1e-11, rel=1e-13)
    # same value up to the 2*pi*i branch ambiguity
    assert cmath.exp(1j * (lg.imag - float(ref.imag))) == pytest.approx(1, abs=1e-10)
