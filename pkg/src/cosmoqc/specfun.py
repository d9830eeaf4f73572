"""Gamma function on the complex plane.

Lanczos approximation (g = 6.0246800407767296, 13 terms, rational form as
used by Boost and CPython's ``math.lgamma``) with reflection for
``Re z < 0.5``. Everything is carried in log space so that the products of
gamma values needed for Bogoliubov coefficients survive arguments with a
large imaginary part, where each factor alone would underflow.
"""

from __future__ import annotations

import cmath
import math

__all__ = ["GammaPoleError", "complex_gamma", "complex_loggamma"]

_G = 6.024680040776729583740234375
_G_MINUS_HALF = 5.524680040776729583740234375

# Rational Lanczos sum num(z)/den(z), coefficients in ascending powers of z.
# den(z) = z (z+1) ... (z+11).
_NUM = (
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604569928220784236328,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408,
)
_DEN = (
    0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0,
    13339535.0, 2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0,
)

_LOG_PI = math.log(math.pi)


class GammaPoleError(ValueError):
    """Raised when Gamma is requested at a non-positive integer."""


def _horner(coeffs, z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _lanczos_sum(z: complex) -> complex:
    if abs(z) <= 1.0:
        return _horner(_NUM, z) / _horner(_DEN, z)
    # Evaluate in 1/z for large |z|; both polynomials have degree 12.
    w = 1.0 / z
    return _horner(_NUM[::-1], w) / _horner(_DEN[::-1], w)


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)) on some branch, without overflow for large |Im z|."""
    w = math.pi * z
    if w.imag < 0:
        return _log_sin_pi(z.conjugate()).conjugate()
    if w.imag < 1.0:
        return cmath.log(cmath.sin(w))
    # sin w = (i/2) e^{-iw} (1 - e^{2iw}),  |e^{2iw}| < e^{-2} here
    return -1j * w + cmath.log(1.0 - cmath.exp(2j * w)) + cmath.log(0.5j)


def _check_pole(z: complex) -> None:
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise GammaPoleError(f"Gamma has a pole at z = {z.real:g}")


def complex_loggamma(z: complex) -> complex:
    """log Gamma(z) for complex ``z``.

    The imaginary part is not forced onto the principal branch of
    ``log Gamma``; only ``exp`` of the result is meaningful.
    """
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        # Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return _LOG_PI - _log_sin_pi(z) - complex_loggamma(1.0 - z)
    t = z + _G_MINUS_HALF
    return cmath.log(_lanczos_sum(z)) + (z - 0.5) * cmath.log(t) - t


def complex_gamma(z: complex) -> complex:
    """Gamma(z) for complex ``z``.

    Relative error is below 1e-12 for ``|Re z| <= 10`` and
    ``|Im z| <= 100``. Far out along the imaginary axis the magnitude
    decays like ``exp(-pi |Im z| / 2)``; once that drops below the double
    range the result is zero (or subnormal) rather than an error.

    Raises
    ------
    GammaPoleError
        If ``z`` is 0, -1, -2, ...
    """
    lg = complex_loggamma(z)
    if lg.real < -745.2:
        # below the smallest subnormal; keep the phase, drop the magnitude
        return 0.0 * cmath.exp(1j * lg.imag)
    val = cmath.exp(lg)
    if complex(z).imag == 0.0:
        return complex(val.real, 0.0)
    return val
