"""Shared independent oracles for the test suite.

These deliberately avoid the production code paths: Bessel and Struve
reference values come from explicit high-precision series summations, and
extrema are located by golden-section search.
"""

import math

import mpmath
import pytest


def bessel_series_oracle(k: int, z: float, terms: int = 60) -> float:
    """Truncated ascending series for J_k at 50-digit working precision."""
    with mpmath.workdps(50 + int(abs(z))):
        half = mpmath.mpf(z) / 2
        term = half**k / mpmath.factorial(k)
        total = term
        for m in range(1, max(terms, 30)):
            term *= -(half * half) / (m * (m + k))
            total += term
        return float(total)


def struve_series_oracle(k: int, z: float) -> float:
    """Struve H_k series summed with a fixed-count truncation strategy."""
    with mpmath.workdps(50 + int(abs(z))):
        half = mpmath.mpf(z) / 2
        three_halves = mpmath.mpf(3) / 2
        total = mpmath.mpf(0)
        for m in range(0, 250):
            num = (-1) ** m * half ** (2 * m + k + 1)
            den = mpmath.gamma(m + three_halves) * mpmath.gamma(m + k + three_halves)
            total += num / den
        return float(total)


def golden_section_argmax(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Argmax of a unimodal function by golden-section search."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def golden_section_argmin(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    return golden_section_argmax(lambda x: -f(x), lo, hi, tol)


@pytest.fixture
def oracles():
    return {
        "bessel_series": bessel_series_oracle,
        "struve_series": struve_series_oracle,
        "argmax": golden_section_argmax,
        "argmin": golden_section_argmin,
    }
