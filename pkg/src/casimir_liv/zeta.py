"""Riemann zeta function on the real line.

Euler-Maclaurin summation covers ``s > -1``.  Left of that the
reflection formula maps the argument back, except at the non-positive
integers where ``zeta(-n) = (-1)^n B_{n+1} / (n+1)`` is used so values
such as ``zeta(-3) = 1/120`` are correctly rounded.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = ["bernoulli_numbers", "riemann_zeta"]

_N_DIRECT = 12
_N_CORRECTIONS = 14


@lru_cache(maxsize=None)
def bernoulli_numbers(m: int) -> tuple[Fraction, ...]:
    """Return B_0 .. B_m (convention B_1 = -1/2) as exact fractions."""
    b = [Fraction(0)] * (m + 1)
    b[0] = Fraction(1)
    for n in range(1, m + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += math.comb(n + 1, k) * b[k]
        b[n] = -acc / (n + 1)
    return tuple(b)


@lru_cache(maxsize=None)
def _em_coefficients() -> tuple[float, ...]:
    b = bernoulli_numbers(2 * _N_CORRECTIONS)
    return tuple(float(b[2 * k] / math.factorial(2 * k)) for k in range(1, _N_CORRECTIONS + 1))


def _zeta_euler_maclaurin(s: float) -> float:
    n = _N_DIRECT
    terms = [float(j) ** -s for j in range(1, n)]
    terms.append(n ** (1.0 - s) / (s - 1.0))
    terms.append(0.5 * n ** -s)
    # rising factorial s (s+1) ... (s+2k-2), updated two factors at a time
    rising = s
    for k, coeff in enumerate(_em_coefficients(), start=1):
        if rising == 0.0:
            break
        terms.append(coeff * rising * n ** (-s - 2 * k + 1))
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return math.fsum(terms)


def riemann_zeta(s: float) -> float:
    """Riemann zeta at real ``s``, ``s != 1``.

    >>> riemann_zeta(-3.0) == 1 / 120
    True
    """
    s = float(s)
    if not math.isfinite(s):
        raise ValueError(f"zeta argument must be finite, got {s!r}")
    if s == 1.0:
        raise ValueError("zeta has a pole at s = 1")
    if s > 60.0:
        return 1.0 + 2.0 ** -s + 3.0 ** -s
    if s == math.floor(s) and -500 < s <= 0:
        n = int(-s)
        b = bernoulli_numbers(n + 1)[n + 1]
        return float((-1) ** n * b / (n + 1))
    if s > -1.0:
        return _zeta_euler_maclaurin(s)
    # zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    t = 1.0 - s
    log_mag = s * math.log(2.0) + (s - 1.0) * math.log(math.pi) + math.lgamma(t)
    return math.exp(log_mag) * _sin_half_pi(s) * riemann_zeta(t)


def _sin_half_pi(s: float) -> float:
    """sin(pi s / 2) with the period removed exactly, accurate near the zeros."""
    r = s - 4.0 * round(s / 4.0)  # exact, r in [-2, 2]
    if r > 1.0:
        return math.sin(0.5 * math.pi * (2.0 - r))
    if r < -1.0:
        return -math.sin(0.5 * math.pi * (2.0 + r))
    return math.sin(0.5 * math.pi * r)
