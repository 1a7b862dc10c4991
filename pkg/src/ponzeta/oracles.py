"""Reference values that share no code path with the operator evaluators."""

from __future__ import annotations

import mpmath


def zeta_euler_maclaurin(s, terms: int = 50, order: int = 12, bits: int = 128):
    """zeta(s) for Re(s) > 1 from a direct partial sum plus Euler-Maclaurin correction.

    sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
        + sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
    """
    with mpmath.workprec(bits + 16):
        s = mpmath.mpmathify(s)
        n = mpmath.mpf(terms)
        total = mpmath.fsum(mpmath.power(k, -s) for k in range(1, terms))
        total += mpmath.power(n, 1 - s) / (s - 1) + mpmath.power(n, -s) / 2
        rising = s
        for k in range(1, order + 1):
            term = mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) * rising * mpmath.power(n, -s - 2 * k + 1)
            total += term
            rising *= (s + 2 * k - 1) * (s + 2 * k)
    with mpmath.workprec(bits):
        return +total


def direct_partial_sum(s, n_max: int, coefficient=lambda n: 1, bits: int = 128):
    """sum_{n=1}^{n_max} c(n) n^-s, ascending."""
    with mpmath.workprec(bits):
        s = mpmath.mpmathify(s)
        return mpmath.fsum(coefficient(n) * mpmath.power(n, -s) for n in range(1, n_max + 1))
