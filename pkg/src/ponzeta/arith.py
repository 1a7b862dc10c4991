"""Small integer helpers: primes, factorization, squarefree parts."""

from functools import lru_cache
from math import isqrt

from .errors import NotPrime


def primes_upto(n: int) -> list[int]:
    """All primes p <= n, ascending (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; ``factorize(1) == {}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for d in (2, 3):
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
    d = 5
    while d * d <= n:
        for q in (d, d + 2):
            while n % q == 0:
                out[q] = out.get(q, 0) + 1
                n //= q
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=4096)
def split_square(n: int) -> tuple[int, int]:
    """Write n = r**2 * k with k squarefree; return (r, k)."""
    r, k = 1, 1
    for p, e in factorize(n).items():
        r *= p ** (e // 2)
        if e % 2:
            k *= p
    return r, k


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def p_adic_split(n: int, p: int) -> tuple[int, int]:
    """Return (l, m) with n = p**l * m and p not dividing m."""
    ell = 0
    while n % p == 0:
        n //= p
        ell += 1
    return ell, n
