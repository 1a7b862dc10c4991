"""Quantum p-on endomorphisms A_m† and A_m.

On the divided-power basis e_n = (1/n!)(a†)^n|0> both are pure index maps:
A_m† e_n = e_{mn}, and A_m e_n = e_{n/m} when m | n, else 0. The factorial
coefficients m!/(mn)! of the monomial picture are absorbed by e_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from .arith import factorize, primes_upto
from .errors import CutoffOverflow, PrimeBoundTooSmall
from .fock import DIVIDED, FockVec, at_vector_precision

CREATE = "create"
ANNIHILATE = "annihilate"


@dataclass(frozen=True)
class PonOp:
    flavor: str
    index: int

    def __post_init__(self):
        if self.flavor not in (CREATE, ANNIHILATE):
            raise ValueError(f"flavor must be {CREATE!r} or {ANNIHILATE!r}")
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"index must be a positive integer, got {self.index!r}")

    @classmethod
    def create(cls, m: int) -> "PonOp":
        return cls(CREATE, m)

    @classmethod
    def annihilate(cls, m: int) -> "PonOp":
        return cls(ANNIHILATE, m)

    def __pow__(self, k: int) -> "PonOp":
        return PonOp(self.flavor, self.index**k)

    def __str__(self):
        return f"A_{self.index}" + ("†" if self.flavor == CREATE else "")


@dataclass(frozen=True)
class PonProduct:
    """A word of A-operators of one flavor, kept as prime -> exponent."""

    flavor: str = CREATE
    exponents: dict = field(default_factory=dict)

    @classmethod
    def of(cls, ops) -> "PonProduct":
        ops = list(ops)
        flavors = {op.flavor for op in ops}
        if len(flavors) > 1:
            raise ValueError("cannot multiply creation and annihilation A-operators")
        exps: dict[int, int] = {}
        for op in ops:
            for p, e in factorize(op.index).items():
                exps[p] = exps.get(p, 0) + e
        return cls(flavors.pop() if flavors else CREATE, exps)

    def reduce(self) -> PonOp:
        return PonOp(self.flavor, prod(p**e for p, e in self.exponents.items()))


def compose_pons(ops) -> PonOp:
    """Multiply same-flavor A-operators: A_m A_n = A_{mn}; empty product is A_1."""
    return PonProduct.of(ops).reduce()


def _require_divided(v: FockVec):
    if v.basis != DIVIDED:
        raise ValueError("A-operators act on divided-power vectors; convert with basis_convert()")


def apply_pon(op: PonOp, v: FockVec) -> FockVec:
    _require_divided(v)
    m = op.index
    out = {}
    if op.flavor == CREATE:
        for n, c in v.amps.items():
            if m * n > v.cutoff:
                raise CutoffOverflow(m * n, v.cutoff)
            out[m * n] = c
    else:
        for n, c in v.amps.items():
            if n % m == 0:
                out[n // m] = c
    return v.like(out)


def _check_bound(prime_bound: int, cutoff: int):
    if prime_bound < cutoff:
        raise PrimeBoundTooSmall(f"prime bound {prime_bound} < cutoff {cutoff}: some n <= cutoff would not factor")


def _prepare(v: FockVec, prime_bound: int, cutoff: int | None) -> tuple[FockVec, int]:
    _require_divided(v)
    cutoff = v.cutoff if cutoff is None else cutoff
    _check_bound(prime_bound, cutoff)
    # support above the new cutoff is outside the truncated space
    return v.like({n: c for n, c in v.amps.items() if n <= cutoff}, cutoff=cutoff), cutoff


def _add_shifted(acc: dict, base: dict, keys: list[int], q: int, cutoff: int, sign: int):
    for n in keys:
        if q * n > cutoff:
            break
        c = base[n] if sign > 0 else -base[n]
        acc[q * n] = acc[q * n] + c if q * n in acc else c


@at_vector_precision
def geometric_create(v: FockVec, prime_bound: int, cutoff: int | None = None) -> FockVec:
    """Apply prod_{p <= P} (1 + A_p† + A_{p^2}† + ...), truncated at the cutoff.

    Terms whose index passes the cutoff are exactly zero on the truncated
    space and are dropped rather than reported as overflow.
    """
    v, cutoff = _prepare(v, prime_bound, cutoff)
    if 0 in v.amps:
        raise ValueError("the geometric series diverges on e_0, which every A_m† fixes")
    acc = dict(v.amps)
    for p in primes_upto(min(prime_bound, cutoff)):
        keys = sorted(n for n in acc if p * n <= cutoff)
        base = {n: acc[n] for n in keys}
        q = p
        while keys and q * keys[0] <= cutoff:
            _add_shifted(acc, base, keys, q, cutoff, +1)
            q *= p
    return v.like(acc)


@at_vector_precision
def geometric_annihilate_inverse(v: FockVec, prime_bound: int, cutoff: int | None = None) -> FockVec:
    """Apply prod_{p <= P} (1 - A_p†), truncated at the cutoff."""
    v, cutoff = _prepare(v, prime_bound, cutoff)
    acc = dict(v.amps)
    for p in primes_upto(min(prime_bound, cutoff)):
        keys = sorted(n for n in acc if p * n <= cutoff)
        base = {n: acc[n] for n in keys}
        _add_shifted(acc, base, keys, p, cutoff, -1)
    return v.like(acc)


def geometric_bra(prime_bound: int, cutoff: int, mode: str = "rational", bits: int = 128) -> FockVec:
    """<0| a prod_q 1/(1 - A_q) as coefficients of the functionals <0|a^m.

    <0|a_m A_n = <0|a^{mn}, so on bras A_n is the same index map as A_n† on
    kets, and expanding the geometric series gives sum_{m <= cutoff} <0|a^m.
    """
    seed = FockVec({1: 1}, cutoff, DIVIDED, mode, bits)
    return geometric_create(seed, prime_bound, cutoff)
