"""Partition functions, their Mellin moments, the mod-8 character and friends.

Energies are positive integers E with degeneracy c_E. The moment
K[s] = int_0^inf beta^(s-1) Z[beta] d beta equals Gamma(s) sum_E c_E E^(-s);
the Gamma factor is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import mpmath

from .arith import is_prime, legendre, p_adic_split, require_prime
from .errors import DivergentParameters, NotPrime, QuadratureError
from .fock import DEFAULT_BITS
from .spectral import ZetaResult, integral_tail, real_part, to_mp

MOD8_TABLE = {1: 2, 3: 0, 5: 0, 7: 2}


@dataclass(frozen=True)
class CoefficientSpec:
    """Degeneracies c_E for integer energies E >= 1.

    ``kind`` is one of ``constant-one``, ``mod8``, ``table`` or ``rule``.
    Periodic kinds carry ``period`` (c_1, ..., c_L) with c_{E+L} = c_E.
    """

    kind: str
    table: dict = field(default_factory=dict)
    rule: Callable[[int], int] | None = None
    rule_max: int | None = None
    period: tuple = ()

    @classmethod
    def constant_one(cls) -> "CoefficientSpec":
        return cls("constant-one", period=(1,))

    @classmethod
    def mod8(cls) -> "CoefficientSpec":
        return cls("mod8", period=tuple(MOD8_TABLE.get(r, 1) for r in range(1, 9)))

    @classmethod
    def from_table(cls, table: dict) -> "CoefficientSpec":
        for e, c in table.items():
            if not isinstance(e, int) or e < 1:
                raise ValueError(f"energies must be positive integers, got {e!r}")
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"degeneracies must be non-negative integers, got {c!r} at E={e}")
        return cls("table", table=dict(sorted(table.items())))

    @classmethod
    def from_rule(cls, rule: Callable[[int], int], c_max: int | None = None) -> "CoefficientSpec":
        return cls("rule", rule=rule, rule_max=c_max)

    @classmethod
    def from_file(cls, path) -> "CoefficientSpec":
        return cls.from_table(load_table(Path(path).read_text()))

    def __call__(self, energy: int) -> int:
        if energy < 1:
            return 0
        if self.period:
            return self.period[(energy - 1) % len(self.period)]
        if self.kind == "table":
            return self.table.get(energy, 0)
        return self.rule(energy)

    @property
    def c_max(self):
        if self.period:
            return max(self.period)
        if self.kind == "table":
            return max(self.table.values(), default=0)
        return self.rule_max

    @property
    def finite_support(self) -> int | None:
        return max(self.table, default=0) if self.kind == "table" else None


def load_table(text: str) -> dict[int, int]:
    """Parse ``E c_E`` lines (ascending E, ``#`` comments)."""
    table: dict[int, int] = {}
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'E c_E', got {raw!r}")
        e, c = int(parts[0]), int(parts[1])
        if e <= last:
            raise ValueError(f"line {lineno}: energies must be strictly ascending")
        table[e] = c
        last = e
    return table


def _closed_periodic(spec: CoefficientSpec, beta):
    # sum_r c_r e^{-beta r} / (1 - e^{-L beta}); expm1 keeps small beta accurate
    period = len(spec.period)
    num = mpmath.fsum(c * mpmath.exp(-beta * r) for r, c in enumerate(spec.period, 1) if c)
    return num / -mpmath.expm1(-period * beta)


def partition_function(spec: CoefficientSpec, beta, cutoff: int | None = None, bits: int = DEFAULT_BITS) -> ZetaResult:
    """Z[beta] = sum_E c_E e^(-beta E).

    With ``cutoff=None`` periodic specs use the closed geometric form and
    tables are summed in full (tail 0). Otherwise the sum stops at
    ``cutoff`` with tail bound c_max e^(-beta N) / (1 - e^(-beta)).
    """
    with mpmath.workprec(bits):
        beta = mpmath.mpmathify(beta)
        if mpmath.re(beta) <= 0:
            raise DivergentParameters("the partition function needs beta > 0")
        if cutoff is None:
            if spec.period:
                return ZetaResult(_closed_periodic(spec, beta), 0, mpmath.mpf(0), "closed-form", bits)
            if spec.finite_support is None:
                raise ValueError("a rule-based spec needs an explicit cutoff")
            cutoff = spec.finite_support
        value = mpmath.fsum(spec(e) * mpmath.exp(-beta * e) for e in range(1, cutoff + 1) if spec(e))
        if spec.finite_support is not None and cutoff >= spec.finite_support:
            tail = mpmath.mpf(0)
        elif spec.c_max is None:
            tail = mpmath.inf
        else:
            b = mpmath.re(beta)
            tail = spec.c_max * mpmath.exp(-b * cutoff) / (1 - mpmath.exp(-b))
    return ZetaResult(value, cutoff, tail, "partition-sum", bits)


@dataclass(frozen=True)
class MomentSpec:
    coefficients: CoefficientSpec
    s: object
    cutoff: int | None = None
    tolerance: float = 1e-9
    method: str = "quadrature"
    bits: int = DEFAULT_BITS

    def __post_init__(self):
        if self.method not in ("quadrature", "series"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.coefficients.finite_support is None and real_part(self.s) <= 1:
            raise DivergentParameters(f"Re(s) = {real_part(self.s)} <= 1: the moment diverges")


def k_moment(spec: MomentSpec) -> ZetaResult:
    """K[s] = int_0^inf beta^(s-1) Z[beta] d beta.

    ``series`` returns Gamma(s) sum_{E<=N} c_E E^(-s) (default N = 10^4 for
    infinite specs). ``quadrature`` integrates Z over (0, 1] and [1, inf)
    separately, using the closed form of Z when the spec is periodic and
    ``cutoff`` is None.
    """
    coeffs = spec.coefficients
    with mpmath.workprec(spec.bits):
        s = to_mp(spec.s, spec.bits)
        gamma = mpmath.gamma(s)
        if spec.method == "series":
            n_max = spec.cutoff or coeffs.finite_support or 10_000
            total = mpmath.fsum(coeffs(e) * mpmath.power(e, -s) for e in range(1, n_max + 1) if coeffs(e))
            if coeffs.finite_support is not None and n_max >= coeffs.finite_support:
                tail = mpmath.mpf(0)
            else:
                tail = abs(gamma) * (coeffs.c_max or 0) * integral_tail(n_max, real_part(s))
            return ZetaResult(gamma * total, n_max, tail, "moment-series", spec.bits)

        def integrand(beta):
            z = partition_function(coeffs, beta, spec.cutoff, spec.bits).value
            return mpmath.power(beta, s - 1) * z

        value, err = mpmath.quad(integrand, [0, 1, mpmath.inf], error=True)
        if err > spec.tolerance * abs(value):
            raise QuadratureError(f"K[{spec.s}] quadrature did not reach relative tolerance {spec.tolerance}", err)
        return ZetaResult(value, spec.cutoff or 0, err, "moment-quadrature", spec.bits)


@dataclass(frozen=True)
class DirichletCharacter:
    """chi(n) = values[n mod modulus]."""

    modulus: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.modulus:
            raise ValueError("need one value per residue class")

    @classmethod
    def trivial(cls) -> "DirichletCharacter":
        return cls(1, (1,))

    @classmethod
    def mod8(cls) -> "DirichletCharacter":
        return cls(8, tuple(character_mod8(r) if r else 0 for r in range(8)))

    def __call__(self, n: int) -> int:
        return self.values[n % self.modulus]

    def is_principal_free(self) -> bool:
        """True when the values sum to zero over a period (chi non-principal)."""
        return sum(self.values) == 0

    def max_partial_sum(self) -> int:
        run, best = 0, 0
        for n in range(1, self.modulus + 1):
            run += self(n)
            best = max(best, abs(run))
        return best


def character_mod8(n: int) -> int:
    """+1 for n = 1, 7 (mod 8), -1 for n = 3, 5 (mod 8), 0 otherwise."""
    r = n % 8
    if r in (1, 7):
        return 1
    if r in (3, 5):
        return -1
    return 0


def l_function(s, chi: DirichletCharacter, cutoff: int = 10_000, bits: int = DEFAULT_BITS) -> ZetaResult:
    """Partial sum of L(s, chi) = sum chi(n) n^-s with a tail bound.

    For a character summing to zero over its period, partial summation bounds
    the tail by B N^-sigma (1 + |s|/sigma), B the largest partial character
    sum; otherwise by N^(1-sigma)/(sigma-1).
    """
    sigma = real_part(s)
    if sigma <= 1:
        raise DivergentParameters(f"Re(s) = {sigma} <= 1 is outside the implemented region")
    with mpmath.workprec(bits):
        s_mp = to_mp(s, bits)
        value = mpmath.fsum(chi(n) * mpmath.power(n, -s_mp) for n in range(1, cutoff + 1) if chi(n))
        if chi.is_principal_free():
            tail = chi.max_partial_sum() * mpmath.power(cutoff, -sigma) * (1 + abs(s_mp) / sigma)
        else:
            tail = integral_tail(cutoff, sigma)
    return ZetaResult(value, cutoff, tail, "l-series", bits)


def gauss_sum(p: int, bits: int = DEFAULT_BITS, check: bool = True):
    """Quadratic Gauss sum sum_{n=0}^{p-1} exp(2 pi i n^2 / p).

    With ``check`` the Legendre-symbol form sum_n (n/p) exp(2 pi i n / p) is
    computed as well and must agree.
    """
    if p == 2 or not is_prime(p):
        raise NotPrime(f"{p!r} is not an odd prime")
    with mpmath.workprec(bits):
        direct = mpmath.fsum(mpmath.expjpi(mpmath.mpf(2 * (n * n % p)) / p) for n in range(p))
        if check:
            via_legendre = mpmath.fsum(legendre(n, p) * mpmath.expjpi(mpmath.mpf(2 * n) / p) for n in range(1, p))
            if abs(direct - via_legendre) > mpmath.mpf(2) ** (-bits // 2):
                raise ArithmeticError(f"Gauss sum forms disagree for p={p}: {direct} vs {via_legendre}")
        return direct


def gauss_sum_expected(p: int, bits: int = DEFAULT_BITS):
    """sqrt(p) for p = 1 (mod 4), i sqrt(p) for p = 3 (mod 4)."""
    with mpmath.workprec(bits):
        root = mpmath.sqrt(p)
        return mpmath.mpc(root, 0) if p % 4 == 1 else mpmath.mpc(0, root)


def absolute_derivation(p: int, n: int) -> int:
    """d/dp on positive integers: p^l m (p not dividing m) -> l p^(l-1) m, 0 if l = 0."""
    require_prime(p)
    if n < 1:
        raise ValueError("the absolute derivation is defined on positive integers")
    ell, m = p_adic_split(n, p)
    return ell * p ** (ell - 1) * m if ell else 0
