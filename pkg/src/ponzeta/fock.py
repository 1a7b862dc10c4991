"""Truncated Fock space: number states, divided-power states, matrix elements.

Amplitudes live in one of three precision modes:

``rational``
    ``Fraction``; closed under diagonal operators and the divided-power basis.
``surd``
    ``Surd`` (rational combinations of square roots); closed under ladder actions.
``float``
    ``mpmath.mpf``/``mpc`` at a configurable number of bits.

Nothing is ever silently truncated: an operator that produces a state above
the cutoff raises ``CutoffOverflow``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, wraps
from math import factorial, isqrt

import mpmath

from .errors import CutoffOverflow, InexactError
from .surd import Surd
from .weyl import Commutator, Generator, NormalForm, Power, Product, ScalarMul, Sum, normal_order

NUMBER = "number"
DIVIDED = "divided"
BASES = (NUMBER, DIVIDED)
MODES = ("rational", "surd", "float")

DEFAULT_CUTOFF = 64
DEFAULT_BITS = 128


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown precision mode {mode!r}; expected one of {MODES}")
    return mode


def coerce(x, mode: str, bits: int = DEFAULT_BITS):
    """Bring an exact or float number into the representation of ``mode``."""
    if mode == "rational":
        if isinstance(x, Surd):
            if not x.is_rational():
                raise InexactError(f"{x} is not rational")
            return x.to_fraction()
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise InexactError(f"cannot represent {x!r} exactly as a rational")
    if mode == "surd":
        if isinstance(x, (int, Fraction, Surd)):
            return Surd.coerce(x)
        raise InexactError(f"cannot represent {x!r} exactly as a surd")
    with mpmath.workprec(bits):
        if isinstance(x, Surd):
            return x.to_mpf()
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        return mpmath.mpmathify(x)


@lru_cache(maxsize=8192)
def _sqrt_falling_surd(top: int, count: int) -> Surd:
    """sqrt(top * (top-1) * ... * (top-count+1)) as a Surd."""
    out = Surd.coerce(1)
    for i in range(top - count + 1, top + 1):
        out = out * Surd.sqrt(i)
    return out


def _falling(top: int, count: int) -> int:
    out = 1
    for i in range(top - count + 1, top + 1):
        out *= i
    return out


def sqrt_ratio(n: int, k: int, m: int, mode: str, bits: int = DEFAULT_BITS):
    """sqrt(n!/(n-k)!) * sqrt(m!/(n-k)!): the amplitude of (a†)^j a^k |n> on |m>."""
    if mode == "surd":
        return _sqrt_falling_surd(n, k) * _sqrt_falling_surd(m, m - n + k)
    product = _falling(n, k) * _falling(m, m - n + k)
    if mode == "rational":
        r = isqrt(product)
        if r * r != product:
            raise InexactError(f"sqrt({product}) is irrational; use the surd or float mode")
        return Fraction(r)
    with mpmath.workprec(bits):
        return mpmath.sqrt(mpmath.mpf(product))


def inv_sqrt_factorial(n: int, mode: str, bits: int = DEFAULT_BITS):
    """1/sqrt(n!), the number-basis amplitude of the divided power e_n."""
    if mode == "surd":
        root = _sqrt_falling_surd(n, n)
        return root / factorial(n)
    if mode == "rational":
        if n > 1:
            raise InexactError(f"1/sqrt({n}!) is irrational; use the surd or float mode")
        return Fraction(1)
    with mpmath.workprec(bits):
        return 1 / mpmath.sqrt(mpmath.factorial(n))


def at_vector_precision(fn):
    """Run ``fn`` at the working precision of its first ``FockVec`` argument.

    mpf arithmetic uses the global context, so float-mode amplitudes would
    otherwise be combined at 53 bits whatever ``bits`` says.
    """

    @wraps(fn)
    def wrapper(*args, **kwargs):
        v = next((a for a in args if isinstance(a, FockVec)), None)
        if v is None or v.mode != "float":
            return fn(*args, **kwargs)
        with mpmath.workprec(v.bits):
            return fn(*args, **kwargs)

    return wrapper


@dataclass(frozen=True)
class FockVec:
    """A finitely supported vector on span{|0>, ..., |cutoff>}.

    ``basis`` is ``"number"`` for |n> or ``"divided"`` for
    e_n = (1/n!) (a†)^n |0>.
    """

    amps: dict = field(default_factory=dict)
    cutoff: int = DEFAULT_CUTOFF
    basis: str = NUMBER
    mode: str = "surd"
    bits: int = DEFAULT_BITS

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        _check_mode(self.mode)
        clean = {}
        for n, c in self.amps.items():
            if not isinstance(n, int) or n < 0:
                raise ValueError(f"occupation numbers are non-negative integers, got {n!r}")
            if n > self.cutoff:
                raise CutoffOverflow(n, self.cutoff)
            c = coerce(c, self.mode, self.bits)
            if c:
                clean[n] = c
        object.__setattr__(self, "amps", clean)

    @classmethod
    def basis_state(cls, n: int, cutoff: int = DEFAULT_CUTOFF, basis: str = NUMBER, mode: str = "surd", bits: int = DEFAULT_BITS):
        return cls({n: 1}, cutoff, basis, mode, bits)

    def like(self, amps: dict, **changes) -> "FockVec":
        params = dict(cutoff=self.cutoff, basis=self.basis, mode=self.mode, bits=self.bits)
        params.update(changes)
        return FockVec(amps, **params)

    def __getitem__(self, n: int):
        return self.amps.get(n, coerce(0, self.mode, self.bits))

    def support(self) -> list[int]:
        return sorted(self.amps)

    def is_zero(self) -> bool:
        return not self.amps

    def _check_compatible(self, other: "FockVec"):
        if other.basis != self.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    @at_vector_precision
    def __add__(self, other: "FockVec") -> "FockVec":
        self._check_compatible(other)
        out = dict(self.amps)
        for n, c in other.amps.items():
            out[n] = out[n] + c if n in out else c
        return self.like(out, cutoff=max(self.cutoff, other.cutoff))

    def __neg__(self) -> "FockVec":
        return self.like({n: -c for n, c in self.amps.items()})

    def __sub__(self, other: "FockVec") -> "FockVec":
        return self + (-other)

    @at_vector_precision
    def scale(self, c) -> "FockVec":
        c = coerce(c, self.mode, self.bits)
        return self.like({n: c * v for n, v in self.amps.items()})

    def __eq__(self, other):
        if not isinstance(other, FockVec):
            return NotImplemented
        return self.basis == other.basis and self.amps == other.amps

    def __hash__(self):
        return hash((self.basis, frozenset(self.amps.items())))

    def __str__(self):
        if not self.amps:
            return "0"
        ket = "|{}>" if self.basis == NUMBER else "e_{}"
        return " + ".join(f"({self.amps[n]})" + ket.format(n) for n in sorted(self.amps))


@at_vector_precision
def apply(nf, v: FockVec) -> FockVec:
    """Act with a normal-ordered operator on a number-basis vector."""
    nf = normal_order(nf)
    if v.basis != NUMBER:
        raise ValueError("apply() acts on number-basis vectors; convert with basis_convert()")
    out: dict[int, object] = {}
    for (j, k), c in nf.coeffs.items():
        coeff = coerce(c, v.mode, v.bits)
        for n, amp in v.amps.items():
            if n < k:
                continue
            m = n - k + j
            if m > v.cutoff:
                raise CutoffOverflow(m, v.cutoff)
            term = coeff * amp * sqrt_ratio(n, k, m, v.mode, v.bits)
            out[m] = out[m] + term if m in out else term
    return v.like(out)


def matrix_element(m: int, nf, n: int, cutoff: int = DEFAULT_CUTOFF, mode: str = "surd", bits: int = DEFAULT_BITS):
    """<m| nf |n>, exactly in the exact modes."""
    if m > cutoff or n > cutoff:
        raise CutoffOverflow(max(m, n), cutoff)
    return apply(nf, FockVec.basis_state(n, cutoff, NUMBER, mode, bits))[m]


def pon_create(p: int, v: FockVec) -> FockVec:
    """Apply the p-on creator (a†)^p."""
    if p < 1:
        raise ValueError("p-on index must be positive")
    return apply(NormalForm.monomial(p, 0), v)


@at_vector_precision
def basis_convert(v: FockVec, target: str) -> FockVec:
    """Re-express ``v`` in ``target`` basis using e_n = (1/sqrt(n!)) |n>."""
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if target == v.basis:
        return v
    out = {}
    for n, c in v.amps.items():
        s = inv_sqrt_factorial(n, v.mode, v.bits)
        out[n] = c * s if target == NUMBER else c / s
    return v.like(out, basis=target)


@at_vector_precision
def vacuum_bra_pairing(bra: dict, v: FockVec):
    """sum_m bra[m] * <0| a^m v>.

    In the divided-power basis <0|a^m e_n> = delta_mn, so the pairing is a
    plain coefficient sum; in the number basis <0|a^m |n> = sqrt(n!) delta_mn.
    Summation runs in ascending m.
    """
    total = coerce(0, v.mode, v.bits)
    for m in sorted(bra):
        if m not in v.amps:
            continue
        amp = v.amps[m]
        if v.basis == NUMBER:
            amp = amp / inv_sqrt_factorial(m, v.mode, v.bits)
        total = total + coerce(bra[m], v.mode, v.bits) * amp
    return total


@at_vector_precision
def monomial_coefficients(v: FockVec) -> dict[int, object]:
    """Coefficients of ``v`` against x^n := (a†)^n |0>."""
    out = {}
    for n, c in v.amps.items():
        if v.basis == DIVIDED:
            out[n] = c / factorial(n)
        else:
            out[n] = c * inv_sqrt_factorial(n, v.mode, v.bits)
    return out


# -- truncated matrices -------------------------------------------------------


@dataclass(frozen=True)
class TruncatedMatrix:
    """Sparse (row, col) -> entry map on span{0..cutoff}.

    ``basis`` is ``"number"`` (entries <m|X|n>, surds) or ``"monomial"``
    (X x^n = sum_m entry * x^m with x^n = (a†)^n|0>, integer entries).
    Columns listed in ``overflow`` touched a state above the cutoff and are
    not trustworthy.
    """

    cutoff: int
    entries: dict
    overflow: frozenset = frozenset()
    basis: str = NUMBER

    def __getitem__(self, mn):
        return self.entries.get(mn, 0)

    def columns(self):
        return range(self.cutoff + 1)

    def __matmul__(self, other: "TruncatedMatrix") -> "TruncatedMatrix":
        cols: dict[int, dict] = {}
        for (m, n), x in other.entries.items():
            cols.setdefault(n, {})[m] = x
        rows_of: dict[int, dict] = {}
        for (m, n), x in self.entries.items():
            rows_of.setdefault(n, {})[m] = x
        out: dict = {}
        overflow = set(other.overflow)
        for n, col in cols.items():
            for j, x in col.items():
                if j in self.overflow:
                    overflow.add(n)
                for m, y in rows_of.get(j, {}).items():
                    key = (m, n)
                    out[key] = out.get(key, 0) + y * x
        return TruncatedMatrix(self.cutoff, _drop_zeros(out), frozenset(overflow), self.basis)

    def __add__(self, other: "TruncatedMatrix") -> "TruncatedMatrix":
        out = dict(self.entries)
        for key, x in other.entries.items():
            out[key] = out.get(key, 0) + x
        return TruncatedMatrix(self.cutoff, _drop_zeros(out), self.overflow | other.overflow, self.basis)

    def scale(self, c) -> "TruncatedMatrix":
        return TruncatedMatrix(self.cutoff, _drop_zeros({k: c * x for k, x in self.entries.items()}), self.overflow, self.basis)

    def __sub__(self, other):
        return self + other.scale(-1)

    def agrees_with(self, other: "TruncatedMatrix") -> bool:
        """Entrywise equality on columns neither side flags as overflow."""
        trusted = set(self.columns()) - self.overflow - other.overflow
        keys = {k for k in self.entries if k[1] in trusted} | {k for k in other.entries if k[1] in trusted}
        return all(self[k] == other[k] for k in keys)

    def first_disagreement(self, other: "TruncatedMatrix"):
        trusted = set(self.columns()) - self.overflow - other.overflow
        for key in sorted(set(self.entries) | set(other.entries)):
            if key[1] in trusted and self[key] != other[key]:
                return key, self[key], other[key]
        return None


def _drop_zeros(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def _entry(value: int, basis: str):
    if basis == NUMBER:
        return Surd.sqrt(value)
    return Fraction(value)


def generator_matrix(name: str, cutoff: int, basis: str = NUMBER) -> TruncatedMatrix:
    """The truncated matrix of a single generator a, ad, n or 1."""
    one = Surd.coerce(1) if basis == NUMBER else Fraction(1)
    entries, overflow = {}, frozenset()
    if name == "ad":
        for n in range(cutoff):
            entries[(n + 1, n)] = _entry(n + 1, NUMBER) if basis == NUMBER else one
        overflow = frozenset({cutoff})
    elif name == "a":
        for n in range(1, cutoff + 1):
            entries[(n - 1, n)] = _entry(n, NUMBER) if basis == NUMBER else Fraction(n)
    elif name == "n":
        for n in range(1, cutoff + 1):
            entries[(n, n)] = one * n
    elif name == "1":
        for n in range(cutoff + 1):
            entries[(n, n)] = one
    else:
        raise ValueError(f"unknown generator {name!r}")
    return TruncatedMatrix(cutoff, entries, overflow, basis)


def truncated_matrix(nf, cutoff: int, basis: str = NUMBER) -> TruncatedMatrix:
    """Matrix of a normal form; a column overflows if its image leaves the space."""
    nf = normal_order(nf)
    entries: dict = {}
    overflow = set()
    for n in range(cutoff + 1):
        for (j, k), c in nf.coeffs.items():
            if n < k:
                continue
            m = n - k + j
            if m > cutoff:
                overflow.add(n)
                continue
            if basis == NUMBER:
                x = _sqrt_falling_surd(n, k) * _sqrt_falling_surd(m, m - n + k) * c
            else:
                x = Fraction(_falling(n, k)) * c
            entries[(m, n)] = entries.get((m, n), 0) + x
    return TruncatedMatrix(cutoff, _drop_zeros(entries), frozenset(overflow), basis)


def expr_matrix(expr, cutoff: int, basis: str = NUMBER) -> TruncatedMatrix:
    """Evaluate an expression tree as a product/sum of generator matrices.

    This is the brute-force oracle for ``normal_order``: it never reorders
    anything, it just multiplies truncated matrices.
    """
    if isinstance(expr, Generator):
        return generator_matrix(expr.name, cutoff, basis)
    if isinstance(expr, ScalarMul):
        return expr_matrix(expr.child, cutoff, basis).scale(expr.coeff)
    if isinstance(expr, Sum):
        out = None
        for sign, term in zip(expr.signs, expr.terms):
            m = expr_matrix(term, cutoff, basis)
            m = m if sign > 0 else m.scale(-1)
            out = m if out is None else out + m
        return out if out is not None else TruncatedMatrix(cutoff, {}, frozenset(), basis)
    if isinstance(expr, Product):
        out = generator_matrix("1", cutoff, basis)
        for f in expr.factors:
            out = out @ expr_matrix(f, cutoff, basis)
        return out
    if isinstance(expr, Power):
        base = expr_matrix(expr.base, cutoff, basis)
        out = generator_matrix("1", cutoff, basis)
        for _ in range(expr.exponent):
            out = out @ base
        return out
    if isinstance(expr, Commutator):
        x = expr_matrix(expr.left, cutoff, basis)
        y = expr_matrix(expr.right, cutoff, basis)
        return x @ y - y @ x
    raise TypeError(f"not an operator expression: {expr!r}")
