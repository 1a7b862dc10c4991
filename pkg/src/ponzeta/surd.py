"""Exact algebraic numbers used by the Fock layer.

``Surd`` is a finite sum ``sum_k r_k * sqrt(k)`` with rational ``r_k`` and
distinct squarefree ``k``. Square roots of distinct squarefree integers are
linearly independent over Q, so the dict representation is canonical and
``==`` is exact equality.

``PrimePower`` is a product ``prod_p p**e_p`` with rational exponents, enough
to compare quantities such as ``(m**l)**(-s)`` and ``m**(-s*l)`` exactly for
rational ``s``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational

from .arith import factorize, split_square


class Surd:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean: dict[int, Fraction] = {}
        if terms:
            for k, r in terms.items():
                r = Fraction(r)
                if r:
                    clean[k] = clean.get(k, Fraction(0)) + r
        self._terms = {k: r for k, r in clean.items() if r}
        self._hash = None

    @classmethod
    def sqrt(cls, n: int) -> "Surd":
        if n < 0:
            raise ValueError("square root of a negative integer")
        if n == 0:
            return cls()
        r, k = split_square(n)
        return cls({k: r})

    @classmethod
    def coerce(cls, x) -> "Surd":
        if isinstance(x, Surd):
            return x
        if isinstance(x, (int, Rational)):
            return cls({1: Fraction(x)})
        raise TypeError(f"cannot convert {type(x).__name__} to Surd")

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_rational(self) -> bool:
        return all(k == 1 for k in self._terms)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def __float__(self) -> float:
        return sum(float(r) * k**0.5 for k, r in self._terms.items())

    def to_mpf(self):
        import mpmath

        return mpmath.fsum(
            mpmath.mpf(r.numerator) / r.denominator * mpmath.sqrt(k)
            for k, r in self._terms.items()
        )

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, r in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + r
        return Surd(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd({k: -r for k, r in self._terms.items()})

    def __sub__(self, other):
        try:
            return self + (-Surd.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for k1, r1 in self._terms.items():
            for k2, r2 in other._terms.items():
                # both squarefree: k1*k2 = g^2 * (k1/g)*(k2/g), the latter squarefree
                g = gcd(k1, k2)
                k = (k1 // g) * (k2 // g)
                out[k] = out.get(k, Fraction(0)) + r1 * r2 * g
        return Surd(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only rational divisors and single-term surds are needed
        if isinstance(other, (int, Rational)):
            return Surd({k: r / Fraction(other) for k, r in self._terms.items()})
        if isinstance(other, Surd) and len(other._terms) == 1:
            (k, r), = other._terms.items()
            # 1/(r sqrt k) = sqrt(k) / (r k)
            return self * Surd({k: 1 / (r * k)})
        return NotImplemented

    def __eq__(self, other):
        try:
            other = Surd.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms):
            r = self._terms[k]
            if k == 1:
                parts.append(str(r))
            elif r == 1:
                parts.append(f"sqrt({k})")
            else:
                parts.append(f"{r}*sqrt({k})")
        return " + ".join(parts).replace("+ -", "- ")


class PrimePower:
    """Exact positive number ``prod_p p**e_p`` with rational exponents."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: dict[int, Fraction] | None = None):
        self.exponents = {p: Fraction(e) for p, e in (exponents or {}).items() if e}

    @classmethod
    def of(cls, n: int, power=1) -> "PrimePower":
        power = Fraction(power)
        return cls({p: e * power for p, e in factorize(n).items()})

    def __pow__(self, power):
        power = Fraction(power)
        return PrimePower({p: e * power for p, e in self.exponents.items()})

    def __mul__(self, other: "PrimePower"):
        out = dict(self.exponents)
        for p, e in other.exponents.items():
            out[p] = out.get(p, Fraction(0)) + e
        return PrimePower(out)

    def __eq__(self, other):
        if not isinstance(other, PrimePower):
            return NotImplemented
        return self.exponents == other.exponents

    def __hash__(self):
        return hash(frozenset(self.exponents.items()))

    def __float__(self):
        out = 1.0
        for p, e in self.exponents.items():
            out *= float(p) ** float(e)
        return out

    def to_fraction(self) -> Fraction:
        if any(e.denominator != 1 for e in self.exponents.values()):
            raise ValueError(f"{self} is irrational")
        out = Fraction(1)
        for p, e in self.exponents.items():
            out *= Fraction(p) ** int(e)
        return out

    def __repr__(self):
        body = "*".join(f"{p}^({e})" for p, e in sorted(self.exponents.items()))
        return f"PrimePower({body or '1'})"
