"""Operator expression trees over a, a† (``ad``), n̂ (``n``) and rational scalars."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

GENERATORS = ("a", "ad", "n", "1")


@dataclass(frozen=True)
class Generator:
    name: str

    def __post_init__(self):
        if self.name not in GENERATORS:
            raise ValueError(f"unknown generator {self.name!r}")


@dataclass(frozen=True)
class ScalarMul:
    coeff: Fraction
    child: "OperatorExpr" = Generator("1")

    def __post_init__(self):
        if isinstance(self.coeff, float):
            raise TypeError("scalars must be exact rationals")
        object.__setattr__(self, "coeff", Fraction(self.coeff))


@dataclass(frozen=True)
class Sum:
    terms: tuple
    signs: tuple = ()

    def __post_init__(self):
        if not self.signs:
            object.__setattr__(self, "signs", (1,) * len(self.terms))
        if len(self.signs) != len(self.terms) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("one sign of +1 or -1 per term")


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: "OperatorExpr"
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {self.exponent!r}")


@dataclass(frozen=True)
class Commutator:
    left: "OperatorExpr"
    right: "OperatorExpr"


OperatorExpr = Union[Generator, ScalarMul, Sum, Product, Power, Commutator]

A = Generator("a")
AD = Generator("ad")
N = Generator("n")
ONE = Generator("1")


def scalar(value) -> ScalarMul:
    return ScalarMul(Fraction(value), ONE)


def a_ell(ell: int) -> OperatorExpr:
    """The ℓ-on annihilator a^ℓ."""
    return Power(A, ell)


def ad_ell(ell: int) -> OperatorExpr:
    return Power(AD, ell)


def degree(expr: OperatorExpr) -> int:
    """Upper bound on the number of ladder letters in any expanded word."""
    if isinstance(expr, Generator):
        return {"a": 1, "ad": 1, "n": 2, "1": 0}[expr.name]
    if isinstance(expr, ScalarMul):
        return degree(expr.child)
    if isinstance(expr, Sum):
        return max((degree(t) for t in expr.terms), default=0)
    if isinstance(expr, Product):
        return sum(degree(f) for f in expr.factors)
    if isinstance(expr, Power):
        return degree(expr.base) * expr.exponent
    return degree(expr.left) + degree(expr.right)


def _is_scalar_leaf(expr) -> bool:
    return isinstance(expr, ScalarMul) and expr.child == ONE


def pretty(expr: OperatorExpr) -> str:
    """Render in the same grammar the parser accepts."""
    if isinstance(expr, Generator):
        return expr.name
    if isinstance(expr, ScalarMul):
        if expr.child == ONE:
            return str(expr.coeff)
        return f"{expr.coeff}*{_factor(expr.child)}"
    if isinstance(expr, Sum):
        if not expr.terms:
            return "0"
        out = _summand(expr.terms[0])
        if expr.signs[0] < 0:
            out = f"-1*{_factor(expr.terms[0])}"
        for sign, term in zip(expr.signs[1:], expr.terms[1:]):
            out += (" + " if sign > 0 else " - ") + _summand(term)
        return out
    if isinstance(expr, Product):
        if not expr.factors:
            return "1"
        return "*".join(_factor(f) for f in expr.factors)
    if isinstance(expr, Power):
        base = expr.base
        if isinstance(base, (Generator, Commutator)) or _is_scalar_leaf(base):
            return f"{pretty(base)}^{expr.exponent}"
        return f"({pretty(base)})^{expr.exponent}"
    if isinstance(expr, Commutator):
        return f"[{pretty(expr.left)}, {pretty(expr.right)}]"
    raise TypeError(f"not an operator expression: {expr!r}")


def _summand(expr) -> str:
    # a nested sum keeps its parentheses so "a - (b + c)" survives
    return f"({pretty(expr)})" if isinstance(expr, Sum) else pretty(expr)


def _factor(expr) -> str:
    if isinstance(expr, Sum):
        if len(expr.terms) == 1 and expr.signs[0] > 0:
            return _factor(expr.terms[0])
        return f"({pretty(expr)})"
    if isinstance(expr, ScalarMul) and expr.child != ONE:
        return f"({pretty(expr)})"
    if isinstance(expr, Product) and len(expr.factors) != 1:
        return f"({pretty(expr)})"
    return pretty(expr)
