"""Normal ordering in the Weyl algebra [a, a†] = 1.

A ``NormalForm`` is a linear combination of PBW monomials (a†)^j a^k with
exact rational coefficients. ``normal_order`` reaches it by rewriting
a·a† → a†·a + 1 one letter at a time; ``NormalForm.__mul__`` instead uses the
closed reordering formula, so the two routes can be checked against each
other.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Mapping

from ..errors import NotDiagonal
from .expr import (
    AD,
    A,
    Commutator,
    Generator,
    OperatorExpr,
    Power,
    Product,
    ScalarMul,
    Sum,
    scalar,
)


class NormalForm:
    """Immutable map (j, k) -> coefficient of (a†)^j a^k, zeros dropped."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (j, k), c in (coeffs or {}).items():
            if j < 0 or k < 0:
                raise ValueError(f"negative degree in monomial ({j}, {k})")
            c = Fraction(c)
            if c:
                clean[(j, k)] = c
        self._coeffs = clean
        self._hash = None

    @classmethod
    def monomial(cls, j: int, k: int, coeff=1) -> "NormalForm":
        return cls({(j, k): coeff})

    @classmethod
    def constant(cls, c) -> "NormalForm":
        return cls({(0, 0): c})

    @property
    def coeffs(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._coeffs)

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        return iter(sorted(self._coeffs.items(), key=_display_key))

    def __getitem__(self, jk: tuple[int, int]) -> Fraction:
        return self._coeffs.get(jk, Fraction(0))

    def __len__(self):
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_diagonal(self) -> bool:
        return all(j == k for j, k in self._coeffs)

    def __add__(self, other: "NormalForm") -> "NormalForm":
        if not isinstance(other, NormalForm):
            return NotImplemented
        out = dict(self._coeffs)
        for jk, c in other._coeffs.items():
            out[jk] = out.get(jk, Fraction(0)) + c
        return NormalForm(out)

    def __neg__(self) -> "NormalForm":
        return self.scale(-1)

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "NormalForm":
        c = Fraction(c)
        return NormalForm({jk: c * v for jk, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, NormalForm):
            return NotImplemented
        # (a†^j a^k)(a†^l a^m) = sum_r C(k,r) C(l,r) r! a†^(j+l-r) a^(k+m-r)
        out: dict[tuple[int, int], Fraction] = {}
        for (j, k), c1 in self._coeffs.items():
            for (l, m), c2 in other._coeffs.items():
                for r in range(min(k, l) + 1):
                    key = (j + l - r, k + m - r)
                    out[key] = out.get(key, Fraction(0)) + c1 * c2 * comb(k, r) * comb(l, r) * factorial(r)
        return NormalForm(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def to_expr(self) -> OperatorExpr:
        """Back to an expression tree: a signed sum of ``c*ad^j*a^k`` products."""
        terms, signs = [], []
        for i, ((j, k), c) in enumerate(self.items()):
            # no unary minus in the grammar: a leading negative goes into the scalar
            shown = c if i == 0 else abs(c)
            factors = []
            if shown != 1 or (j, k) == (0, 0):
                factors.append(scalar(shown))
            if j:
                factors.append(AD if j == 1 else Power(AD, j))
            if k:
                factors.append(A if k == 1 else Power(A, k))
            terms.append(factors[0] if len(factors) == 1 else Product(tuple(factors)))
            signs.append(1 if i == 0 or c > 0 else -1)
        if not terms:
            return scalar(0)
        if len(terms) == 1:
            return terms[0]
        return Sum(tuple(terms), tuple(signs))

    def __str__(self):
        from .expr import pretty

        return pretty(self.to_expr())

    def __repr__(self):
        return f"NormalForm({str(self)!r})"


def _display_key(item):
    (j, k), _ = item
    return (-(j + k), -j)


# -- rewriting engine -------------------------------------------------------


def _times_letter(nf: dict, letter: str) -> dict:
    """Right-multiply a normal-ordered combination by a single letter."""
    out: dict[tuple[int, int], Fraction] = {}

    def add(key, c):
        out[key] = out.get(key, Fraction(0)) + c

    for (j, k), c in nf.items():
        if letter == "a":
            add((j, k + 1), c)
            continue
        # move a† left through a^k one swap at a time via a·a† -> a†·a + 1;
        # every swap emits one copy of a†^j a^(k-1)
        add((j + 1, k), c)
        for _ in range(k):
            add((j, k - 1), c)
    return {key: c for key, c in out.items() if c}


def _rewrite_product(left: NormalForm, right: NormalForm) -> NormalForm:
    total: dict[tuple[int, int], Fraction] = {}
    for (l, m), c2 in right._coeffs.items():
        acc = {jk: c * c2 for jk, c in left._coeffs.items()}
        for letter in ["ad"] * l + ["a"] * m:
            acc = _times_letter(acc, letter)
        for jk, c in acc.items():
            total[jk] = total.get(jk, Fraction(0)) + c
    return NormalForm(total)


_GENERATOR_FORMS = {
    "a": NormalForm.monomial(0, 1),
    "ad": NormalForm.monomial(1, 0),
    "n": NormalForm.monomial(1, 1),
    "1": NormalForm.constant(1),
}


def normal_order(expr: OperatorExpr) -> NormalForm:
    """Rewrite ``expr`` to its unique normal-ordered form."""
    if isinstance(expr, NormalForm):
        return expr
    if isinstance(expr, Generator):
        return _GENERATOR_FORMS[expr.name]
    if isinstance(expr, ScalarMul):
        return normal_order(expr.child).scale(expr.coeff)
    if isinstance(expr, Sum):
        out = NormalForm()
        for sign, term in zip(expr.signs, expr.terms):
            nf = normal_order(term)
            out = out + (nf if sign > 0 else -nf)
        return out
    if isinstance(expr, Product):
        out = NormalForm.constant(1)
        for f in expr.factors:
            out = _rewrite_product(out, normal_order(f))
        return out
    if isinstance(expr, Power):
        base = normal_order(expr.base)
        out = NormalForm.constant(1)
        for _ in range(expr.exponent):
            out = _rewrite_product(out, base)
        return out
    if isinstance(expr, Commutator):
        return commutator(expr.left, expr.right)
    raise TypeError(f"not an operator expression: {expr!r}")


def commutator(x, y) -> NormalForm:
    """[x, y] = xy - yx in normal order."""
    nx, ny = normal_order(x), normal_order(y)
    return _rewrite_product(nx, ny) - _rewrite_product(ny, nx)


# -- polynomials in n̂ -------------------------------------------------------


class DiagonalPoly:
    """Polynomial q(n̂) with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots) -> "DiagonalPoly":
        """prod (n̂ - r) over ``roots``."""
        out = cls([1])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * n + c
        return out

    def __add__(self, other: "DiagonalPoly") -> "DiagonalPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return DiagonalPoly([x + y for x, y in zip(a, b)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DiagonalPoly([c * other for c in self.coeffs])
        out = [Fraction(0)] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return DiagonalPoly(out)

    def __eq__(self, other):
        if not isinstance(other, DiagonalPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_normal_form(self) -> NormalForm:
        """Expand n̂^d = sum_k S(d, k) (a†)^k a^k with Stirling numbers S."""
        out: dict[tuple[int, int], Fraction] = {}
        for d, c in enumerate(self.coeffs):
            for k, s in enumerate(_stirling2_row(d)):
                if s:
                    out[(k, k)] = out.get((k, k), Fraction(0)) + c * s
        return NormalForm(out)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mono = "" if d == 0 else ("n" if d == 1 else f"n^{d}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+" if c > 0 else "-") + body)
        return "".join(parts)

    def __repr__(self):
        return f"DiagonalPoly({self})"


def _stirling2_row(d: int) -> list[int]:
    row = [1]
    for i in range(1, d + 1):
        new = [0] * (i + 1)
        for k in range(1, i + 1):
            new[k] = k * (row[k] if k < len(row) else 0) + row[k - 1]
        row = new
    return row


def falling(k: int) -> DiagonalPoly:
    """n̂(n̂-1)...(n̂-k+1), the diagonal value of (a†)^k a^k."""
    return DiagonalPoly.from_roots(range(k))


def diagonal_poly(nf: NormalForm) -> DiagonalPoly:
    """The polynomial q with q(n̂) equal to a balanced normal form."""
    nf = normal_order(nf)
    if not nf.is_diagonal():
        bad = sorted(jk for jk in nf.coeffs if jk[0] != jk[1])
        raise NotDiagonal(f"unbalanced monomials {bad}")
    out = DiagonalPoly()
    for (k, _), c in nf.coeffs.items():
        out = out + falling(k) * c
    return out
