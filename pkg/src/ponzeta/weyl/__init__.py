from .expr import (
    A,
    AD,
    N,
    ONE,
    Commutator,
    Generator,
    OperatorExpr,
    Power,
    Product,
    ScalarMul,
    Sum,
    a_ell,
    ad_ell,
    degree,
    pretty,
    scalar,
)
from .normal import DiagonalPoly, NormalForm, commutator, diagonal_poly, falling, normal_order
from .parser import parse, tokenize

__all__ = [
    "A",
    "AD",
    "N",
    "ONE",
    "Commutator",
    "DiagonalPoly",
    "Generator",
    "NormalForm",
    "OperatorExpr",
    "Power",
    "Product",
    "ScalarMul",
    "Sum",
    "a_ell",
    "ad_ell",
    "commutator",
    "degree",
    "diagonal_poly",
    "falling",
    "normal_order",
    "parse",
    "pretty",
    "scalar",
    "tokenize",
]
