"""Invariant suites run by ``ponzeta verify``.

Each check returns a ``Check``; a failing check carries the first
counterexample found. Random inputs come from a fixed seed so reruns are
identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from . import arith
from .fock import DIVIDED, FockVec, expr_matrix, truncated_matrix
from .oracles import zeta_euler_maclaurin
from .pon import PonOp, apply_pon, geometric_annihilate_inverse, geometric_create
from .spectral import (
    euler_factor,
    euler_factor_closed,
    euler_product,
    mellin_kernel,
    power_tower_relation,
    spectral_eigenvalue,
    zeta_p_quantum,
    zeta_via_states,
)
from .statmech import (
    CoefficientSpec,
    DirichletCharacter,
    MomentSpec,
    absolute_derivation,
    gauss_sum,
    gauss_sum_expected,
    k_moment,
    l_function,
)
from .weyl import (
    AD,
    A,
    N,
    Commutator,
    DiagonalPoly,
    NormalForm,
    Power,
    Product,
    Sum,
    a_ell,
    ad_ell,
    commutator,
    diagonal_poly,
    normal_order,
    scalar,
)

SEED = 20240613


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


SUITES: dict[str, list[Callable[[], Check]]] = {"weyl": [], "pon": [], "zeta": [], "appendix": []}


def check(suite: str):
    def register(fn):
        SUITES[suite].append(fn)
        return fn

    return register


def _first_failure(name: str, cases) -> Check:
    for ok, detail in cases:
        if not ok:
            return Check(name, False, detail)
    return Check(name, True)


def random_expression(rng: random.Random, budget: int = 6):
    """A random operator expression whose expanded words have degree <= budget."""
    leaves = [A, AD] + ([N] if budget >= 2 else [])
    roll = rng.random()
    if budget <= 1 or roll < 0.25:
        if budget == 0 or rng.random() < 0.15:
            return scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        return rng.choice(leaves)
    if roll < 0.55:
        k = rng.randint(2, min(4, budget))
        shares = _split(rng, budget, k)
        return Product(tuple(random_expression(rng, b) for b in shares))
    if roll < 0.75:
        k = rng.randint(2, 3)
        terms = tuple(random_expression(rng, budget) for _ in range(k))
        return Sum(terms, tuple(rng.choice((1, -1)) if i else 1 for i in range(k)))
    if roll < 0.9:
        left, right = _split(rng, budget, 2)
        return Commutator(random_expression(rng, left), random_expression(rng, right))
    e = rng.randint(2, 3)
    return Power(random_expression(rng, budget // e), e)


def _split(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


# -- weyl --------------------------------------------------------------------


@check("weyl")
def canonical_relations() -> Check:
    one = NormalForm.constant(1)
    cases = [
        (commutator(A, AD) == one, "[a, ad] != 1"),
        (commutator(A, A).is_zero() and commutator(AD, AD).is_zero(), "[a, a] or [ad, ad] != 0"),
        (commutator(N, AD) == normal_order(AD), "[n, ad] != ad"),
        (commutator(N, A) == normal_order(A).scale(-1), "[n, a] != -a"),
        (diagonal_poly(commutator(a_ell(2), ad_ell(2))) == DiagonalPoly([2, 4]), "[a_2, a_2†] != 4n+2"),
        (diagonal_poly(commutator(a_ell(3), ad_ell(3))) == DiagonalPoly([6, 9, 9]), "[a_3, a_3†] != 9n^2+9n+6"),
    ]
    return _first_failure("canonical relations, l = 2, 3 commutators", cases)


@check("weyl")
def ell_on_products() -> Check:
    cases = []
    for ell in range(1, 11):
        up = diagonal_poly(Product((a_ell(ell), ad_ell(ell))))
        down = diagonal_poly(Product((ad_ell(ell), a_ell(ell))))
        cases.append((up == DiagonalPoly.from_roots(range(-1, -ell - 1, -1)), f"a_{ell} a_{ell}† = {up}"))
        cases.append((down == DiagonalPoly.from_roots(range(ell)), f"a_{ell}† a_{ell} = {down}"))
        cases.append((commutator(N, ad_ell(ell)) == normal_order(ad_ell(ell)).scale(ell), f"[n, a_{ell}†]"))
        cases.append((commutator(N, a_ell(ell)) == normal_order(a_ell(ell)).scale(-ell), f"[n, a_{ell}]"))
        cases.append((commutator(A, ad_ell(ell)) == normal_order(ad_ell(ell - 1)).scale(ell), f"[a, ad^{ell}]"))
    return _first_failure("l-on products and commutators, l = 1..10", cases)


@check("weyl")
def matrix_oracle() -> Check:
    rng = random.Random(SEED)
    cases = []
    for _ in range(50):
        expr = random_expression(rng, 6)
        lhs = truncated_matrix(normal_order(expr), 40, "monomial")
        rhs = expr_matrix(expr, 40, "monomial")
        bad = lhs.first_disagreement(rhs)
        cases.append((bad is None, f"{expr}: entry {bad}"))
    return _first_failure("normal form vs generator-matrix product, 50 words, N = 40", cases)


@check("weyl")
def homomorphism() -> Check:
    rng = random.Random(SEED + 1)
    cases = []
    for _ in range(50):
        x, y = random_expression(rng, 3), random_expression(rng, 3)
        cases.append((normal_order(Product((x, y))) == normal_order(x) * normal_order(y), f"{x} * {y}"))
    return _first_failure("rewriting agrees with the closed PBW product", cases)


# -- pon ---------------------------------------------------------------------


@check("pon")
def geometric_inverse_pair() -> Check:
    e1 = FockVec({1: 1}, 100, DIVIDED, "rational")
    full = geometric_create(e1, 100)
    want = FockVec({n: 1 for n in range(1, 101)}, 100, DIVIDED, "rational")
    back = geometric_annihilate_inverse(full, 100)
    return _first_failure(
        "geometric create / inverse at N = P = 100",
        [(full == want, f"create gave support {full.support()[:10]}..."), (back == e1, f"inverse gave {back}")],
    )


@check("pon")
def ring_laws() -> Check:
    rng = random.Random(SEED + 2)
    cases = []
    for _ in range(300):
        m, n = rng.randint(1, 50), rng.randint(1, 50)
        top = max(1, 200 // (m * n))
        v = FockVec({i: rng.randint(-5, 5) for i in range(1, top + 1)}, max(200, m * n * top), DIVIDED, "rational")
        lhs = apply_pon(PonOp.create(m), apply_pon(PonOp.create(n), v))
        cases.append((lhs == apply_pon(PonOp.create(m * n), v), f"A_{m}† A_{n}†"))
        w = v.like({i * m * n: c for i, c in v.amps.items()})
        lhs = apply_pon(PonOp.annihilate(m), apply_pon(PonOp.annihilate(n), w))
        cases.append((lhs == apply_pon(PonOp.annihilate(m * n), w), f"A_{m} A_{n}"))
        k = rng.randint(1, 4)
        u = FockVec({1: 1, 2: 3}, 2 * m**k, DIVIDED, "rational")
        repeated = u
        for _ in range(k):
            repeated = apply_pon(PonOp.create(m), repeated)
        cases.append((repeated == apply_pon(PonOp.create(m) ** k, u), f"(A_{m}†)^{k}"))
    return _first_failure("commutativity and power law", cases)


@check("pon")
def divisibility_kernel() -> Check:
    cases = []
    for m in range(1, 13):
        for n in range(1, 60):
            out = apply_pon(PonOp.annihilate(m), FockVec({n: 1}, 60, DIVIDED, "rational"))
            cases.append((out.is_zero() == (n % m != 0), f"A_{m} e_{n} = {out}"))
    return _first_failure("A_m e_n = 0 iff m does not divide n", cases)


# -- zeta --------------------------------------------------------------------


@check("zeta")
def state_sum_tails() -> Check:
    cases = []
    for s, n_max in ((2, 10_000), (4, 1_000)):
        r = zeta_via_states(s=s, cutoff=n_max)
        err = abs(r.value - zeta_euler_maclaurin(s))
        cases.append((err <= r.tail_bound, f"s={s}: |error| {mpmath.nstr(err, 5)} > tail {mpmath.nstr(r.tail_bound, 5)}"))
    return _first_failure("state sum within tail bound (s=2, N=1e4; s=4, N=1e3)", cases)


@check("zeta")
def factor_agreement() -> Check:
    cases = []
    for p in arith.primes_upto(50):
        for s in (2, 3):
            f = euler_factor(p, s).value
            q = zeta_p_quantum(p, s).value
            cases.append((abs(f - euler_factor_closed(p, s)) <= 1e-12, f"euler_factor({p}, {s})"))
            cases.append((abs(q - f) <= 1e-12, f"zeta_p_quantum({p}, {s})"))
    return _first_failure("Euler factors vs closed form and quantum form, p <= 50", cases)


@check("zeta")
def euler_product_convergence() -> Check:
    values = [euler_product(2, bound).value for bound in (10, 100, 1000)]
    target = zeta_euler_maclaurin(2)
    cases = [
        (abs(values[-1] - target) <= 1e-3, f"P=1000 gives {values[-1]}"),
        (values[0] <= values[1] <= values[2], f"not monotone: {values}"),
        (all(v <= target for v in values), "partial product above zeta(2)"),
    ]
    return _first_failure("Euler product convergence and monotonicity at s = 2", cases)


@check("zeta")
def tower_relation() -> Check:
    cases = []
    for m in range(2, 11):
        for ell in range(1, 5):
            for s in (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(7, 3)):
                lhs, rhs = power_tower_relation(m, ell, s)
                cases.append((lhs == rhs, f"m={m}, l={ell}, s={s}"))
    return _first_failure("power tower relation, m <= 10, l <= 4", cases)


@check("zeta")
def mellin_normalization() -> Check:
    cases = []
    for s in (2, 3, 4):
        for n in (1, 2, 5, 20):
            ratio = mellin_kernel(s, n) / mpmath.gamma(s)
            cases.append((abs(ratio - spectral_eigenvalue(n, s)) <= 1e-9, f"s={s}, n={n}"))
    return _first_failure("Mellin integral / Gamma(s) = n^-s", cases)


# -- appendix ----------------------------------------------------------------


@check("appendix")
def moment_quadrature() -> Check:
    cases = []
    for s in (2, 3, 4):
        k = k_moment(MomentSpec(CoefficientSpec.constant_one(), s)).value
        rel = abs(k / mpmath.gamma(s) / zeta_euler_maclaurin(s) - 1)
        cases.append((rel <= 1e-6, f"s={s}: relative error {mpmath.nstr(rel, 3)}"))
    k2 = k_moment(MomentSpec(CoefficientSpec.mod8(), 2)).value
    rhs = mpmath.gamma(2) * (l_function(2, DirichletCharacter.mod8()).value + zeta_euler_maclaurin(2))
    cases.append((abs(k2 / rhs - 1) <= 1e-6, f"mod-8 identity: {k2} vs {rhs}"))
    return _first_failure("K[s] quadrature vs Gamma(s) zeta(s); mod-8 identity", cases)


@check("appendix")
def gauss_sums() -> Check:
    cases = []
    for p in arith.primes_upto(199)[1:]:
        g = gauss_sum(p)
        cases.append((abs(g - gauss_sum_expected(p)) <= 1e-9, f"p={p}: {g}"))
    return _first_failure("Gauss sums for odd primes < 200", cases)


@check("appendix")
def character_laws() -> Check:
    chi = DirichletCharacter.mod8()
    cases = []
    for m in range(1, 101):
        cases.append((chi(m + 8) == chi(m), f"period fails at {m}"))
        for n in range(1, 101):
            cases.append((chi(m * n) == chi(m) * chi(n), f"chi({m}*{n})"))
    for n in range(1, 65):
        c = CoefficientSpec.mod8()(n)
        cases.append((c == (1 + chi(n) if n % 2 else 1), f"c_{n} = {c}"))
    return _first_failure("mod-8 character periodicity, multiplicativity, table", cases)


@check("appendix")
def leibniz() -> Check:
    rng = random.Random(SEED + 3)
    cases = []
    for p in (2, 3, 5, 7):
        for _ in range(1000):
            n, m = rng.randint(1, 10**6), rng.randint(1, 10**6)
            lhs = absolute_derivation(p, n * m)
            rhs = absolute_derivation(p, n) * m + n * absolute_derivation(p, m)
            cases.append((lhs == rhs, f"p={p}, n={n}, n'={m}"))
    return _first_failure("Leibniz rule for d/dp, p in {2, 3, 5, 7}", cases)


def run_suite(name: str) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for suite in names:
        for fn in SUITES[suite]:
            try:
                out.append(fn())
            except Exception as exc:  # a crash is a failed invariant, not a crashed run
                out.append(Check(fn.__name__, False, f"{type(exc).__name__}: {exc}"))
    return out
