"""The spectral operator (a†a)^(-s) and the zeta evaluators built on it.

``(a†a)^(-s)`` is taken to act as n^(-s) on |n> (the Mellin integral divided
by Gamma(s)) and to annihilate the vacuum. Every evaluator below is a vacuum
matrix element assembled from Fock vectors in the divided-power basis, where
<0|a^m e_n> = delta_mn and the factorials never appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

from .arith import primes_upto, require_prime
from .errors import DivergentParameters, InexactError, PrimeBoundTooSmall, QuadratureError
from .fock import DEFAULT_BITS, DIVIDED, FockVec, at_vector_precision, coerce, vacuum_bra_pairing
from .pon import PonOp, apply_pon, geometric_bra, geometric_create
from .surd import PrimePower

DEFAULT_DEPTH = 64

STATE_SUM = "state-sum"
EULER_PRODUCT = "euler-product"
QUANTUM_EULER = "quantum-euler"
EULER_FACTOR = "euler-factor"
QUANTUM_FACTOR = "quantum-factor"


def to_mp(s, bits: int = DEFAULT_BITS):
    """mpf/mpc version of an exponent given as int, Fraction, float, complex or str."""
    with mpmath.workprec(bits):
        if isinstance(s, Fraction):
            return mpmath.mpf(s.numerator) / s.denominator
        if isinstance(s, str):
            return to_mp(parse_exponent(s), bits)
        return mpmath.mpmathify(s)


def parse_exponent(text: str):
    """Parse ``"2"``, ``"3/2"``, ``"2.5"`` or ``"2+0.5i"``."""
    text = text.strip().replace(" ", "")
    if "/" in text and "i" not in text:
        return Fraction(text)
    if text.endswith("i") or text.endswith("j"):
        return complex(text[:-1] + "j")
    try:
        return int(text)
    except ValueError:
        return float(text)


def real_part(s) -> float:
    if isinstance(s, Rational):
        return float(s)
    return float(mpmath.re(mpmath.mpmathify(s)))


def exact_integer(s) -> int | None:
    """``s`` as an int when it is an exact integer (int or Fraction), else None."""
    if isinstance(s, bool):
        return None
    if isinstance(s, int):
        return s
    if isinstance(s, Fraction) and s.denominator == 1:
        return int(s)
    return None


@dataclass(frozen=True)
class SpectralParams:
    s: object
    cutoff: int = 10_000
    bits: int = DEFAULT_BITS
    depth: int = DEFAULT_DEPTH
    exact: bool = False

    def __post_init__(self):
        if real_part(self.s) <= 1:
            raise DivergentParameters(f"Re(s) = {real_part(self.s)} <= 1: the Dirichlet series diverges")
        if self.cutoff < 1 or self.depth < 1:
            raise ValueError("cutoff and depth must be positive")


@dataclass(frozen=True)
class ZetaResult:
    value: object
    terms_used: int
    tail_bound: object
    method: str
    bits: int = DEFAULT_BITS

    def as_complex(self) -> complex:
        return complex(self.value)

    def to_json(self) -> dict:
        """Fixed field set; the value parts are decimal strings at full precision."""
        digits = max(15, int(self.bits * 0.30103))
        with mpmath.workprec(self.bits):
            value = to_mp(self.value, self.bits)
            re = mpmath.nstr(mpmath.re(value), digits, strip_zeros=False)
            im = mpmath.nstr(mpmath.im(value), digits, strip_zeros=False)
        return {
            "value_re": re,
            "value_im": im,
            "tail_bound": float(self.tail_bound),
            "terms_used": self.terms_used,
            "method": self.method,
        }


def _mode(exact: bool, s) -> str:
    if not exact:
        return "float"
    if exact_integer(s) is None:
        raise InexactError(f"exact evaluation needs an integer exponent, got {s!r}")
    return "rational"


def spectral_eigenvalue(n: int, s, mode: str = "float", bits: int = DEFAULT_BITS):
    """Eigenvalue of (a†a)^(-s) on |n>, with 0 on the vacuum."""
    if n == 0:
        return Fraction(0) if mode != "float" else mpmath.mpf(0)
    if mode == "float":
        with mpmath.workprec(bits):
            return mpmath.power(n, -to_mp(s, bits))
    if mode == "prime-power":
        return PrimePower.of(n, -Fraction(s))
    k = exact_integer(s)
    if k is None:
        raise InexactError(f"n^(-s) is not rational for s = {s!r}")
    return Fraction(1, n**k) if k >= 0 else Fraction(n ** (-k))


@at_vector_precision
def spectral_power(s, v: FockVec) -> FockVec:
    """Scale |n> (or e_n) by n^(-s); the vacuum component is dropped."""
    return v.like({n: c * spectral_eigenvalue(n, s, v.mode, v.bits) for n, c in v.amps.items() if n})


def mellin_quadrature(s, n: int, m: int | None = None, bits: int = 64):
    """Integrate beta^(s-1) <n| exp(-beta a†a) |m> d beta over (0, inf).

    Returns ``(value, error_estimate)``. Analytically Gamma(s) n^(-s) on the
    diagonal and 0 off it; the integral is split at beta = 1.
    """
    if m is not None and m != n:
        return mpmath.mpf(0), mpmath.mpf(0)
    if n < 1:
        raise ValueError("the kernel needs n >= 1")
    if real_part(s) <= 0:
        raise DivergentParameters("the Mellin integral needs Re(s) > 0")
    with mpmath.workprec(bits):
        s_mp = to_mp(s, bits)
        f = lambda b: mpmath.power(b, s_mp - 1) * mpmath.exp(-b * n)
        return mpmath.quad(f, [0, 1, mpmath.inf], error=True)


def mellin_kernel(s, n: int, m: int | None = None, bits: int = 64, tol: float = 1e-9):
    """Value of :func:`mellin_quadrature`; raises ``QuadratureError`` when the
    error estimate exceeds ``tol`` relative to max(|value|, 1)."""
    value, err = mellin_quadrature(s, n, m, bits)
    if err > tol * max(abs(value), 1):
        raise QuadratureError(f"Mellin kernel for s={s}, n={n} did not converge", err)
    return value


def integral_tail(start: int, sigma: float):
    """Bound on sum_{n > start} n^(-sigma) by the integral from ``start``."""
    return mpmath.power(start, 1 - sigma) / (sigma - 1)


def exp_creation_state(cutoff: int, mode: str = "float", bits: int = DEFAULT_BITS) -> FockVec:
    """(e^{a†} - 1)|0> truncated: coefficient 1/n! on (a†)^n|0>, i.e. sum e_n."""
    return FockVec({n: 1 for n in range(1, cutoff + 1)}, cutoff, DIVIDED, mode, bits)


def zeta_via_states(params: SpectralParams | None = None, **kwargs) -> ZetaResult:
    """<0| a/(1-a) (a†a)^(-s) (e^{a†} - 1) |0> truncated at n <= cutoff."""
    params = params or SpectralParams(**kwargs)
    mode = _mode(params.exact, params.s)
    n_max = params.cutoff
    with mpmath.workprec(params.bits):
        ket = spectral_power(params.s, exp_creation_state(n_max, mode, params.bits))
        # a/(1-a) = a + a^2 + ...: the bra is sum_m <0|a^m
        bra = {m: 1 for m in range(1, n_max + 1)}
        value = vacuum_bra_pairing(bra, ket)
        tail = integral_tail(n_max, real_part(params.s))
    return ZetaResult(value, n_max, tail, STATE_SUM, params.bits)


def _geometric_tail(p: int, s, depth: int):
    r = mpmath.power(p, -real_part(s))
    if r >= 1:
        raise DivergentParameters(f"|{p}^(-s)| >= 1")
    return r ** (depth + 1) / (1 - r)


def euler_factor(p: int, s, depth: int = DEFAULT_DEPTH, bits: int = DEFAULT_BITS, exact: bool = False) -> ZetaResult:
    """(1/p!) <0| a_p (sum_{k<=depth} (a†a)^(-ks)) a_p† |0> = sum_k p^(-ks)."""
    require_prime(p)
    if real_part(s) <= 0:
        raise DivergentParameters(f"|{p}^(-s)| >= 1 for Re(s) <= 0")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    mode = _mode(exact, s)
    with mpmath.workprec(bits):
        e_p = FockVec({p: 1}, p, DIVIDED, mode, bits)  # a_p†|0> / p!
        bra = {p: 1}
        total = coerce(0, mode, bits)
        for k in range(depth + 1):
            ks = k * s if mode != "float" else k * to_mp(s, bits)
            total = total + vacuum_bra_pairing(bra, spectral_power(ks, e_p))
        tail = _geometric_tail(p, s, depth)
    return ZetaResult(total, depth + 1, tail, EULER_FACTOR, bits)


def euler_factor_closed(p: int, s, bits: int = DEFAULT_BITS, exact: bool = False):
    """1/(1 - p^(-s))."""
    if exact:
        k = exact_integer(s)
        if k is None:
            raise InexactError("closed form is rational only for integer s")
        return 1 / (1 - Fraction(1, p**k))
    with mpmath.workprec(bits):
        return 1 / (1 - mpmath.power(p, -to_mp(s, bits)))


def euler_product(s, prime_bound: int, depth: int = DEFAULT_DEPTH, bits: int = DEFAULT_BITS, exact: bool = False, primes=None) -> ZetaResult:
    """prod_{p <= P} euler_factor(p, s, depth), ascending p unless ``primes`` is given.

    The truncated product is exactly sum n^(-s) over P-smooth n whose prime
    exponents stay <= depth; every omitted n exceeds
    L = min(P, 2^(depth+1) - 1), so the tail is bounded by sum_{n > L} n^(-Re s).
    """
    sigma = real_part(s)
    if sigma <= 1:
        raise DivergentParameters(f"Re(s) = {sigma} <= 1: the Euler product diverges")
    primes = primes_upto(prime_bound) if primes is None else list(primes)
    mode = _mode(exact, s)
    with mpmath.workprec(bits):
        value = Fraction(1) if mode == "rational" else mpmath.mpf(1)
        for p in primes:
            value = value * euler_factor(p, s, depth, bits, exact).value
        covered = min(prime_bound, 2 ** (depth + 1) - 1)
        tail = integral_tail(max(covered, 1), sigma)
    return ZetaResult(value, len(primes), tail, EULER_PRODUCT, bits)


def zeta_p_quantum(p: int, s, depth: int = DEFAULT_DEPTH, bits: int = DEFAULT_BITS, exact: bool = False) -> ZetaResult:
    """<0| a 1/(1-A_p) (a†a)^(-s) 1/(1-A_p†) a† |0> with geometric series cut at p^depth.

    The ket sum_k A_{p^k}† e_1 = sum_k e_{p^k} is built with the A-operators;
    the bra sum_k <0|a A_{p^k} = sum_k <0|a^{p^k}.
    """
    require_prime(p)
    if real_part(s) <= 0:
        raise DivergentParameters(f"|{p}^(-s)| >= 1 for Re(s) <= 0")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    mode = _mode(exact, s)
    cutoff = p**depth
    with mpmath.workprec(bits):
        e_1 = FockVec({1: 1}, cutoff, DIVIDED, mode, bits)  # a†|0>
        ket = e_1
        for k in range(1, depth + 1):
            ket = ket + apply_pon(PonOp.create(p) ** k, e_1)
        bra = {p**k: 1 for k in range(depth + 1)}
        value = vacuum_bra_pairing(bra, spectral_power(s, ket))
        tail = _geometric_tail(p, s, depth)
    return ZetaResult(value, depth + 1, tail, QUANTUM_FACTOR, bits)


def zeta_quantum(s, prime_bound: int | None = None, cutoff: int = 10_000, bits: int = DEFAULT_BITS, exact: bool = False) -> ZetaResult:
    """<0| a prod_q 1/(1-A_q) (a†a)^(-s) prod_p 1/(1-A_p†) a† |0> on span{e_1..e_N}."""
    sigma = real_part(s)
    if sigma <= 1:
        raise DivergentParameters(f"Re(s) = {sigma} <= 1: the Dirichlet series diverges")
    prime_bound = cutoff if prime_bound is None else prime_bound
    if prime_bound < cutoff:
        raise PrimeBoundTooSmall(f"prime bound {prime_bound} < cutoff {cutoff}")
    mode = _mode(exact, s)
    with mpmath.workprec(bits):
        e_1 = FockVec({1: 1}, cutoff, DIVIDED, mode, bits)
        ket = spectral_power(s, geometric_create(e_1, prime_bound, cutoff))
        bra = geometric_bra(prime_bound, cutoff)
        value = vacuum_bra_pairing(bra.amps, ket)
        tail = integral_tail(cutoff, sigma)
    return ZetaResult(value, cutoff, tail, QUANTUM_EULER, bits)


def power_tower_relation(m: int, ell: int, s, bits: int = DEFAULT_BITS):
    """Both sides of (1/(m^l)!) <0|a_{m^l} (a†a)^(-s) a_{m^l}†|0> = (1/m!) <0|a_m (a†a)^(-sl) a_m†|0>.

    For rational ``s`` the sides are exact ``PrimePower`` values, otherwise mpmath numbers.
    """
    if m < 2 or ell < 1:
        raise ValueError("need m >= 2 and l >= 1")
    exact = isinstance(s, Rational)
    mode = "prime-power" if exact else "float"
    big = m**ell
    e_1 = FockVec({1: 1}, big, DIVIDED, "rational")
    # A_{m^l}† a†|0> = a_{m^l}†|0> / (m^l)!
    lhs_state = apply_pon(PonOp.create(m) ** ell, e_1)
    rhs_state = apply_pon(PonOp.create(m), e_1)
    lhs = _pair_eigen(lhs_state, s, mode, bits)
    rhs = _pair_eigen(rhs_state, s * ell, mode, bits)
    return lhs, rhs


def _pair_eigen(state: FockVec, s, mode: str, bits: int):
    (n, c), = state.amps.items()
    if c != 1:
        raise AssertionError("A-operators must map e_1 to a single e_n with unit coefficient")
    return spectral_eigenvalue(n, s, mode, bits)
