from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ponzeta.arith import primes_upto
from ponzeta.errors import DivergentParameters, InexactError, NotPrime, PrimeBoundTooSmall
from ponzeta.fock import DIVIDED, FockVec
from ponzeta.oracles import direct_partial_sum, zeta_euler_maclaurin
from ponzeta.spectral import (
    SpectralParams,
    ZetaResult,
    euler_factor,
    euler_factor_closed,
    euler_product,
    integral_tail,
    mellin_kernel,
    mellin_quadrature,
    parse_exponent,
    power_tower_relation,
    spectral_eigenvalue,
    spectral_power,
    zeta_p_quantum,
    zeta_quantum,
    zeta_via_states,
)
from ponzeta.surd import PrimePower
from oracle import close, diff, smooth_sum, zeta_reference


# -- spectral power ---------------------------------------------------------------------------


def test_eigenvalue_examples():
    assert spectral_eigenvalue(2, 2, "rational") == Fraction(1, 4)
    assert spectral_eigenvalue(5, 0, "rational") == 1
    assert spectral_eigenvalue(0, 3, "rational") == 0


def test_spectral_power_drops_the_vacuum():
    v = FockVec({0: 1, 2: 1, 5: 3}, 5, DIVIDED, "rational")
    assert spectral_power(2, v) == FockVec({2: Fraction(1, 4), 5: Fraction(3, 25)}, 5, DIVIDED, "rational")


def test_spectral_power_at_zero_is_identity_off_vacuum():
    v = FockVec({5: 1}, 5, DIVIDED, "rational")
    assert spectral_power(0, v) == v


def test_non_integer_exponent_is_not_rational():
    with pytest.raises(InexactError):
        spectral_eigenvalue(2, Fraction(1, 2), "rational")


def test_float_eigenvalue_keeps_precision():
    with mpmath.workprec(200):
        want = mpmath.power(3, -mpmath.mpf(5) / 2)
        got = spectral_eigenvalue(3, Fraction(5, 2), "float", bits=200)
        assert abs(got - want) < mpmath.mpf(2) ** -190


# -- Mellin kernel -------------------------------------------------------------------------------


def test_mellin_on_ground_level():
    assert close(mellin_kernel(2, 1), 1, 1e-12)


def test_mellin_on_second_level():
    assert close(mellin_kernel(3, 2), 0.25, 1e-12)


def test_mellin_off_diagonal_vanishes():
    assert mellin_kernel(3, 2, 3) == 0


@pytest.mark.parametrize("s", [2, 3, 4])
def test_mellin_normalization(s):
    for n in range(1, 21):
        value, err = mellin_quadrature(s, n)
        assert close(value / mpmath.gamma(s), mpmath.power(n, -s), 1e-9)
        assert err < 1e-9


def test_mellin_needs_positive_real_part():
    with pytest.raises(DivergentParameters):
        mellin_kernel(-1, 3)


# -- state sum ----------------------------------------------------------------------------------


def test_state_sum_s2():
    r = zeta_via_states(s=2, cutoff=10_000)
    assert r.tail_bound == pytest.approx(1e-4)
    assert r.terms_used == 10_000 and r.method == "state-sum"
    assert 0 < diff(zeta_reference(2), r.value) <= r.tail_bound
    assert str(r.value).startswith("1.64483")


def test_state_sum_single_term():
    r = zeta_via_states(s=2, cutoff=1)
    assert r.value == 1 and r.tail_bound == 1


def test_state_sum_s4():
    r = zeta_via_states(s=4, cutoff=1000)
    assert r.tail_bound == pytest.approx(1 / 3 * 1e-9)
    assert 0 < diff(zeta_reference(4), r.value) <= r.tail_bound


def test_state_sum_matches_direct_series():
    r = zeta_via_states(s=3, cutoff=500)
    assert close(r.value, direct_partial_sum(3, 500), 1e-35)


def test_state_sum_exact_mode():
    r = zeta_via_states(SpectralParams(s=2, cutoff=10, exact=True))
    assert r.value == sum(Fraction(1, n * n) for n in range(1, 11))


def test_state_sum_complex_exponent():
    s = parse_exponent("2+0.5i")
    r = zeta_via_states(s=s, cutoff=2000)
    assert close(zeta_reference(s), r.value, r.tail_bound)


@pytest.mark.parametrize("s", [1, 0.5, "1+3i", -2])
def test_state_sum_rejects_divergent_region(s):
    with pytest.raises(DivergentParameters):
        SpectralParams(s=parse_exponent(s) if isinstance(s, str) else s)


def test_exact_mode_needs_integer_exponent():
    with pytest.raises(InexactError):
        zeta_via_states(SpectralParams(s=Fraction(5, 2), cutoff=10, exact=True))


@given(st.floats(1.2, 6), st.integers(10, 400))
@settings(max_examples=25, deadline=None)
def test_state_sum_within_tail_bound(s, n_max):
    r = zeta_via_states(s=s, cutoff=n_max)
    assert 0 <= diff(zeta_reference(s), r.value) <= r.tail_bound


# -- Euler factors --------------------------------------------------------------------------------


@pytest.mark.parametrize("p, s, want", [(2, 2, Fraction(4, 3)), (3, 2, Fraction(9, 8)), (2, 10, Fraction(1024, 1023))])
def test_euler_factor_examples(p, s, want):
    r = euler_factor(p, s)
    assert close(r.value, want, 1e-30)
    assert euler_factor_closed(p, s, exact=True) == want


def test_exact_factor_is_the_truncated_geometric_sum():
    r = euler_factor(2, 2, depth=5, exact=True)
    assert r.value == sum(Fraction(1, 4**k) for k in range(6))
    assert Fraction(4, 3) - r.value == pytest.approx(float(r.tail_bound))


def test_euler_factor_needs_prime():
    with pytest.raises(NotPrime):
        euler_factor(4, 2)


def test_euler_factor_needs_convergence():
    with pytest.raises(DivergentParameters):
        euler_factor(2, 0)


@pytest.mark.parametrize("p", primes_upto(50))
@pytest.mark.parametrize("s", [2, 3])
def test_quantum_factor_agrees(p, s):
    closed = 1 / (1 - mpmath.power(p, -s))
    assert close(euler_factor(p, s).value, closed, 1e-12)
    assert close(zeta_p_quantum(p, s).value, euler_factor(p, s).value, 1e-12)


def test_quantum_factor_examples():
    assert close(zeta_p_quantum(2, 2).value, Fraction(4, 3), 1e-30)
    assert close(zeta_p_quantum(5, 3, depth=40).value, Fraction(125, 124), 1e-30)
    assert zeta_p_quantum(7, 2, depth=0).value == 1


# -- Euler product ----------------------------------------------------------------------------------


def test_euler_product_single_factor():
    assert close(euler_product(2, 2).value, Fraction(4, 3), 1e-30)


def test_euler_product_up_to_seven():
    want = Fraction(4, 3) * Fraction(9, 8) * Fraction(25, 24) * Fraction(49, 48)
    assert close(euler_product(2, 7).value, want, 1e-30)
    assert round(float(want), 6) == 1.595052


def test_euler_product_converges():
    values = [euler_product(2, p).value for p in (10, 100, 1000)]
    assert values == sorted(values)
    assert close(values[-1], zeta_reference(2), 1e-3)
    assert str(values[-1]).startswith("1.6447")


def test_euler_product_is_the_smooth_sum_in_exact_mode():
    # finite depth keeps the product a polynomial in p^-s: compare with the P-smooth sum
    r = euler_product(2, 5, depth=3, exact=True)
    terms = [Fraction(1, (2**i * 3**j * 5**k) ** 2) for i in range(4) for j in range(4) for k in range(4)]
    assert r.value == sum(terms)


def test_euler_product_order_does_not_matter():
    a = euler_product(3, 50, exact=True, depth=4)
    b = euler_product(3, 50, exact=True, depth=4, primes=reversed(primes_upto(50)))
    assert a.value == b.value


# -- quantum Euler product -----------------------------------------------------------------------------


def test_quantum_zeta_partial_sum():
    r = zeta_quantum(2, 100, 100, exact=True)
    assert r.value == sum(Fraction(1, n * n) for n in range(1, 101))
    assert round(float(r.value), 6) == 1.634984


def test_quantum_zeta_single_term():
    assert zeta_quantum(2, cutoff=1).value == 1


@pytest.mark.parametrize("n_max", [1, 17, 100, 1000])
def test_quantum_zeta_equals_state_sum(n_max):
    assert zeta_quantum(2, cutoff=n_max).value == zeta_via_states(s=2, cutoff=n_max).value


def test_quantum_zeta_needs_enough_primes():
    with pytest.raises(PrimeBoundTooSmall):
        zeta_quantum(2, prime_bound=10, cutoff=20)


def test_truncated_product_is_a_smooth_sum():
    # depth 10 covers every 7-smooth n <= 2047; larger ones add less than 1/2047
    r = euler_product(2, 7, depth=10, exact=True)
    covered = smooth_sum(2, 2047, 7)
    assert 0 <= r.value - covered <= Fraction(1, 2047)
    assert float(r.value - covered) <= float(r.tail_bound)


# -- power tower ---------------------------------------------------------------------------------------


def test_tower_examples():
    assert power_tower_relation(2, 3, 2) == (PrimePower.of(2, -6), PrimePower.of(2, -6))
    assert power_tower_relation(2, 3, 2)[0].to_fraction() == Fraction(1, 64)
    lhs, rhs = power_tower_relation(3, 2, 1)
    assert lhs.to_fraction() == rhs.to_fraction() == Fraction(1, 9)


@pytest.mark.parametrize("m", range(2, 11))
def test_tower_degenerate_level(m):
    lhs, rhs = power_tower_relation(m, 1, Fraction(3, 2))
    assert lhs == rhs == PrimePower.of(m, Fraction(-3, 2))


@given(st.integers(2, 10), st.integers(1, 4), st.fractions(min_value=-3, max_value=5, max_denominator=7))
def test_tower_is_exact_for_rational_s(m, ell, s):
    lhs, rhs = power_tower_relation(m, ell, s)
    assert lhs == rhs


def test_tower_float_exponent():
    lhs, rhs = power_tower_relation(2, 3, 2.5)
    assert close(lhs, rhs, 1e-30)


# -- results and helpers -----------------------------------------------------------------------------------


def test_json_fields_are_stable():
    data = zeta_via_states(s=2, cutoff=100).to_json()
    assert set(data) == {"value_re", "value_im", "tail_bound", "terms_used", "method"}
    assert isinstance(data["value_re"], str) and mpmath.mpf(data["value_im"]) == 0


def test_json_keeps_full_precision():
    with mpmath.workprec(200):
        third = mpmath.mpf(1) / 3
    data = ZetaResult(third, 1, 0, "x", bits=200).to_json()
    assert data["value_re"].startswith("0." + "3" * 55)


@pytest.mark.parametrize("text, value", [("2", 2), ("3/2", Fraction(3, 2)), ("2.5", 2.5), ("2+0.5i", complex(2, 0.5))])
def test_parse_exponent(text, value):
    assert parse_exponent(text) == value


def test_integral_tail():
    assert integral_tail(100, 2) == pytest.approx(0.01)


def test_euler_maclaurin_oracle_matches_mpmath():
    for s in (2, 3.5, complex(2, 7)):
        assert close(zeta_euler_maclaurin(s), zeta_reference(s), 1e-30)
