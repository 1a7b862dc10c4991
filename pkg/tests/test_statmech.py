import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ponzeta.arith import primes_upto
from ponzeta.errors import DivergentParameters, NotPrime
from ponzeta.statmech import (
    CoefficientSpec,
    DirichletCharacter,
    MomentSpec,
    absolute_derivation,
    character_mod8,
    gauss_sum,
    gauss_sum_expected,
    k_moment,
    l_function,
    load_table,
    partition_function,
)
from oracle import close, diff, l_mod8_reference, zeta_reference


def rel(x, y):
    with mpmath.workprec(128):
        return abs(x - y) / abs(y)


# -- partition function -------------------------------------------------------------------------


def test_constant_one_partition_function():
    r = partition_function(CoefficientSpec.constant_one(), 1)
    with mpmath.workprec(128):
        want = 1 / (mpmath.e - 1)
    assert close(r.value, want, 1e-30)
    assert round(float(r.value), 6) == 0.581977


def test_single_state():
    with mpmath.workprec(128):
        ln2 = mpmath.log(2)
    r = partition_function(CoefficientSpec.from_table({1: 1}), ln2)
    assert close(r.value, 0.5, 1e-30)
    assert r.tail_bound == 0


def test_mod8_partition_function_leading_terms():
    spec = CoefficientSpec.mod8()
    assert [spec(e) for e in range(1, 9)] == [2, 1, 0, 1, 0, 1, 2, 1]
    direct = partition_function(spec, 1, cutoff=4).value
    with mpmath.workprec(128):
        want = 2 * mpmath.exp(-1) + mpmath.exp(-2) + mpmath.exp(-4)
    assert close(direct, want, 1e-30)


@given(st.floats(0.05, 5))
@settings(max_examples=30)
def test_closed_form_matches_truncated_sum(beta):
    spec = CoefficientSpec.mod8()
    closed = partition_function(spec, beta).value
    r = partition_function(spec, beta, cutoff=2000)
    rounding = 1e-35  # 128-bit working precision
    assert -rounding <= diff(closed, r.value) <= r.tail_bound + rounding


def test_rule_spec_needs_cutoff():
    with pytest.raises(ValueError):
        partition_function(CoefficientSpec.from_rule(lambda e: e % 3), 1)


def test_rule_spec_without_bound_has_infinite_tail():
    r = partition_function(CoefficientSpec.from_rule(lambda e: 1), 1, cutoff=10)
    assert r.tail_bound == mpmath.inf


def test_partition_function_needs_positive_beta():
    with pytest.raises(DivergentParameters):
        partition_function(CoefficientSpec.constant_one(), 0)


# -- moments ----------------------------------------------------------------------------------------


@pytest.mark.parametrize("s", [2, 3, 4])
def test_moment_quadrature_is_gamma_zeta(s):
    r = k_moment(MomentSpec(CoefficientSpec.constant_one(), s))
    assert rel(r.value / mpmath.gamma(s), zeta_reference(s)) <= 1e-6


def test_moment_examples():
    one = CoefficientSpec.constant_one()
    assert rel(k_moment(MomentSpec(one, 2)).value, mpmath.pi**2 / 6) <= 1e-9
    assert round(float(k_moment(MomentSpec(one, 3)).value), 6) == 2.404114


@pytest.mark.parametrize("s", [0.5, 2, 3.5])
def test_single_state_moment_is_gamma(s):
    r = k_moment(MomentSpec(CoefficientSpec.from_table({1: 1}), s))
    assert rel(r.value, mpmath.gamma(s)) <= 1e-9


def test_moment_series_agrees_with_quadrature():
    one = CoefficientSpec.constant_one()
    series = k_moment(MomentSpec(one, 3, method="series"))
    quad = k_moment(MomentSpec(one, 3))
    assert close(series.value, quad.value, series.tail_bound + 1e-9)


def test_mod8_moment_identity():
    k = k_moment(MomentSpec(CoefficientSpec.mod8(), 2)).value
    want = mpmath.gamma(2) * (l_mod8_reference() + zeta_reference(2))
    assert rel(k, want) <= 1e-6


def test_moment_diverges_at_one():
    with pytest.raises(DivergentParameters):
        MomentSpec(CoefficientSpec.constant_one(), 1)


def test_unknown_moment_method():
    with pytest.raises(ValueError):
        MomentSpec(CoefficientSpec.constant_one(), 2, method="magic")


# -- tables ------------------------------------------------------------------------------------------


def test_load_table():
    text = "# energy degeneracy\n1 2\n\n3 1  # comment\n7 4\n"
    assert load_table(text) == {1: 2, 3: 1, 7: 4}


@pytest.mark.parametrize("text", ["1 2\n1 3\n", "2 1\n1 1\n", "1\n", "1 2 3\n", "x 1\n"])
def test_bad_tables(text):
    with pytest.raises(ValueError):
        load_table(text)


def test_table_from_file(tmp_path):
    path = tmp_path / "levels.txt"
    path.write_text("1 1\n2 3\n")
    spec = CoefficientSpec.from_file(path)
    assert (spec(1), spec(2), spec(3)) == (1, 3, 0)
    assert spec.finite_support == 2


@pytest.mark.parametrize("table", [{0: 1}, {1: -1}, {2: 1.5}])
def test_table_validation(table):
    with pytest.raises(ValueError):
        CoefficientSpec.from_table(table)


# -- character and L-function ---------------------------------------------------------------------------


@pytest.mark.parametrize("n, value", [(7, 1), (3, -1), (4, 0), (1, 1), (5, -1), (15, 1)])
def test_character_table(n, value):
    assert character_mod8(n) == value
    assert DirichletCharacter.mod8()(n) == value


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_character_is_completely_multiplicative(m, n):
    assert character_mod8(m * n) == character_mod8(m) * character_mod8(n)


def test_character_is_non_principal():
    chi = DirichletCharacter.mod8()
    assert chi.is_principal_free()
    assert chi.max_partial_sum() == 1


def test_trivial_character_gives_zeta():
    r = l_function(3, DirichletCharacter.trivial(), 2000)
    assert 0 <= diff(zeta_reference(3), r.value) <= r.tail_bound


def test_l_function_at_two():
    r = l_function(2, DirichletCharacter.mod8())
    assert close(r.value, l_mod8_reference(), r.tail_bound)
    assert round(float(r.value), 6) == 0.872358


@given(st.floats(1.1, 5), st.integers(50, 2000))
@settings(max_examples=20, deadline=None)
def test_l_function_tail_bound_holds(s, n_max):
    with mpmath.workprec(128):
        reference = (mpmath.zeta(s, 1 / 8) - mpmath.zeta(s, 3 / 8) - mpmath.zeta(s, 5 / 8) + mpmath.zeta(s, 7 / 8)) / 8**s
    r = l_function(s, DirichletCharacter.mod8(), n_max)
    assert close(r.value, reference, r.tail_bound)


def test_l_function_rejects_critical_strip():
    with pytest.raises(DivergentParameters):
        l_function(1, DirichletCharacter.mod8())


def test_character_needs_full_table():
    with pytest.raises(ValueError):
        DirichletCharacter(4, (0, 1, 0))


# -- Gauss sums -------------------------------------------------------------------------------------------


def test_gauss_sum_examples():
    assert close(gauss_sum(5), gauss_sum_expected(5), 1e-30)
    with mpmath.workprec(128):
        assert abs(gauss_sum(5) - mpmath.sqrt(5)) < 1e-30
        assert abs(gauss_sum(3) - 1j * mpmath.sqrt(3)) < 1e-30


@pytest.mark.parametrize("p", primes_upto(200)[1:])
def test_gauss_sum_classical_value(p):
    g = gauss_sum(p)
    assert close(g, gauss_sum_expected(p), 1e-9)
    with mpmath.workprec(128):
        assert abs(abs(g) ** 2 - p) < 1e-20


@pytest.mark.parametrize("p", [2, 1, 9, 91])
def test_gauss_sum_needs_odd_prime(p):
    with pytest.raises(NotPrime):
        gauss_sum(p)


# -- absolute derivation --------------------------------------------------------------------------------------


def test_absolute_derivation_examples():
    assert absolute_derivation(2, 12) == 12
    assert absolute_derivation(3, 5) == 0
    for p in (2, 3, 5, 7, 101):
        assert absolute_derivation(p, p) == 1


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 10**6), st.integers(1, 10**6))
def test_leibniz_rule(p, n, m):
    assert absolute_derivation(p, n * m) == absolute_derivation(p, n) * m + n * absolute_derivation(p, m)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(0, 12), st.integers(1, 1000))
def test_absolute_derivation_formula(p, ell, m):
    if m % p == 0:
        return
    want = ell * p ** (ell - 1) * m if ell else 0
    assert absolute_derivation(p, p**ell * m) == want


def test_absolute_derivation_domain():
    with pytest.raises(NotPrime):
        absolute_derivation(4, 8)
    with pytest.raises(ValueError):
        absolute_derivation(2, 0)


def test_constant_one_is_periodic_with_period_one():
    spec = CoefficientSpec.constant_one()
    assert spec.period == (1,) and spec.c_max == 1 and math.isclose(float(partition_function(spec, 2).value), 1 / (math.e**2 - 1))
