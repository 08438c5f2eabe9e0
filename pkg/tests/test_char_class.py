import math
import random
import warnings
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lerch_periods.char_class import (
    EquivariantBundleSpec,
    GradedElement,
    ToyChowElement,
    ch_g_split,
    fixed_point_count,
    kappa,
    kappa_numerator,
    kappa_numerator_closed_form,
    kappa_numerator_exterior,
    kappa_rhs,
    lambda_minus1_ch,
    lambda_minus1_exterior,
    primitive_ranks_spec,
    projector_eval,
    projector_idempotent_check,
    projector_poly,
    toy_lambda_minus1,
    toy_lambda_minus1_summand,
    verify_grrr,
    verify_kappa,
    verify_taylor_bernoulli,
    verify_taylor_lerch,
    verify_toy_multiplicative,
)
from lerch_periods.cyclotomic import Cyclotomic, cyclotomic_poly, divisors, mobius, totient
from lerch_periods.numeric import DomainError

from conftest import bernoulli_recurrence


def spec(n, *pairs):
    return EquivariantBundleSpec(n, tuple(pairs))


def lines(n, exps):
    return EquivariantBundleSpec(n, tuple((l, 1) for l in exps))


def monomial(nv, **powers):
    m = [0] * nv
    for k, v in powers.items():
        m[int(k[1:])] = v
    return tuple(m)


# -- spec type -----------------------------------------------------------------------


def test_spec_parse_and_ranks():
    s = EquivariantBundleSpec.parse(6, "1:2, 0:1,7:1")
    assert s.summands == ((1, 2), (0, 1), (1, 1))
    assert s.rank == 4 and s.rank0 == 1
    assert s.line_exponents() == [1, 1, 0, 1]
    assert str(s) == "1:2,0:1,1:1"
    with pytest.raises(ValueError):
        EquivariantBundleSpec(3, ((1, -1),))


# -- Chern character and lambda_-1 --------------------------------------------------


def test_ch_rank_one_trivial_eigenvalue():
    ch = ch_g_split(lines(1, [0]), True, 2)
    want = GradedElement(1, 1, 2, {(0,): 1, (1,): 1, (2,): Fraction(1, 2)})
    assert ch == want


def test_ch_rank_zero():
    # the empty spec still carries one dummy variable
    assert ch_g_split(spec(5), True, 3) == GradedElement(5, 1, 3)


def test_ch_mixed_spec_over_q_i():
    ch = ch_g_split(spec(4, (1, 1), (0, 1)), True, 1)
    i = Cyclotomic.zeta(4)
    want = GradedElement(4, 2, 1, {(0, 0): i + 1, (1, 0): i, (0, 1): 1})
    assert ch == want


def test_ch_dual_and_plain_are_conjugate_at_degree_zero():
    s = spec(6, (1, 2), (5, 1))
    a = ch_g_split(s, True, 2).constant_term()
    b = ch_g_split(s, False, 2).constant_term()
    assert a.conj() == b


def test_lambda_single_root():
    lam = lambda_minus1_ch(lines(1, [0]), 3)
    want = GradedElement(1, 1, 3, {(1,): -1, (2,): Fraction(-1, 2), (3,): Fraction(-1, 6)})
    assert lam == want
    assert lambda_minus1_ch(lines(2, [1]), 3).constant_term() == 2


def test_lambda_matches_exterior_powers_n3():
    s = lines(3, [1, 2])
    assert lambda_minus1_ch(s, 4) == lambda_minus1_exterior(s, 4)


def random_spec(rng, n, max_rank=3):
    r = rng.randint(0, max_rank)
    return lines(n, [rng.randrange(n) for _ in range(r)])


@pytest.mark.parametrize("seed", range(30))
def test_numerator_identities(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    s = random_spec(rng, n)
    D = rng.randint(0, 4)
    num = kappa_numerator(s, D)
    assert num == kappa_numerator_exterior(s, D)
    assert lambda_minus1_ch(s, D) == lambda_minus1_exterior(s, D)
    if s.rank0 == 0:
        assert num == kappa_numerator_closed_form(s, D)
    else:
        with pytest.raises(DomainError):
            kappa_numerator_closed_form(s, D)


@pytest.mark.parametrize("seed", range(15))
def test_lambda_multiplicative_in_graded_ring(seed):
    rng = random.Random(1000 + seed)
    n = rng.randint(2, 6)
    s = random_spec(rng, n)
    D = 3
    prod = GradedElement.constant(1, n, max(s.rank, 1), D)
    for i, l in enumerate(s.line_exponents()):
        prod = prod * (1 - GradedElement.exp_variable(i, n, max(s.rank, 1), D, Cyclotomic.zeta(n, l)))
    assert lambda_minus1_ch(s, D) == prod


# -- graded ring ---------------------------------------------------------------------


@st.composite
def graded(draw, n=3, nv=2, D=3):
    terms = {}
    for m in [(a, b) for a in range(D + 1) for b in range(D + 1 - a)]:
        c = draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
        k = draw(st.integers(0, n - 1))
        terms[m] = Cyclotomic.zeta(n, k) * c
    return GradedElement(n, nv, D, terms)


@given(graded(), graded(), graded())
def test_graded_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(graded())
def test_graded_inverse(a):
    if a.constant_term().is_zero():
        with pytest.raises((DomainError, ZeroDivisionError)):
            a.inverse()
        return
    one = GradedElement.constant(1, 3, 2, 3)
    assert a * a.inverse() == one


def test_graded_truncation_and_order():
    x = GradedElement.variable(0, 1, 2, 2)
    y = GradedElement.variable(1, 1, 2, 2)
    assert (x * x * y).component(3) == GradedElement(1, 2, 2)
    e = (1 + x + y) * (1 + x + y)
    assert list(e.monomials()) == sorted(e.monomials(), key=lambda m: (sum(m), tuple(-v for v in reversed(m))), reverse=True)


# -- kappa -----------------------------------------------------------------------------


def test_kappa_single_root_of_unity_i():
    s = lines(4, [1])
    i = Cyclotomic.zeta(4)
    assert kappa(s, 0).constant_term() == -i * (1 - i).inverse()
    assert kappa(s, 0).constant_term() == (1 - i) / 2
    assert verify_kappa(s, 0).passed


def test_kappa_trivial_line():
    # hand expansion: Td(g)(1 - e^g) * e^g/(1 - e^g) = -Td(g) e^g, Td = 1 - g/2 + ..., degree 1 part is -g/2
    b = bernoulli_recurrence(2)
    hand = -(b[1] + 1)
    assert hand == Fraction(-1, 2)
    k = kappa(lines(1, [0]), 1).component(1)
    assert k == GradedElement(1, 1, 1, {(1,): hand})
    assert verify_kappa(lines(1, [0]), 0).passed


def test_kappa_mixed_n3():
    s = spec(3, (1, 1), (2, 1), (0, 1))
    for l in (0, 1, 2):
        assert verify_kappa(s, l).passed


def test_kappa_rejects_negative_l():
    with pytest.raises(ValueError):
        verify_kappa(lines(3, [1]), -1)


def all_small_specs(n, max_rank=3):
    for r in range(max_rank + 1):
        for exps in combinations_with_replacement(range(n), r):
            yield lines(n, exps)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_kappa_exhaustive_small_ranks(n):
    for s in all_small_specs(n):
        for l in range(4):
            deg = l + s.rank0
            assert kappa(s, deg + 1).component(deg).truncate(deg) == kappa_rhs(s, l), (str(s), l)


# -- Taylor coefficients ---------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_taylor_lerch(n):
    for k in range(1, n):
        reps = verify_taylor_lerch(n, k, maxdeg=8, digits=40)
        assert len(reps) == 10
        assert all(r.passed for r in reps)


def test_taylor_bernoulli():
    reps = verify_taylor_bernoulli(maxdeg=8, digits=40)
    assert all(r.passed for r in reps)
    b = bernoulli_recurrence(10)
    # for p >= 1 the coefficient is -B_(p+1)/((p+1) p!)
    for p in range(1, 9):
        assert reps[0].lhs[p] == -b[p + 1] / ((p + 1) * math.factorial(p))


def test_taylor_rejects_alpha_one():
    with pytest.raises(DomainError):
        verify_taylor_lerch(4, 4)


# -- toy Chow ring ---------------------------------------------------------------------


def test_toy_product_rule():
    a = ToyChowElement(3, 2, {"u": 1})
    b = ToyChowElement(3, Cyclotomic.zeta(3), {"v": 3})
    p = a * b
    assert p.z == 2 * Cyclotomic.zeta(3)
    assert p.x == {"u": Cyclotomic.zeta(3), "v": Cyclotomic(3, [6])}
    assert a * a.inverse() == ToyChowElement(3, 1)
    with pytest.raises(DomainError):
        ToyChowElement(3, 0, {"u": 1}).inverse()


def test_toy_rank_one():
    for n in (2, 3, 5, 12):
        for l in range(1, n):
            z = Cyclotomic.zeta(n, l)
            lam = toy_lambda_minus1_summand(n, l, 1, "c")
            assert lam == ToyChowElement(n, 1 - z, {"c": -z})
            assert verify_grrr(EquivariantBundleSpec(n, ((l, 1),), ("c",))).passed


def test_toy_rank_two_n5():
    for l in range(1, 5):
        z = Cyclotomic.zeta(5, l)
        # sum_k (-1)^k z^k (C(2,k) (+) C(1,k-1) c): k=0,1,2
        want = ToyChowElement(5, 1 - 2 * z + z * z, {"c": -z + z * z})
        s = EquivariantBundleSpec(5, ((l, 2),), ("c",))
        assert toy_lambda_minus1(s) == want
        assert verify_grrr(s).passed


def test_toy_sum_of_degrees_n3():
    s = EquivariantBundleSpec(3, ((1, 1), (2, 1)), ("a", "b"))
    assert verify_toy_multiplicative(s).passed
    assert verify_grrr(s).passed


def test_toy_lambda_rejects_trivial_eigenvalue():
    with pytest.raises(DomainError):
        verify_grrr(spec(4, (0, 1), (1, 1)))


@given(
    st.integers(2, 12).flatmap(
        lambda n: st.tuples(
            st.just(n), st.lists(st.tuples(st.integers(1, n - 1), st.integers(0, 3)), min_size=1, max_size=3)
        )
    )
)
def test_toy_lambda_property(data):
    n, pairs = data
    s = EquivariantBundleSpec(n, tuple(pairs), tuple(f"s{i}" for i in range(len(pairs))))
    assert verify_grrr(s).passed
    assert verify_toy_multiplicative(s).passed


# -- projector ------------------------------------------------------------------------


def ramanujan_sum(n, k):
    g = math.gcd(n, k)
    return sum(mobius(n // d) * d for d in divisors(g))


def test_projector_examples():
    assert projector_poly(1) == (Fraction(1),)
    assert projector_poly(3) == (Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3))
    c = projector_poly(4)
    i = Cyclotomic.zeta(4)
    assert [projector_eval(c, x) for x in (1, i, -1, -i)] == [0, 1, 0, 1]


@pytest.mark.parametrize("n", range(1, 31))
def test_projector_ramanujan_oracle(n):
    # the Lagrange basis at zeta for T^n - 1 is (1/n) sum_k zeta^-k T^k, so summing over primitive zeta gives c_n(k)/n
    assert projector_poly(n) == tuple(Fraction(ramanujan_sum(n, k), n) for k in range(n))


def test_projector_idempotent_examples():
    reps = projector_idempotent_check(1)
    assert all(r.passed for r in reps)
    reps = projector_idempotent_check(3)
    assert all(r.passed for r in reps)
    assert reps[1].lhs == 2
    reps = projector_idempotent_check(12)
    assert all(r.passed for r in reps) and reps[1].lhs == totient(12) == 4
    with pytest.raises(ValueError):
        projector_idempotent_check(31)


def test_fixed_point_examples():
    assert fixed_point_count(primitive_ranks_spec(5)) == 5
    assert fixed_point_count(primitive_ranks_spec(6)) == 1
    assert fixed_point_count(spec(2, (1, 1))) == 2
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert fixed_point_count(spec(4, (0, 1), (1, 1))) == 0
        assert w and issubclass(w[0].category, RuntimeWarning)


@pytest.mark.parametrize("n", range(2, 31))
def test_fixed_points_phi_at_one(n):
    p = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    expected = p[0] if len(p) == 1 else 1
    assert sum(cyclotomic_poly(n)) == expected
    assert fixed_point_count(primitive_ranks_spec(n)) == expected
