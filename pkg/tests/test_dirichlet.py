import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf

from lerch_periods.cyclotomic import Cyclotomic, divisors, mobius, totient
from lerch_periods.dirichlet import (
    associated_primitive,
    character_from_label,
    characters,
    conductor,
    gauss_sum,
    induce,
    l_function,
    l_function_ds,
    verify_euler_factor,
    verify_gauss_norm,
    verify_wasq,
)
from lerch_periods.numeric import PoleError, precision_bits

P = precision_bits(50)
TOL = mpf(2) ** (-(P - 24))


def close(a, b, tol=TOL):
    with mp.workprec(P + 64):
        return abs(a - b) <= tol * max(1, abs(b))


def units(n):
    return [u for u in range(1, n + 1) if math.gcd(u, n) == 1]


def odd_chi4():
    (chi,) = [c for c in characters(4) if c.is_odd]
    return chi


def brute_conductor(chi):
    n = chi.modulus
    for f in divisors(n):
        if all(chi(a) == 1 for a in units(n) if (a - 1) % f == 0):
            return f


# -- enumeration ------------------------------------------------------------------


def test_characters_mod_4():
    cs = characters(4)
    assert len(cs) == 2
    assert sum(c.is_odd for c in cs) == 1


def test_characters_mod_5_orthogonal_to_one():
    cs = characters(5)
    assert len(cs) == 4
    for c in cs:
        if not c.is_principal:
            assert sum((c(a) for a in range(5)), Cyclotomic(1, [0])) == 0


def test_characters_mod_8_klein_group():
    # every unit mod 8 squares to 1, so every character has order dividing 2
    assert all(u * u % 8 == 1 for u in units(8))
    cs = characters(8)
    assert len(cs) == 4
    assert all(c.order <= 2 for c in cs)
    assert len({c.table for c in cs}) == 4


@pytest.mark.parametrize("n", range(1, 37))
def test_count_distinct_and_values(n):
    cs = characters(n)
    assert len(cs) == totient(n)
    assert len(set(cs)) == totient(n)
    for c in cs:
        for a in range(n):
            if math.gcd(a, n) > 1 and n > 1:
                assert c(a) == 0


@pytest.mark.parametrize("n", range(1, 17))
def test_orthogonality(n):
    cs = characters(n)
    for c in cs:
        for d in cs:
            s = sum((c(a) * d(a).conj() for a in range(n)), Cyclotomic(1, [0]))
            assert s == (totient(n) if c == d else 0)


@pytest.mark.parametrize("n", range(1, 37))
def test_multiplicative(n):
    for c in characters(n):
        for a in range(n):
            for b in range(n):
                assert c(a * b) == c(a) * c(b)


@pytest.mark.parametrize("n", range(3, 40))
def test_parity_partition(n):
    assert sum(c.is_odd for c in characters(n)) == totient(n) // 2


def test_labels_round_trip():
    for n in (5, 8, 12, 15):
        for c in characters(n):
            assert character_from_label(c.label) == c
    with pytest.raises(ValueError):
        character_from_label("12.9.9.9")


# -- conductor, induction -------------------------------------------------------


def test_conductor_examples():
    assert conductor(characters(4)[0]) == 1
    chi12 = induce(odd_chi4(), 12)
    assert chi12.conductor == 4
    assert associated_primitive(chi12) == odd_chi4()
    for c in characters(5):
        if not c.is_principal:
            assert c.conductor == 5


def test_induce_values():
    chi = induce(odd_chi4(), 12)
    assert chi(5) == 1
    assert chi(7) == -1
    assert chi(3) == 0


def test_induce_principal_and_errors():
    one = characters(1)[0]
    for n in (1, 6, 10):
        assert induce(one, n).is_principal
        assert induce(one, n).modulus == n
    with pytest.raises(ValueError):
        induce(odd_chi4(), 6)


@pytest.mark.parametrize("n", range(1, 37))
def test_conductor_brute_force_and_induction(n):
    for chi in characters(n):
        assert chi.conductor == brute_conductor(chi)
        prim = associated_primitive(chi)
        assert prim.is_primitive
        assert induce(prim, n) == chi
        for m in (2 * n, 3 * n):
            if m <= 36:
                assert induce(chi, m).conductor == chi.conductor


# -- Gauss sums -----------------------------------------------------------------


def test_gauss_sum_mod_4():
    assert gauss_sum(odd_chi4()) == 2 * Cyclotomic.zeta(4)


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 9, 11, 12])
def test_gauss_norm(n):
    prims = [c for c in characters(n) if c.is_primitive]
    assert prims or n == 12
    for c in prims:
        assert verify_gauss_norm(c).passed
        with mp.workprec(P):
            brute = mp.fsum(c.value_mpc(u, P) * mp.expjpi(mpf(2 * u) / n) for u in units(n))
            assert close(abs(brute) ** 2, mpf(n))


@pytest.mark.parametrize("n", range(1, 31))
def test_principal_gauss_sum_is_mobius(n):
    t = gauss_sum(characters(n)[0])
    assert t == mobius(n)
    with mp.workprec(P):
        ramanujan = mp.fsum(mp.cospi(mpf(2 * u) / n) for u in units(n))
    assert close(ramanujan, mpf(mobius(n)), mpf(2) ** (-(P - 16)))


def test_twisted_gauss_examples():
    chi = odd_chi4()
    rep = verify_wasq(chi, 2)
    assert rep.passed and rep.lhs == 0 and rep.rhs == 0
    for c in characters(5):
        if c.is_primitive:
            assert all(verify_wasq(c, l).passed for l in range(5))
    # the primitive characters mod 12 are products chi_4 chi_3 and hence even
    prim12 = [c for c in characters(12) if c.is_primitive]
    assert prim12 and not any(c.is_odd for c in prim12)
    for c in prim12:
        assert all(verify_wasq(c, l).passed for l in range(12))


def test_twisted_gauss_rejects_imprimitive():
    with pytest.raises(ValueError):
        verify_wasq(induce(odd_chi4(), 12), 1)


# -- L-functions ----------------------------------------------------------------


def test_l_function_examples():
    chi = odd_chi4()
    with mp.workprec(P + 32):
        assert close(l_function(chi, 0, P).value, mpf(1) / 2)
        leibniz = mpmath.nsum(lambda k: (-1) ** int(k) / (2 * k + 1), [0, mpmath.inf])
        assert close(l_function(chi, 1, P).value, leibniz, mpf(2) ** (-(P - 40)))
        assert close(l_function(chi, 1, P).value, mp.pi / 4)
        assert close(l_function(characters(2)[0], 2, P).value, mp.pi ** 2 / 8)


def test_l_function_pole():
    with pytest.raises(PoleError):
        l_function(characters(6)[0], 1, P)


def direct_dirichlet_series(chi, s, M=200):
    """sum_{k <= M n} chi(k) k^-s plus the periodic tail through mpmath's Hurwitz zeta."""
    n = chi.modulus
    with mp.workprec(P + 64):
        head = mp.fsum(chi.value_mpc(k, P + 64) * mpf(k) ** (-s) for k in range(1, M * n + 1))
        tail = mp.fsum(
            chi.value_mpc(a, P + 64) * mpmath.zeta(s, M + mpf(a) / n) for a in range(1, n + 1) if math.gcd(a, n) == 1
        )
        return head + mpf(n) ** (-s) * tail


@pytest.mark.parametrize("n", range(1, 13))
def test_l_function_direct_series(n):
    for chi in characters(n):
        assert close(l_function(chi, 2, P).value, direct_dirichlet_series(chi, 2)), chi.label


def test_l_function_ds_finite_difference():
    h = mpf(2) ** (-(P // 4))
    for chi in characters(7) + characters(12):
        for s in ("0", "-1.5", "2"):
            with mp.workprec(P + 32):
                s0 = mpf(s)
                fd = (l_function(chi, s0 + h, P + 32).value - l_function(chi, s0 - h, P + 32).value) / (2 * h)
            assert close(l_function_ds(chi, s, P).derivative, fd, h)


def test_l_prime_chi4_at_one():
    # L'(chi_4, 1) = (pi/4)(gamma + 2 log 2 + 3 log pi - 4 log Gamma(1/4))
    with mp.workprec(P + 64):
        ref = mp.pi / 4 * (mp.euler + 2 * mp.log(2) + 3 * mp.log(mp.pi) - 4 * mpmath.loggamma(mpf(1) / 4))
    assert close(l_function_ds(odd_chi4(), 1, P).derivative, ref)


def test_euler_factor_examples():
    for c in characters(5):
        assert all(r.passed for r in verify_euler_factor(c, 2))
    reps = verify_euler_factor(induce(odd_chi4(), 12), 1)
    assert len(reps) == 2 and all(r.passed for r in reps)
    with mp.workprec(P + 32):
        z2 = mp.pi ** 2 / 6
        assert close(l_function(characters(6)[0], 2, P).value, z2 * (1 - mpf(1) / 4) * (1 - mpf(1) / 9))
    assert verify_euler_factor(characters(6)[0], 2)[0].passed


@given(st.integers(2, 30), st.sampled_from(["-2.5", "0.5", "1", "3"]))
def test_euler_factor_property(n, s):
    for chi in characters(n):
        if chi.is_principal and s == "1":
            continue
        assert all(r.passed for r in verify_euler_factor(chi, s, digits=30))
