"""Acceptance criteria, one test each, at the stated tolerances."""

import time

from mpmath import mp, mpf

from lerch_periods import numeric
from lerch_periods.char_class import (
    EquivariantBundleSpec,
    projector_idempotent_check,
    verify_grrr,
    verify_kappa,
    verify_taylor_bernoulli,
    verify_taylor_lerch,
)
from lerch_periods.cli import DEFAULT_SEED, grrr_specs, kappa_specs
from lerch_periods.dirichlet import characters, verify_gauss_norm, verify_wasq
from lerch_periods.hodge_eps import gamma_product, lemniscate_period, solve_epsilon, verify_hurwitz_link
from lerch_periods.identities import (
    LEMMA_S_GRID,
    verify_eta_zero,
    verify_lemma_functional,
    verify_theorem2_ratio,
    verify_zeta_negint,
)
from lerch_periods.numeric import agm, precision_bits

LEMMA_MODULI = (3, 4, 5, 7, 8, 9, 11, 12)
RATIO_MODULI = (3, 4, 5, 7, 9, 12)
HURWITZ_PRIMES = (3, 5, 7, 11)


def odd(n):
    return [c for c in characters(n) if c.is_odd]


def worst(reports):
    return max((r.rel_err for r in reports), default=mpf(0))


def lemma_reports(digits):
    return [verify_lemma_functional(chi, s, digits) for n in LEMMA_MODULI for chi in odd(n) for s in LEMMA_S_GRID]


def ratio_reports(digits):
    return [verify_theorem2_ratio(chi, digits) for n in RATIO_MODULI for chi in odd(n)]


def hurwitz_reports(digits):
    return [verify_hurwitz_link(chi, digits) for p in HURWITZ_PRIMES for chi in odd(p)]


def test_criterion_01_lemma_functional(criterion):
    numeric._hurwitz_cached.cache_clear()
    t0 = time.perf_counter()
    reps = lemma_reports(50)
    elapsed = time.perf_counter() - t0
    err = worst(reps)
    ok = all(r.passed for r in reps) and err <= mpf(10) ** -35 and elapsed < 300
    criterion(1, ok, f"functional identity, {len(reps)} checks, max rel err {mp.nstr(err, 3)}, {elapsed:.1f} s")
    assert ok


def test_criterion_02_log_derivative_ratio(criterion):
    reps = ratio_reports(50)
    imprimitive = sum(1 for n in RATIO_MODULI for chi in odd(n) if not chi.is_primitive)
    err = worst(reps)
    ok = all(r.passed for r in reps) and err <= mpf(10) ** -35 and imprimitive > 0
    criterion(2, ok, f"log-derivative ratio, {len(reps)} characters ({imprimitive} imprimitive), max rel err {mp.nstr(err, 3)}")
    assert ok


def test_criterion_03_hurwitz_link(criterion):
    reps = hurwitz_reports(50)
    err = worst(reps)
    ok = all(r.passed for r in reps) and err <= mpf(10) ** -35 and len(reps) == 1 + 2 + 3 + 5
    criterion(3, ok, f"Hurwitz link, {len(reps)} characters, max rel err {mp.nstr(err, 3)}")
    assert ok


def test_criterion_04_kappa(criterion):
    items = kappa_specs(DEFAULT_SEED, 200)
    reps = [verify_kappa(EquivariantBundleSpec(n, s), l) for n, s, l in items]
    specs = [EquivariantBundleSpec(n, s) for n, s, _ in items]
    mixed = sum(1 for s in specs if 0 < s.rank0 < s.rank)
    ok = (
        all(r.passed for r in reps)
        and len(items) >= 200
        and mixed > 0
        and all(s.n in (2, 3, 4, 6) and s.rank <= 3 for s in specs)
        and all(l <= 3 for *_, l in items)
    )
    criterion(4, ok, f"kappa identity exact on {len(reps)} specs ({mixed} mixed), seed {DEFAULT_SEED}")
    assert ok


def test_criterion_05_toy_chow_ring(criterion):
    items = grrr_specs(DEFAULT_SEED, 100)
    specs = [EquivariantBundleSpec(n, s) for n, s in items]
    reps = [verify_grrr(s) for s in specs]
    ok = all(r.passed for r in reps) and len(reps) >= 100 and all(s.n <= 12 and max(r for _, r in s.summands) <= 3 for s in specs)
    criterion(5, ok, f"toy Chow ring identity exact on {len(reps)} specs, seed {DEFAULT_SEED}")
    assert ok


def test_criterion_06_taylor(criterion):
    reps = []
    for n in (2, 3, 4, 6):
        for k in range(1, n):
            reps.extend(verify_taylor_lerch(n, k, maxdeg=8, digits=50))
    reps.extend(verify_taylor_bernoulli(maxdeg=8, digits=50))
    exact = [r for r in reps if r.exact]
    num = [r for r in reps if not r.exact]
    err = max(r.abs_err for r in num)
    ok = all(r.passed for r in reps) and err <= mpf(10) ** -30
    criterion(6, ok, f"Taylor coefficients: {len(exact)} exact vectors, {len(num)} numeric checks, max err {mp.nstr(err, 3)}")
    assert ok


def test_criterion_07_twisted_gauss_sums(criterion):
    reps = []
    for n in (4, 5, 7, 8, 9, 11, 12):
        for chi in characters(n):
            if chi.is_primitive:
                reps.extend(verify_wasq(chi, l) for l in range(n))
                reps.append(verify_gauss_norm(chi))
    ok = all(r.passed for r in reps)
    criterion(7, ok, f"twisted Gauss sums and |tau|^2 = n, {len(reps)} exact checks")
    assert ok


def test_criterion_08_lemniscate(criterion):
    digits = 100
    system = solve_epsilon(4, {1: 1, 3: 0})
    eps = [int(system.epsilon[a]) for a in range(4)]
    lhs = gamma_product(4, system.epsilon, 1, digits)
    P = precision_bits(digits)
    with mp.workprec(P + 32):
        rhs = 2 * mp.pi / agm(1, mp.sqrt(2), P + 32)
        err = abs(lhs - rhs) / rhs
        assert abs(rhs - 2 * lemniscate_period(digits)) <= mpf(10) ** -95
    ok = err <= mpf(10) ** -90 and eps == [0, -1, 1, 1]
    criterion(8, ok, f"Gamma(1/4)Gamma(1/2)/Gamma(3/4) = 2 pi/agm(1, sqrt 2), rel err {mp.nstr(err, 3)}, eps {eps}")
    assert ok


def test_criterion_09_special_values(criterion):
    negint = [verify_zeta_negint(l, 50) for l in range(20)]
    eta = [r for n in range(2, 25) for r in verify_eta_zero(n, 50)]
    err = max(r.abs_err for r in negint)
    ok = all(r.passed for r in negint + eta) and err <= mpf(10) ** -40
    criterion(9, ok, f"zeta(-l) for l <= 19 (max err {mp.nstr(err, 3)}), eta(theta, 0) on {len(eta)} angles")
    assert ok


def test_criterion_10_projector(criterion):
    reps = [r for n in range(1, 31) for r in projector_idempotent_check(n)]
    ok = all(r.passed for r in reps) and len(reps) == 4 * 30
    criterion(10, ok, f"projector rational, interpolating, idempotent, trace phi(n), fixed points Phi_n(1), n <= 30 ({len(reps)} checks)")
    assert ok


def test_criterion_11_precision_scaling(criterion):
    reps = lemma_reports(100) + ratio_reports(100) + hurwitz_reports(100)
    err = worst(reps)
    ok = all(r.passed for r in reps) and err <= mpf(10) ** -85
    criterion(11, ok, f"criteria 1-3 at 100 digits, {len(reps)} checks, max rel err {mp.nstr(err, 3)}")
    assert ok
