"""Cross-module analytic identities between Lerch sums, Gamma factors and L-values.

Every check evaluates its two sides through disjoint code paths: the Galois
sums go through the Hurwitz decomposition of the Lerch series, the other side
through log-Gamma and Dirichlet L-functions.
"""

from __future__ import annotations

import math

from mpmath import mp, mpc, mpf

from .cyclotomic import Cyclotomic, prime_factors
from .dirichlet import DirichletCharacter, associated_primitive, l_function, l_function_ds
from .lerch import RootOfUnityAngle, lerch_cos_sin, lerch_cos_sin_with_ds, lerch_zeta, riemann_negint_exact
from .numeric import DomainError, loggamma, precision_bits, to_mp
from .report import compare

__all__ = [
    "LEMMA_S_GRID",
    "lemma_lhs",
    "lemma_rhs",
    "verify_lemma_functional",
    "ratio_lhs",
    "ratio_rhs",
    "verify_theorem2_ratio",
    "verify_eta_zero",
    "verify_zeta_negint",
    "consistency_triangle",
]

LEMMA_S_GRID = ("-2.5", "-1.25", "-0.5", "0.25", "0.75")


def _units(n):
    return [u for u in range(1, n + 1) if math.gcd(u, n) == 1]


def _require_odd(chi: DirichletCharacter):
    if not chi.is_odd:
        raise DomainError(f"character {chi.label} is not odd")


def _tol(digits, slack):
    return mpf(10) ** (-(digits - slack))


def lemma_lhs(chi: DirichletCharacter, s, prec: int, conjugate: bool = True):
    """sum_u eta(2 pi u/n, s) * conj(chi(u)) (or chi(u) when ``conjugate`` is False)."""
    n = chi.modulus
    acc = mpc(0)
    with mp.workprec(prec + 16):
        for u in _units(n):
            _, eta = lerch_cos_sin(RootOfUnityAngle(u, n), s, prec + 16)
            c = chi.value_mpc(u, prec + 16)
            acc += eta * (c.conjugate() if conjugate else c)
    with mp.workprec(prec):
        return +acc


def _gamma_factor(s, prec):
    """Gamma(1 - s/2) / Gamma((s + 1)/2) * pi^(s - 1/2)."""
    with mp.workprec(prec + 16):
        g = mp.exp(loggamma(1 - s / 2, prec + 16) - loggamma((s + 1) / 2, prec + 16))
        v = g * mp.pi ** (s - mpf(1) / 2)
    with mp.workprec(prec):
        return +v


def lemma_rhs(chi: DirichletCharacter, s, prec: int, conjugate: bool = True):
    """n^(1-s) Gamma(1 - s/2)/Gamma((s + 1)/2) pi^(s - 1/2) L(conj chi, 1 - s)."""
    n = chi.modulus
    psi = chi.conj() if conjugate else chi
    with mp.workprec(prec + 16):
        v = mpf(n) ** (1 - s) * _gamma_factor(s, prec + 16) * l_function(psi, 1 - s, prec + 16).value
    with mp.workprec(prec):
        return +v


def _check_lemma_s(s):
    for w in (mpc(s),):
        # poles of Gamma(1 - s/2) at s = 2, 4, ... and zeros of 1/Gamma((s+1)/2) at s = -1, -3, ...
        if w.imag == 0:
            x = w.real
            if x == mp.floor(x) and ((x >= 2 and int(x) % 2 == 0) or (x <= -1 and int(x) % 2 == 1)):
                raise DomainError(f"s = {x} is a pole-adjacent point of the Gamma factor")


def verify_lemma_functional(chi: DirichletCharacter, s, digits: int = 50, rel_tol=None):
    """sum_u eta(2 pi u/n, s) conj(chi(u)) = n^(1-s) G(s) L(conj chi, 1 - s) for odd chi.

    The conjugated variant (chi on the Galois side, conj chi in L) is evaluated as
    well and recorded in ``extra``.
    """
    _require_odd(chi)
    P = precision_bits(digits)
    tol = _tol(digits, 15) if rel_tol is None else rel_tol
    with mp.workprec(P):
        s = to_mp(s)
        _check_lemma_s(s)
        lhs = lemma_lhs(chi, s, P + 16)
        rhs = lemma_rhs(chi, s, P + 16)
        params = {"n": chi.modulus, "character": chi.label, "s": s}
        rep = compare("lemma-functional", params, lhs, rhs, tol, P)
        if chi.order > 2:
            alt_lhs = lemma_lhs(chi, s, P + 16, conjugate=False)
            alt = compare("lemma-functional", params, alt_lhs, rhs, tol, P)
            rep.extra["conjugated_variant_passes"] = alt.passed
        else:
            rep.extra["conjugated_variant_passes"] = rep.passed
    return rep


def ratio_lhs(chi: DirichletCharacter, prec: int):
    """[sum_u d/ds eta(2 pi u/n, 0) chi(u)] / [sum_u eta(2 pi u/n, 0) chi(u)]."""
    n = chi.modulus
    num = den = mpc(0)
    with mp.workprec(prec + 16):
        for u in _units(n):
            (_, eta), (_, deta) = lerch_cos_sin_with_ds(RootOfUnityAngle(u, n), 0, prec + 16)
            c = chi.value_mpc(u, prec + 16)
            num += deta * c
            den += eta * c
        if abs(den) < mpf(2) ** (-(prec // 2)):
            raise ArithmeticError(f"denominator sum vanishes for {chi.label}; L(conj chi, 1) should be nonzero")
        v = num / den
    with mp.workprec(prec):
        return +v, +den


def ratio_rhs(chi: DirichletCharacter, prec: int):
    """log(f/n) + L'(conj chi_f, 0)/L(conj chi_f, 0) - sum_{p | n} chi_f(p)/(p - chi_f(p)) log p."""
    n = chi.modulus
    prim = associated_primitive(chi)
    f = prim.modulus
    with mp.workprec(prec + 16):
        lv = l_function_ds(prim.conj(), 0, prec + 16)
        v = mp.log(mpf(f) / n) + lv.derivative / lv.value
        for p in prime_factors(n):
            c = prim.value_mpc(p, prec + 16)
            v -= c / (p - c) * mp.log(p)
    with mp.workprec(prec):
        return +v


def verify_theorem2_ratio(chi: DirichletCharacter, digits: int = 50, rel_tol=None):
    _require_odd(chi)
    P = precision_bits(digits)
    tol = _tol(digits, 15) if rel_tol is None else rel_tol
    with mp.workprec(P):
        lhs, den = ratio_lhs(chi, P + 16)
        # closed side at extended precision, so abs_err is the Galois side's true error
        rhs = ratio_rhs(chi, P + 64)
        params = {"n": chi.modulus, "character": chi.label, "conductor": chi.conductor}
        rep = compare("log-derivative-ratio", params, lhs, rhs, tol, P)
        rep.extra["denominator"] = den
    return rep


def verify_eta_zero(n: int, digits: int = 50, rel_tol=None):
    """eta(2 pi l/n, 0) = Im(zeta^l / (1 - zeta^l)) for l = 1..n-1, one report per l."""
    if n < 2:
        raise ValueError("n must be at least 2")
    P = precision_bits(digits)
    tol = mpf(2) ** (-(P - 16)) if rel_tol is None else rel_tol
    out = []
    for l in range(1, n):
        z = Cyclotomic.zeta(n, l)
        exact = z * (1 - z).inverse()
        # exact side at extended precision, so abs_err is the numeric side's true error
        with mp.workprec(P):
            rhs = exact.to_mpc(P + 64).imag
            _, lhs = lerch_cos_sin(RootOfUnityAngle(l, n), 0, P)
            out.append(compare("eta-zero", {"n": n, "l": l}, lhs, rhs, tol, P))
    return out


def verify_zeta_negint(l: int, digits: int = 50, rel_tol=None):
    """zeta_L(1, -l) through the Hurwitz path against the exact Bernoulli value."""
    P = precision_bits(digits)
    tol = mpf(10) ** -40 if rel_tol is None else rel_tol
    ex = riemann_negint_exact(l)
    lhs = lerch_zeta((0, 1), -l, P).real
    with mp.workprec(P + 64):
        rhs = mpf(ex.numerator) / ex.denominator
        return compare("zeta-negint", {"n": 1, "l": l}, lhs, rhs, tol, P, extra={"exact": ex})


def consistency_triangle(chi: DirichletCharacter, digits: int = 50):
    """Log-derivative at s = 0 of both sides of the functional identity (conj chi in place
    of chi), by central differences with step 2^(-P/4), against the closed-form log-derivative ratio.

    Tolerance 10^(-P/8) with P in bits.
    """
    _require_odd(chi)
    P = precision_bits(digits)
    psi = chi.conj()
    tol = mpf(10) ** (-(P // 8))
    with mp.workprec(P + 32):
        h = mpf(2) ** (-(P // 4))

        def dlog(fn):
            return (fn(h) - fn(-h)) / (2 * h) / fn(mpf(0))

        d_gal = dlog(lambda s: lemma_lhs(psi, s, P + 32))
        d_gam = dlog(lambda s: lemma_rhs(psi, s, P + 32))
    closed = ratio_rhs(chi, P)
    params = {"n": chi.modulus, "character": chi.label}
    with mp.workprec(P):
        return [
            compare("triangle-galois-vs-ratio", params, +d_gal, closed, tol, P),
            compare("triangle-gamma-vs-ratio", params, +d_gam, closed, tol, P),
        ]
