"""Arbitrary-precision special functions.

Scalars are mpmath ``mpf``/``mpc`` values.  Every public function takes an
optional ``prec`` (bits); when omitted the ambient ``mp.prec`` is used.  The
ambient mpmath context is process-global, so parallel callers should use
processes rather than threads.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf, mpc

__all__ = [
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "precision_bits",
    "to_mp",
    "bernoulli",
    "bernoulli_poly",
    "gamma_ln",
    "loggamma",
    "gamma",
    "digamma",
    "hurwitz_zeta",
    "hurwitz_zeta_ds",
    "hurwitz_zeta_both",
    "hurwitz_zeta_regular",
    "agm",
]


class DomainError(ValueError):
    pass


class PoleError(DomainError):
    pass


class ConvergenceError(ArithmeticError):
    pass


def precision_bits(digits: int) -> int:
    """Working precision in bits for ``digits`` decimal digits."""
    return math.ceil(digits * 3.33) + 32


def _prec(prec):
    return mp.prec if prec is None else int(prec)


def to_mp(x):
    """Convert ints, Fractions, strings and mpmath numbers at the ambient precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, complex) and not isinstance(x, mpc):
        return mpc(x.real, x.imag)
    return mp.mpmathify(x)


# -- Bernoulli numbers -------------------------------------------------------

_bern_lock = threading.Lock()
_bern_table: list[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k with B_1 = -1/2."""
    if k < 0:
        raise DomainError("bernoulli index must be non-negative")
    if k < len(_bern_table):
        return _bern_table[k]
    with _bern_lock:
        table = list(_bern_table)
        for m in range(len(table), k + 1):
            if m > 1 and m % 2 == 1:
                table.append(Fraction(0))
                continue
            acc = Fraction(0)
            binom = 1
            for j in range(m):
                acc += binom * table[j]
                binom = binom * (m + 1 - j) // (j + 1)
            table.append(-acc / (m + 1))
        if len(table) > len(_bern_table):
            _bern_table[:] = table
        return table[k]


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    """B_k(x) = sum_j C(k, j) B_j x^(k-j), exact."""
    x = Fraction(x)
    return sum((math.comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


@lru_cache(maxsize=64)
def _em_coeffs(count: int, wp: int) -> tuple:
    # B_{2j}/(2j)! for j = 1..count
    with mp.workprec(wp):
        out = []
        for j in range(1, count + 1):
            c = bernoulli(2 * j) / math.factorial(2 * j)
            out.append(mpf(c.numerator) / c.denominator)
        return tuple(out)


@lru_cache(maxsize=64)
def _stirling_coeffs(count: int, wp: int) -> tuple:
    # B_{2j}/(2j(2j-1)) for log-gamma and B_{2j}/(2j) for digamma
    with mp.workprec(wp):
        lg, dg = [], []
        for j in range(1, count + 1):
            b = bernoulli(2 * j)
            c1 = b / (2 * j * (2 * j - 1))
            c2 = b / (2 * j)
            lg.append(mpf(c1.numerator) / c1.denominator)
            dg.append(mpf(c2.numerator) / c2.denominator)
        return tuple(lg), tuple(dg)


# -- Gamma and digamma -------------------------------------------------------


def _is_nonpositive_integer(z) -> bool:
    if isinstance(z, mpc) and z.imag != 0:
        return False
    re = z.real if isinstance(z, mpc) else z
    return re <= 0 and re == mp.floor(re)


def _stirling_shift(z, wp: int) -> int:
    target = 0.15 * wp + 8
    re = float(z.real) if isinstance(z, mpc) else float(z)
    return max(0, math.ceil(target - re))


def _loggamma_work(z, wp: int):
    m = _stirling_shift(z, wp)
    shift = 0
    for i in range(m):
        shift += mp.log(z + i)
    w = z + m
    lw = mp.log(w)
    res = (w - mpf(0.5)) * lw - w + mp.log(2 * mp.pi) / 2
    eps = mpf(2) ** (-wp)
    coeffs, _ = _stirling_coeffs(max(8, wp // 2), wp)
    winv = 1 / w
    w2inv = winv * winv
    p = winv
    prev = None
    for c in coeffs:
        t = c * p
        res += t
        at = abs(t)
        if at < eps * max(abs(res), 1):
            return res - shift
        if prev is not None and at > prev:
            break
        prev = at
        p *= w2inv
    raise ConvergenceError("Stirling series did not reach target precision")


def loggamma(z, prec=None):
    """log Gamma(z) for real or complex z off the poles.

    On the positive real axis this is the real logarithm; elsewhere it is the
    sum-of-principal-logs branch, whose exponential is Gamma(z).
    """
    P = _prec(prec)
    with mp.workprec(P + 32):
        z = to_mp(z)
        if _is_nonpositive_integer(z):
            raise PoleError(f"Gamma has a pole at {z}")
        r = _loggamma_work(z, P + 32)
    with mp.workprec(P):
        return +r


def gamma_ln(x, prec=None):
    """log Gamma(x) for real x > 0."""
    P = _prec(prec)
    with mp.workprec(P + 32):
        x = to_mp(x)
        if isinstance(x, mpc) or x <= 0:
            raise DomainError("gamma_ln requires a positive real argument")
    return loggamma(x, P)


def gamma(z, prec=None):
    """Gamma(z) via exp(loggamma); real input yields a real result."""
    P = _prec(prec)
    with mp.workprec(P + 32):
        zz = to_mp(z)
        r = mp.exp(loggamma(zz, P + 32))
        if not isinstance(zz, mpc):
            r = r.real
    with mp.workprec(P):
        return +r


def digamma(x, prec=None):
    """psi(x) = Gamma'(x)/Gamma(x); x real > 0 or complex off the poles."""
    P = _prec(prec)
    wp = P + 32
    with mp.workprec(wp):
        x = to_mp(x)
        if not isinstance(x, mpc) and x <= 0:
            raise DomainError("digamma requires a positive real argument")
        m = _stirling_shift(x, wp)
        shift = 0
        for i in range(m):
            shift += 1 / (x + i)
        w = x + m
        res = mp.log(w) - 1 / (2 * w)
        eps = mpf(2) ** (-wp)
        _, coeffs = _stirling_coeffs(max(8, wp // 2), wp)
        w2inv = 1 / (w * w)
        p = w2inv
        prev = None
        for c in coeffs:
            t = c * p
            res -= t
            at = abs(t)
            if at < eps * max(abs(res), 1):
                break
            if prev is not None and at > prev:
                raise ConvergenceError("Stirling series did not reach target precision")
            prev = at
            p *= w2inv
        else:
            raise ConvergenceError("Stirling series did not reach target precision")
        res -= shift
    with mp.workprec(P):
        return +res


# -- Hurwitz zeta ------------------------------------------------------------


def _check_a(a) -> Fraction:
    a = Fraction(a)
    if not (0 < a <= 1):
        raise DomainError("Hurwitz parameter must lie in (0, 1]")
    return a


def _hurwitz_em(s, a: Fraction, wp: int, want_deriv: bool, regular: bool = False):
    """Euler-Maclaurin sum; returns (value, derivative or None, remainder bound).

    With ``regular`` the pole part 1/(s-1) is removed analytically.
    """
    N = max(math.ceil(0.4 * wp), math.ceil(2 * float(abs(s))))
    M = math.ceil(wp / 8)
    A = mpf(a.numerator) / a.denominator
    total = mpf(0)
    dtotal = mpf(0)
    for k in range(N):
        b = k + A
        t = b ** (-s)
        total += t
        if want_deriv:
            dtotal -= mp.log(b) * t
    X = N + A
    lx = mp.log(X)
    Xs = X ** (-s)
    if regular:
        g, dg = _regular_head(s - 1, lx, wp)
        total += g + Xs / 2
        if want_deriv:
            dtotal += dg - lx * Xs / 2
    else:
        head = X * Xs / (s - 1)
        total += head + Xs / 2
        if want_deriv:
            dtotal += -lx * head - head / (s - 1) - lx * Xs / 2
    coeffs = _em_coeffs(M + 1, wp)
    poch, dpoch = s, mpf(1)
    Xp = Xs / X
    X2 = X * X
    for j in range(1, M + 1):
        c = coeffs[j - 1]
        total += c * poch * Xp
        if want_deriv:
            dtotal += c * (dpoch - lx * poch) * Xp
        for i in (2 * j - 1, 2 * j):
            dpoch = dpoch * (s + i) + poch
            poch *= s + i
        Xp /= X2
    c = coeffs[M]
    bound = 2 * abs(c * poch * Xp)
    if want_deriv:
        bound = max(bound, 2 * abs(c * (dpoch - lx * poch) * Xp))
    return total, (dtotal if want_deriv else None), bound, X


def _regular_head(t, L, wp: int):
    """g(t) = (exp(-t L) - 1)/t and g'(t), stable near t = 0."""
    if abs(t * L) > 0.5:
        e = mp.exp(-t * L)
        g = (e - 1) / t
        return g, (-L * e - g) / t
    eps = mpf(2) ** (-wp)
    g = dg = mpf(0)
    term = -L  # (-L)^k / k! for k = 1
    k = 1
    while True:
        g += term * t ** (k - 1)
        if k >= 2:
            dg += term * (k - 1) * t ** (k - 2)
        k += 1
        term = term * (-L) / k
        if abs(term) * max(1, k) < eps * max(1, abs(g)) and k > 3:
            break
    return g, dg


def _guard_bits(s, X) -> int:
    re = float(s.real) if isinstance(s, mpc) else float(s)
    return 24 + max(0, math.ceil((1 - re) * math.log2(float(X) + 1)))


@lru_cache(maxsize=8192)
def _hurwitz_cached(s, a: Fraction, prec: int, want_deriv: bool, regular: bool = False):
    if not regular and abs(s - 1) < mpf(2) ** (-(prec // 2)):
        raise PoleError("Hurwitz zeta has a pole at s = 1")
    tol_bits = prec - 16 if not want_deriv else prec - 20
    wp = prec + 24
    for _ in range(4):
        N = max(math.ceil(0.4 * wp), math.ceil(2 * float(abs(s))))
        gwp = wp + _guard_bits(s, N + 1)
        with mp.workprec(gwp):
            val, dval, bound, _X = _hurwitz_em(s, a, gwp, want_deriv, regular)
            scale = max(abs(val), abs(dval) if want_deriv else 0, mpf(2) ** -20)
            if bound <= mpf(2) ** (-tol_bits) * scale:
                return val, dval
        wp = int(wp * 1.5)
    raise ConvergenceError("Euler-Maclaurin remainder above target after retries")


def _hurwitz_args(s, a, prec):
    P = _prec(prec)
    a = _check_a(a)
    with mp.workprec(P):
        s = to_mp(s)
        if isinstance(s, mpc) and s.imag == 0:
            s = s.real
    return s, a, P


def hurwitz_zeta(s, a, prec=None):
    """zeta_H(s, a) = sum_{k>=0} (k+a)^(-s), continued analytically, 0 < a <= 1."""
    s, a, P = _hurwitz_args(s, a, prec)
    val, _ = _hurwitz_cached(s, a, P, False)
    with mp.workprec(P):
        return +val


def hurwitz_zeta_ds(s, a, prec=None):
    """d/ds zeta_H(s, a), by term-wise differentiation of the Euler-Maclaurin sum."""
    return hurwitz_zeta_both(s, a, prec)[1]


def hurwitz_zeta_both(s, a, prec=None):
    """(zeta_H(s, a), d/ds zeta_H(s, a)) from a single expansion."""
    s, a, P = _hurwitz_args(s, a, prec)
    val, dval = _hurwitz_cached(s, a, P, True)
    with mp.workprec(P):
        return +val, +dval


def hurwitz_zeta_regular(s, a, prec=None):
    """(zeta_H(s, a) - 1/(s-1), its s-derivative); analytic at s = 1.

    Used wherever the pole cancels in a weighted sum whose weights add to zero.
    """
    s, a, P = _hurwitz_args(s, a, prec)
    val, dval = _hurwitz_cached(s, a, P, True, True)
    with mp.workprec(P):
        return +val, +dval


# -- AGM ---------------------------------------------------------------------


def agm(a, b, prec=None):
    """Arithmetic-geometric mean of two positive reals."""
    P = _prec(prec)
    wp = P + 16
    with mp.workprec(wp):
        a, b = to_mp(a), to_mp(b)
        if a <= 0 or b <= 0:
            raise DomainError("agm requires positive arguments")
        eps = mpf(2) ** (-wp + 4)
        for _ in range(wp):
            if abs(a - b) <= eps * a:
                break
            a, b = (a + b) / 2, mp.sqrt(a * b)
    with mp.workprec(P):
        return +((a + b) / 2)
