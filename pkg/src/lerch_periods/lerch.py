"""Lerch partial zeta functions at rational angles.

For z = exp(2 pi i a / n) everything is reduced to Hurwitz zeta values:

    zeta_L(z, s) = n^-s * sum_{r=1}^{n} z^r * zeta_H(s, r/n)

and the cosine/sine series zeta(theta, s), eta(theta, s) take the real and
imaginary weights of the same decomposition.  z = 1 is sent to the Riemann
zeta path and never mixed into the root-of-unity sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp, mpc, mpf

from .cyclotomic import Cyclotomic
from .numeric import DomainError, bernoulli, PoleError, hurwitz_zeta, hurwitz_zeta_both, hurwitz_zeta_regular, to_mp

__all__ = [
    "RootOfUnityAngle",
    "RSeries",
    "lerch_zeta",
    "lerch_cos_sin",
    "lerch_ds",
    "lerch_cos_sin_with_ds",
    "r_series",
    "lerch_negint_exact",
    "negint_polynomial",
    "riemann_negint_exact",
]


@dataclass(frozen=True)
class RootOfUnityAngle:
    """theta = 2 pi a / n, z = exp(i theta), with 0 <= a < n."""

    a: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "a", self.a % self.n)

    @classmethod
    def of_power(cls, k: int, n: int) -> "RootOfUnityAngle":
        # arg(zeta_n^k) normalised to [0, 2 pi)
        return cls(k % n, n)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.a, self.n)

    def theta(self, prec=None):
        P = mp.prec if prec is None else prec
        with mp.workprec(P):
            return 2 * mp.pi * self.a / self.n

    def z(self, prec=None):
        P = mp.prec if prec is None else prec
        with mp.workprec(P + 8):
            x = mpf(2 * self.a) / self.n
            v = mpc(mp.cospi(x), mp.sinpi(x))
        with mp.workprec(P):
            return +v

    def cyclotomic(self) -> Cyclotomic:
        return Cyclotomic.zeta(self.n, self.a)


@dataclass(frozen=True)
class RSeries:
    theta: RootOfUnityAngle
    coeffs: tuple


def _as_angle(z) -> RootOfUnityAngle:
    if isinstance(z, RootOfUnityAngle):
        return z
    a, n = z
    return RootOfUnityAngle(a, n)


def _weights(ang: RootOfUnityAngle, r: int):
    x = mpf(2 * ang.a * r) / ang.n
    return mp.cospi(x), mp.sinpi(x)


def _decomposed(ang: RootOfUnityAngle, s, P: int, deriv: bool):
    """(sum_r cos*Z, sum_r sin*Z) and their s-derivatives, without the n^-s factor."""
    n = ang.n
    wp = P + 16
    cs = sn = dcs = dsn = mpf(0)
    # for a != 0 the weights z^r sum to zero and the pole part cancels
    regular = abs(s - 1) < 0.25
    with mp.workprec(wp):
        for r in range(1, n + 1):
            a = Fraction(r, n)
            if regular:
                v, dv = hurwitz_zeta_regular(s, a, wp)
            elif deriv:
                v, dv = hurwitz_zeta_both(s, a, wp)
            else:
                v, dv = hurwitz_zeta(s, a, wp), 0
            c, si = _weights(ang, r)
            cs += c * v
            sn += si * v
            if deriv:
                dcs += c * dv
                dsn += si * dv
    return cs, sn, dcs, dsn


def _check_pole(ang: RootOfUnityAngle, s, P: int):
    if ang.a == 0 and abs(s - 1) < mpf(2) ** (-(P // 2)):
        raise PoleError("zeta_L(1, s) has a pole at s = 1")


def lerch_zeta(z, s, prec=None):
    """zeta_L(z, s) = sum_{k>=1} z^k k^-s for z = exp(2 pi i a/n)."""
    ang = _as_angle(z)
    P = mp.prec if prec is None else prec
    with mp.workprec(P + 16):
        s = to_mp(s)
        _check_pole(ang, s, P)
        if ang.a == 0:
            v = mpc(hurwitz_zeta(s, 1, P + 16))
        else:
            cs, sn, _, _ = _decomposed(ang, s, P, False)
            v = ang.n ** (-s) * mpc(cs, 0) + ang.n ** (-s) * mpc(0, 1) * sn
    with mp.workprec(P):
        return +v


def lerch_cos_sin(theta, s, prec=None):
    """(zeta(theta, s), eta(theta, s)), the cosine and sine Lerch series."""
    ang = _as_angle(theta)
    P = mp.prec if prec is None else prec
    with mp.workprec(P + 16):
        s = to_mp(s)
        _check_pole(ang, s, P)
        if ang.a == 0:
            zc, ze = hurwitz_zeta(s, 1, P + 16), mpf(0)
        else:
            cs, sn, _, _ = _decomposed(ang, s, P, False)
            f = ang.n ** (-s)
            zc, ze = f * cs, f * sn
    with mp.workprec(P):
        return +zc, +ze


def lerch_ds(theta, s, prec=None):
    """(d/ds zeta(theta, s), d/ds eta(theta, s))."""
    ang = _as_angle(theta)
    P = mp.prec if prec is None else prec
    with mp.workprec(P + 16):
        s = to_mp(s)
        _check_pole(ang, s, P)
        if ang.a == 0:
            _, dz = hurwitz_zeta_both(s, 1, P + 16)
            de = mpf(0)
        else:
            cs, sn, dcs, dsn = _decomposed(ang, s, P, True)
            f = ang.n ** (-s)
            ln = mp.log(ang.n)
            dz = f * (dcs - ln * cs)
            de = f * (dsn - ln * sn)
    with mp.workprec(P):
        return +dz, +de


def lerch_cos_sin_with_ds(theta, s, prec=None):
    """Values and s-derivatives together: ((zeta, eta), (zeta', eta'))."""
    ang = _as_angle(theta)
    P = mp.prec if prec is None else prec
    with mp.workprec(P + 16):
        s = to_mp(s)
        _check_pole(ang, s, P)
        if ang.a == 0:
            v, dv = hurwitz_zeta_both(s, 1, P + 16)
            out = (v, mpf(0)), (dv, mpf(0))
        else:
            cs, sn, dcs, dsn = _decomposed(ang, s, P, True)
            f = ang.n ** (-s)
            ln = mp.log(ang.n)
            out = (f * cs, f * sn), (f * (dcs - ln * cs), f * (dsn - ln * sn))
    with mp.workprec(P):
        return (+out[0][0], +out[0][1]), (+out[1][0], +out[1][1])


def r_series(theta, maxdeg: int, prec=None) -> RSeries:
    """Coefficients of R(theta, t) up to t^maxdeg.

    Odd p:  (2 zeta'(theta, -p) + H_p zeta(theta, -p)) / p!
    Even p: i (2 eta'(theta, -p) + H_p eta(theta, -p)) / p!
    with H_p the p-th harmonic number.
    """
    if maxdeg < 0:
        raise ValueError("maxdeg must be non-negative")
    ang = _as_angle(theta)
    P = mp.prec if prec is None else prec
    coeffs = []
    with mp.workprec(P + 16):
        for p in range(maxdeg + 1):
            (zv, ev), (dz, de) = lerch_cos_sin_with_ds(ang, -p, P + 16)
            h = sum(Fraction(1, j) for j in range(1, p + 1))
            hm = mpf(h.numerator) / h.denominator
            if p % 2:
                c = mpc((2 * dz + hm * zv) / factorial(p), 0)
            else:
                c = mpc(0, (2 * de + hm * ev) / factorial(p))
            coeffs.append(c)
    with mp.workprec(P):
        return RSeries(ang, tuple(+c for c in coeffs))


def negint_polynomial(l: int) -> list[int]:
    """Integer P_l with (z d/dz)^l [z/(1-z)] = P_l(z) / (1-z)^(l+1)."""
    p = [0, 1]
    for m in range(1, l + 1):
        # z P' (1 - z) + m z P
        dp = [k * p[k] for k in range(1, len(p))]
        new = [0] * (len(p) + 1)
        for k, c in enumerate(dp):
            new[k + 1] += c
            new[k + 2] -= c
        for k, c in enumerate(p):
            new[k + 1] += m * c
        while len(new) > 1 and new[-1] == 0:
            new.pop()
        p = new
    return p


def lerch_negint_exact(z, l: int) -> Cyclotomic:
    """Exact zeta_L(z, -l) for a root of unity z != 1, as an element of Q(zeta_n)."""
    if l < 0:
        raise ValueError("l must be non-negative")
    if isinstance(z, RootOfUnityAngle):
        z = z.cyclotomic()
    if z == 1:
        raise DomainError("z = 1 goes through the Bernoulli path: -B_(l+1)/(l+1)")
    poly = negint_polynomial(l)
    acc = Cyclotomic(z.n, [0])
    for c in reversed(poly):
        acc = acc * z + c
    return acc * ((1 - z) ** (l + 1)).inverse()


def riemann_negint_exact(l: int) -> Fraction:
    """zeta(-l) = zeta_L(1, -l) = (-1)^l B_(l+1)/(l+1), with B_1 = -1/2."""
    if l < 0:
        raise ValueError("l must be non-negative")
    return (-1) ** l * bernoulli(l + 1) / (l + 1)
