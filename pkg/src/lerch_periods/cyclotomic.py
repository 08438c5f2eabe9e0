"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is a rational polynomial in zeta_n reduced modulo the n-th
cyclotomic polynomial, so equal field elements have identical coefficient
tuples.  Elements of different fields are compared and combined inside
Q(zeta_lcm).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpc

__all__ = ["Cyclotomic", "cyclotomic_poly", "totient", "mobius", "prime_factors", "divisors"]


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def totient(n: int) -> int:
    r = n
    for p in prime_factors(n):
        r = r // p * (p - 1)
    return r


def mobius(n: int) -> int:
    r, m = 1, n
    for p in prime_factors(n):
        m //= p
        if m % p == 0:
            return 0
        r = -r
    return r


def _pdivmod(num: list, den: list) -> tuple[list, list]:
    # polynomials as coefficient lists, lowest degree first
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dd:
        return [0], num
    q = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        if isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
            f = c // lead
        else:
            f = Fraction(c) / lead
        q[i - dd] = f
        for j in range(dd + 1):
            num[i - dd + j] -= f * den[j]
    rem = num[:dd] or [0]
    return q, rem


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Obtained by exact division of x^n - 1 by Phi_d for the proper divisors d.
    """
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            q, r = _pdivmod(num, list(cyclotomic_poly(d)))
            assert all(c == 0 for c in r)
            num = q
    return tuple(int(c) for c in _trim(num))


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple:
    """Rows x^k mod Phi_n for 0 <= k < max(n, 2*phi(n))."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _k in range(max(n, 2 * d)):
        rows.append(tuple(cur))
        # multiply by x and reduce using the monic relation
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            for j in range(d):
                nxt[j] -= top * phi[j]
        cur = nxt
    return tuple(rows)


class Cyclotomic:
    """Element of Q(zeta_n) with canonical coefficients in the power basis 1, zeta, ..., zeta^(d-1)."""

    __slots__ = ("n", "c")
    __hash__ = None

    def __init__(self, n: int, coeffs=()):
        if n < 1:
            raise ValueError("conductor must be positive")
        d = len(cyclotomic_poly(n)) - 1
        c = [Fraction(x) for x in coeffs]
        if len(c) > d:
            c = _reduce(n, c)
        c += [Fraction(0)] * (d - len(c))
        self.n = n
        self.c = tuple(c)

    # construction -----------------------------------------------------------

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k."""
        return cls.from_powers(n, {k % n: 1})

    @classmethod
    def rational(cls, q, n: int = 1) -> "Cyclotomic":
        return cls(n, [Fraction(q)])

    @classmethod
    def from_powers(cls, n: int, powers) -> "Cyclotomic":
        """sum_k coeff_k zeta_n^k from a mapping or iterable of (k, coeff)."""
        items = powers.items() if hasattr(powers, "items") else powers
        table = _reduction_table(n)
        d = len(table[0])
        acc = [Fraction(0)] * d
        for k, v in items:
            if v == 0:
                continue
            row = table[k % n]
            for j in range(d):
                if row[j]:
                    acc[j] += v * row[j]
        obj = cls.__new__(cls)
        obj.n = n
        obj.c = tuple(acc)
        return obj

    def _raw(self, n, c):
        obj = Cyclotomic.__new__(Cyclotomic)
        obj.n = n
        obj.c = c
        return obj

    # field plumbing ---------------------------------------------------------

    def lift(self, m: int) -> "Cyclotomic":
        """Image in Q(zeta_m) for n | m, via zeta_n = zeta_m^(m/n)."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"Q(zeta_{self.n}) is not contained in Q(zeta_{m})")
        step = m // self.n
        return Cyclotomic.from_powers(m, ((k * step, v) for k, v in enumerate(self.c) if v))

    @staticmethod
    def _coerce(x, n=1) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic(n, [x])
        return NotImplemented

    def _common(self, other):
        other = Cyclotomic._coerce(other, self.n)
        if other is NotImplemented:
            return NotImplemented, None, None
        m = self.n * other.n // math.gcd(self.n, other.n)
        return m, self.lift(m), other.lift(m)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        m, a, b = self._common(other)
        if m is NotImplemented:
            return NotImplemented
        return self._raw(m, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        m, a, b = self._common(other)
        if m is NotImplemented:
            return NotImplemented
        return self._raw(m, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._raw(self.n, tuple(x * other for x in self.c))
        m, a, b = self._common(other)
        if m is NotImplemented:
            return NotImplemented
        d = len(a.c)
        if d == 1:
            return self._raw(m, (a.c[0] * b.c[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        return self._raw(m, tuple(_reduce(m, prod)))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        phi = [Fraction(x) for x in cyclotomic_poly(self.n)]
        # extended Euclid: find u with u*self = 1 mod Phi_n
        r0, r1 = phi, _trim(list(self.c))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _trim(_psub(s0, _pmul(q, s1)))
        g = r0[0]
        return Cyclotomic(self.n, [x / g for x in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._raw(self.n, tuple(x / other for x in self.c))
        other = Cyclotomic._coerce(other, self.n)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic._coerce(other, self.n) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic(self.n, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^-1."""
        return Cyclotomic.from_powers(self.n, (((-k) % self.n, v) for k, v in enumerate(self.c) if v))

    def galois(self, u: int) -> "Cyclotomic":
        """sigma_u: zeta_n -> zeta_n^u for u coprime to n."""
        if math.gcd(u, self.n) != 1:
            raise ValueError("Galois action needs a unit")
        return Cyclotomic.from_powers(self.n, (((u * k) % self.n, v) for k, v in enumerate(self.c) if v))

    # predicates and rendering -----------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.c[0]

    def __eq__(self, other):
        m, a, b = self._common(other)
        if m is NotImplemented:
            return NotImplemented
        return a.c == b.c

    def __bool__(self):
        return not self.is_zero()

    def to_mpc(self, prec=None):
        """Complex embedding with zeta_n -> exp(2 pi i / n)."""
        P = mp.prec if prec is None else prec
        with mp.workprec(P + 16):
            acc = mpc(0)
            for k, v in enumerate(self.c):
                if v:
                    x = 2 * mp.mpf(k) / self.n
                    acc += (mp.mpf(v.numerator) / v.denominator) * mpc(mp.cospi(x), mp.sinpi(x))
        with mp.workprec(P):
            return +acc

    def __repr__(self):
        terms = [f"{v}*z^{k}" if k else f"{v}" for k, v in enumerate(self.c) if v]
        return f"Cyclotomic({self.n}: {' + '.join(terms) or '0'})"


def _reduce(n: int, coeffs) -> list:
    table = _reduction_table(n)
    d = len(table[0])
    out = [Fraction(0)] * d
    for k, v in enumerate(coeffs):
        if not v:
            continue
        if k < d:
            out[k] += v
            continue
        row = table[k] if k < len(table) else table[k % n]
        for j in range(d):
            if row[j]:
                out[j] += v * row[j]
    return out


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _psub(a, b):
    m = max(len(a), len(b))
    a = list(a) + [0] * (m - len(a))
    b = list(b) + [0] * (m - len(b))
    return [x - y for x, y in zip(a, b)]
