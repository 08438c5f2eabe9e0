"""Dirichlet characters, Gauss sums and non-primitive L-functions.

G = Gal(Q(mu_n)/Q) is identified with (Z/n)^x through zeta = exp(2 pi i/n),
so every sum over sigma in G is a sum over units u mod n.  Character values
are kept exact (as powers of a root of unity) and only turned into complex
numbers at evaluation time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

from mpmath import mp, mpc, mpf

from .cyclotomic import Cyclotomic, prime_factors, totient
from .numeric import PoleError, hurwitz_zeta, precision_bits, hurwitz_zeta_both, hurwitz_zeta_regular, to_mp
from .report import compare, exact_report

__all__ = [
    "DirichletCharacter",
    "LValue",
    "unit_group",
    "characters",
    "character_from_label",
    "conductor",
    "associated_primitive",
    "induce",
    "gauss_sum",
    "twisted_gauss_sum",
    "verify_wasq",
    "verify_gauss_norm",
    "l_function",
    "l_function_ds",
    "l_log_derivative",
    "verify_euler_factor",
]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# -- unit group ----------------------------------------------------------------


def _order_mod(g: int, q: int) -> int:
    k, x = 1, g % q
    while x != 1:
        x = x * g % q
        k += 1
    return k


def _prime_power_generators(p: int, e: int) -> list[tuple[int, int]]:
    q = p**e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(q - 1, 2)]
        return [(q - 1, 2), (5, 2 ** (e - 2))]
    phi = q // p * (p - 1)
    g = 2
    while _order_mod(g, q) != phi:
        g += 1
    return [(g, phi)]


@lru_cache(maxsize=None)
def unit_group(n: int):
    """Generators of (Z/n)^x with their orders, and the discrete-log table.

    Generators come from the prime-power factors (ascending primes; {-1, 5}
    on the 2-part) lifted through CRT.  Returns (gens, orders, logs) where
    logs maps each unit to its exponent tuple.
    """
    gens, orders = [], []
    m = n
    for p in prime_factors(n):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        q = p**e
        rest = n // q
        for g, o in _prime_power_generators(p, e):
            # x = g mod q, x = 1 mod rest
            if rest == 1:
                x = g % n
            else:
                x = (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % n
            gens.append(x)
            orders.append(o)
    logs = {}
    for exps in product(*[range(o) for o in orders]):
        x = 1 % n if n > 1 else 0
        for g, k in zip(gens, exps):
            x = x * pow(g, k, n) % n
        logs[x] = exps
    if n == 1:
        logs = {0: ()}
    assert len(logs) == totient(n)
    return tuple(gens), tuple(orders), logs


def _units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


# -- characters ----------------------------------------------------------------


class DirichletCharacter:
    """A character of (Z/n)^x, extended by 0 on non-units.

    ``table[a]`` is None when gcd(a, n) > 1, otherwise k with chi(a) = zeta_m^k,
    where m is the order of the character.
    """

    def __init__(self, modulus: int, order: int, table, label: str | None = None):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        vals = [k for k in table if k is not None]
        g = order
        for k in vals:
            g = math.gcd(g, k)
        if g > 1:
            order //= g
            table = [None if k is None else (k // g) % order for k in table]
        self.modulus = modulus
        self.order = order
        self.table = tuple(None if k is None else k % order for k in table)
        self._label = label

    @classmethod
    def from_function(cls, modulus: int, order: int, fn, label=None) -> "DirichletCharacter":
        table = [fn(a) if (math.gcd(a, modulus) == 1) else None for a in range(modulus)]
        if modulus == 1:
            table = [fn(0)]
        return cls(modulus, order, table, label)

    @classmethod
    def principal(cls, modulus: int) -> "DirichletCharacter":
        return cls.from_function(modulus, 1, lambda a: 0, f"{modulus}.principal")

    @property
    def label(self) -> str:
        if self._label is None:
            gens, orders, logs = unit_group(self.modulus)
            exps = []
            for g, o in zip(gens, orders):
                k = self.table[g % self.modulus]
                exps.append(Fraction(k, self.order) * o)
            self._label = ".".join([str(self.modulus)] + [str(int(e)) for e in exps])
        return self._label

    def exponent(self, a: int):
        if self.modulus == 1:
            return self.table[0]
        return self.table[a % self.modulus]

    def __call__(self, a: int) -> Cyclotomic:
        k = self.exponent(a)
        if k is None:
            return Cyclotomic(self.order, [0])
        return Cyclotomic.zeta(self.order, k)

    def value_mpc(self, a: int, prec=None):
        k = self.exponent(a)
        if k is None:
            return mpc(0)
        P = mp.prec if prec is None else prec
        with mp.workprec(P + 8):
            x = mpf(2 * k) / self.order
            v = mpc(mp.cospi(x), mp.sinpi(x))
        with mp.workprec(P):
            return +v

    @property
    def parity(self) -> int:
        k = self.exponent(-1)
        return -1 if (2 * k == self.order) else 1

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(
            self.modulus, self.order, [None if k is None else (-k) % self.order for k in self.table]
        )

    @cached_property
    def conductor(self) -> int:
        n = self.modulus
        for f in range(1, n + 1):
            if n % f:
                continue
            if all(self.exponent(u) == 0 for u in _units(n) if (u - 1) % f == 0):
                return f
        return n

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self.order == other.order and self.table == other.table

    def __hash__(self):
        return hash((self.modulus, self.order, self.table))

    def __repr__(self):
        return f"DirichletCharacter({self.label}, order={self.order}, conductor={self.conductor})"


def characters(n: int) -> list[DirichletCharacter]:
    """All phi(n) characters mod n, in the order fixed by the generator choice."""
    if n < 1:
        raise ValueError("n must be positive")
    gens, orders, logs = unit_group(n)
    E = 1
    for o in orders:
        E = _lcm(E, o)
    out = []
    for ks in product(*[range(o) for o in orders]):
        table = [None] * n
        for u, exps in logs.items():
            table[u] = sum(k * e * (E // o) for k, e, o in zip(ks, exps, orders)) % E
        label = ".".join([str(n)] + [str(k) for k in ks])
        out.append(DirichletCharacter(n, E, table, label))
    return out


def character_from_label(label: str) -> DirichletCharacter:
    """Look up "n.k1.k2..." among characters(n)."""
    try:
        n = int(label.split(".")[0])
    except ValueError:
        raise ValueError(f"malformed character label {label!r}") from None
    for chi in characters(n):
        if chi.label == label:
            return chi
    raise ValueError(f"no character with label {label!r}")


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def associated_primitive(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod f_chi that chi is induced from."""
    f, n = chi.conductor, chi.modulus
    table = [None] * f
    for b in range(f):
        if math.gcd(b, f) != 1 and f > 1:
            continue
        a = b
        while math.gcd(a, n) != 1:
            a += f
        table[b] = chi.exponent(a)
    if f == 1:
        table = [chi.exponent(1)]
    return DirichletCharacter(f, chi.order, table)


def induce(chi: DirichletCharacter, n: int) -> DirichletCharacter:
    """Lift of chi mod f to modulus n: chi(a mod f) on units mod n, 0 elsewhere."""
    f = chi.modulus
    if n % f:
        raise ValueError(f"cannot induce a character mod {f} to modulus {n}")
    table = [chi.exponent(a % f) if math.gcd(a, n) == 1 else None for a in range(n)]
    if n == 1:
        table = [chi.exponent(0)]
    return DirichletCharacter(n, chi.order, table)


# -- Gauss sums ----------------------------------------------------------------


def twisted_gauss_sum(chi: DirichletCharacter, l: int) -> Cyclotomic:
    """sum_u zeta_n^(u l) chi(u) over units u, exact in Q(zeta_lcm(n, ord chi))."""
    n, m = chi.modulus, chi.order
    L = _lcm(n, m)
    terms = {}
    for u in _units(n):
        k = (u * l * (L // n) + chi.exponent(u) * (L // m)) % L
        terms[k] = terms.get(k, 0) + 1
    return Cyclotomic.from_powers(L, terms)


def gauss_sum(chi: DirichletCharacter) -> Cyclotomic:
    """tau(chi) = sum_u zeta_n^u chi(u)."""
    return twisted_gauss_sum(chi, 1)


def verify_wasq(chi: DirichletCharacter, l: int):
    """Exact check of sum_u zeta^(u l) chi(u) = tau(chi) * conj(chi(l)) for primitive chi."""
    if not chi.is_primitive:
        raise ValueError("the twisted Gauss sum identity needs a primitive character")
    lhs = twisted_gauss_sum(chi, l)
    rhs = gauss_sum(chi) * chi(l).conj()
    return exact_report("twisted-gauss", {"n": chi.modulus, "character": chi.label, "l": l}, lhs, rhs)


def verify_gauss_norm(chi: DirichletCharacter):
    """Exact check of tau(chi) * conj(tau(chi)) = n for primitive chi."""
    if not chi.is_primitive:
        raise ValueError("|tau(chi)|^2 = n needs a primitive character")
    t = gauss_sum(chi)
    return exact_report("gauss-norm", {"n": chi.modulus, "character": chi.label}, t * t.conj(), Cyclotomic.rational(chi.modulus))


# -- L-functions -----------------------------------------------------------------


@dataclass(frozen=True)
class LValue:
    character: DirichletCharacter
    s: object
    value: object
    derivative: object = None


def _check_l_pole(chi, s, P):
    if chi.is_principal and abs(s - 1) < mpf(2) ** (-(P // 2)):
        raise PoleError("L(principal, s) has a pole at s = 1")


def _l_sums(chi: DirichletCharacter, s, wp: int, deriv: bool):
    n = chi.modulus
    acc = mpc(0)
    dacc = mpc(0)
    # weights sum to zero for non-principal chi, so the pole part cancels
    regular = not chi.is_principal and abs(s - 1) < 0.25
    for a in range(1, n + 1):
        if chi.exponent(a) is None:
            continue
        c = chi.value_mpc(a, wp)
        if regular:
            v, dv = hurwitz_zeta_regular(s, Fraction(a, n), wp)
            acc += c * v
            dacc += c * dv
            continue
        if deriv:
            v, dv = hurwitz_zeta_both(s, Fraction(a, n), wp)
            dacc += c * dv
        else:
            v = hurwitz_zeta(s, Fraction(a, n), wp)
        acc += c * v
    return acc, dacc


def l_function(chi: DirichletCharacter, s, prec=None) -> LValue:
    """Non-primitive L(chi, s) = n^-s sum_{a=1}^{n} chi(a) zeta_H(s, a/n)."""
    P = mp.prec if prec is None else prec
    wp = P + 24
    with mp.workprec(wp):
        s = to_mp(s)
        _check_l_pole(chi, s, P)
        acc, _ = _l_sums(chi, s, wp, False)
        v = chi.modulus ** (-s) * acc
    with mp.workprec(P):
        return LValue(chi, s, +v)


def l_function_ds(chi: DirichletCharacter, s, prec=None) -> LValue:
    """L(chi, s) together with L'(chi, s), including the -log(n) n^-s product term."""
    P = mp.prec if prec is None else prec
    wp = P + 24
    with mp.workprec(wp):
        s = to_mp(s)
        _check_l_pole(chi, s, P)
        acc, dacc = _l_sums(chi, s, wp, True)
        n = chi.modulus
        f = n ** (-s)
        v = f * acc
        dv = f * (dacc - mp.log(n) * acc)
    with mp.workprec(P):
        return LValue(chi, s, +v, +dv)


def l_log_derivative(chi: DirichletCharacter, s, prec=None):
    lv = l_function_ds(chi, s, prec)
    P = mp.prec if prec is None else prec
    with mp.workprec(P):
        return lv.derivative / lv.value


def verify_euler_factor(chi: DirichletCharacter, s, digits: int = 50, prec=None, rel_tol=None):
    """L(chi, s) = L(chi_prim, s) prod_{p | n} (1 - chi_prim(p) p^-s), plus the
    logarithmic-derivative form at s = 1 for non-principal chi."""
    P = precision_bits(digits) if prec is None else prec
    tol = mpf(2) ** (-(P - 24)) if rel_tol is None else rel_tol
    prim = associated_primitive(chi)
    out = []
    with mp.workprec(P):
        s = to_mp(s)
        lhs = l_function(chi, s, P).value
        rhs = l_function(prim, s, P).value
        for p in prime_factors(chi.modulus):
            rhs *= 1 - prim.value_mpc(p, P) * mpf(p) ** (-s)
        params = {"n": chi.modulus, "character": chi.label, "s": s}
        out.append(compare("euler-factor", params, lhs, rhs, tol, P))
        if not chi.is_principal:
            one = mpf(1)
            lhs = l_log_derivative(chi, one, P)
            rhs = l_log_derivative(prim, one, P)
            for p in prime_factors(chi.modulus):
                cp = prim.value_mpc(p, P)
                rhs += cp * mp.log(p) / (p - cp)
            params = {"n": chi.modulus, "character": chi.label, "s": 1}
            out.append(compare("euler-factor-logderiv", params, lhs, rhs, tol, P))
    return out
