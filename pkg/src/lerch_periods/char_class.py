"""Equivariant characteristic classes under the splitting principle.

A bundle spec lists eigenvalue exponents l in Z/n with ranks r_l.  Each of the
r = sum r_l line summands F_i gets its own formal Chern root gamma_i = c_1(F_i^v)
and the generator acts on F_i by alpha_i^-1 with alpha_i = zeta_n^l, so that
ch_g(E^v) = sum_i alpha_i e^gamma_i.  Everything here is exact over Q(zeta_n).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from mpmath import mp

from .cyclotomic import Cyclotomic, cyclotomic_poly, totient
from .lerch import lerch_negint_exact, lerch_zeta, riemann_negint_exact
from .numeric import DomainError, bernoulli, hurwitz_zeta, precision_bits
from .report import compare, exact_report

__all__ = [
    "EquivariantBundleSpec",
    "GradedElement",
    "ToyChowElement",
    "ch_g_split",
    "lambda_minus1_ch",
    "lambda_minus1_exterior",
    "kappa_numerator",
    "kappa_numerator_exterior",
    "kappa_numerator_closed_form",
    "kappa",
    "kappa_rhs",
    "verify_kappa",
    "verify_taylor_lerch",
    "verify_taylor_bernoulli",
    "toy_lambda_minus1",
    "toy_lambda_minus1_summand",
    "verify_grrr",
    "verify_toy_multiplicative",
    "projector_poly",
    "projector_eval",
    "fixed_point_count",
    "primitive_ranks_spec",
    "projector_idempotent_check",
]


# -- bundle specs ------------------------------------------------------------------


@dataclass(frozen=True)
class EquivariantBundleSpec:
    """Direct sum of eigenbundles: ``summands`` holds (l mod n, rank) pairs.

    ``symbols`` optionally names the c_1 of each summand (used by the toy Chow ring).
    """

    n: int
    summands: tuple
    symbols: tuple = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        norm = []
        for l, r in self.summands:
            if r < 0:
                raise ValueError("ranks must be non-negative")
            norm.append((int(l) % self.n, int(r)))
        object.__setattr__(self, "summands", tuple(norm))
        if self.symbols and len(self.symbols) != len(norm):
            raise ValueError("one symbol per summand")

    @classmethod
    def parse(cls, n: int, text: str) -> "EquivariantBundleSpec":
        """From "l:r,l:r,..."."""
        pairs = []
        for item in text.split(","):
            item = item.strip()
            if item:
                l, r = item.split(":")
                pairs.append((int(l), int(r)))
        return cls(n, tuple(pairs))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.summands)

    @property
    def rank0(self) -> int:
        return sum(r for l, r in self.summands if l == 0)

    def line_exponents(self) -> list[int]:
        return [l for l, r in self.summands for _ in range(r)]

    def symbol(self, idx: int) -> str:
        return self.symbols[idx] if self.symbols else f"c1(V{idx})"

    def __str__(self):
        return ",".join(f"{l}:{r}" for l, r in self.summands)


# -- truncated graded ring -----------------------------------------------------------


def _degrevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


class GradedElement:
    """Truncated polynomial in gamma_1..gamma_r over Q(zeta_n), all monomials of degree <= D."""

    __slots__ = ("n", "nvars", "D", "terms")
    __hash__ = None

    def __init__(self, n: int, nvars: int, D: int, terms=None):
        if D < 0:
            raise ValueError("truncation degree must be non-negative")
        self.n, self.nvars, self.D = n, nvars, D
        self.terms = {}
        for m, c in (terms or {}).items():
            if sum(m) <= D:
                c = self._scalar(c)
                if not c.is_zero():
                    self.terms[tuple(m)] = c

    def _scalar(self, c) -> Cyclotomic:
        if isinstance(c, Cyclotomic):
            return c
        return Cyclotomic(self.n, [c])

    def _like(self, terms) -> "GradedElement":
        return GradedElement(self.n, self.nvars, self.D, terms)

    @classmethod
    def constant(cls, c, n: int, nvars: int, D: int) -> "GradedElement":
        return cls(n, nvars, D, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i: int, n: int, nvars: int, D: int) -> "GradedElement":
        m = [0] * nvars
        m[i] = 1
        return cls(n, nvars, D, {tuple(m): 1})

    @classmethod
    def exp_variable(cls, i: int, n: int, nvars: int, D: int, scale=1, sign: int = 1) -> "GradedElement":
        """scale * exp(sign * gamma_i) truncated at D."""
        terms = {}
        for k in range(D + 1):
            m = [0] * nvars
            m[i] = k
            terms[tuple(m)] = Fraction(sign ** k, math.factorial(k))
        e = cls(n, nvars, D, terms)
        return e * scale

    def monomials(self):
        """Monomials in degrevlex order, largest first."""
        return sorted(self.terms, key=_degrevlex_key, reverse=True)

    def coefficient(self, m) -> Cyclotomic:
        return self.terms.get(tuple(m), Cyclotomic(self.n, [0]))

    def constant_term(self) -> Cyclotomic:
        return self.coefficient((0,) * self.nvars)

    def component(self, k: int) -> "GradedElement":
        return self._like({m: c for m, c in self.terms.items() if sum(m) == k})

    def truncate(self, D: int) -> "GradedElement":
        return GradedElement(self.n, self.nvars, D, self.terms)

    def _check(self, other):
        if (self.nvars, self.D) != (other.nvars, other.D):
            raise ValueError("graded elements live in different rings")

    def __add__(self, other):
        if not isinstance(other, GradedElement):
            other = GradedElement.constant(other, self.n, self.nvars, self.D)
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedElement):
            c = self._scalar(other)
            return self._like({m: v * c for m, v in self.terms.items()})
        self._check(other)
        by_deg = {}
        for m, c in other.terms.items():
            by_deg.setdefault(sum(m), []).append((m, c))
        t = {}
        for m1, c1 in self.terms.items():
            d1 = sum(m1)
            for d2, items in by_deg.items():
                if d1 + d2 > self.D:
                    continue
                for m2, c2 in items:
                    m = tuple(a + b for a, b in zip(m1, m2))
                    v = c1 * c2
                    t[m] = t[m] + v if m in t else v
        return self._like(t)

    __rmul__ = __mul__

    def inverse(self) -> "GradedElement":
        """Newton iteration y <- y (2 - x y); needs an invertible constant term."""
        c0 = self.constant_term()
        if c0.is_zero():
            raise DomainError("constant term is zero; element is not invertible")
        y = GradedElement.constant(c0.inverse(), self.n, self.nvars, self.D)
        correct = 0
        while correct < self.D:
            y = y * (2 - self * y)
            correct = 2 * correct + 1
        return y

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            if (self.nvars, self.D) != (other.nvars, other.D):
                return False
            return (self - other).terms == {}
        try:
            return (self - other).terms == {}
        except TypeError:
            return NotImplemented

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            mono = "*".join(f"g{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            c = self.terms[m]
            cs = str(c.rational_value()) if c.is_rational() else f"[{_cyc_str(c)}]"
            parts.append(cs if not mono else f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"GradedElement(n={self.n}, D={self.D}: {self})"


def _cyc_str(c: Cyclotomic) -> str:
    terms = [f"{v}" if k == 0 else f"{v}*z{c.n}^{k}" for k, v in enumerate(c.c) if v]
    return " + ".join(terms) or "0"


def _ring(spec: EquivariantBundleSpec, D: int):
    return spec.n, max(spec.rank, 1), D


def _roots(spec, D, dualize=True):
    """x_i = alpha_i e^{gamma_i} (dual) or alpha_i^-1 e^{-gamma_i}."""
    n, nv, _ = _ring(spec, D)
    out = []
    for i, l in enumerate(spec.line_exponents()):
        if dualize:
            out.append(GradedElement.exp_variable(i, n, nv, D, Cyclotomic.zeta(n, l)))
        else:
            out.append(GradedElement.exp_variable(i, n, nv, D, Cyclotomic.zeta(n, -l), sign=-1))
    return out


def ch_g_split(spec: EquivariantBundleSpec, dualize: bool, D: int) -> GradedElement:
    """ch_g(E^v) = sum_i alpha_i e^gamma_i, or ch_g(E) = sum_i alpha_i^-1 e^-gamma_i."""
    n, nv, _ = _ring(spec, D)
    acc = GradedElement(n, nv, D)
    for x in _roots(spec, D, dualize):
        acc = acc + x
    return acc


def lambda_minus1_ch(spec: EquivariantBundleSpec, D: int) -> GradedElement:
    """prod_i (1 - alpha_i e^gamma_i)."""
    n, nv, _ = _ring(spec, D)
    acc = GradedElement.constant(1, n, nv, D)
    for x in _roots(spec, D):
        acc = acc * (1 - x)
    return acc


def _elementary(xs, p, one):
    acc = one * 0
    for idx in combinations(range(len(xs)), p):
        t = one
        for i in idx:
            t = t * xs[i]
        acc = acc + t
    return acc


def lambda_minus1_exterior(spec: EquivariantBundleSpec, D: int) -> GradedElement:
    """sum_p (-1)^p ch_g(Lambda^p E^v) from elementary symmetric polynomials."""
    n, nv, _ = _ring(spec, D)
    xs = _roots(spec, D)
    one = GradedElement.constant(1, n, nv, D)
    acc = GradedElement(n, nv, D)
    for p in range(len(xs) + 1):
        acc = acc + _elementary(xs, p, one) * ((-1) ** p)
    return acc


def kappa_numerator(spec: EquivariantBundleSpec, D: int) -> GradedElement:
    """sum_p (-1)^p p ch_g(Lambda^p E^v) as the t-derivative of prod(1 - x_i t) at t = 1."""
    n, nv, _ = _ring(spec, D)
    xs = _roots(spec, D)
    acc = GradedElement(n, nv, D)
    for j, xj in enumerate(xs):
        t = xj
        for i, xi in enumerate(xs):
            if i != j:
                t = t * (1 - xi)
        acc = acc - t
    return acc


def kappa_numerator_exterior(spec: EquivariantBundleSpec, D: int) -> GradedElement:
    """sum_p (-1)^p p e_p(x_1..x_r) by brute force over subsets."""
    n, nv, _ = _ring(spec, D)
    xs = _roots(spec, D)
    one = GradedElement.constant(1, n, nv, D)
    acc = GradedElement(n, nv, D)
    for p in range(1, len(xs) + 1):
        acc = acc + _elementary(xs, p, one) * ((-1) ** p * p)
    return acc


def kappa_numerator_closed_form(spec: EquivariantBundleSpec, D: int) -> GradedElement:
    """-prod(1 - x_i) * sum_j x_j / (1 - x_j); only for specs without alpha = 1."""
    if spec.rank0:
        raise DomainError("closed form needs every alpha_j != 1")
    xs = _roots(spec, D)
    s = sum((x * (1 - x).inverse() for x in xs), GradedElement(*_ring(spec, D)))
    return -lambda_minus1_ch(spec, D) * s


def _todd0(spec, D):
    # Td(E_0) = prod over alpha = 1 of gamma/(e^gamma - 1) = sum_k B_k gamma^k / k!
    n, nv, _ = _ring(spec, D)
    acc = GradedElement.constant(1, n, nv, D)
    for i, l in enumerate(spec.line_exponents()):
        if l:
            continue
        terms = {}
        for k in range(D + 1):
            m = [0] * nv
            m[i] = k
            terms[tuple(m)] = bernoulli(k) / math.factorial(k)
        acc = acc * GradedElement(n, nv, D, terms)
    return acc


def kappa(spec: EquivariantBundleSpec, D: int) -> GradedElement:
    """Td(E_0) * numerator / prod_{alpha != 1}(1 - alpha e^gamma), truncated at D."""
    n, nv, _ = _ring(spec, D)
    den = GradedElement.constant(1, n, nv, D)
    for i, l in enumerate(spec.line_exponents()):
        if l:
            den = den * (1 - GradedElement.exp_variable(i, n, nv, D, Cyclotomic.zeta(n, l)))
    if den.constant_term().is_zero():
        raise DomainError("denominator constant term vanishes")
    return _todd0(spec, D) * kappa_numerator(spec, D) * den.inverse()


def kappa_rhs(spec: EquivariantBundleSpec, l: int) -> GradedElement:
    """-c_top(E_0) * sum_z zeta_L(z, -l) ch^[l](E_z^v), homogeneous of degree l + rk E_0."""
    n, nv, _ = _ring(spec, 0)
    D = l + spec.rank0
    ctop = GradedElement.constant(1, n, nv, D)
    s = GradedElement(n, nv, D)
    for i, e in enumerate(spec.line_exponents()):
        if e == 0:
            ctop = ctop * (-GradedElement.variable(i, n, nv, D))
            zl = Cyclotomic.rational(riemann_negint_exact(l), n)
        else:
            zl = lerch_negint_exact(Cyclotomic.zeta(n, e), l)
        m = [0] * nv
        m[i] = l
        s = s + GradedElement(n, nv, D, {tuple(m): Fraction(1, math.factorial(l))}) * zl
    return -(ctop * s)


def verify_kappa(spec: EquivariantBundleSpec, l: int):
    """Exact equality of the degree-(l + rk E_0) part of kappa with the Lerch-value side."""
    if l < 0:
        raise ValueError("l must be non-negative")
    D = l + spec.rank0
    lhs = kappa(spec, D).component(D)
    rhs = kappa_rhs(spec, l)
    return exact_report("kappa", {"n": spec.n, "spec": str(spec), "l": l}, lhs, rhs)


# -- Taylor expansion of alpha e^t / (1 - alpha e^t) ---------------------------------------


def verify_taylor_lerch(n: int, k: int, maxdeg: int = 8, digits: int = 50):
    """Coefficients of alpha e^t/(1 - alpha e^t), alpha = zeta_n^k != 1, against zeta_L(alpha, -p)/p!.

    One exact report for the coefficient vector plus one numeric report per p.
    """
    if k % n == 0:
        raise DomainError("alpha = 1 goes through verify_taylor_bernoulli")
    alpha = Cyclotomic.zeta(n, k)
    x = GradedElement.exp_variable(0, n, 1, maxdeg, alpha)
    series = x * (1 - x).inverse()
    lhs = tuple(series.coefficient((p,)) for p in range(maxdeg + 1))
    exact = tuple(lerch_negint_exact(alpha, p) * Fraction(1, math.factorial(p)) for p in range(maxdeg + 1))
    params = {"n": n, "k": k, "maxdeg": maxdeg}
    out = [exact_report("taylor-lerch", params, lhs, exact)]
    P = precision_bits(digits)
    with mp.workprec(P):
        for p in range(maxdeg + 1):
            num = lerch_zeta((k, n), -p, P) / math.factorial(p)
            out.append(compare("taylor-lerch-numeric", {"n": n, "k": k, "p": p}, num, exact[p].to_mpc(P), mp.mpf(10) ** -30, P))
    return out


def verify_taylor_bernoulli(maxdeg: int = 8, digits: int = 50):
    """e^t/(1 - e^t) + 1/t = sum_p zeta(-p) t^p / p!, exact and numeric."""
    D = maxdeg + 1
    # (1 - e^t)/t = -S with S = sum_k t^k/(k+1)!, so e^t/(1 - e^t) + 1/t = (1 - e^t S^-1)/t
    S = GradedElement(1, 1, D, {(k,): Fraction(1, math.factorial(k + 1)) for k in range(D + 1)})
    e = GradedElement.exp_variable(0, 1, 1, D)
    w = 1 - e * S.inverse()
    if not w.constant_term().is_zero():
        raise ArithmeticError("1/t pole did not cancel")
    lhs = tuple(w.coefficient((p + 1,)).rational_value() for p in range(maxdeg + 1))
    exact = tuple(riemann_negint_exact(p) / math.factorial(p) for p in range(maxdeg + 1))
    out = [exact_report("taylor-bernoulli", {"n": 1, "maxdeg": maxdeg}, lhs, exact)]
    P = precision_bits(digits)
    with mp.workprec(P):
        for p in range(maxdeg + 1):
            num = hurwitz_zeta(-p, 1, P) / math.factorial(p)
            ex = mp.mpf(exact[p].numerator) / exact[p].denominator
            out.append(compare("taylor-bernoulli-numeric", {"n": 1, "p": p}, num, ex, mp.mpf(10) ** -30, P))
    return out


# -- toy arithmetic Chow ring ------------------------------------------------------------


class ToyChowElement:
    """(z, x) with z in Q(zeta_n) and x a Q(zeta_n)-combination of c_1 symbols."""

    __slots__ = ("n", "z", "x")
    __hash__ = None

    def __init__(self, n: int, z, x=None):
        self.n = n
        self.z = z if isinstance(z, Cyclotomic) else Cyclotomic(n, [z])
        self.x = {}
        for k, v in (x or {}).items():
            v = v if isinstance(v, Cyclotomic) else Cyclotomic(n, [v])
            if not v.is_zero():
                self.x[k] = v

    def __add__(self, other):
        x = dict(self.x)
        for k, v in other.x.items():
            x[k] = x[k] + v if k in x else v
        return ToyChowElement(self.n, self.z + other.z, x)

    def __neg__(self):
        return ToyChowElement(self.n, -self.z, {k: -v for k, v in self.x.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ToyChowElement):
            c = other if isinstance(other, Cyclotomic) else Cyclotomic(self.n, [other])
            return ToyChowElement(self.n, self.z * c, {k: v * c for k, v in self.x.items()})
        x = {k: v * other.z for k, v in self.x.items()}
        for k, v in other.x.items():
            t = v * self.z
            x[k] = x[k] + t if k in x else t
        return ToyChowElement(self.n, self.z * other.z, x)

    __rmul__ = __mul__

    def inverse(self) -> "ToyChowElement":
        if self.z.is_zero():
            raise DomainError("degree-0 part is zero; element is not invertible")
        zi = self.z.inverse()
        z2 = zi * zi
        return ToyChowElement(self.n, zi, {k: -v * z2 for k, v in self.x.items()})

    def __eq__(self, other):
        if not isinstance(other, ToyChowElement):
            return NotImplemented
        d = self - other
        return d.z.is_zero() and not d.x

    def __str__(self):
        z = str(self.z.rational_value()) if self.z.is_rational() else f"[{_cyc_str(self.z)}]"
        xs = []
        for k in sorted(self.x):
            v = self.x[k]
            vs = str(v.rational_value()) if v.is_rational() else f"[{_cyc_str(v)}]"
            xs.append(f"{vs}*{k}")
        return f"{z} (+) " + (" + ".join(xs) if xs else "0")

    def __repr__(self):
        return f"ToyChowElement({self})"


def _check_toy(spec):
    for l, r in spec.summands:
        if l == 0 and r > 0:
            raise DomainError("eigenvalue exponent l = 0 makes 1 - zeta^l non-invertible")


def toy_lambda_minus1(spec: EquivariantBundleSpec) -> ToyChowElement:
    """ch(lambda_-1 V) for V = sum_l V_l from the exterior powers of the whole sum.

    Lambda^k V = sum over (k_l) with sum k_l = k of tensor_l Lambda^(k_l) V_l; in the toy
    ring a tensor product has rank prod C(r_l, k_l) and c_1 = sum_l (prod_(m != l) C(r_m, k_m)) C(r_l - 1, k_l - 1) c_1(V_l).
    """
    n = spec.n
    ranks = [r for _, r in spec.summands]
    zacc = {}
    xacc = [dict() for _ in spec.summands]
    for ks in product(*[range(r + 1) for r in ranks]):
        sign = (-1) ** sum(ks)
        e = sum(l * k for (l, _), k in zip(spec.summands, ks)) % n
        binoms = [math.comb(r, k) for r, k in zip(ranks, ks)]
        rank = math.prod(binoms)
        zacc[e] = zacc.get(e, 0) + sign * rank
        for j, (r, k) in enumerate(zip(ranks, ks)):
            if k == 0:
                continue
            c = math.prod(b for i, b in enumerate(binoms) if i != j) * math.comb(r - 1, k - 1)
            xacc[j][e] = xacc[j].get(e, 0) + sign * c
    x = {}
    for j, acc in enumerate(xacc):
        v = Cyclotomic.from_powers(n, acc)
        sym = spec.symbol(j)
        x[sym] = x[sym] + v if sym in x else v
    return ToyChowElement(n, Cyclotomic.from_powers(n, zacc), x)


def toy_lambda_minus1_summand(n: int, l: int, r: int, symbol: str) -> ToyChowElement:
    """sum_k (-1)^k zeta^(l k) (C(r, k) (+) C(r - 1, k - 1) c_1) for a single eigenbundle."""
    z, x = {}, {}
    for k in range(r + 1):
        e = (l * k) % n
        z[e] = z.get(e, 0) + (-1) ** k * math.comb(r, k)
        if k:
            x[e] = x.get(e, 0) + (-1) ** k * math.comb(r - 1, k - 1)
    return ToyChowElement(n, Cyclotomic.from_powers(n, z), {symbol: Cyclotomic.from_powers(n, x)})


def verify_grrr(spec: EquivariantBundleSpec):
    """prod_l (1 - zeta^l)^(-r_l) ch(lambda_-1 V) = 1 (+) (-sum_l zeta^l/(1 - zeta^l) c_1(V_l)), exactly."""
    _check_toy(spec)
    n = spec.n
    scale = Cyclotomic(n, [1])
    rhs = ToyChowElement(n, 1)
    for j, (l, r) in enumerate(spec.summands):
        if r == 0:
            continue
        w = 1 - Cyclotomic.zeta(n, l)
        scale = scale * w ** (-r)
        rhs = rhs + ToyChowElement(n, 0, {spec.symbol(j): -Cyclotomic.zeta(n, l) * w.inverse()})
    lhs = toy_lambda_minus1(spec) * scale
    return exact_report("grrr", {"n": n, "spec": str(spec)}, lhs, rhs)


def verify_toy_multiplicative(spec: EquivariantBundleSpec):
    """lambda_-1 of the sum equals the product of the per-summand lambda_-1 (toy ring)."""
    n = spec.n
    prod_ = ToyChowElement(n, 1)
    for j, (l, r) in enumerate(spec.summands):
        prod_ = prod_ * toy_lambda_minus1_summand(n, l, r, spec.symbol(j))
    return exact_report("toy-multiplicative", {"n": n, "spec": str(spec)}, toy_lambda_minus1(spec), prod_)


# -- projector and fixed points --------------------------------------------------------


def _synthetic_div(n: int, root: Cyclotomic) -> list:
    """Coefficients of (T^n - 1)/(T - root), lowest degree first."""
    a = [Cyclotomic(n, [-1])] + [Cyclotomic(n, [0])] * (n - 1) + [Cyclotomic(n, [1])]
    q = [None] * n
    carry = a[n]
    for j in range(n - 1, -1, -1):
        q[j] = carry
        carry = a[j] + carry * root
    if not carry.is_zero():
        raise ArithmeticError("root is not an n-th root of unity")
    return q


def projector_poly(n: int) -> tuple:
    """P_n(T) = sum over primitive zeta of the Lagrange basis polynomial at zeta.

    Rational coefficients, lowest degree first, length n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    acc = [Cyclotomic(n, [0]) for _ in range(n)]
    for u in range(n):
        if math.gcd(u, n) != 1:
            continue
        zeta = Cyclotomic.zeta(n, u)
        num = _synthetic_div(n, zeta)
        # denominator prod_{xi != zeta}(zeta - xi) is num evaluated at zeta
        den = Cyclotomic(n, [0])
        for c in reversed(num):
            den = den * zeta + c
        inv = den.inverse()
        for j in range(n):
            acc[j] = acc[j] + num[j] * inv
    out = []
    for c in acc:
        if not c.is_rational():
            raise ArithmeticError(f"projector coefficient is not rational for n = {n}")
        out.append(c.rational_value())
    return tuple(out)


def projector_eval(coeffs, T):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * T + c
    return acc


def fixed_point_count(spec: EquivariantBundleSpec) -> Cyclotomic:
    """prod_l (1 - zeta^l)^(r_l); zero (with a warning) when r_0 > 0."""
    n = spec.n
    if spec.rank0:
        warnings.warn("r_0 > 0: the fixed-point factor vanishes", RuntimeWarning, stacklevel=2)
        return Cyclotomic(n, [0])
    acc = Cyclotomic(n, [1])
    for l, r in spec.summands:
        acc = acc * (1 - Cyclotomic.zeta(n, l)) ** r
    return acc


def primitive_ranks_spec(n: int) -> EquivariantBundleSpec:
    """r_l = 1 for l in (Z/n)^x, else 0."""
    return EquivariantBundleSpec(n, tuple((l, 1) for l in range(n) if math.gcd(l, n) == 1))


def _matmul(A, B):
    size = len(A)
    out = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        Ai, Oi = A[i], out[i]
        for k in range(size):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(size):
                    if Bk[j]:
                        Oi[j] += a * Bk[j]
    return out


def projector_idempotent_check(n: int):
    """P_n evaluated at the companion matrix of T^n - 1: idempotent with trace phi(n).

    Also checks the interpolation property P_n(zeta^u) = [gcd(u, n) = 1] and the
    fixed-point count of the all-primitive spec against Phi_n(1).
    """
    if n > 30:
        raise ValueError("projector checks are limited to n <= 30")
    coeffs = projector_poly(n)
    params = {"n": n}
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1):
        M[i + 1][i] = Fraction(1)
    M[0][n - 1] = Fraction(1)
    P = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(coeffs):
        P = _matmul(P, M)
        for i in range(n):
            P[i][i] += c
    P2 = _matmul(P, P)
    defect = sum(1 for i in range(n) for j in range(n) if P2[i][j] != P[i][j])
    trace = sum(P[i][i] for i in range(n))
    values = tuple(projector_eval(coeffs, Cyclotomic.zeta(n, u)) for u in range(n))
    indicator = tuple(Cyclotomic(n, [1 if math.gcd(u, n) == 1 else 0]) for u in range(n))
    phi_at_1 = sum(cyclotomic_poly(n))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        fp = fixed_point_count(primitive_ranks_spec(n))
    return [
        exact_report("projector-idempotent", params, defect, 0, extra={"coefficients": coeffs}),
        exact_report("projector-trace", params, trace, totient(n)),
        exact_report("projector-interpolation", params, values, indicator),
        exact_report("fixed-points", params, fp, Cyclotomic.rational(phi_at_1, n)),
    ]
