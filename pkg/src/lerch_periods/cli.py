"""Command-line harness: identity suites, the epsilon solver and single evaluations.

Every command prints one JSON document.  Suites are split into independent
tasks that may run in worker processes; reports are sorted before emission, so
the output does not depend on ``--parallel``.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from mpmath import mp

from . import char_class as cc
from . import dirichlet as dc
from . import hodge_eps as he
from . import identities as ids
from .lerch import RootOfUnityAngle, lerch_cos_sin_with_ds, lerch_zeta, r_series
from .numeric import DomainError, PoleError, precision_bits
from .report import Stopwatch, exact_report, fmt_value, render, report_schema

IDENTITIES = (
    "lemma-functional",
    "log-derivative-ratio",
    "hurwitz-link",
    "eta-zero",
    "zeta-negint",
    "euler-factor",
    "twisted-gauss",
    "kappa",
    "grrr",
    "taylor",
    "projector",
    "epsilon",
    "period-cm",
    "triangle",
)

DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


# -- task execution ---------------------------------------------------------------------


def _odd_characters(n):
    return [c for c in dc.characters(n) if c.is_odd]


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def _task_lemma(n, digits):
    return [ids.verify_lemma_functional(c, s, digits) for c in _odd_characters(n) for s in ids.LEMMA_S_GRID]


def _task_ratio(n, digits):
    return [ids.verify_theorem2_ratio(c, digits) for c in _odd_characters(n)]


def _task_hurwitz(p, digits):
    return [he.verify_hurwitz_link(c, digits) for c in _odd_characters(p)]


def _task_eta(n, digits):
    return ids.verify_eta_zero(n, digits)


def _task_zeta_negint(lmax, digits):
    return [ids.verify_zeta_negint(l, digits) for l in range(lmax + 1)]


def _task_euler(n, digits):
    out = []
    for c in dc.characters(n):
        out.extend(dc.verify_euler_factor(c, 2, digits))
    return out


def _task_twisted_gauss(n, digits):
    out = []
    for c in dc.characters(n):
        if c.is_primitive:
            out.extend(dc.verify_wasq(c, l) for l in range(n))
            out.append(dc.verify_gauss_norm(c))
    return out


def _task_kappa(items, digits):
    out = []
    for n, summands, l in items:
        out.append(cc.verify_kappa(cc.EquivariantBundleSpec(n, summands), l))
    return out


def _task_grrr(items, digits):
    out = []
    for n, summands in items:
        spec = cc.EquivariantBundleSpec(n, summands)
        out.append(cc.verify_grrr(spec))
        out.append(cc.verify_toy_multiplicative(spec))
    return out


def _task_taylor(n, digits):
    if n == 1:
        return cc.verify_taylor_bernoulli(8, digits)
    out = []
    for k in range(1, n):
        out.extend(cc.verify_taylor_lerch(n, k, 8, digits))
    return out


def _task_projector(n, digits):
    return cc.projector_idempotent_check(n)


def _task_epsilon(args, digits):
    f, seed = args
    rng = random.Random(f"{seed}:epsilon:{f}")
    us = he.units(f)
    out = []
    # Hodge-like types: p(u) + p(-u) = 1
    p = {}
    for u in us:
        if u in p:
            continue
        v = (-u) % f
        if f == 1:
            p[u] = 0
        elif v == u:
            p[u] = Fraction(1, 2)
        else:
            p[u] = rng.randint(0, 1)
            p[v] = 1 - p[u]
    system = he.solve_epsilon(f, p)
    params = {"f": f, "p": ",".join(f"{u}:{p[u]}" for u in us)}
    zeros = tuple(Fraction(0) for _ in us)
    if not system.feasible:
        return [_certificate_report(system, params)]
    res = tuple(system.residual(system.epsilon).values())
    out.append(exact_report("epsilon-solution", params, res, zeros, extra={"epsilon": [system.epsilon[a] for a in range(f)]}))
    for i in range(10):
        combo = dict(system.epsilon)
        for g in system.kernel:
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            for a in range(f):
                combo[a] += c * g[a]
        out.append(exact_report("epsilon-kernel", dict(params, sample=i), tuple(system.residual(combo).values()), zeros))
    if len(us) >= 4:
        bad = {u: 0 for u in us}
        bad[1] = 1
        bad[f - 1] = 1
        s2 = he.solve_epsilon(f, bad)
        out.append(_certificate_report(s2, {"f": f, "p": ",".join(f"{u}:{bad[u]}" for u in us)}))
    return out


def _certificate_report(system, params):
    """y^T A = 0 and y^T p != 0 for an infeasible system."""
    y = system.certificate
    if y is None:
        return exact_report("epsilon-certificate", params, "feasible", "infeasible")
    us = he.units(system.f)
    yA = tuple(sum(y[u] * row[a] for u, row in zip(us, system.matrix)) for a in range(system.f))
    yp = sum(y[u] * system.p_values[u] for u in us)
    return exact_report("epsilon-certificate", params, (yA, yp != 0), (tuple(Fraction(0) for _ in range(system.f)), True))


def _task_period(args, digits):
    f, u = args
    return [he.period_report(he.verify_period_conjecture_cm(f, digits, u))]


def _task_triangle(n, digits):
    out = []
    for c in _odd_characters(n):
        out.extend(ids.consistency_triangle(c, digits))
    return out


_TASKS = {
    "lemma-functional": _task_lemma,
    "log-derivative-ratio": _task_ratio,
    "hurwitz-link": _task_hurwitz,
    "eta-zero": _task_eta,
    "zeta-negint": _task_zeta_negint,
    "euler-factor": _task_euler,
    "twisted-gauss": _task_twisted_gauss,
    "kappa": _task_kappa,
    "grrr": _task_grrr,
    "taylor": _task_taylor,
    "projector": _task_projector,
    "epsilon": _task_epsilon,
    "period-cm": _task_period,
    "triangle": _task_triangle,
}


def _execute(task):
    kind, arg, digits = task
    sw = Stopwatch()
    reports = _TASKS[kind](arg, digits)
    ms = sw.ms
    for r in reports:
        r.elapsed_ms = ms
    return reports


# -- suite planning ---------------------------------------------------------------------


def kappa_specs(seed: int, count: int):
    """Fixed examples followed by ``count`` random specs: n in {2,3,4,6}, rank <= 3, l <= 3."""
    items = [(4, ((1, 1),), 0), (2, ((0, 1),), 0)] + [(3, ((1, 1), (2, 1), (0, 1)), l) for l in range(3)]
    rng = random.Random(f"{seed}:kappa")
    for _ in range(count):
        n = rng.choice((2, 3, 4, 6))
        rank = rng.randint(1, 3)
        counts = {}
        for _ in range(rank):
            l = rng.randrange(n)
            counts[l] = counts.get(l, 0) + 1
        items.append((n, tuple(sorted(counts.items())), rng.randint(0, 3)))
    return items


def grrr_specs(seed: int, count: int, n_max: int = 12):
    """Fixed examples followed by ``count`` random specs: n <= n_max, ranks <= 3 per degree."""
    items = [(5, ((2, 2),)), (3, ((1, 1), (2, 1))), (7, ((3, 1),))]
    rng = random.Random(f"{seed}:grrr")
    for _ in range(count):
        n = rng.randint(2, max(2, n_max))
        k = rng.randint(1, 3)
        degs = sorted(rng.sample(range(1, n), min(k, n - 1)))
        items.append((n, tuple((l, rng.randint(1, 3)) for l in degs)))
    return items


def _chunks(seq, size):
    return [tuple(seq[i : i + size]) for i in range(0, len(seq), size)]


def plan(identity: str, cfg) -> list:
    d = cfg.digits
    lo = cfg.n if cfg.n is not None else None
    nmax = cfg.n if cfg.n is not None else cfg.n_max

    def nrange(start):
        if lo is not None:
            return [lo] if lo >= start else []
        return list(range(start, nmax + 1))

    if identity == "lemma-functional":
        return [(identity, n, d) for n in nrange(3)]
    if identity == "log-derivative-ratio":
        return [(identity, n, d) for n in nrange(3)]
    if identity == "hurwitz-link":
        return [(identity, p, d) for p in nrange(3) if _is_prime(p)]
    if identity == "eta-zero":
        return [(identity, n, d) for n in nrange(2)]
    if identity == "zeta-negint":
        return [(identity, 19, d)]
    if identity == "euler-factor":
        return [(identity, n, d) for n in nrange(1)]
    if identity == "twisted-gauss":
        return [(identity, n, d) for n in nrange(1)]
    if identity == "kappa":
        return [(identity, c, d) for c in _chunks(kappa_specs(cfg.seed, cfg.count or 200), 25)]
    if identity == "grrr":
        return [(identity, c, d) for c in _chunks(grrr_specs(cfg.seed, cfg.count or 100, min(nmax, 12)), 25)]
    if identity == "taylor":
        return [(identity, n, d) for n in (1, 2, 3, 4, 6) if n <= max(nmax, 2) and (lo is None or n == lo)]
    if identity == "projector":
        return [(identity, n, d) for n in nrange(1) if n <= 30]
    if identity == "epsilon":
        return [(identity, (f, cfg.seed), d) for f in nrange(1)]
    if identity == "period-cm":
        return [(identity, (f, u), d) for f in (3, 4) for u in he.units(f)]
    if identity == "triangle":
        return [(identity, n, d) for n in nrange(3) if n <= 12]
    raise UsageError(f"unknown identity {identity!r}")


def run_tasks(tasks, parallel: int):
    if parallel > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as ex:
            chunks = list(ex.map(_execute, tasks))
    else:
        chunks = [_execute(t) for t in tasks]
    return [r for chunk in chunks for r in chunk]


def _apply_tolerance(reports, tol):
    if tol is None:
        return
    for r in reports:
        if r.exact:
            continue
        with mp.workprec(r.precision_bits + 32):
            t = mp.mpf(tol)
            r.tolerance = t
            r.passed = bool(r.abs_err <= t or r.rel_err <= t)


# -- evaluation commands ---------------------------------------------------------------------


def _parse_s(text):
    try:
        v = mp.mpmathify(text.replace("i", "j"))
    except (ValueError, TypeError):
        raise UsageError(f"cannot parse s = {text!r}") from None
    return v


def _parse_pairs(text):
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            k, v = item.split(":")
            out[int(k)] = Fraction(v)
        except ValueError:
            raise UsageError(f"expected u:value pairs, got {item!r}") from None
    return out


def _character(label):
    try:
        return dc.character_from_label(label)
    except ValueError as e:
        raise UsageError(str(e)) from None


def eval_lerch(cfg):
    P = precision_bits(cfg.digits)
    ang = RootOfUnityAngle(cfg.a, cfg.n_mod)
    with mp.workprec(P):
        s = _parse_s(cfg.s)
        out = {"a": ang.a, "n": ang.n, "s": s, "zeta_L": lerch_zeta(ang, s, P)}
        (zc, ze), (dz, de) = lerch_cos_sin_with_ds(ang, s, P)
        out.update({"zeta": zc, "eta": ze, "zeta_ds": dz, "eta_ds": de})
    return out


def eval_lfun(cfg):
    P = precision_bits(cfg.digits)
    chi = _character(cfg.character)
    with mp.workprec(P):
        s = _parse_s(cfg.s)
        lv = dc.l_function_ds(chi, s, P)
    return {"character": chi.label, "modulus": chi.modulus, "conductor": chi.conductor, "s": s, "L": lv.value, "L_ds": lv.derivative}


def eval_chars(cfg):
    rows = []
    for c in dc.characters(cfg.n_mod):
        rows.append(
            {
                "label": c.label,
                "order": c.order,
                "parity": "odd" if c.is_odd else "even",
                "conductor": c.conductor,
                "primitive": c.is_primitive,
                "values": {str(a): (None if c.exponent(a) is None else str(Fraction(c.exponent(a), c.order))) for a in range(cfg.n_mod)},
            }
        )
    return {"n": cfg.n_mod, "characters": rows}


def eval_gauss(cfg):
    chi = _character(cfg.character)
    t = dc.gauss_sum(chi)
    out = {"character": chi.label, "tau": t, "tau_numeric": t.to_mpc(precision_bits(cfg.digits))}
    out["norm"] = t * t.conj()
    if cfg.l is not None:
        out["twisted"] = dc.twisted_gauss_sum(chi, cfg.l)
    return out


def eval_rseries(cfg):
    P = precision_bits(cfg.digits)
    rs = r_series(RootOfUnityAngle(cfg.a, cfg.n_mod), cfg.maxdeg, P)
    return {"a": rs.theta.a, "n": rs.theta.n, "coefficients": list(rs.coeffs)}


def eval_projector(cfg):
    coeffs = cc.projector_poly(cfg.n_mod)
    return {"n": cfg.n_mod, "coefficients": list(coeffs)}


def eval_eps(cfg):
    if cfg.action == "kernel":
        rows = he.kernel_gamma_products(cfg.f, cfg.digits)
        return {"f": cfg.f, "products": [{"gamma": [k.gamma[a] for a in range(cfg.f)], "u": k.u, "value": k.value} for k in rows]}
    if cfg.p is None:
        raise UsageError("eps solve needs --p u:value,...")
    try:
        system = he.solve_epsilon(cfg.f, _parse_pairs(cfg.p))
    except ValueError as e:
        raise UsageError(str(e)) from None
    out = {"f": cfg.f, "feasible": system.feasible}
    if system.feasible:
        out["epsilon"] = {str(a): system.epsilon[a] for a in range(cfg.f)}
        out["particular"] = {str(a): system.particular[a] for a in range(cfg.f)}
    else:
        out["certificate"] = {str(u): v for u, v in system.certificate.items()}
    out["kernel"] = [{str(a): g[a] for a in range(cfg.f)} for g in system.kernel]
    return out


_EVALS = {
    "lerch": eval_lerch,
    "lfun": eval_lfun,
    "chars": eval_chars,
    "gauss": eval_gauss,
    "rseries": eval_rseries,
    "projector": eval_projector,
    "eps": eval_eps,
}


# -- argument parsing ----------------------------------------------------------------------


def _digits(text):
    d = int(text)
    if d < 15:
        raise argparse.ArgumentTypeError("digits must be at least 15")
    return d


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=_digits, default=50, help="decimal digits (>= 15)")
    common.add_argument("--n-max", type=int, default=12, help="largest modulus in suites")
    common.add_argument("--tolerance", type=str, default=None, help="override every numeric tolerance")
    common.add_argument("--json", dest="json_path", default=None, help="also write the report to this path")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized specs")
    common.add_argument("--parallel", type=int, default=1, help="worker processes")
    common.add_argument("--timings", action="store_true", help="record elapsed times (output no longer byte-stable)")

    p = argparse.ArgumentParser(prog="lerch-periods", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("lerch", parents=[common], help="Lerch series at a root of unity")
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--n", dest="n_mod", type=int, required=True)
    q.add_argument("--s", required=True)

    q = sub.add_parser("lfun", parents=[common], help="non-primitive Dirichlet L-function")
    q.add_argument("--character", required=True, help='label such as "12.1.0"')
    q.add_argument("--s", required=True)

    q = sub.add_parser("chars", parents=[common], help="characters mod n")
    q.add_argument("--n", dest="n_mod", type=int, required=True)

    q = sub.add_parser("gauss", parents=[common], help="exact Gauss sum")
    q.add_argument("--character", required=True)
    q.add_argument("--l", type=int, default=None)

    q = sub.add_parser("rseries", parents=[common], help="coefficients of R(theta, t)")
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--n", dest="n_mod", type=int, required=True)
    q.add_argument("--maxdeg", type=int, default=6)

    q = sub.add_parser("projector", parents=[common], help="projector polynomial P_n")
    q.add_argument("--n", dest="n_mod", type=int, required=True)

    q = sub.add_parser("eps", parents=[common], help="epsilon solver")
    q.add_argument("action", choices=("solve", "kernel"))
    q.add_argument("--f", type=int, required=True)
    q.add_argument("--p", default=None, help="Hodge types as u:value,...")

    for name in ("kappa", "grrr"):
        q = sub.add_parser(name, parents=[common], help=f"{name} identity on one spec or a seeded random batch")
        q.add_argument("--n", dest="n_mod", type=int, default=None)
        q.add_argument("--spec", default=None, help="summands as l:rank,...")
        if name == "kappa":
            q.add_argument("--l", type=int, default=None)
        q.add_argument("--count", type=int, default=None)

    q = sub.add_parser("verify", parents=[common], help="run identity suites")
    q.add_argument("identity", choices=IDENTITIES + ("all",))
    q.add_argument("--n", type=int, default=None, help="restrict to a single modulus")
    q.add_argument("--count", type=int, default=None, help="random specs for kappa/grrr")

    q = sub.add_parser("cs-check", parents=[common], help="CM period checks for f = 3, 4")
    q.add_argument("--f", type=int, choices=(3, 4), default=None)
    q.add_argument("--u", type=int, default=None)

    sub.add_parser("schema", help="print the JSON report schema")
    return p


# -- main ------------------------------------------------------------------------------------


def _emit(doc, cfg):
    text = json.dumps(doc, indent=2) + "\n"
    sys.stdout.write(text)
    if getattr(cfg, "json_path", None):
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _suite_tasks(cfg):
    cmd = cfg.command
    d = cfg.digits
    if cmd == "verify":
        names = IDENTITIES if cfg.identity == "all" else (cfg.identity,)
        return cfg.identity, [t for name in names for t in plan(name, cfg)]
    if cmd == "cs-check":
        fs = (cfg.f,) if cfg.f else (3, 4)
        tasks = []
        for f in fs:
            us = he.units(f)
            if cfg.u is not None:
                if cfg.u % f not in us:
                    raise UsageError(f"u must be a unit mod {f}")
                us = [cfg.u % f]
            tasks.extend(("period-cm", (f, u), d) for u in us)
        return "cs-check", tasks
    if cmd == "kappa":
        if cfg.spec is None:
            items = kappa_specs(cfg.seed, cfg.count or 200)
        else:
            if cfg.n_mod is None:
                raise UsageError("--spec needs --n")
            spec = cc.EquivariantBundleSpec.parse(cfg.n_mod, cfg.spec)
            ls = [cfg.l] if cfg.l is not None else list(range(4))
            items = [(spec.n, spec.summands, l) for l in ls]
        return "kappa", [("kappa", c, d) for c in _chunks(items, 25)]
    if cmd == "grrr":
        if cfg.spec is None:
            items = grrr_specs(cfg.seed, cfg.count or 100)
        else:
            if cfg.n_mod is None:
                raise UsageError("--spec needs --n")
            spec = cc.EquivariantBundleSpec.parse(cfg.n_mod, cfg.spec)
            items = [(spec.n, spec.summands)]
        return "grrr", [("grrr", c, d) for c in _chunks(items, 25)]
    raise UsageError(f"unknown command {cmd!r}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        cfg = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if cfg.command == "schema":
        sys.stdout.write(report_schema() + "\n")
        return 0
    try:
        if cfg.parallel < 1:
            raise UsageError("--parallel must be at least 1")
        if cfg.tolerance is not None:
            try:
                mp.mpf(cfg.tolerance)
            except ValueError:
                raise UsageError(f"bad tolerance {cfg.tolerance!r}") from None
        P = precision_bits(cfg.digits)
        if cfg.command in _EVALS:
            with mp.workprec(P):
                result = _EVALS[cfg.command](cfg)
            doc = {"command": cfg.command, "config": {"digits": cfg.digits, "precision_bits": P}, "result": fmt_value(result, cfg.digits)}
            _emit(doc, cfg)
            return 0
        sw = Stopwatch()
        suite, tasks = _suite_tasks(cfg)
        reports = run_tasks(tasks, cfg.parallel)
        _apply_tolerance(reports, cfg.tolerance)
        doc = render(suite, reports, cfg.digits, P, sw.ms, cfg.timings)
        _emit(doc, cfg)
        return 0 if doc["summary"]["pass"] else 1
    except (UsageError, DomainError, PoleError) as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {e}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
