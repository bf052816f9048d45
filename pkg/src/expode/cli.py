"""Command-line front end.

Results go to stdout as JSON (``"schema": "expode/1"``); ray and circle
samples can be written as CSV with ``--csv-out``.  Exit status is 0 on
success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import dataclasses
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import banklaine, classn, hfun, nevanlinna, tc
from .algebra import GaussianRational, Poly, RatFunc, as_gq
from .errors import ExpodeError
from .expoly import ExpPoly
from .indicator import sector_map
from .parser import parse, to_text

SCHEMA = "expode/1"
CSV_HEADER = ["r", "theta", "re", "im", "log_abs"]


# -- encoding -------------------------------------------------------------------


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _float(x: float):
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def encode(obj):
    """JSON-ready form: exact rationals become ``"num/den"`` strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return _frac(obj)
    if isinstance(obj, GaussianRational):
        if obj.is_real():
            return _frac(obj.re)
        return {"re": _frac(obj.re), "im": _frac(obj.im)}
    if isinstance(obj, (Poly, RatFunc, ExpPoly)):
        return to_text(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _float(obj.real), "im": _float(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return _float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [encode(x) for x in obj.tolist()]
    if dataclasses.is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj) if f.repr}
    if isinstance(obj, dict):
        return {str(encode(k)) if not isinstance(k, str) else k: encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    return str(obj)


def _emit(payload: dict, args) -> None:
    doc = {"schema": SCHEMA, **encode(payload)}
    text = json.dumps(doc, indent=2)
    print(text)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")


def _write_csv(rows, args) -> None:
    path = getattr(args, "csv_out", None)
    if not path:
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for row in rows:
            w.writerow([repr(float(x)) for x in row])


def _row(z: complex, value: complex):
    mag = abs(value)
    return (abs(z), cmath.phase(z), value.real, value.imag, math.log(mag) if mag > 0 else -math.inf)


# -- argument helpers ----------------------------------------------------------------


def _complex(text: str) -> complex:
    """Parse a numeric literal such as ``3/2-0.5i`` or ``1e3`` into a complex."""
    try:
        return complex(GaussianRational(Fraction(text)))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        pass
    value = parse(text)
    if isinstance(value, Poly) and value.degree <= 0:
        return complex(value.coeff(0))
    raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _exact(text: str) -> GaussianRational:
    value = parse(text)
    if isinstance(value, Poly) and value.degree <= 0:
        return value.coeff(0)
    raise argparse.ArgumentTypeError(f"not an exact constant: {text!r}")


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json-out", help="also write the JSON result to this path")
    p.add_argument("--csv-out", help="write ray/circle samples to this CSV path")


# -- subcommands -----------------------------------------------------------------------


def cmd_sectors(args):
    p = parse(args.p)
    smap = sector_map(p)
    _emit({"command": "sectors", "p": p, "k": smap.k, "theta": list(smap.theta), "sign": list(smap.sign),
           "growth_sectors": smap.growth_sectors(), "decay_sectors": smap.decay_sectors()}, args)
    rows = []
    for j in range(2 * smap.k):
        th = smap.center(j)
        z = cmath.exp(1j * th)
        rows.append((1.0, th, z.real, z.imag, 0.0))
    _write_csv(rows, args)


def _hcfg(args) -> hfun.HEvalConfig:
    return hfun.HEvalConfig(rel_tol=args.rel_tol, path=args.path)


def cmd_hfun_eval(args):
    p, beta = parse(args.p), parse(args.beta)
    cfg = _hcfg(args)
    results, rows = [], []
    for z in args.z:
        v = hfun.eval_H(p, beta, z, cfg)
        results.append({"z": z, "H": v})
        rows.append(_row(z, v))
    _emit({"command": "hfun eval", "p": p, "beta": beta, "values": results}, args)
    _write_csv(rows, args)


def cmd_hfun_verify(args):
    p, beta = parse(args.p), parse(args.beta)
    cfg = _hcfg(args)
    radii = args.radii or [x for x in (5.0, 10.0, 15.0, 20.0) if x <= args.rmax] or [args.rmax]
    reports = hfun.verify_theorem0(p, beta, cfg, radii, args.epsilon, rays_per_sector=args.rays)
    rows = []
    for rep in reports:
        for theta, rems in rep.remainders.items():
            for r, rem in zip(rep.radii, rems):
                rows.append(_row(r * cmath.exp(1j * theta), rem))
    out = []
    for rep in reports:
        d = encode(rep)
        d["s_by_ray"] = {f"{k:.12g}": encode(v) for k, v in rep.s_by_ray.items()}
        d["max_abs_s"] = rep.max_abs_s
        out.append(d)
    _emit({"command": "hfun verify", "p": p, "beta": beta, "reports": out}, args)
    _write_csv(rows, args)


def _tc_problem(args) -> tc.TCProblem:
    p2 = parse(args.p2) if args.p2 else None
    return tc.TCProblem.from_alpha(args.n, args.alpha, parse(args.b1), parse(args.b2), parse(args.p1), p2)


def _witness_doc(w: tc.TCWitness) -> dict:
    return {"case": w.case, "n": w.n, "m": w.m, "gamma1": w.gamma1, "gamma2": w.gamma2, "c": w.c,
            "exponents": w.exponents, "f": w.f, "residual": w.residual,
            "residual_terms": [{"exponent": t.exponent, "coefficient": t.coeff} for t in w.residual.terms],
            "alpha_coefficient": w.alpha_coefficient}


def cmd_tc_m(args):
    alpha = _exact(args.alpha)
    _emit({"command": "tc m", "n": args.n, "alpha": alpha, "m": tc.smallest_m(args.n, alpha)}, args)


def cmd_tc_coeffs(args):
    c = tc.solve_coefficients(args.n, args.m)
    C = [tc.multinomial_C(j, args.n, c) for j in range(args.m * args.n + 1)] if args.m else [c[0] ** args.n]
    _emit({"command": "tc coeffs", "n": args.n, "m": args.m, "c": c, "C": C}, args)


def cmd_tc_construct(args):
    prob = _tc_problem(args)
    w = tc.construct(prob)
    _emit({"command": "tc construct", "alpha": prob.alpha, "witness": _witness_doc(w)}, args)


def cmd_tc_verify(args):
    prob = _tc_problem(args)
    w = tc.construct(prob)
    gamma = parse(args.gamma) if args.gamma else None
    rep = tc.verify_tc(w, prob, gamma)
    _emit({"command": "tc verify", "alpha": prob.alpha, "witness": _witness_doc(w), "report": rep}, args)


def cmd_bl_half(args):
    w = banklaine.construct_half(parse(args.p1), parse(args.kappa), parse(args.gamma), parse(args.b1))
    ok = banklaine.verify_banklaine(w.A, w.hprime, w.kappa)
    _emit({"command": "banklaine half", "witness": w, "p2": w.p2, "verified": ok}, args)


def cmd_bl_three(args):
    w = banklaine.three_quarter_family(_exact(args.c))
    _emit({"command": "banklaine threequarter", "c": w.c, "hprime": w.hprime, "A": w.A,
           "printed_A": w.printed_A, "matches_printed": w.matches_printed,
           "exponents": list(w.exponents), "residual_zero": banklaine.verify_banklaine(w.A, w.hprime)}, args)


def cmd_bl_verify(args):
    A, hp, kappa = parse(args.A), parse(args.hprime), parse(args.kappa)
    res = banklaine.banklaine_residual(A, hp, kappa)
    _emit({"command": "banklaine verify", "verified": res.is_zero(), "residual": res}, args)


def cmd_nev_char(args):
    f = parse(args.f)
    radii = args.radii or list(np.geomspace(args.rmin, args.rmax, args.count))
    curve = nevanlinna.characteristic(f, radii, args.samples)
    try:
        nevanlinna.order_fit(curve)
    except ExpodeError as e:
        curve.fitted_order = None
        note = str(e)
    else:
        note = None
    _emit({"command": "nev characteristic", "f": f, "curve": curve, "note": note}, args)
    _write_csv([(r, 0.0, T, 0.0, math.log(T) if T > 0 else -math.inf) for r, T in zip(curve.radii, curve.T_values)],
               args)


def cmd_nev_steinmetz(args):
    rep = nevanlinna.steinmetz_check(parse(args.b1), parse(args.b2), parse(args.p1), parse(args.p2), args.r,
                                     args.samples)
    _emit({"command": "nev steinmetz", "report": rep}, args)


def _trace_doc(t: classn.RayTrace, with_samples: bool = False) -> dict:
    d = {"theta": t.theta, "F0": t.F0, "r0": t.r0, "r_end": float(t.r_values[-1]), "status": t.status,
         "stopped_at": t.stopped_at, "steps": t.steps, "rejected": t.rejected, "switches": t.switches,
         "zero_crossings": t.zero_crossings, "fit": t.fit, "final_logF": complex(t.logF[-1])}
    if with_samples:
        d["samples"] = len(t.r_values)
    return d


def _trace_rows(t: classn.RayTrace):
    for r, u in zip(t.r_values, t.logF):
        # re/im of F itself only where representable
        if u.real < 700:
            F = cmath.exp(complex(u))
            yield (r, t.theta, F.real, F.imag, u.real)
        else:
            yield (r, t.theta, float("nan"), float("nan"), u.real)


def cmd_classn_ray(args):
    R1, R2, q = parse(args.R1), parse(args.R2), parse(args.q)
    t = classn.integrate_ray(R1, R2, q, args.theta, args.F0, args.r0, args.rmax, rtol=args.rtol,
                             dr_out=args.dr_out)
    d = _trace_doc(t, True)
    if args.fit:
        d["window_fit"] = t.fit_window(*args.fit)
    _emit({"command": "classn ray", "trace": d}, args)
    _write_csv(list(_trace_rows(t)), args)


def cmd_classn_dichotomy(args):
    R1, R2, q = parse(args.R1), parse(args.R2), parse(args.q)
    rep = classn.dichotomy_report(R1, R2, q, args.epsilon, args.rmax, r0=args.r0)
    sectors = []
    rows = []
    for s in rep.sectors:
        sectors.append({"sector": s.sector, "theta": s.theta, "growth": s.growth, "statuses": s.statuses,
                        "poly_exponents": s.poly_exponents, "flagged": s.flagged, "within_bound": s.within_bound,
                        "traces": [_trace_doc(t) for t in s.traces]})
        for t in s.traces:
            rows.extend(_trace_rows(t))
    _emit({"command": "classn dichotomy", "n2": rep.n2, "bound": rep.bound, "constant_q": rep.constant_q,
           "flagged": rep.flagged, "notes": rep.notes, "sectors": sectors}, args)
    _write_csv(rows, args)


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="expode", description="Exponential polynomials, H-functions and growth checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sectors", help="indicator sectors of exp(p)")
    p.add_argument("--p", required=True)
    _common(p)
    p.set_defaults(func=cmd_sectors)

    h = sub.add_parser("hfun", help="H(z) evaluation and asymptotics").add_subparsers(dest="action", required=True)
    for name, fn in (("eval", cmd_hfun_eval), ("verify", cmd_hfun_verify)):
        s = h.add_parser(name)
        s.add_argument("--p", required=True)
        s.add_argument("--beta", required=True)
        s.add_argument("--rel-tol", type=float, default=1e-10)
        s.add_argument("--path", choices=("segment", "two_leg_via_circle"), default="segment")
        if name == "eval":
            s.add_argument("--z", type=_complex, action="append", required=True)
        else:
            s.add_argument("--rmax", type=float, default=20.0)
            s.add_argument("--radii", type=_floats)
            s.add_argument("--epsilon", type=float, default=0.1)
            s.add_argument("--rays", type=int, default=3)
        _common(s)
        s.set_defaults(func=fn)

    t = sub.add_parser("tc", help="Tumura-Clunie witnesses").add_subparsers(dest="action", required=True)
    s = t.add_parser("m")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--alpha", required=True)
    _common(s)
    s.set_defaults(func=cmd_tc_m)
    s = t.add_parser("coeffs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    _common(s)
    s.set_defaults(func=cmd_tc_coeffs)
    for name, fn in (("construct", cmd_tc_construct), ("verify", cmd_tc_verify)):
        s = t.add_parser(name)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--alpha", type=_exact, required=True)
        s.add_argument("--b1", required=True)
        s.add_argument("--b2", required=True)
        s.add_argument("--p1", required=True)
        s.add_argument("--p2")
        if name == "verify":
            s.add_argument("--gamma", help="optional lower-order term added to f")
        _common(s)
        s.set_defaults(func=fn)

    b = sub.add_parser("banklaine", help="Bank-Laine witnesses").add_subparsers(dest="action", required=True)
    s = b.add_parser("half")
    for opt in ("--p1", "--kappa", "--gamma", "--b1"):
        s.add_argument(opt, required=True)
    _common(s)
    s.set_defaults(func=cmd_bl_half)
    s = b.add_parser("threequarter")
    s.add_argument("--c", required=True)
    _common(s)
    s.set_defaults(func=cmd_bl_three)
    s = b.add_parser("verify")
    s.add_argument("--A", required=True)
    s.add_argument("--hprime", required=True)
    s.add_argument("--kappa", default="1")
    _common(s)
    s.set_defaults(func=cmd_bl_verify)

    n = sub.add_parser("nev", help="Nevanlinna characteristic").add_subparsers(dest="action", required=True)
    s = n.add_parser("characteristic")
    s.add_argument("--f", required=True)
    s.add_argument("--radii", type=_floats)
    s.add_argument("--rmin", type=float, default=5.0)
    s.add_argument("--rmax", type=float, default=100.0)
    s.add_argument("--count", type=int, default=12)
    s.add_argument("--samples", type=int)
    _common(s)
    s.set_defaults(func=cmd_nev_char)
    s = n.add_parser("steinmetz")
    for opt in ("--b1", "--b2", "--p1", "--p2"):
        s.add_argument(opt, required=True)
    s.add_argument("--r", type=float, default=50.0)
    s.add_argument("--samples", type=int)
    _common(s)
    s.set_defaults(func=cmd_nev_steinmetz)

    c = sub.add_parser("classn", help="ray integration of F' = R1 e^q F + R2").add_subparsers(dest="action",
                                                                                            required=True)
    for name, fn in (("ray", cmd_classn_ray), ("dichotomy", cmd_classn_dichotomy)):
        s = c.add_parser(name)
        s.add_argument("--R1", required=True)
        s.add_argument("--R2", required=True)
        s.add_argument("--q", required=True)
        s.add_argument("--rmax", type=float, default=25.0)
        s.add_argument("--r0", type=float)
        if name == "ray":
            s.add_argument("--theta", type=float, default=0.0)
            s.add_argument("--F0", type=_complex, default=1 + 0j)
            s.add_argument("--rtol", type=float, default=1e-10)
            s.add_argument("--dr-out", type=float, default=0.01)
            s.add_argument("--fit", type=float, nargs=2, metavar=("R_LO", "R_HI"))
        else:
            s.add_argument("--epsilon", type=float, default=0.1)
        _common(s)
        s.set_defaults(func=fn)
    return ap


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--opt -z`` into ``--opt=-z`` so expressions may start with a minus sign."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok.startswith("--") and "=" not in tok and nxt is not None and nxt.startswith("-")
                and not nxt.startswith("--") and nxt != "-h"):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv=None) -> int:
    ap = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2
    try:
        args.func(args)
    except ExpodeError as e:
        payload = {"schema": SCHEMA, "error": {"code": e.code, "type": type(e).__name__, "message": str(e)}}
        print(json.dumps(payload), file=sys.stdout)
        print(f"expode: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except (ValueError, argparse.ArgumentTypeError) as e:
        print(f"expode: usage error: {e}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
