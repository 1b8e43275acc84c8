"""Command line front end. Every number leaves as a decimal string.

Exit status: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from math import comb

from . import automata, holonomy, roth, series, valuation
from .core.rings import rat_from_str
from .errors import DomainError, InvariantViolation, UsageError
from .report import jsonable
from .verify import verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageExit(Exception):
    def __init__(self, message, usage=""):
        super().__init__(message)
        self.usage = usage


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageExit(message, self.format_usage())


def _common(p):
    p.add_argument("--output", choices=("json", "csv"), default=argparse.SUPPRESS)
    p.add_argument("--threads", type=int, default=argparse.SUPPRESS)


def _rat(text):
    try:
        return rat_from_str(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> Parser:
    top = Parser(prog="valseries", description=__doc__.splitlines()[0])
    top.add_argument("--output", choices=("json", "csv"), default=None)
    top.add_argument("--threads", type=int, default=1)
    sub = top.add_subparsers(dest="cmd", required=True)

    val = sub.add_parser("val").add_subparsers(dest="sub", required=True)
    p = val.add_parser("nu")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=[m.value for m in valuation.ValuationMethod],
                   default="direct")
    _common(p)

    ser = sub.add_parser("series").add_subparsers(dest="sub", required=True)
    for name in ("coeffs", "pfsum", "eval", "twist", "segments"):
        p = ser.add_parser(name)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--k", type=int)
        p.add_argument("--N", type=int, default=64)
        p.add_argument("--x", type=_rat, default=Fraction(1, 2))
        p.add_argument("--n", type=int, default=3, help="number of blocks for eval")
        p.add_argument("--ell", type=int, default=2)
        p.add_argument("--j-max", type=int, default=5)
        _common(p)

    rt = sub.add_parser("roth").add_subparsers(dest="sub", required=True)
    p = rt.add_parser("threshold")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    _common(p)
    p = rt.add_parser("scan")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--delta", type=_rat, default=Fraction(1, 2))
    _common(p)

    gs = sub.add_parser("guess").add_subparsers(dest="sub", required=True)
    for name in ("recurrence", "cfinite", "algebraic", "collision"):
        p = gs.add_parser(name)
        p.add_argument("--q", type=int, default=2)
        p.add_argument("--k", type=int)
        p.add_argument("--r-max", type=int, default=3)
        p.add_argument("--d-max", type=int, default=3)
        p.add_argument("--d", type=int, default=3, help="window length for collision")
        p.add_argument("--p", type=int, default=2)
        p.add_argument("--deg-f", type=int, default=2)
        p.add_argument("--deg-x", type=int, default=2)
        p.add_argument("--n-verify", type=int, default=1024)
        p.add_argument("--prefix-len", type=int, default=2048)
        p.add_argument("--seq", help="comma separated terms; overrides the nu_q sequence")
        p.add_argument("--source", choices=("nu", "fibonacci", "central-binomial"),
                       default="nu")
        _common(p)

    au = sub.add_parser("auto").add_subparsers(dest="sub", required=True)
    p = au.add_parser("build")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--export", choices=("dot", "json"), default="json")
    _common(p)
    p = au.add_parser("run")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p = au.add_parser("pd")
    p.add_argument("--n-max", type=int, required=True)
    _common(p)

    p = sub.add_parser("verify-all")
    p.add_argument("--level", choices=("quick", "desk"), default="quick")
    _common(p)
    return top


# handlers: return (payload, exit_code, csv_rows or None)

def _val(a):
    v = valuation.valuation(a.q, a.n, a.method)
    return {"q": a.q, "n": a.n, "method": a.method, "value": v}, EXIT_OK, None


def _series(a):
    spec = series.SeriesSpec(a.q, a.k)
    if a.sub in ("coeffs", "pfsum"):
        s = series.coeffs(spec, a.N) if a.sub == "coeffs" else series.partial_fraction_sum(spec, a.N)
        payload = {"series": spec.label(), "N": a.N, "coefficients": list(s.coeffs)}
        return payload, EXIT_OK, s.to_csv()
    if a.sub == "eval":
        value, tail = series.eval_partial(spec, a.x, a.n)
        lo, hi = series.enclosure(spec, value, tail)
        return {"series": spec.label(), "x": a.x, "n": a.n, "value": value,
                "tail": tail, "enclosure": [lo, hi]}, EXIT_OK, None
    if a.sub == "twist":
        rep = series.twist_difference_check(a.q, a.ell, a.N)
    else:
        rep = series.positive_segments_check(spec, a.x, a.j_max)
    return rep.to_dict(with_timing=False), EXIT_OK if rep.passed else EXIT_FAIL, None


def _roth(a):
    if a.sub == "threshold":
        return {"a": a.a, "b": a.b, "q_min": roth.q_threshold(a.a, a.b)}, EXIT_OK, None
    res = roth.scan(roth.RothInstance(a.q, a.a, a.b, a.k), a.n_max, a.delta)
    payload = res.to_dict()
    rows = [["n", "A", "B", "error_lo", "error_hi", "bound_rhs", "roth_ok"]]
    rows += [[r["n"], r["A"], r["B"], r["error_lo"], r["error_hi"], r["bound_rhs"],
              r["roth_ok"]] for r in jsonable(payload["rows"])]
    return payload, EXIT_OK, rows


def _sequence(a):
    if a.seq:
        try:
            return [int(t) for t in a.seq.split(",") if t.strip()]
        except ValueError:
            raise UsageError("--seq must be a comma separated list of integers") from None
    L = a.prefix_len
    if a.source == "fibonacci":
        out = [0, 1]
        while len(out) < L:
            out.append(out[-1] + out[-2])
        return out[:L]
    if a.source == "central-binomial":
        return [comb(2 * n, n) for n in range(L)]
    vals = [valuation.nu(a.q, n) for n in range(1, L + 1)]
    return vals if a.k is None else [v % a.k for v in vals]


def _guess(a):
    if a.sub == "collision":
        w = (holonomy.collision_witness(a.q, a.d) if a.k is None
             else holonomy.collision_witness_modk(a.q, a.k, a.d))
        return {"witness": w.to_dict(), "verified": w.verify()}, EXIT_OK, None
    seq = _sequence(a)
    if a.sub == "algebraic":
        # the constant term is 0: nu is taken from n = 1
        full = seq if a.seq else [0] + seq
        rel = holonomy.guess_algebraic_over_fp(a.p, full, a.deg_f, a.deg_x, a.n_verify)
        return {"p": a.p, "box": {"deg_F": a.deg_f, "deg_X": a.deg_x},
                "fit_then_verify_order": a.n_verify, "prefix_len": len(full),
                "found": rel is not None,
                "relation": rel.to_dict() if rel else None,
                "status": "empirical" if rel else "none found in box"}, EXIT_OK, None
    d_max = 0 if a.sub == "cfinite" else a.d_max
    rec = holonomy.guess_recurrence(seq, a.r_max, d_max)
    return {"box": {"r_max": a.r_max, "d_max": d_max}, "prefix_len": len(seq),
            "verified_range": [0, len(seq) - 1],
            "found": rec is not None,
            "recurrence": rec.to_dict() if rec else None,
            "status": "empirical" if rec else "none found in box"}, EXIT_OK, None


def _auto(a):
    if a.sub == "build":
        d = automata.build_valuation_dfao(a.w, a.k)
        if a.minimize:
            d = automata.minimize(d)
        return None, EXIT_OK, automata.export(d, a.export)
    if a.sub == "run":
        d = automata.build_valuation_dfao(a.w, a.k)
        return {"w": a.w, "k": a.k, "n": a.n, "value": automata.run(d, a.n)}, EXIT_OK, None
    seq = automata.period_doubling(a.n_max)
    rows = [["n", "a"]] + [[i + 1, v] for i, v in enumerate(seq)]
    return {"n_max": a.n_max, "sequence": seq}, EXIT_OK, rows


def _verify(a):
    reports = verify_all(a.level, threads=a.threads)
    payload = [r.to_dict() for r in reports]
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    rows = [["check", "verdict", "elapsed_s"]] + [[r.check, r.verdict, f"{r.elapsed:.3f}"]
                                                  for r in reports]
    return payload, code, rows


HANDLERS = {"val": _val, "series": _series, "roth": _roth, "guess": _guess,
            "auto": _auto, "verify-all": _verify}

# commands whose natural output is a table
_CSV_DEFAULT = {("series", "coeffs"), ("series", "pfsum")}


def _emit(payload, extra, fmt, out):
    if isinstance(extra, str):
        out.write(extra)
        return
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if extra is not None:
            w.writerows(jsonable(extra))
        else:
            for k, v in jsonable(payload).items():
                w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
        out.write(buf.getvalue())
        return
    out.write(json.dumps(jsonable(payload), indent=2) + "\n")


def dispatch(argv, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        payload, code, extra = HANDLERS[args.cmd](args)
    except _UsageExit as exc:
        out.write(json.dumps({"error": str(exc), "usage": exc.usage.strip()}) + "\n")
        return EXIT_USAGE
    except (UsageError, DomainError) as exc:
        out.write(json.dumps({"error": str(exc), "kind": type(exc).__name__}) + "\n")
        return EXIT_USAGE
    except InvariantViolation as exc:
        out.write(json.dumps({"error": str(exc), "kind": "InvariantViolation"}) + "\n")
        return EXIT_FAIL
    key = (args.cmd, getattr(args, "sub", None))
    fmt = args.output or ("csv" if key in _CSV_DEFAULT else "json")
    if fmt == "json" and key in _CSV_DEFAULT:
        extra = None
    if fmt == "json" and isinstance(extra, list):
        extra = None
    _emit(payload, extra, fmt, out)
    return code


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
