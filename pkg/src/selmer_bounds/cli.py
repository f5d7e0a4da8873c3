"""Command-line front end.

Output is UTF-8, tab-separated, one record per line, with '#'-prefixed
header and note lines. Every record starts with the columns p, L, mode and
conjectural ('-' where a column does not apply). Exit status is 0 on
success, 2 for bad input and 3 when a computation cannot be carried out.
"""

from __future__ import annotations

import argparse
import configparser
import contextlib
import math
import sys
from fractions import Fraction

from . import __version__, bounds, lattice, localdata, stats
from . import config as cfg
from .arith import is_prime, is_squarefree, valuation
from .curves import CurveParams, Good, enumerate_curves, format_curves, quadratic_twist, reduction_type

EXIT_INPUT = 2
EXIT_COMPUTE = 3

PROVENANCE = "p\tL\tmode\tconjectural"


class InputError(Exception):
    pass


@contextlib.contextmanager
def _reading_input():
    """Reclassify failures while inputs are parsed as input errors."""
    try:
        yield
    except (ValueError, OSError, KeyError, configparser.Error) as exc:
        raise InputError(str(exc)) from exc


def _dec(x: Fraction, digits: int = 6, up: bool = False) -> str:
    s = 10**digits
    n = math.ceil(x * s) if up else math.floor(x * s)
    sign = "-" if n < 0 else ""
    q, r = divmod(abs(n), s)
    return f"{sign}{q}.{r:0{digits}d}"


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _prov(p=None, cutoff=None, mode=None, conjectural=None) -> str:
    def show(v):
        if v is None:
            return "-"
        if isinstance(v, bool):
            return "yes" if v else "no"
        return str(v)

    return "\t".join(show(v) for v in (p, cutoff, mode, conjectural))


# -- option resolution -----------------------------------------------------


def _settings(args) -> dict:
    run = cfg.load_run_defaults(args.config) if getattr(args, "config", None) else {}
    out = {}
    for key in ("p", "X", "ell", "cutoff", "mode", "shards"):
        flag = getattr(args, key, None)
        out[key] = flag if flag is not None else run.get(key.lower())
    out["conjectural"] = bool(getattr(args, "conjectural", False) or run.get("conjectural", False))
    if out["cutoff"] is None:
        out["cutoff"] = bounds.DEFAULT_CUTOFF
    if out["mode"] is None:
        out["mode"] = "refined"
    if out["mode"] not in localdata.MODES:
        raise ValueError(f"mode must be one of {localdata.MODES}")
    if out["shards"] is None:
        out["shards"] = stats.default_shards()
    return out


def _need(s: dict, *keys):
    missing = [k for k in keys if s.get(k) is None]
    if missing:
        raise ValueError("missing required value(s): " + ", ".join("--" + k for k in missing))


def _extension(args):
    if not args.config:
        raise ValueError("--config is required")
    return cfg.load_extension(args.config)


# -- commands ----------------------------------------------------------------

BOUND_HEADER = f"#kind\t{PROVENANCE}\tfields\tlo\thi\tlo_float\thi_float\twidth"


def _emit_bound(res: bounds.BoundResult, mode, out):
    iv = res.interval.outward(15)
    print(BOUND_HEADER, file=out)
    for note in res.notes:
        print(f"# note: {note}", file=out)
    print(
        "\t".join(
            [
                res.name,
                _prov(res.p, res.cutoff, mode, res.conjectural),
                res.fields,
                _rat(iv.lo),
                _rat(iv.hi),
                _dec(iv.lo),
                _dec(iv.hi, up=True),
                f"{float(iv.width):.3e}",
            ]
        ),
        file=out,
    )


def cmd_constants(args, out):
    with _reading_input():
        s = _settings(args)
        _need(s, "p")
        ext = _extension(args)
        req = bounds.BoundRequest(s["p"], ext, s["cutoff"], s["conjectural"])
    iv = bounds.c_constant(req, workers=s["shards"])
    res = bounds.BoundResult(f"C_{s['p']}", iv, s["p"], ext.label(), s["cutoff"], s["conjectural"])
    _emit_bound(res, None, out)


def cmd_bound(args, out):
    with _reading_input():
        s = _settings(args)
        _need(s, "p")
        ext = _extension(args)
        req = bounds.BoundRequest(s["p"], ext, s["cutoff"], s["conjectural"])
        lat = None
        if args.which == "mw":
            if args.lattice is None:
                raise ValueError("bound mw needs --lattice")
            lat = cfg.load_lattice(args.lattice)
    w = s["shards"]
    if args.which == "fixed-space":
        res = bounds.fixed_space_avg_bound(req, w)
    elif args.which == "selmer":
        res = bounds.selmer_avg_bound(req, w)
    elif args.which == "rank":
        res = bounds.rank_avg_bound(req, w)
    elif args.which == "descent":
        res = bounds.descent_failure_avg_bound(req, w)
    else:
        check = lattice.mw_multiplicity_hypothesis_check(lat, s["p"])
        if not check.satisfied:
            raise ValueError(f"lattice hypothesis {check.label()}: (L/pL)^G = 0")
        res = bounds.mw_bound(req, check.dim, w)
    _emit_bound(res, None, out)


def cmd_genus(args, out):
    with _reading_input():
        s = _settings(args)
        _need(s, "p")
        c = CurveParams(args.A, args.B)
        ext = _extension(args)
    rep = localdata.genus_bound(c, ext, s["p"], s["mode"], args.scan_limit)
    _, fields = rep.to_record().split("\t", 1)
    print(f"#A\tB\t{PROVENANCE}\tg0\tg1\ttotal\tterms", file=out)
    print(f"{c.A}\t{c.B}\t{_prov(s['p'], None, rep.mode, None)}\t{fields}", file=out)


def cmd_reduction(args, out):
    with _reading_input():
        c = CurveParams(args.A, args.B)
        if args.ell is None or args.ell < 5 or not is_prime(args.ell):
            raise ValueError("--ell must be a prime >= 5")
    rt = reduction_type(c, args.ell)
    v = 0 if isinstance(rt, Good) else valuation(c.disc, args.ell)
    print(f"#A\tB\tell\t{PROVENANCE}\ttype\tv_disc", file=out)
    print(f"{c.A}\t{c.B}\t{args.ell}\t{_prov()}\t{rt.label()}\t{v}", file=out)


def cmd_twist(args, out):
    with _reading_input():
        c = CurveParams(args.A, args.B)
        if args.D is None or args.D == 0 or not is_squarefree(args.D):
            raise ValueError("--D must be a nonzero squarefree integer")
    t = quadratic_twist(c, args.D)
    print(f"#A\tB\tD\t{PROVENANCE}\tA_twist\tB_twist", file=out)
    print(f"{c.A}\t{c.B}\t{args.D}\t{_prov()}\t{t.A}\t{t.B}", file=out)


def cmd_lattice(args, out):
    with _reading_input():
        s = _settings(args)
        _need(s, "p")
        if not args.lattice:
            raise ValueError("--lattice is required")
        L = cfg.load_lattice(args.lattice)
        p = s["p"]
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
    fixed = lattice.fixed_dim_mod_p(L, p)
    rat = lattice.rational_fixed_rank(L)
    check = lattice.mw_multiplicity_hypothesis_check(L, p)
    print(f"#rank\tgroup_order\t{PROVENANCE}\tfixed_dim_mod_p\trational_fixed_rank\th1_p_torsion\thypothesis", file=out)
    print(
        f"{L.rank}\t{len(L.group())}\t{_prov(p)}\t{fixed}\t{rat}\t{fixed - rat}\t{check.label()}",
        file=out,
    )


def cmd_census(args, out):
    with _reading_input():
        s = _settings(args)
        _need(s, "X")
        if s["X"] < 1:
            raise ValueError("X must be positive")
        if args.which == "density":
            _need(s, "ell")
        if args.which == "genus-avg":
            _need(s, "p")
            ext = _extension(args)
    X, shards = s["X"], s["shards"]
    if args.which == "count":
        rep, prov = stats.count_curves(X, shards), _prov()
    elif args.which == "density":
        rep, prov = stats.bad_not_i1_fraction(s["ell"], X, shards), _prov()
    elif args.which == "torsion":
        rep, prov = stats.two_torsion_fraction(X, shards), _prov()
    else:
        rep = stats.avg_genus_bound_empirical(s["p"], ext, X, s["mode"], shards, s["cutoff"])
        prov = _prov(s["p"], s["cutoff"], s["mode"], True)
    print(f"#{PROVENANCE}\t{stats.HEADER.lstrip('#')}", file=out)
    print(f"{prov}\t{rep.to_line()}", file=out)


def cmd_enumerate(args, out):
    with _reading_input():
        s = _settings(args)
        _need(s, "X")
    print("#A\tB", file=out)
    for line in format_curves(enumerate_curves(s["X"])):
        print(line, file=out)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selmer-bounds",
        description="Rigorous average Selmer-rank bounds and curve-family census tools.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="field/extension description file")
    common.add_argument("--p", type=int, help="the prime p")
    common.add_argument("--cutoff", type=int, help="prime-sum cutoff L (default 10^6)")
    common.add_argument("--conjectural", action="store_true", help="allow primes p > 5")
    common.add_argument("--shards", type=int, help="worker processes (default: CPU count)")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("constants", parents=[common], help="enclosure of C_p(K/F)")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("bound", parents=[common], help="average-bound composers")
    p.add_argument("which", choices=["fixed-space", "selmer", "rank", "descent", "mw"])
    p.add_argument("--lattice", metavar="PATH", help="lattice description (for mw)")
    p.set_defaults(func=cmd_bound)

    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--A", type=int, required=True)
    curve.add_argument("--B", type=int, required=True)

    p = sub.add_parser("genus", parents=[common, curve], help="genus-theory bound for one curve")
    p.add_argument("--mode", choices=localdata.MODES)
    p.add_argument("--scan-limit", type=int, help="refuse bad primes above this bound")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("reduction", parents=[curve], help="reduction type at ell >= 5")
    p.add_argument("--ell", type=int)
    p.set_defaults(func=cmd_reduction)

    p = sub.add_parser("twist", parents=[curve], help="normalized quadratic twist")
    p.add_argument("--D", type=int)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("lattice", parents=[common], help="fixed spaces and H^1[p] of a lattice")
    p.add_argument("--lattice", metavar="PATH")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("census", parents=[common], help="enumeration experiments at height X")
    p.add_argument("which", choices=["count", "density", "genus-avg", "torsion"])
    p.add_argument("--X", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--mode", choices=localdata.MODES)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("enumerate", parents=[common], help="list the family at height X")
    p.add_argument("--X", type=int)
    p.set_defaults(func=cmd_enumerate)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_COMPUTE
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
