"""Command-line front end.

Every subcommand builds a JSON job (or reads one) and hands it to
:func:`folcalc.jobs.run`; the printed report is that job's result.
Exit codes: 0 match/success, 1 mismatch, 2 input error, 3 inadmissible.
"""

import argparse
import json
import sys

from . import jobs
from .algebra import DEFAULT_ORDER
from .errors import InputError
from .report import SCHEMA_VERSION


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order (default 12)")
    p.add_argument("--phi", help="symmetric polynomial in x1..xk")
    p.add_argument("--branch", help="explicit root choice p/q (theta or gamma0)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for per-point work")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    return p


def _source(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--job", help="JSON job file ('-' for stdin)")
    g.add_argument("--example", help="name of a bundled example job")


def _coeff_pairs(text):
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise InputError(f"coefficient {item!r} must look like exponent:value")
        k, v = item.split(":", 1)
        out[k.strip()] = v.strip()
    return out


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="folcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("run", parents=[common], help="run a JSON job file")
    p.add_argument("file", help="job file or '-'")

    p = sub.add_parser("example", parents=[common], help="run a bundled example job")
    p.add_argument("name")

    sub.add_parser("examples", help="list bundled example jobs")

    p = sub.add_parser("index", parents=[common], help="verify an index theorem")
    p.add_argument("theorem", choices=["affine", "projective", "baumbott"])
    _source(p)

    p = sub.add_parser("geodesic", parents=[common], help="geodesic-field identities")
    p.add_argument("action", choices=["check"])
    _source(p)

    for name in ("distortion", "schwarzian"):
        p = sub.add_parser(name, parents=[common], help=f"{name} of a one-variable series")
        p.add_argument("expr", nargs="?", help="polynomial in the series variable")
        p.add_argument("--var", default="z")
        p.add_argument("--laurent", action="store_true", help="work with Laurent expansions (allows f'(0) = 0)")
        _source(p)

    p = sub.add_parser("angle", parents=[common], help="Fuchsian angle of a one-dimensional structure")
    p.add_argument("kind", choices=["affine", "projective"])
    p.add_argument("--coeffs", help="Laurent coefficients 'k:c,...' (e.g. '-1:-1')")
    p.add_argument("--var", default="z")
    _source(p)

    p = sub.add_parser("riccati", parents=[common], help="projective-to-affine Riccati reduction")
    p.add_argument("--coeffs", help="Laurent coefficients of S, e.g. '-2:-3/2,0:1'")
    p.add_argument("--var", default="z")
    _source(p)

    p = sub.add_parser("normalform", parents=[common], help="normalize a Christoffel symbol")
    p.add_argument("kind", choices=["affine", "projective"])
    p.add_argument("--lambda", dest="lam", help="eigenvalues 'a,b,...'")
    p.add_argument("--vars", help="chart variables 'z1,z2'")
    p.add_argument("--symbol", help="gamma (affine) or rho (projective)")
    _source(p)

    p = sub.add_parser("brjuno", parents=[common], help="small-divisor table")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--max", type=int, default=16, dest="m_max")
    _source(p)

    p = sub.add_parser("chern", parents=[common], help="right-hand sides on a model manifold")
    p.add_argument("--manifold", choices=["projective_space", "curve", "curve_times_p1"])
    p.add_argument("--param", type=int)
    p.add_argument("--c1", help="c1(T_F) in the ring generators")
    _source(p)

    p = sub.add_parser("surface", parents=[common], help="classes for a foliation on C_g x P^1")
    p.add_argument("--genus", type=int)
    p.add_argument("--nv", type=int)
    p.add_argument("--nh", type=int)
    _source(p)

    p = sub.add_parser("signature", parents=[common], help="signature test for a regular foliation")
    p.add_argument("--c1sq")
    p.add_argument("--c2")
    p.add_argument("--c1sq-tf", dest="c1sq_tf")
    _source(p)
    return parser


def _read_job(args):
    if getattr(args, "example", None):
        return jobs.load_example(args.example)
    path = getattr(args, "job", None) or getattr(args, "file", None)
    if path is None:
        return None
    if path == "-":
        return jobs.load_job_text(sys.stdin.read(), "stdin")
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return jobs.load_job_text(text, path)


def _job_from_flags(args):
    cmd = args.cmd
    if cmd == "index":
        raise InputError("index needs --job or --example")
    if cmd == "geodesic":
        raise InputError("geodesic check needs --job or --example")
    if cmd in ("distortion", "schwarzian"):
        if not args.expr:
            raise InputError(f"{cmd} needs an expression or --job")
        return {"command": cmd, "series": args.expr, "var": args.var, "laurent": args.laurent}
    if cmd == "angle":
        if not args.coeffs:
            raise InputError("angle needs --coeffs")
        return {"command": "angle", "kind": args.kind,
                "form": {"var": args.var, "order": args.order, "coeffs": _coeff_pairs(args.coeffs)}}
    if cmd == "riccati":
        if args.coeffs is None:
            raise InputError("riccati needs --coeffs")
        return {"command": "riccati", "S": {"var": args.var, "order": args.order, "coeffs": _coeff_pairs(args.coeffs)}}
    if cmd == "normalform":
        job = {"command": "normalform", "kind": args.kind, "lambda": args.lam, "symbol": args.symbol}
        if args.vars:
            job["vars"] = args.vars
        return {k: v for k, v in job.items() if v is not None}
    if cmd == "brjuno":
        return {k: v for k, v in {"command": "brjuno", "lambda": args.lam, "mu": args.mu,
                                  "m_max": args.m_max}.items() if v is not None}
    if cmd == "chern":
        job = {"command": "chern", "manifold": {"kind": args.manifold, "param": args.param}, "c1TF": args.c1}
        return {k: v for k, v in job.items() if v is not None}
    if cmd == "surface":
        return {k: v for k, v in {"command": "surface", "genus": args.genus, "n_v": args.nv,
                                  "n_h": args.nh}.items() if v is not None}
    if cmd == "signature":
        return {k: v for k, v in {"command": "signature", "c1sq": args.c1sq, "c2": args.c2,
                                  "c1sq_TF": args.c1sq_tf}.items() if v is not None}
    raise InputError(f"unknown command {cmd}")


def _command_name(args):
    if args.cmd == "index":
        return f"index {args.theorem}"
    if args.cmd == "geodesic":
        return "geodesic check"
    return args.cmd


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cmd == "examples":
        print("\n".join(jobs.example_names()))
        return 0
    options = {"order": args.order, "phi": args.phi, "branch": args.branch, "jobs": args.jobs}
    try:
        if args.cmd == "example":
            job = jobs.load_example(args.name)
        else:
            job = _read_job(args)
            if job is None:
                job = _job_from_flags(args)
            elif args.cmd not in ("run",):
                job = dict(job) if isinstance(job, dict) else job
                if isinstance(job, dict):
                    job.setdefault("command", _command_name(args))
        report, code = jobs.run(job, options)
    except InputError as exc:
        report = {"schema_version": SCHEMA_VERSION, "error": {"type": "input", "message": str(exc)}, "exit_code": 2}
        code = 2
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(jobs.render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
