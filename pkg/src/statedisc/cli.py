"""Command-line interface: ``statedisc {analyze,sweep,invert,random}``.

Exit codes: 0 success, 2 schema/validation failure, 3 numerical failure,
4 capability limit (N above the exact-search cap).
"""

import argparse
import csv
import io
import json
import sys

from . import __version__
from .discriminability import Exact, Fixed, SortedHeuristic, discriminability
from .errors import CapabilityError, NumericalError, ValidationError
from .linalg import CLAMP_TOL, TOL_RANK
from .problem import random_problem, validate_problem
from .serialize import Report, dumps, problem_from_dict, problem_to_dict, rho_from_dict
from .sweep import FAMILIES, SweepSpec, run_sweep
from .transform import associated_pair, inverse_parametrization

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_CAPABILITY = 4


def parse_perm(text, max_exact_n):
    """``exact`` | ``sorted`` | ``fixed:<comma-separated 1-based permutation>``."""
    if text == "exact":
        return Exact(max_n=max_exact_n)
    if text == "sorted":
        return SortedHeuristic()
    if text.startswith("fixed:"):
        try:
            p = tuple(int(x) - 1 for x in text[len("fixed:") :].split(","))
        except ValueError:
            raise ValidationError(f"bad fixed permutation {text!r}") from None
        return Fixed(p)
    raise ValidationError(f"--perm must be exact, sorted or fixed:<list>, got {text!r}")


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read JSON from {path}: {exc}") from exc


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def format_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def analyze_problem(problem, strategy, tol_rank):
    validate_problem(problem, tol_rank).raise_if_failed()
    if isinstance(strategy, Fixed) and sorted(strategy.permutation) != list(range(problem.n)):
        raise ValidationError(
            f"fixed permutation must list 1..{problem.n} exactly once, got "
            f"{[i + 1 for i in strategy.permutation]}"
        )
    result = discriminability(problem, strategy, tol_rank=tol_rank)
    rho = associated_pair(problem, None, tol_rank).rho_t
    return Report.build(problem, rho, result, {"tol_rank": tol_rank, "clamp_tol": CLAMP_TOL})


def _report_csv(report):
    d = report.to_dict()
    rows = [
        ["value", d["value"]],
        ["normalized", d["normalized"]],
        ["argmax_permutation", " ".join(str(i) for i in d["argmax_permutation"])],
        ["strategy", d["strategy"]],
        ["lower_bound", str(d["lower_bound"]).lower()],
    ]
    for k, v in (d["baselines"] or {}).items():
        rows.append([k, v])
    for k, v in d["diagnostics"].items():
        rows.append([k, v])
    return format_csv(["key", "value"], rows)


def cmd_analyze(args, out):
    problem = problem_from_dict(_read_json(args.input))
    report = analyze_problem(problem, parse_perm(args.perm, args.max_exact_n), args.tol_rank)
    out.write(report.dumps() if args.format == "json" else _report_csv(report))


def cmd_sweep(args, out):
    gammas = None
    if args.gammas is not None:
        try:
            gammas = tuple(float(g) for g in args.gammas.split(","))
        except ValueError:
            raise ValidationError(f"bad --gammas list {args.gammas!r}") from None
    spec = SweepSpec.default(
        args.family,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        eta1=args.eta1,
        gammas=gammas,
        alpha=args.alpha,
        phi=args.phi,
    )
    header, rows = run_sweep(spec, tol_rank=args.tol_rank)
    if args.format == "json":
        text = dumps([dict(zip(header, row)) for row in rows])
    else:
        text = format_csv(header, rows)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_invert(args, out):
    rho = rho_from_dict(_read_json(args.input))
    problem = inverse_parametrization(rho, tol_rank=args.tol_rank)
    out.write(dumps(problem_to_dict(problem)))


def cmd_random(args, out):
    problem = random_problem(args.n, args.d if args.d is not None else args.n, args.seed)
    report = analyze_problem(problem, parse_perm(args.perm, args.max_exact_n), args.tol_rank)
    out.write(dumps({"problem": problem_to_dict(problem), "report": report.to_dict()}))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="statedisc",
        description="Discriminability of pure-state discrimination problems via (rho_T, eta_p).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, perm=True):
        p.add_argument("--tol-rank", type=float, default=TOL_RANK,
                       help="absolute threshold on the smallest Gram eigenvalue / pivot")
        if perm:
            p.add_argument("--perm", default="exact",
                           help="exact | sorted | fixed:<1-based comma list> (default exact)")
            p.add_argument("--max-exact-n", type=int, default=8,
                           help="largest N searched exhaustively (default 8)")

    p = sub.add_parser("analyze", help="validate a problem JSON and report D")
    p.add_argument("input", help="problem JSON file, or - for stdin")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="emit figure data over a one-parameter family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--eta1", type=float, help="two_state_gamma: prior of state 1 (default 0.5)")
    p.add_argument("--gammas", help="two_state_eta: comma-separated overlaps (default 0.5,0.75,0.9)")
    p.add_argument("--alpha", type=float, help="three_state_theta: angle alpha (default pi/3)")
    p.add_argument("--phi", type=float, help="three_state_theta: angle phi (default pi/4)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    common(p, perm=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("invert", help="recover a problem from a full-rank density matrix")
    p.add_argument("input", help='JSON with a "rho" field, or - for stdin')
    common(p, perm=False)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("random", help="generate a seeded random problem and analyze it")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, help="ambient dimension (default n)")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except ValidationError as exc:
        for v in exc.violations:
            print(f"error: {v}", file=err)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=err)
        return EXIT_NUMERICAL
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=err)
        return EXIT_CAPABILITY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
