"""
Command-line interface.

Subcommands:
  list         registered nodes
  compute      one measure at one point
  scan         one measure over a t or n grid (CSV)
  figure       dataset behind figure 1, 2 or 3 (CSV)
  verify       identity, bound and characterization checks (JSON)
  reconstruct  past extropy rebuilt from the reversed failure rate (CSV)

Every measure is looked up in NODE_CLASS_MAPPINGS and run through
``getattr(node, node.FUNCTION)``; no numerics live here. Data goes to
stdout, diagnostics to stderr.

Exit codes: 0 ok, 1 verification failed, 2 parse error, 3 domain error,
4 divergent integral or tolerance not reached.
"""

import argparse
import json
import logging
import sys

import pandas as pd

from . import NODE_CLASS_MAPPINGS, NODE_DISPLAY_NAME_MAPPINGS
from .nodes.errors import ExtropyError, SpecParseError
from .nodes.grids import Axis, parse_range, scan
from .nodes.quadrature import QuadratureConfig
from .nodes.settings import CSV_FLOAT_FORMAT, EvaluationContext

log = logging.getLogger("extropy-nodes")

_ARG_TYPES = {"FLOAT": float, "INT": int}


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    common.add_argument("--workers", type=int, default=1, help="Threads for grid evaluation (default: 1)")
    common.add_argument(
        "--force-quadrature", action="store_true", help="Never use closed forms, always integrate"
    )
    for name, (kind, options) in QuadratureConfig.INPUT_TYPES()["optional"].items():
        common.add_argument(
            options["flag"],
            dest=name,
            type=_ARG_TYPES[kind],
            default=options["default"],
            help=f"{options['tooltip']} (default: {options['default']:g})",
        )
    return common


def create_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="extropy-nodes",
        description="Extropy, past extropy and order-statistic extropy of lifetime distributions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Distributions: exp:λ  unif:b  power:α  pareto:θ,x0  weibull2:α,λ  table:<path to x,F csv>
Ranges:        start:stop:count, both ends included

Examples:
  extropy-nodes compute past-extropy exp:1 --t 1
  extropy-nodes scan past-extropy unif:1 --t 0.1:0.9:9
  extropy-nodes scan past-extropy-max weibull2:2,1 --t 0.5 --n 1:10:10
  extropy-nodes figure 3
  extropy-nodes verify exp:1 weibull2:2,1 --against exp:2
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    subparsers.add_parser("list", parents=[common], help="List registered nodes")

    cmd_compute = subparsers.add_parser("compute", parents=[common], help="Evaluate one measure")
    cmd_compute.add_argument("measure")
    cmd_compute.add_argument("distribution")
    cmd_compute.add_argument("--t", type=float, help="Inspection time")
    cmd_compute.add_argument("--n", type=int, help="Sample size")

    cmd_scan = subparsers.add_parser("scan", parents=[common], help="Evaluate a measure over a grid")
    cmd_scan.add_argument("measure")
    cmd_scan.add_argument("distribution")
    cmd_scan.add_argument("--t", help="Range start:stop:count, or a fixed time when scanning n")
    cmd_scan.add_argument("--n", help="Range start:stop:count, or a fixed sample size when scanning t")

    cmd_figure = subparsers.add_parser("figure", parents=[common], help="Figure dataset as CSV")
    cmd_figure.add_argument("which", choices=["1", "2", "3"])

    cmd_verify = subparsers.add_parser("verify", parents=[common], help="Run the verification suite")
    cmd_verify.add_argument("distributions", nargs="+")
    cmd_verify.add_argument("--against", help="Characterize every law against this one")
    cmd_verify.add_argument("--report", choices=["json"], default="json")

    cmd_reconstruct = subparsers.add_parser(
        "reconstruct", parents=[common], help="Rebuild past extropy from the reversed failure rate"
    )
    cmd_reconstruct.add_argument("distribution")
    cmd_reconstruct.add_argument("--t", required=True, help="Range start:stop:count")

    return parser


# -- registry plumbing -----------------------------------------------------


def _node(name, return_type=None):
    cls = NODE_CLASS_MAPPINGS.get(name)
    if cls is None or (return_type is not None and cls.RETURN_TYPES != (return_type,)):
        known = ", ".join(k for k, c in NODE_CLASS_MAPPINGS.items() if c.RETURN_TYPES == (return_type,))
        raise SpecParseError(f"unknown measure '{name}' (expected one of {known})", token=name)
    return cls()


def _run(node, name, **available):
    """Call the node with the inputs it declares; missing required ones are a parse error."""
    declared = node.INPUT_TYPES()
    kwargs = {}
    for key in declared.get("required", {}):
        if available.get(key) is None:
            raise SpecParseError(f"'{name}' needs --{key}", token=key)
        kwargs[key] = available[key]
    for key in declared.get("optional", {}):
        if available.get(key) is not None:
            kwargs[key] = available[key]
    return getattr(node, node.FUNCTION)(**kwargs)


def _distribution(spec):
    node = NODE_CLASS_MAPPINGS["distribution"]()
    return getattr(node, node.FUNCTION)(spec)[0]


def _context(args):
    quadrature = QuadratureConfig(args.rel_tol, args.abs_tol, args.max_subdivisions)
    return EvaluationContext(quadrature, args.force_quadrature, args.workers)


def _emit(frame):
    frame.to_csv(sys.stdout, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


# -- commands --------------------------------------------------------------


def cmd_list(args, ctx):
    rows = []
    for name, cls in NODE_CLASS_MAPPINGS.items():
        rows.append(
            {
                "name": name,
                "display_name": NODE_DISPLAY_NAME_MAPPINGS.get(name, name),
                "category": cls.CATEGORY,
                "inputs": " ".join(cls.INPUT_TYPES().get("required", {})),
            }
        )
    _emit(pd.DataFrame(rows, columns=["name", "display_name", "category", "inputs"]))
    return 0


def cmd_compute(args, ctx):
    node = _node(args.measure, "MEASURE")
    distribution = _distribution(args.distribution)
    (result,) = _run(node, args.measure, distribution=distribution, t=args.t, n=args.n, context=ctx)
    frame = pd.DataFrame(
        [
            {
                "measure": args.measure,
                "value": result.value,
                "method": result.method.value,
                "error_estimate": result.error_estimate,
            }
        ]
    )
    _emit(frame)
    return 0


def _scan_axis(args):
    t_range = args.t is not None and ":" in args.t
    n_range = args.n is not None and ":" in args.n
    if t_range == n_range:
        raise SpecParseError("scan needs exactly one of --t or --n as start:stop:count", token=args.t or args.n or "")
    return Axis.T if t_range else Axis.N


def _scalar(text, kind, flag):
    if text is None:
        return None
    try:
        return kind(text)
    except ValueError:
        raise SpecParseError(f"{flag} value '{text}' is not a {kind.__name__}", token=text) from None


def cmd_scan(args, ctx):
    node = _node(args.measure, "MEASURE")
    distribution = _distribution(args.distribution)
    axis = _scan_axis(args)
    if axis is Axis.T:
        points = parse_range(args.t)
        fixed_n = _scalar(args.n, int, "--n")

        def evaluate(t):
            return _run(node, args.measure, distribution=distribution, t=t, n=fixed_n, context=ctx)[0]

    else:
        points = parse_range(args.n, integer=True)
        fixed_t = _scalar(args.t, float, "--t")

        def evaluate(n):
            return _run(node, args.measure, distribution=distribution, t=fixed_t, n=n, context=ctx)[0]

    declared = node.INPUT_TYPES()["required"]
    if axis.value not in declared:
        raise SpecParseError(f"'{args.measure}' does not depend on {axis.value}", token=axis.value)
    log.info(f"scan {args.measure} {distribution.label} over {len(points)} {axis.value} points")
    _emit(scan(evaluate, points, axis, ctx.workers).to_frame())
    return 0


def cmd_figure(args, ctx):
    node = NODE_CLASS_MAPPINGS["figure"]()
    (frame,) = _run(node, "figure", which=args.which, context=ctx)
    _emit(frame)
    return 0


def cmd_verify(args, ctx):
    distributions = [_distribution(spec) for spec in args.distributions]
    against = _distribution(args.against) if args.against else None
    node = NODE_CLASS_MAPPINGS["verify"]()
    report, passed = _run(node, "verify", distributions=distributions, against=against, context=ctx)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if passed else 1


def cmd_reconstruct(args, ctx):
    distribution = _distribution(args.distribution)
    node = NODE_CLASS_MAPPINGS["reconstruct"]()
    (frame,) = _run(node, "reconstruct", distribution=distribution, t_points=parse_range(args.t), context=ctx)
    _emit(frame)
    return 0


COMMANDS = {
    "list": cmd_list,
    "compute": cmd_compute,
    "scan": cmd_scan,
    "figure": cmd_figure,
    "verify": cmd_verify,
    "reconstruct": cmd_reconstruct,
}


def main(argv=None):
    args = create_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(name)s: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    log.setLevel(logging.DEBUG if args.verbose else logging.WARNING)
    try:
        ctx = _context(args)
        log.info(f"{args.command} with {ctx}")
        return COMMANDS[args.command](args, ctx)
    except ExtropyError as e:
        log.error(f"{type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
