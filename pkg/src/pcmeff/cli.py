"""Command-line client for the efficiency toolkit.

Thin layer over the same request models and report builder the HTTP
service uses, so ``--json`` output is byte-identical to the service body.
Exit codes: 0 success / efficient verdict, 2 inefficient verdict
delivered, 1 error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import PcmError
from .matrix import parse_matrix, _parse_entry
from .randomlab import (
    DEFAULT_SIGMA,
    MODES,
    SAATY_DISCRETE,
    GeneratorSpec,
    run_experiment,
    summary_to_json,
    write_trials_csv,
)
from .report import (
    CUSTOM,
    EIGENVECTOR,
    GEOMETRIC_MEAN,
    AnalysisRequest,
    AnalysisOptions,
    MatrixPayload,
    matrix_from_payload,
    resolve_weights,
    run_analysis,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INEFFICIENT = 2

_METHODS = (EIGENVECTOR, GEOMETRIC_MEAN, CUSTOM)


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 on usage errors (2 is a verdict)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _fmt(x: float, precision: int) -> str:
    return f"{x:.{precision}g}"


def _fmt_vec(values, precision: int) -> str:
    return "[" + ", ".join(_fmt(v, precision) for v in values) + "]"


def _load_matrix_payload(path: str, fmt: str | None) -> MatrixPayload:
    text = Path(path).read_text()
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "csv"
    m = parse_matrix(text, fmt)  # validate before shipping entries onward
    return MatrixPayload(n=m.n, entries=[[float(x) for x in row]
                                         for row in m.entries])


def _load_weights_file(path: str) -> list[float]:
    tokens = Path(path).read_text().replace(",", " ").split()
    return [_parse_entry(t) for t in tokens]


def _build_request(args) -> AnalysisRequest:
    payload = _load_matrix_payload(args.matrix, args.format)
    method = args.method
    custom = None
    if getattr(args, "weights_file", None):
        method = CUSTOM
        custom = _load_weights_file(args.weights_file)
    options = AnalysisOptions()
    if args.tau_eq is not None:
        options.tau_eq = args.tau_eq
    if args.eps_opt is not None:
        options.eps_opt = args.eps_opt
    return AnalysisRequest(
        matrix=payload, method=method, custom_weights=custom, options=options
    )


def _add_matrix_args(p: argparse.ArgumentParser, with_weights: bool = True):
    p.add_argument("matrix", help="matrix file (CSV rows or JSON object)")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="input format (default: by file extension)")
    p.add_argument("--method", choices=_METHODS, default=EIGENVECTOR)
    if with_weights:
        p.add_argument("--weights", dest="weights_file", default=None,
                       help="file with a custom weight vector "
                            "(overrides --method)")
    p.add_argument("--tau-eq", type=float, default=None,
                   help="tie-detection tolerance override")
    p.add_argument("--eps-opt", type=float, default=None,
                   help="LP optimum verdict tolerance override")
    p.add_argument("--precision", type=int, default=6,
                   help="significant digits in printed numbers (default 6)")
    p.add_argument("--json", action="store_true",
                   help="print the full report JSON instead of text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pcmeff",
                     description="Efficiency analysis of weight vectors for "
                                 "pairwise comparison matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", parents=[], help="derive a weight vector")
    _add_matrix_args(p, with_weights=False)

    p = sub.add_parser("efficiency", help="test Pareto efficiency")
    _add_matrix_args(p)

    p = sub.add_parser("weak-efficiency", help="test weak efficiency")
    _add_matrix_args(p)

    p = sub.add_parser("dominate", help="print a dominating weight vector")
    _add_matrix_args(p)

    p = sub.add_parser("experiment", help="random-matrix inefficiency census")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default=SAATY_DISCRETE)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA)
    p.add_argument("--csv", default=None, help="write per-trial rows here")

    p = sub.add_parser("serve", help="run the HTTP JSON service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui-dir", default=None,
                   help="also serve this directory (the built web UI) at /")

    return parser


def _cmd_weights(args) -> int:
    payload = _load_matrix_payload(args.matrix, args.format)
    m = matrix_from_payload(payload)
    w, lam = resolve_weights(m, args.method, None)
    if args.json:
        from .report import WeightsResponse

        model = WeightsResponse(n=m.n, method=args.method,
                                weights=[float(x) for x in w.values],
                                lambda_max=lam)
        print(model.model_dump_json())
        return EXIT_OK
    print(_fmt_vec(w.values, args.precision))
    if lam is not None:
        print(f"lambda_max={_fmt(lam, args.precision)}")
    return EXIT_OK


def _cmd_efficiency(args) -> int:
    model = run_analysis(_build_request(args))
    if args.json:
        print(model.to_json())
        return EXIT_OK if model.verdict == "efficient" else EXIT_INEFFICIENT
    if model.verdict == "efficient":
        print("EFFICIENT")
        return EXIT_OK
    print(f"INEFFICIENT, lp_optimum={_fmt(model.lp_optimum, args.precision)}, "
          f"dominator={_fmt_vec(model.dominator, args.precision)}")
    return EXIT_INEFFICIENT


def _cmd_weak(args) -> int:
    model = run_analysis(_build_request(args))
    if args.json:
        print(model.to_json())
        return EXIT_OK if model.weak_verdict == "weakly_efficient" \
            else EXIT_INEFFICIENT
    if model.weak_verdict == "weakly_efficient":
        print("WEAKLY EFFICIENT")
        return EXIT_OK
    print("STRONGLY INEFFICIENT, "
          f"weak_lp_optimum={_fmt(model.weak_lp_optimum, args.precision)}, "
          f"dominator={_fmt_vec(model.dominator, args.precision)}")
    return EXIT_INEFFICIENT


def _cmd_dominate(args) -> int:
    model = run_analysis(_build_request(args))
    if args.json:
        print(model.to_json())
        return EXIT_OK if model.dominator is None else EXIT_INEFFICIENT
    if model.dominator is None:
        print("EFFICIENT, no dominating vector exists")
        return EXIT_OK
    print(_fmt_vec(model.dominator, args.precision))
    return EXIT_INEFFICIENT


def _cmd_experiment(args) -> int:
    spec = GeneratorSpec(n=args.n, mode=args.mode, sigma=args.sigma,
                         seed=args.seed)
    summary = run_experiment(spec, args.trials)
    if args.csv:
        write_trials_csv(summary, args.csv)
    print(summary_to_json(summary))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    if args.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=args.ui_dir, html=True),
                  name="ui")
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "weights": _cmd_weights,
    "efficiency": _cmd_efficiency,
    "weak-efficiency": _cmd_weak,
    "dominate": _cmd_dominate,
    "experiment": _cmd_experiment,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (OSError, PcmError) as exc:
        print(f"pcmeff: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
