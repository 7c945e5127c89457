"""Command-line entry point: embed, sweep, and serve.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure.
Outputs are written to a temp file and renamed, so failed runs never
leave partial artifacts. BIFOLD_THREADS caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import dataset as ds
from .dissimilarity import EstimatorKind
from .embedding import EmbeddingConfig, embed, sweep
from .errors import BifoldError, DataError, NumericError, PreconditionError
from .joint import ScalingParams, default_params
from .render import PlotSpec, edges_from_dataset, to_coordinates_csv, to_coordinates_json, to_svg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

_METHODS = [k.value for k in EstimatorKind]


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="dataset file (CSV or JSON)")
    p.add_argument("--format", choices=["auto", "csv", "json"], default="auto")
    p.add_argument("--method", choices=_METHODS, default="bernoulli-uniform")
    p.add_argument("--alpha-x", type=float, default=None, help="within-row scale (default per method)")
    p.add_argument("--alpha-y", type=float, default=None, help="within-column scale")
    p.add_argument("--alpha-xy", type=float, default=None, help="cross-class scale")
    p.add_argument("--beta", type=float, default=None, help="cross-class shift (default 0)")
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--rel-tol", type=float, default=1e-6)
    p.add_argument("--restarts", type=int, default=0)
    p.add_argument(
        "--paper-literal-membership-weights",
        action="store_true",
        help="use cross-class weight 1-b instead of b for the membership method",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bifold",
        description="Joint embedding of bipartite binary datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser("embed", help="embed a dataset and write coordinates")
    _add_common_flags(p_embed)
    p_embed.add_argument("--dim", type=int, default=2)
    p_embed.add_argument("--json", dest="out_json", default=None, help="coordinates JSON output path")
    p_embed.add_argument("--csv", dest="out_csv", default=None, help="coordinates CSV output path")
    p_embed.add_argument("--svg", dest="out_svg", default=None, help="scatter plot SVG output path")
    p_embed.add_argument("--edges", action="store_true", help="draw relation edges in the SVG")
    p_embed.add_argument("--labels", action="store_true", help="draw object labels in the SVG")

    p_sweep = sub.add_parser("sweep", help="stress as a function of embedding dimension")
    _add_common_flags(p_sweep)
    p_sweep.add_argument("--dims", default="1:6", help="a:b inclusive range or a single integer")
    p_sweep.add_argument("--json", dest="out_json", default=None, help="sweep JSON output path")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--datasets", default="data", help="dataset directory")
    return parser


def _parse_dims(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            dims = list(range(int(lo), int(hi) + 1))
        else:
            dims = [int(text)]
    except ValueError:
        raise DataError(f"bad dims {text!r}; expected a:b or an integer", code="BAD_PARAM")
    if not dims or any(d < 1 for d in dims):
        raise DataError(f"dims must be >= 1, got {text!r}", code="BAD_PARAM")
    return dims


def _resolve_params(args, method: EstimatorKind, m: int, n: int) -> ScalingParams:
    base = default_params(method, m, n)
    return ScalingParams(
        alpha_x=args.alpha_x if args.alpha_x is not None else base.alpha_x,
        alpha_y=args.alpha_y if args.alpha_y is not None else base.alpha_y,
        alpha_xy=args.alpha_xy if args.alpha_xy is not None else base.alpha_xy,
        beta=args.beta if args.beta is not None else base.beta,
    )


def _write_atomic(path: str, content: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(content)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cmd_embed(args) -> int:
    data = ds.load(args.input, args.format)
    method = EstimatorKind(args.method)
    params = _resolve_params(args, method, data.m, data.n)
    cfg = EmbeddingConfig(
        dim=args.dim, max_iter=args.max_iter, rel_tol=args.rel_tol, restarts=args.restarts
    )
    result = embed(
        data, method, params, cfg,
        paper_literal_membership_weights=args.paper_literal_membership_weights,
    )
    coords_json = to_coordinates_json(result, data, method, params)
    if args.out_json:
        _write_atomic(args.out_json, coords_json)
    if args.out_csv:
        _write_atomic(args.out_csv, to_coordinates_csv(result, data))
    if args.out_svg:
        spec = PlotSpec(
            edges=edges_from_dataset(data) if args.edges else (),
            show_labels=args.labels,
        )
        _write_atomic(args.out_svg, to_svg(result, data, spec))
    if not (args.out_json or args.out_csv or args.out_svg):
        print(coords_json)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    data = ds.load(args.input, args.format)
    method = EstimatorKind(args.method)
    params = _resolve_params(args, method, data.m, data.n)
    cfg = EmbeddingConfig(
        max_iter=args.max_iter, rel_tol=args.rel_tol, restarts=args.restarts
    )
    dims = _parse_dims(args.dims)
    result = sweep(
        data, method, params, cfg, dims,
        paper_literal_membership_weights=args.paper_literal_membership_weights,
    )
    doc = json.dumps(
        {
            "name": data.name,
            "method": method.value,
            "dims": list(result.dims),
            "stresses": list(result.stresses),
            "normalized_stresses": list(result.normalized_stresses),
        },
        indent=2,
    )
    if args.out_json:
        _write_atomic(args.out_json, doc)
    else:
        print(doc)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(args.datasets)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "embed":
            return _cmd_embed(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_serve(args)
    except NumericError as e:
        print(json.dumps({"error": e.code, "stage": args.command, "message": str(e)}), file=sys.stderr)
        return EXIT_NUMERIC
    except BifoldError as e:
        print(json.dumps({"error": e.code, "stage": args.command, "message": str(e)}), file=sys.stderr)
        return EXIT_DATA
    except OSError as e:
        print(json.dumps({"error": "IO_ERROR", "stage": args.command, "message": str(e)}), file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
