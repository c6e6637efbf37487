"""Command-line entry point ``logimg``.

Exit codes: 0 success, 1 failed verification, 2 bad arguments, 3 I/O
failure, 4 no enhancement parameters (singular system or zero mean norm).
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import List, Optional

from .enhance import AffineParams, EnhancementError, apply_affine, enhance_auto
from .fileio import ImageFormatError, format_for_path, load_image, save_image
from .logspace import ColorVec
from .report import dumps_report, histogram_csv, stats_report
from .verify import DEFAULT_TOL, run_all
from .reference import PARAM_TOL

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NO_PARAMS = 4


class _IOFailure(Exception):
    pass


def _fail(msg: str, code: int) -> int:
    print(f"logimg: error: {msg}", file=sys.stderr)
    return code


def _load(path: str):
    try:
        return load_image(path)
    except (OSError, ImageFormatError) as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc


def _write_text(dest: str, text: str) -> None:
    if dest == "-":
        sys.stdout.write(text)
        return
    try:
        Path(dest).write_text(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {dest}: {exc}") from exc


def _save(img, path: str) -> None:
    try:
        save_image(img, path)
    except (OSError, ImageFormatError) as exc:
        raise _IOFailure(f"cannot write {path}: {exc}") from exc


def _parse_color(text: str) -> ColorVec:
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected r,g,b reals, got {text!r}")
    if len(parts) != 3 or not all(math.isfinite(x) and -1.0 < x < 1.0 for x in parts):
        raise argparse.ArgumentTypeError(f"expected three values inside (-1, 1), got {text!r}")
    return ColorVec(*parts)


def _finite(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def _algo(text: str) -> str:
    if text.upper() not in ("A", "B"):
        raise argparse.ArgumentTypeError("algorithm must be A or B")
    return text.upper()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="logimg", description="Logarithmic color image enhancement.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enhance", help="enhance an image")
    p.add_argument("--algo", type=_algo, help="derive parameters with algorithm A or B")
    p.add_argument("--alpha", type=_finite, help="manual alpha")
    p.add_argument("--beta", type=_finite, help="manual beta")
    p.add_argument("--k", type=_parse_color, help="manual translation color r,g,b in (-1, 1)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--json", help="write the statistics report here ('-' for stdout)")
    p.add_argument("--workers", type=int, default=1, help="threads for the pixel transform")

    p = sub.add_parser("stats", help="print statistics and both parameter sets as JSON")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--json", default="-", help="output path ('-' for stdout, the default)")

    p = sub.add_parser("report", help="write before/after channel histograms as CSV")
    p.add_argument("--algo", type=_algo, required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run the built-in property and regression checks")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="algebra tolerance")
    p.add_argument("--param-tol", type=float, default=PARAM_TOL, help="published parameter tolerance")
    return parser


def cmd_enhance(args, parser) -> int:
    manual = [args.alpha, args.beta, args.k]
    if args.algo is not None and any(x is not None for x in manual):
        parser.error("--algo cannot be combined with --alpha/--beta/--k")
    if args.algo is None and any(x is None for x in manual):
        parser.error("give --algo, or all of --alpha, --beta and --k")
    try:
        format_for_path(args.out)
    except ImageFormatError as exc:
        parser.error(str(exc))
    img = _load(args.input)
    if args.algo is not None:
        out, _, stats = enhance_auto(img, args.algo, workers=args.workers)
    else:
        out = apply_affine(img, AffineParams(args.alpha, args.beta, args.k), workers=args.workers)
        stats = None
    _save(out, args.out)
    if args.json:
        _write_text(args.json, dumps_report(stats_report(img, stats)))
    return EXIT_OK


def cmd_stats(args, parser) -> int:
    img = _load(args.input)
    _write_text(args.json, dumps_report(stats_report(img)))
    return EXIT_OK


def cmd_report(args, parser) -> int:
    img = _load(args.input)
    out, _, _ = enhance_auto(img, args.algo)
    _write_text(args.out, histogram_csv(img, out))
    return EXIT_OK


def cmd_verify(args, parser) -> int:
    if args.samples < 1:
        parser.error("--samples must be positive")
    ok = run_all(args.samples, args.seed, args.tol, args.param_tol)
    print("verify: all checks passed" if ok else "verify: FAILED")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


COMMANDS = {"enhance": cmd_enhance, "stats": cmd_stats, "report": cmd_report, "verify": cmd_verify}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except _IOFailure as exc:
        return _fail(str(exc), EXIT_IO)
    except EnhancementError as exc:
        return _fail(str(exc), EXIT_NO_PARAMS)


if __name__ == "__main__":
    sys.exit(main())
