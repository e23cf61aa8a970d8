"""Command-line entry point.

    xxdiscord sweep --preset fig1 --out fig1.csv
    xxdiscord sweep --mode temp_sweep --b1 1 --ratio 1 --grid 0.05:3:60
    xxdiscord sweep --mode field_sweep --t 0.9 --uniform --grid=-2:2:81
    xxdiscord verify --quick

Exit codes: 0 success, 1 verification or I/O failure, 2 usage error.
"""

import argparse
import sys
from dataclasses import replace

from .linalg2q import QUBIT_A, QUBIT_B
from .sweep import FIELD_GRID, FIELD_SWEEP, TEMP_GRID, TEMP_SWEEP, SweepError, SweepSpec, preset, run_sweep, write_csv
from .verify import verify

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

SWEEP_KEYS = ("mode", "j", "ratio", "uniform", "t", "b1", "grid", "side", "out", "preset", "quick", "jobs")


def parse_grid(text):
    try:
        start, stop, count = text.split(":")
        return float(start), float(stop), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like start:stop:count, got {text!r}") from None


def _bool(text):
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def read_config(path):
    """key=value lines; blank lines and lines starting with # are skipped."""
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip().lstrip("-").replace("-", "_")
            if not sep or key not in SWEEP_KEYS:
                raise ValueError(f"{path}:{lineno}: unrecognized config line {line!r}")
            out[key] = value.strip()
    return out


def _config_defaults(raw):
    conv = {
        "j": float,
        "ratio": float,
        "t": float,
        "b1": float,
        "grid": parse_grid,
        "uniform": _bool,
        "quick": _bool,
        "jobs": int,
    }
    return {k: conv.get(k, str)(v) for k, v in raw.items()}


def build_parser(sweep_defaults=None):
    parser = argparse.ArgumentParser(prog="xxdiscord", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="sweep field or temperature and write CSV")
    sw.add_argument("--config", help="key=value file mirroring these flags; flags take precedence")
    sw.add_argument("--preset", help="figure preset fig1..fig13 (fig4a/b, fig5a/b, fig9a/b for single panels)")
    sw.add_argument("--mode", choices=(FIELD_SWEEP, TEMP_SWEEP))
    sw.add_argument("--j", type=float, default=1.0, help="exchange coupling (default 1)")
    sw.add_argument("--ratio", type=float, default=1.0, help="b2 = -ratio * b1 (default 1)")
    sw.add_argument("--uniform", action="store_true", help="b2 = b1 instead of -ratio * b1")
    sw.add_argument("--t", type=float, help="fixed temperature for field sweeps")
    sw.add_argument("--b1", type=float, help="fixed b1 for temperature sweeps")
    sw.add_argument("--grid", type=parse_grid, help="swept coordinate as start:stop:count")
    sw.add_argument("--side", choices=(QUBIT_A, QUBIT_B), default=QUBIT_B, help="measured qubit (default B)")
    sw.add_argument("--out", help="output CSV path (default stdout)")
    sw.add_argument("--quick", action="store_true", help="thin preset grids to about 41 points")
    sw.add_argument("--jobs", type=int, default=1, help="worker processes")
    if sweep_defaults:
        sw.set_defaults(**sweep_defaults)

    ve = sub.add_parser("verify", help="run oracle cross-checks")
    ve.add_argument("--quick", action="store_true", help="reduced sample counts")
    return parser


def parse_args(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep" and args.config:
        # config values become defaults, so explicit flags still win
        try:
            defaults = _config_defaults(read_config(args.config))
        except (OSError, ValueError, argparse.ArgumentTypeError) as exc:
            parser.error(str(exc))
        parser = build_parser(defaults)
        args = parser.parse_args(argv)
    return parser, args


def specs_from_args(args):
    if args.preset:
        return [replace(s, side=args.side) for s in preset(args.preset, args.quick)]
    if args.mode is None:
        raise SweepError("either --preset or --mode is required")
    if args.mode == FIELD_SWEEP:
        if args.t is None:
            raise SweepError("field sweeps need --t")
        spec = SweepSpec(FIELD_SWEEP, args.j, args.ratio, args.uniform, temperature=args.t, grid=args.grid or FIELD_GRID)
    else:
        if args.b1 is None:
            raise SweepError("temperature sweeps need --b1")
        spec = SweepSpec(TEMP_SWEEP, args.j, args.ratio, args.uniform, b1=args.b1, grid=args.grid or TEMP_GRID)
    return [replace(spec, side=args.side).validate()]


def main(argv=None):
    parser, args = parse_args(argv)

    if args.command == "verify":
        ok, _ = verify(quick=args.quick)
        return EXIT_OK if ok else EXIT_FAILURE

    try:
        specs = specs_from_args(args)
    except SweepError as exc:
        parser.error(str(exc))

    try:
        out = open(args.out, "w", newline="") if args.out else sys.stdout
    except OSError as exc:
        print(f"xxdiscord: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    try:
        rows = []
        for spec in specs:
            rows.extend(run_sweep(spec, jobs=max(1, args.jobs)))
        write_csv(rows, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK

if __name__ == "__main__":
    sys.exit(main())
