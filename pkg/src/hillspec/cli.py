"""Command-line interface: spectra, band sweeps, theorem checks, asymptotics, comparison.

Exit codes: 0 success (or hypothesis holds), 1 check ran and the hypothesis
fails, 2 configuration or numerical error.
"""

import argparse
import csv
import io
import math
import re
import sys

import numpy as np

from ._validation import TWO_PI, DomainError, lower_branch
from .ambarzumyan import DEFAULT_TOL, Theorem, run_check
from .galerkin import DEFAULT_N_BASIS
from .presets import resolve_potential
from .spectral import (
    Method,
    asymptotic_residuals,
    band_function,
    compute_spectrum,
    count_for_levels,
    label_spectrum,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

THEOREM_NAMES = {
    "classic": Theorem.CLASSIC,
    "yurko1": Theorem.YURKO1,
    "yurko-periodic": Theorem.YURKO_PERIODIC,
    "yurko-antiperiodic": Theorem.YURKO_ANTIPERIODIC,
    "quasi1": None,
    "quasi1a": Theorem.QUASI1A,
    "quasi1b": Theorem.QUASI1B,
    "quasi2": None,
    "quasi2a": Theorem.QUASI2A,
    "quasi2b": Theorem.QUASI2B,
    "neumann-a": Theorem.NEUMANN_A,
    "neumann-b": Theorem.NEUMANN_B,
}

_PI_SUFFIX = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*\*?\s*pi\s*$")


class UsageError(Exception):
    pass


def parse_real(text):
    """A real number, with an optional "pi" suffix meaning multiplication by pi."""
    text = str(text).strip()
    m = _PI_SUFFIX.match(text)
    if m:
        return (float(m.group(1)) if m.group(1) else 1.0) * math.pi
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None


def parse_t_grid(text):
    """``start:stop:step`` (stop exclusive) as a list of t values."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("t-grid must be start:stop:step")
    start, stop, step = (parse_real(p) for p in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("t-grid step must be positive")
    count = int(math.floor((stop - start) / step - 1e-9)) + 1
    return [start + i * step for i in range(max(count, 0))]


def parse_levels(text):
    """``a..b`` inclusive, or a comma-separated list of integers."""
    text = str(text).strip()
    m = re.match(r"^([-+]?\d+)\.\.([-+]?\d+)$", text)
    try:
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise argparse.ArgumentTypeError("levels range must be increasing")
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad levels spec {text!r}") from None


def fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _methods(name):
    if name == "both":
        return [Method.GALERKIN, Method.MONODROMY]
    return [Method(name)]


def _write_csv(args, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    _emit(args, buf.getvalue())


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_t(args):
    if args.t is None:
        raise UsageError("--t is required")
    t = args.t
    if not 0.0 <= t < TWO_PI:
        raise UsageError(f"--t must lie in [0, 2*pi), got {t}")
    return t


def cmd_spectrum(args):
    q = resolve_potential(args.potential)
    t = _require_t(args)
    rows = []
    for method in _methods(args.method):
        eigs = compute_spectrum(q, t, args.count, method, max(args.n_basis, args.count))
        spec = label_spectrum(eigs, t, q.mean(), method)
        rows += [(n, spec[n], method.value) for n in sorted(spec.entries, key=spec.entries.get)]
    _write_csv(args, ["n", "lambda", "method"], rows)
    return EXIT_OK


def cmd_band(args):
    q = resolve_potential(args.potential)
    grid = args.t_grid if args.t_grid is not None else ([args.t] if args.t is not None else None)
    if not grid:
        raise UsageError("band needs --t-grid start:stop:step (or a single --t)")
    for t in grid:
        if not 0.0 <= t < TWO_PI:
            raise UsageError(f"t-grid value {t} outside [0, 2*pi)")
    rows = []
    for method in _methods(args.method):
        rows += [(t, n, lam, method.value) for t, n, lam in band_function(q, grid, args.levels, method, args.n_basis)]
    _write_csv(args, ["t", "n", "lambda", "method"], rows)
    return EXIT_OK


def _resolve_theorem(name, t):
    theorem = THEOREM_NAMES[name]
    if theorem is None:
        if t is None:
            raise UsageError(f"--theorem {name} needs --t")
        low = lower_branch(t)
        if name == "quasi1":
            theorem = Theorem.QUASI1A if low else Theorem.QUASI1B
        else:
            theorem = Theorem.QUASI2A if low else Theorem.QUASI2B
    return theorem


def cmd_check(args):
    if args.method == "both":
        raise UsageError("check runs one method; choose galerkin or monodromy")
    if args.theorem is None:
        raise UsageError("check needs --theorem")
    q = resolve_potential(args.potential)
    t = _require_t(args) if args.t is not None else None
    theorem = _resolve_theorem(args.theorem, t)
    verdict = run_check(
        q,
        theorem,
        t=t,
        method=Method(args.method),
        n0=args.n0,
        n_max=args.n_max,
        alpha=args.alpha,
        beta=args.beta,
        tol=args.tol,
        n_basis=args.n_basis,
    )
    text = verdict.to_json() + "\n"
    _emit(args, text)
    return EXIT_OK if verdict.hypothesis_holds else EXIT_FAILED


def cmd_asymptotics(args):
    if args.method == "both":
        raise UsageError("asymptotics runs one method; choose galerkin or monodromy")
    q = resolve_potential(args.potential)
    t = _require_t(args)
    count = count_for_levels(args.n_max)
    method = Method(args.method)
    eigs = compute_spectrum(q, t, count, method, max(args.n_basis, count))
    spec = label_spectrum(eigs, t, q.mean(), method)
    report = asymptotic_residuals(spec, q.mean(), args.n0)
    rows = [r for r in report.rows() if abs(r[0]) <= args.n_max]
    _write_csv(args, ["n", "lambda", "target", "residual", "normalized_constant"], rows)
    summary = f"max_constant={fmt(report.max_constant)}\n"
    (sys.stdout if args.out else sys.stderr).write(summary)
    return EXIT_OK


def cmd_compare(args):
    q = resolve_potential(args.potential)
    t = _require_t(args)
    gal = compute_spectrum(q, t, args.count, Method.GALERKIN, max(args.n_basis, args.count))
    mono = compute_spectrum(q, t, args.count, Method.MONODROMY)
    diff = np.abs(gal - mono)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "galerkin", "monodromy", "abs_diff"])
    for k, (a, b, d) in enumerate(zip(gal, mono, diff)):
        writer.writerow([k, fmt(a), fmt(b), fmt(d)])
    worst = float(diff.max())
    buf.write(f"max_abs_discrepancy={fmt(worst)}\n")
    _emit(args, buf.getvalue())
    return EXIT_OK if worst <= args.tol else EXIT_FAILED


COMMANDS = {
    "spectrum": cmd_spectrum,
    "band": cmd_band,
    "check": cmd_check,
    "asymptotics": cmd_asymptotics,
    "compare": cmd_compare,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hillspec",
        description="Spectra of -y'' + q y = lambda y under quasi-periodic and Neumann conditions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("potential", help='potential JSON file or "preset:<name>"')
        p.add_argument("--t", type=parse_real, default=None, help='Floquet parameter; accepts e.g. "0.5pi"')
        p.add_argument("--n-basis", type=int, default=DEFAULT_N_BASIS)
        p.add_argument("--method", choices=["galerkin", "monodromy", "both"], default="galerkin")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--out", default=None, help="output file (default: standard output)")
        if name in ("spectrum", "compare"):
            p.add_argument("--count", type=int, default=21)
        if name == "band":
            p.add_argument("--t-grid", type=parse_t_grid, default=None, help="start:stop:step")
            p.add_argument("--levels", type=parse_levels, default=list(range(-2, 3)), help="a..b or a,b,c")
        if name == "check":
            p.add_argument("--theorem", choices=sorted(THEOREM_NAMES))
            p.add_argument("--alpha", type=float, default=1.0)
            p.add_argument("--beta", type=float, default=0.0)
        if name in ("check", "asymptotics"):
            p.add_argument("--n0", type=int, default=5 if name == "check" else 2)
            p.add_argument("--n-max", type=int, default=20 if name == "check" else 30)
    return parser


def _glue_negative_values(argv):
    # argparse reads "--levels -2..2" as two options; bind the value explicitly
    out = []
    it = iter(argv)
    for token in it:
        if token in ("--levels", "--t", "--t-grid"):
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        if getattr(args, "count", 1) < 1 or args.n_basis < 1:
            raise UsageError("--count and --n-basis must be positive")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hillspec {args.command}: error: {exc}", file=sys.stderr)
    except (DomainError, ValueError, KeyError, OSError, ArithmeticError) as exc:
        print(f"hillspec {args.command}: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
