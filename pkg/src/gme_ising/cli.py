"""Command-line interface: ``gme-ising {ground,maximize,sweep,threshold,verify}``.

Exit status is 0 on success, 2 on usage errors and 1 on computational
errors. Errors are reported as one line ``error: <kind>: <message>`` on
stderr.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import checks
from .optimizer import OptimizerConfig, maximize
from .svetlichny import SignVariant
from .sweep import BOTH, BracketError, SweepSpec, export, find_threshold, sweep_h
from .tfim import MAX_QUBITS, MIN_QUBITS, ground_state
from .validation import ValidationError


class UsageError(Exception):
    pass


def _sig(x, digits=12):
    return float(f"{x:.{digits}g}")


def _n_qubits(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if not MIN_QUBITS <= n <= MAX_QUBITS:
        raise argparse.ArgumentTypeError(f"must lie in [{MIN_QUBITS}, {MAX_QUBITS}]")
    return n


def _field(text):
    try:
        h = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not np.isfinite(h) or h < 0:
        raise argparse.ArgumentTypeError("must be finite and >= 0")
    return h


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not v > 0 or not np.isfinite(v):
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("must be an unsigned 64-bit integer")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _default_seed():
    env = os.environ.get("GME_SEED")
    if env is None:
        return 0
    try:
        return _seed(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"GME_SEED: {exc}") from None


def _optimizer_flags(p):
    p.add_argument("--restarts", type=_positive_int, default=64)
    p.add_argument("--max-sweeps", type=_positive_int, default=200)
    p.add_argument("--seed", type=_seed, default=None, help="default: $GME_SEED or 0")
    p.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1,
                   help="worker threads; 1 gives bit-reproducible output")


def build_parser():
    parser = _Parser(prog="gme-ising", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ground", help="ground state of the periodic chain")
    p.add_argument("--n", type=_n_qubits, required=True)
    p.add_argument("--h", type=_field, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("maximize", help="maximize the Bell value of one ground state")
    p.add_argument("--n", type=_n_qubits, required=True)
    p.add_argument("--h", type=_field, required=True)
    p.add_argument("--variant", choices=("minus", "plus"), default="minus")
    p.add_argument("--format", choices=("json", "text"), default="json")
    _optimizer_flags(p)

    p = sub.add_parser("sweep", help="maximized Bell value on a field grid")
    p.add_argument("--n", type=_n_qubits, required=True)
    p.add_argument("--h-min", type=_field, default=0.0)
    p.add_argument("--h-max", type=_field, default=2.0)
    p.add_argument("--points", type=_positive_int, default=81)
    p.add_argument("--variant", choices=("minus", "plus", BOTH), default=None,
                   help="default: both for odd N, minus for even N")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--timestamp", action="store_true", help="record wall-clock time in JSON")
    _optimizer_flags(p)

    p = sub.add_parser("threshold", help="field where the violation disappears")
    p.add_argument("--n", type=_n_qubits, required=True)
    p.add_argument("--variant", choices=("minus", "plus", BOTH), default=None)
    p.add_argument("--bracket", type=_field, nargs=2, metavar=("LO", "HI"), default=None)
    p.add_argument("--tol", type=_positive_float, default=1e-3)
    p.add_argument("--format", choices=("json", "text"), default="text")
    _optimizer_flags(p)

    p = sub.add_parser("verify", help="run the oracle verification suite")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--seed", type=_seed, default=None)
    p.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _config(args):
    seed = _default_seed() if args.seed is None else args.seed
    return OptimizerConfig(
        restarts=args.restarts, max_sweeps=args.max_sweeps, seed=seed, threads=args.threads
    )


def _angles(settings):
    theta, phi = settings.angles()
    return [
        {"theta": [_sig(t) for t in th], "phi": [_sig(p) for p in ph]}
        for th, ph in zip(theta, phi)
    ]


def emit_report(result, fmt="json"):
    """Render a command result dictionary as JSON or plain text."""
    if fmt == "json":
        return json.dumps(result, indent=2) + "\n"
    lines = []
    for key, value in result.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _cmd_ground(args, out):
    state, energy, gap = ground_state(args.n, args.h)
    amps = state.amplitudes
    if args.format == "json":
        doc = {
            "n": args.n,
            "h": args.h,
            "energy": _sig(energy),
            "gap": _sig(gap),
            "amplitudes": [[_sig(a.real), _sig(a.imag)] for a in amps],
        }
        out.write(emit_report(doc))
        return 0
    buf = io.StringIO()
    buf.write(f"# energy={energy:.12g} gap={gap:.12g}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "bits", "re", "im"])
    for i, a in enumerate(amps):
        writer.writerow([i, format(i, f"0{args.n}b"), f"{a.real:.12g}", f"{a.imag:.12g}"])
    out.write(buf.getvalue())
    return 0


def _cmd_maximize(args, out):
    cfg = _config(args)
    state, _, _ = ground_state(args.n, args.h)
    res = maximize(state, SignVariant.parse(args.variant), cfg)
    doc = {
        "n": args.n,
        "h": args.h,
        "variant": args.variant,
        "value": _sig(res.value),
        "angles": _angles(res.settings),
        "restarts": cfg.restarts,
        "seed": cfg.seed,
    }
    out.write(emit_report(doc, args.format))
    return 0


def _cmd_sweep(args, out):
    spec = SweepSpec(
        n_qubits=args.n,
        variant=args.variant,
        h_min=args.h_min,
        h_max=args.h_max,
        points=args.points,
        optimizer=_config(args),
    )
    result = sweep_h(spec, timestamp=args.timestamp)
    data = export(result, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        out.write(data.decode())
    return 0


def _cmd_threshold(args, out):
    cfg = _config(args)
    res = find_threshold(args.n, args.variant, cfg, args.bracket, args.tol)
    doc = {
        "n": args.n,
        "variant": args.variant or (BOTH if args.n % 2 else "minus"),
        "threshold": _sig(res.h_star),
        "bracket": list(res.bracket),
        "tol": args.tol,
        "restarts": cfg.restarts,
        "seed": cfg.seed,
        "evaluations": [[h, _sig(v)] for h, v in res.evaluations],
        "warnings": list(res.warnings),
    }
    out.write(emit_report(doc, args.format))
    return 0


def _cmd_verify(args, out):
    seed = _default_seed() if args.seed is None else args.seed
    results = checks.run_checks(quick=args.quick, seed=seed)
    if args.format == "json":
        out.write(json.dumps([r.as_dict() for r in results], indent=2) + "\n")
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            out.write(f"{status}  {r.name}  margin={r.margin:.3g}  {r.detail}\n")
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "ground": _cmd_ground,
    "maximize": _cmd_maximize,
    "sweep": _cmd_sweep,
    "threshold": _cmd_threshold,
    "verify": _cmd_verify,
}


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "seed", None) is None:
            _default_seed()
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"error: usage: {exc}\n")
        return 2
    except BracketError as exc:
        err.write(f"error: bracket: {exc}\n")
        return 1
    except ValidationError as exc:
        err.write(f"error: invalid-input: {exc}\n")
        return 2
    except (RuntimeError, ArithmeticError, OSError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
