"""Command-line entry point: ``python -m tcdicke <subcommand> ...``.

Exit codes: 0 success, 1 domain error, 2 usage error.  An optional JSON
config (``--config``) supplies defaults that explicit flags override.
"""

import argparse
import json
import sys

import numpy as np

from . import entanglement, oracle, spectrum
from .errors import TCError
from .model import ModelParams, build_block
from .sweep import Axis, SweepSpec, emit_csv, emit_json, run_sweep


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--m", type=int)
    p.add_argument("--g", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--config", default=None, help="JSON file of default option values")
    return p


def build_parser():
    parser = _Parser(prog="tcdicke", description="Tavis-Cummings ground-state control toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()

    p = sub.add_parser("block", parents=[common], help="print one block matrix")
    p.add_argument("--k", type=int, required=True)

    sub.add_parser("ground", parents=[common], help="ground state, k* and Dicke weights")

    p = sub.add_parser("staircase", parents=[common], help="k* along a g grid")
    p.add_argument("--g-min", type=float, default=0.5)
    p.add_argument("--g-max", type=float, default=6.0)
    p.add_argument("--g-steps", type=int, default=100)

    p = sub.add_parser("crossings", parents=[common], help="exact and perturbative level crossings")
    p.add_argument("--k-from", type=int, default=1)
    p.add_argument("--k-to", type=int, default=None)

    p = sub.add_parser("sweep", parents=[common], help="(g, eta) grid of k*, weight or energy")
    p.add_argument("--g-min", type=float, default=0.5)
    p.add_argument("--g-max", type=float, default=8.0)
    p.add_argument("--g-steps", type=int, default=40)
    p.add_argument("--eta-min", type=float, default=1e-6)
    p.add_argument("--eta-max", type=float, default=1e-1)
    p.add_argument("--eta-steps", type=int, default=40)
    p.add_argument("--eta-linear", action="store_true", help="linear instead of log-spaced eta axis")
    p.add_argument("--quantity", choices=("k_star", "weight", "energy"), default="k_star")
    p.add_argument("--n-target", type=int, default=None, help="Dicke index for --quantity weight (default M/2 rounded up)")
    p.add_argument("--threshold", type=float, default=None)

    p = sub.add_parser("protocol", parents=[common], help="simulate photon-measurement preparation")
    p.add_argument("--samples", type=int, default=100000)

    p = sub.add_parser("perturb", parents=[common], help="exact vs perturbative block energies")
    p.add_argument("--k", type=int, default=None, help="single block (default: 0..M)")

    p = sub.add_parser("oracle-check", parents=[common], help="compare block scan with dense backends")
    p.add_argument("--n-max", type=int, default=None)

    return parser


def _parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise UsageError("config file must hold a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        unknown = set(cfg) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        subparser.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _params(args):
    _need(args, "m", "g", "eta")
    return ModelParams(args.m, args.g, args.eta)


def _emit(args, obj, csv_ok=False, **inputs):
    if args.format == "csv":
        if not csv_ok:
            raise UsageError(f"--format csv not available for {args.command}")
        emit_csv(obj, args.out)
    else:
        emit_json(obj, args.out, **inputs)


def _run(args):
    cmd = args.command
    policy = spectrum.ScanPolicy(k_max=args.k_max)
    if cmd == "block":
        params = _params(args)
        _emit(args, build_block(params, args.k), M=params.M, g=params.g, eta=params.eta, k=args.k)
    elif cmd == "ground":
        gs = spectrum.find_kstar(_params(args), policy)
        _emit(args, gs, k_max=args.k_max)
    elif cmd == "staircase":
        _need(args, "m", "eta")
        grid = np.linspace(args.g_min, args.g_max, args.g_steps)
        pts = spectrum.staircase(args.m, args.eta, grid, policy)
        doc = {"kind": "staircase", "points": [[g, k] for g, k in pts]}
        if args.format == "csv":
            emit_csv(pts, args.out)
        else:
            emit_json(doc, args.out, M=args.m, eta=args.eta, g_min=args.g_min, g_max=args.g_max,
                      g_steps=args.g_steps, k_max=args.k_max)
    elif cmd == "crossings":
        _need(args, "m", "eta")
        table = spectrum.crossing_table(args.m, args.eta, args.k_from, args.k_to)
        _emit(args, table, csv_ok=True, k_from=args.k_from, k_to=args.k_to)
    elif cmd == "sweep":
        _need(args, "m")
        n_target = args.n_target
        if args.quantity == "weight" and n_target is None:
            n_target = (args.m + 1) // 2
        spec = SweepSpec(
            args.m,
            Axis(args.g_min, args.g_max, args.g_steps),
            Axis(args.eta_min, args.eta_max, args.eta_steps, log=not args.eta_linear),
            args.quantity, n_target, args.threshold, args.k_max,
        )
        _emit(args, run_sweep(spec, threads=args.threads), csv_ok=True)
    elif cmd == "protocol":
        gs = spectrum.find_kstar(_params(args), policy)
        rep = entanglement.run_protocol(gs, args.samples, args.seed)
        _emit(args, rep, g=gs.params.g, eta=gs.params.eta)
    elif cmd == "perturb":
        params = _params(args)
        ks = range(params.M + 1) if args.k is None else [args.k]
        rows = []
        for k in ks:
            exact = spectrum.block_ground_energy(params, k).energy
            pred = spectrum.perturbative_energy(params, k)
            rows.append({"k": k, "exact": exact, "perturbative": pred.energy_pert,
                         "abs_diff": abs(exact - pred.energy_pert), "valid_regime": pred.valid_regime})
        _emit(args, {"kind": "perturb", "rows": rows}, M=params.M, g=params.g, eta=params.eta)
    elif cmd == "oracle-check":
        params = _params(args)
        rep = oracle.compare_backends(params.M, args.n_max, params.g, params.eta)
        _emit(args, rep)
    return 0


def main(argv=None) -> int:
    try:
        args = _parse(sys.argv[1:] if argv is None else argv)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return _run(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 2
    except (TCError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
