"""Command-line entry point: ``sscosamp <experiment> [options]``."""
import argparse
import json
import math
import os
import sys

from . import harness
from .errors import HypothesisViolatedError
from .sensing import load_instance, run_instance


def _ints(text):
    """Comma list of ints with optional ``a:b[:step]`` ranges (inclusive)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            lo, hi, *step = (int(v) for v in part.split(":"))
            out.extend(range(lo, hi + 1, step[0] if step else 1))
        elif part:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return tuple(out)


def _words(text):
    return tuple(w.strip() for w in text.split(",") if w.strip())


def _add_common(p):
    p.add_argument("--n", type=int, default=256, help="signal dimension (default 256)")
    p.add_argument("--d", type=int, default=1024, help="number of atoms (default 1024)")
    p.add_argument("--k", type=int, default=8, help="sparsity (default 8)")
    p.add_argument("--k-grid", type=_ints, default=(), help="sparsity grid, e.g. 4,8,16")
    p.add_argument("--m", "--m-grid", dest="m_grid", type=_ints, default=(),
                   help="measurement counts, e.g. 256 or 32:256:16")
    p.add_argument("--hmin", "--hmin-grid", dest="h_min_grid", type=_ints, default=(),
                   help="minimum separations, e.g. 16 or 1:64")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--epsilon", type=float, default=0.0, help="noise bound")
    p.add_argument("--backend", dest="backends", type=_words, default=(),
                   help="projection backends: omp,cosamp,l1,oracle")
    p.add_argument("--structure", dest="structures", type=_words, default=(),
                   help="signal structures: separated,clustered,random")
    p.add_argument("--mode", dest="modes", type=_words, default=(),
                   help="bound modes: exact,envelope,brute")
    p.add_argument("--values", default="gaussian", choices=("gaussian", "phase"),
                   help="coefficient value model")
    p.add_argument("--matrix", default="gaussian", choices=("gaussian", "identity"))
    p.add_argument("--margin", type=float, default=1.01,
                   help="coefficient magnitude as a multiple of the OMP threshold")
    p.add_argument("--exhaustive", action="store_true",
                   help="verify-lemma: enumerate every separated support")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default ${harness.WORKERS_ENV} or all cores)")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--save-failures", metavar="DIR",
                   help="phase: write each failed trial as a replayable instance file")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sscosamp",
        description="Signal-space CoSaMP experiments over overcomplete DFT dictionaries.")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in harness.KINDS:
        _add_common(sub.add_parser(kind))
    rp = sub.add_parser("replay", help="rerun a saved instance")
    rp.add_argument("instance", help="instance JSON file")
    rp.add_argument("--backend", default="omp", choices=("omp", "cosamp", "l1", "oracle"))
    rp.add_argument("--k", type=int, default=None, help="sparsity (default: from the file)")
    return parser


def spec_from_args(args):
    return harness.ExperimentSpec(
        kind=args.command, n=args.n, d=args.d, k=args.k, k_grid=args.k_grid,
        m_grid=args.m_grid, h_min_grid=args.h_min_grid, trials=args.trials,
        epsilon=args.epsilon, backends=args.backends, structures=args.structures,
        modes=args.modes, master_seed=args.seed, values=args.values, matrix=args.matrix,
        margin=args.margin, exhaustive=args.exhaustive)


def _save_failures(spec, table, directory):
    os.makedirs(directory, exist_ok=True)
    spec = spec.resolved()
    for row in table.rows:
        if row["successes"] == row["trials"]:
            continue
        for t in range(spec.trials):
            inst = harness.phase_instance(spec, row["m"], row["structure"], t)
            report, _, _ = run_instance(inst, harness.phase_config(spec.k, row["backend"]))
            if not report.perfect:
                name = f"{row['structure']}_m{row['m']}_{row['backend']}_t{t}.json"
                inst.save(os.path.join(directory, name))


def _replay(args):
    inst = load_instance(args.instance)
    k = args.k or inst.alpha.k
    report, _, state = run_instance(inst, harness.phase_config(k, args.backend))
    print(json.dumps({
        "backend": args.backend,
        "k": k,
        "snr_db": report.snr_db if math.isfinite(report.snr_db) else "inf",
        "perfect": report.perfect,
        "support_recovered": report.support_recovered,
        "iterations": report.iterations,
        "recovered_support": list(state.support.indices),
        "true_support": list(inst.alpha.support.indices),
        "residual_history": list(report.residual_history),
    }, indent=2))
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "replay":
        return _replay(args)
    try:
        spec = spec_from_args(args)
        table = harness.run(spec, workers=args.workers)
    except (HypothesisViolatedError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    if args.out:
        table.save(args.out)
    else:
        sys.stdout.write(table.to_csv())
    if args.save_failures and args.command == "phase":
        _save_failures(spec, table, args.save_failures)
    if not table.passed:
        print(f"{args.command}: verification failed", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
