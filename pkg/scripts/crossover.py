"""Density at which PTC+SA first needs fewer CNOTs than a baseline transpiler."""

import argparse

from qaoachain import bench
from qaoachain.anneal import AnnealConfig
from qaoachain.cli import TABLE1_GRID


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[20, 120])
    ap.add_argument("--method", default="Qiskit-T")
    ap.add_argument("--baseline", help="results-schema CSV; defaults to the bundled table")
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="crossover.csv")
    args = ap.parse_args()

    baseline = bench.import_baseline(args.baseline) if args.baseline else bench.table1()
    recs = bench.crossover_map(args.n, TABLE1_GRID, baseline, tuple(range(args.seeds)), "ptc", args.method,
                               AnnealConfig(), jobs=args.jobs)
    bench.write_crossover(recs, args.out)
    for r in recs:
        print(f"n={r.n_q}: {r.threshold:.3f} +/- {r.std:.3f}  per seed {', '.join(f'{x:.3f}' for x in r.per_seed)}")


if __name__ == "__main__":
    main()
