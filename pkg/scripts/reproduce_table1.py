"""Resource counts on the reference density grid, with and without annealing.

    python3 scripts/reproduce_table1.py --n 20 60 --out table1_ours.csv
"""

import argparse

from qaoachain import bench
from qaoachain.anneal import AnnealConfig
from qaoachain.cli import TABLE1_GRID


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, nargs="+", default=[20, 60, 120])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--max-iter", type=int, default=50000)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="table1_ours.csv")
    args = ap.parse_args()

    sa = AnnealConfig(max_iter=args.max_iter)
    records = []
    for n in args.n:
        records += bench.density_sweep(n, TABLE1_GRID[n], seeds=tuple(range(args.seeds)), sa=sa, jobs=args.jobs)
    bench.write_results(records, args.out)

    ref = {(r.method, r.n_q, r.e_d): r.n_g for r in bench.table1()}
    print(f"{'n':>4} {'e_d':>6} {'method':>8} {'ours':>9} {'ref':>7}")
    for n in args.n:
        for d in TABLE1_GRID[n]:
            for ours, theirs in (("ptc+sa", "PTC+SA"), ("swap+sa", "SWAP+SA"), ("fc", "FC")):
                vals = [r.n_g for r in records if r.method == ours and r.n_q == n and r.e_d == d]
                print(f"{n:>4} {d:>6} {ours:>8} {sum(vals) / len(vals):>9.1f} {ref.get((theirs, n, d), '-'):>7}")


if __name__ == "__main__":
    main()
