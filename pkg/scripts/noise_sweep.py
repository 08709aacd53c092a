"""Success probability and approximation ratio against two-qubit depolarizing rate."""

import argparse

import numpy as np

from qaoachain import bench
from qaoachain.graph import random_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--p", type=int, default=20)
    ap.add_argument("--eps-max", type=float, default=0.005)
    ap.add_argument("--points", type=int, default=10)
    ap.add_argument("--out", default="noise.csv")
    args = ap.parse_args()

    g = random_instance(args.n, 1.0, args.seed)
    rows = bench.noise_sweep(g, args.p, list(np.linspace(0, args.eps_max, args.points)))
    bench.write_noise(rows, args.out)
    counts = {r.target: r.n_g for r in rows}
    print("CNOTs per circuit:", counts)
    print(f"{'eps':>8} " + " ".join(f"{t:>10}" for t in counts))
    for e in sorted({r.eps for r in rows}):
        vals = {r.target: r.p_gs for r in rows if r.eps == e}
        print(f"{e:>8.5f} " + " ".join(f"{vals[t]:>10.5f}" for t in counts))


if __name__ == "__main__":
    main()
