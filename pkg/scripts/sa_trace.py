"""Write one annealing trace and print its summary."""

import argparse

from qaoachain.anneal import AnnealConfig, optimize_order
from qaoachain.graph import random_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=60)
    ap.add_argument("--density", type=float, default=0.068)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--encoder", choices=["ptc", "swap"], default="ptc")
    ap.add_argument("--max-iter", type=int, default=50000)
    ap.add_argument("--out", default="sa_trace.csv")
    args = ap.parse_args()

    g = random_instance(args.n, args.density, args.seed)
    order, trace = optimize_order(g, args.encoder, AnnealConfig(max_iter=args.max_iter, seed=args.seed))
    trace.write_csv(args.out)
    print(f"{args.encoder}: {trace.initial_cost} -> {trace.final_best} CNOTs after {len(trace)} iterations")
    print("order:", " ".join(map(str, order)))


if __name__ == "__main__":
    main()
