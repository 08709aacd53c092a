"""QAOA cost layers on a qubit chain: SWAP networks, parity twine chains and order annealing."""

from .anneal import AnnealConfig, AnnealTrace, encoding_cost, optimize_order
from .circuit import Circuit, Gate, ParityDecoder, ParityLabelMatrix, decompose, depth, track_labels, two_qubit_count
from .graph import CutSolution, WeightedGraph, brute_force_optimum, cut_cost, edge_density, random_instance
from .lrqaoa import RampSchedule, build_qaoa, ramp
from .ptc import PtcSweep, encode_ptc, ptc_sweep
from .simulator import NoiseSpec, simulate_ideal, simulate_noisy
from .swap import EncodingSchedule, encode_swap, swap_resources_fc, swap_schedule

__version__ = "0.1.0"
