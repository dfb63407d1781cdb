"""Rebuild a spin model from the scheme of N_V by solving the modular invariance equations.

Run with ``python3 scripts/mi_search_demo.py --family cyclic --n 5``.
"""

import argparse

import numpy as np

from spinlab.construct import build_V
from spinlab.jones import recover_odd_gauge
from spinlab.modular import search_four_weight
from spinlab.nomura import scheme_from_space
from spinlab.spin import cyclic_spin_model, potts, spin_model_pair


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", choices=["potts", "cyclic"], default="cyclic")
    parser.add_argument("--n", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    model = potts(args.n) if args.family == "potts" else cyclic_spin_model(args.n)
    jp = spin_model_pair(model.W, model.d)
    vb = build_V(jp)
    scheme = scheme_from_space(vb.nomura.space)
    pairs, slog = search_four_weight(scheme, jp.d, nomura=vb.nomura, seed=args.seed)
    print(f"{args.family}{args.n}: scheme with {len(scheme.schur_basis) - 1} classes, "
          f"{slog.solutions} solutions, {len(pairs)} Jones pairs")
    for stage in slog.outcomes:
        print("  ", *stage)
    for k, found in enumerate(pairs):
        same_B = np.abs(found.B - jp.B).max() <= 1e-8
        try:
            recover_odd_gauge(found.A, jp.A)
            gauge = "gauge-equivalent A"
        except Exception:
            gauge = "different A"
        print(f"  pair {k}: B {'matches' if same_B else 'differs'}, {gauge}")


if __name__ == "__main__":
    main()
