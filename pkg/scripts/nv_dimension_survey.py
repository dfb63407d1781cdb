"""Dimensions of the Nomura algebras of W and V across the standard spin model families.

Run with ``python3 scripts/nv_dimension_survey.py``. Prints one row per model.
"""

import argparse

from spinlab.construct import build_V, build_W
from spinlab.nomura import scheme_from_space, type_ii_nomura
from spinlab.spin import cyclic_spin_model, potts, spin_model_pair


def models(max_n: int):
    for n in range(3, max_n + 1):
        yield f"potts{n}", potts(n)
    for n in range(3, max_n + 1, 2):
        yield f"cyclic{n}", cyclic_spin_model(n)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=7)
    args = parser.parse_args(argv)
    print(f"{'model':<10} {'n':>3} {'dim N_W':>8} {'dim N_V':>8} {'classes':>8}")
    for name, model in models(args.max_n):
        jp = spin_model_pair(model.W, model.d)
        wb = build_W(jp)
        vb = build_V(jp)
        scheme = scheme_from_space(vb.nomura.space)
        print(f"{name:<10} {model.W.shape[0]:>3} {type_ii_nomura(wb.W).space.dim:>8} {vb.nomura.space.dim:>8} "
              f"{len(scheme.schur_basis) - 1:>8}")


if __name__ == "__main__":
    main()
