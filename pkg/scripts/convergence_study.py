"""Step-halving convergence of the product-formula integrator.

For each driven builtin pulse, evolve the ground state at a sequence of step
sizes and print the distance to the finest-step reference together with the
halving ratio (about 4 on the second-order plateau).

    python3 scripts/convergence_study.py [--set NMR] [--mi X1]
"""
import argparse
import math

from spinqc.model import builtin_set
from spinqc.propagate import convergence_probe
from spinqc.state import new_ground


def study(set_id: str, mi_name: str | None) -> None:
    iset = builtin_set(set_id)
    names = [mi_name] if mi_name else [
        n for n, mi in iset.instructions.items()
        if mi.kind == "normal" and not mi.is_static_diagonal()
    ]
    d0 = 2 * math.pi / 64
    deltas = [d0 / 2**k for k in range(4)] + [d0 / 64]
    state = new_ground(iset.num_qubits)
    for name in names:
        table = convergence_probe(iset[name], 0.0, state, deltas)
        print(f"\n{set_id} {name}:")
        prev = None
        for delta, err in table:
            ratio = f"  ratio {prev / err:5.2f}" if prev and err else ""
            print(f"  delta {delta:.6e}  distance {err:.6e}{ratio}")
            prev = err


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--set", default="NMR")
    parser.add_argument("--mi", default=None)
    args = parser.parse_args()
    study(args.set, args.mi)
