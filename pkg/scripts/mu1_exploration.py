"""Compare mu = 0 and mu = 1: coproduct differences and tensor decompositions.

Prints which coproduct entries change and checks that every tensor product on the
default grid decomposes the same way for both values of mu.
"""

import sys

from dhopf.derived import TensorGrid, decompose
from dhopf.homalg import total_tensor
from dhopf.nakayama import build_H, dual_hopf


def coproduct_diff(n: int) -> list[str]:
    d0, d1 = dual_hopf(n, 0), dual_hopf(n, 1)
    out = []
    for c in range(d0.dim):
        if d0.comult.get(c) != d1.comult.get(c):
            extra = {k: v for k, v in d1.comult.get(c, {}).items() if d0.comult.get(c, {}).get(k) != v}
            terms = " + ".join(f"({v}) {d0.basis_names[a]}(x){d0.basis_names[b]}" for (a, b), v in sorted(extra.items()))
            out.append(f"Delta({d0.basis_names[c]}) gains {terms}")
    return out


def compare(n: int, grid: TensorGrid) -> int:
    H0, H1 = build_H(n, 0), build_H(n, 1)
    diff = 0
    for a, b in grid.tuples(n):
        X, Y = a.complex(), b.complex()
        if decompose(total_tensor(X, Y, H0)) != decompose(total_tensor(X, Y, H1)):
            diff += 1
            print(f"  differs: {a.label()} (x) {b.label()}")
    return diff


def main(ns=(4, 6)) -> int:
    grid = TensorGrid(k_values=(0, 1, 2), t_values=(0, 1, 2), p_values=(0,), q_values=(0,))
    total = 0
    for n in ns:
        print(f"n={n}")
        for line in coproduct_diff(n):
            print("  " + line)
        d = compare(n, grid)
        print(f"  {len(grid.tuples(n))} tensor products, {d} differ between mu=0 and mu=1")
        total += d
    return 0 if total == 0 else 1


if __name__ == "__main__":
    sys.exit(main(tuple(int(x) for x in sys.argv[1:]) or (4, 6)))
