#!/usr/bin/env python3
"""Sweep the generated fixture corpus: ranks, dofs, solver residuals.

Prints one table row per fixture and solver, plus the cross-method dual
construction gap.  Useful as a quick numerical health check after changes.
"""

import time

import numpy as np

from polystatics import (
    Infeasible,
    IncidenceSet,
    assemble,
    build_dual_algebraic,
    build_dual_graphsearch,
    solve_lp,
    solve_mpi,
    solve_rref,
    verify_reciprocity,
)
from polystatics.fixtures import reciprocity_corpus


def main() -> None:
    t0 = time.perf_counter()
    header = (
        f"{'fixture':<18} {'A shape':>9} {'rank':>4} {'dof':>3} "
        f"{'method':>6} {'|Aq|/|q|':>10} {'xmethod gap':>11} {'recip':>5}"
    )
    print(header)
    print("-" * len(header))
    for name, cx in reciprocity_corpus():
        inc = IncidenceSet.from_complex(cx)
        sys = assemble(cx, inc)
        shape = f"{sys.A.shape[0]}x{sys.A.shape[1]}"
        solvers = {
            "mpi": lambda: solve_mpi(sys),
            "rref": lambda: solve_rref(sys, np.ones(sys.dof)),
            "lp": lambda: solve_lp(sys),
        }
        for method, run in solvers.items():
            try:
                q = run()
            except Infeasible:
                print(
                    f"{name:<18} {shape:>9} {sys.rank:>4} {sys.dof:>3} "
                    f"{method:>6} {'infeasible':>10}"
                )
                continue
            resid = np.abs(sys.A @ q).max() / max(1.0, np.abs(q).max())
            d1 = build_dual_algebraic(cx, inc, q)
            d2 = build_dual_graphsearch(cx, inc, q)
            gap = np.abs(d1.vertices - d2.vertices).max()
            ok = verify_reciprocity(cx, d1).ok
            print(
                f"{name:<18} {shape:>9} {sys.rank:>4} {sys.dof:>3} "
                f"{method:>6} {resid:>10.2e} {gap:>11.2e} {str(ok):>5}"
            )
    print(f"\ntotal {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
