"""Level crossings g_k between neighbouring excitation sectors.

The exact crossings are located by bisection on E_k - E_{k-1}. At small eta
they sit on top of the perturbative sqrt(M / (M - 2k + 2)). At larger eta
they move towards lower g.
"""
from tcdicke import crossing_table

M = 16
for eta in (1e-4, 1e-1):
    print(f"eta = {eta:g}")
    for k, g_exact, g_pert in crossing_table(M, eta).entries:
        print(f"  k={k:2d}  exact={g_exact:.6f}  perturbative={g_pert:.6f}")
