"""Heralded preparation: measure the cavity, keep the run if it reads k* - n photons.

For two qubits at g = 2 and eta = 0.01 the ground state lies in the k = 1
sector. Finding the cavity empty projects the qubits onto the Bell-like D_1,
which happens with probability w_1.
"""
from tcdicke import ModelParams, dicke_weights, entanglement_distance_dicke, find_kstar, run_protocol

gs = find_kstar(ModelParams(2, 2.0, 0.01))
print("k* =", gs.k_star)
print("Dicke weights:", dicke_weights(gs).weights)
print("ED of D_1:", entanglement_distance_dicke(2, 1))

rep = run_protocol(gs, samples=100_000, seed=2024)
print(f"success rate {rep.empirical_rate:.5f} (theory {rep.theoretical_rate:.5f}), "
      f"mean attempts {rep.mean_attempts:.3f}")
