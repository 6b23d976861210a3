"""Ground-state excitation number k* as g is raised.

Below g = 1 the ground state is the empty cavity with all qubits down. Above
it, each new excitation enters one at a time, so k* climbs a staircase
that saturates at M/2 once g^2 exceeds M/2. At small eta the step edges follow
the ceiling formula closely.
"""
import math

import numpy as np

from tcdicke import staircase

M, ETA = 64, 1e-5

grid = np.linspace(0.8, 6.5, 40)
for g, k in staircase(M, ETA, grid):
    pred = max(0, math.ceil(M / 2 * (1 - 1 / g**2)))
    bar = "#" * (k or 0)
    print(f"g={g:5.3f}  k*={k:3d}  predicted={pred:3d}  {bar}")
