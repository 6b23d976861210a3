"""Where the ground state is almost a pure half-excited Dicke state.

Sweep (g, eta) and record the weight of D_{M/2} in the ground state. The
fraction of the grid with weight >= 0.95 shrinks as M grows.
"""
from tcdicke import Axis, SweepSpec, run_sweep

for M in (8, 16, 32, 64):
    spec = SweepSpec(M, Axis(1.0, 10.0, 30), Axis(1e-6, 1e-1, 30, log=True), "weight", M // 2, 0.95)
    region = run_sweep(spec, threads=4)
    print(f"M={M:3d}  area fraction={region.region_area_fraction:.3f}")

region = run_sweep(SweepSpec(16, Axis(1.0, 10.0, 24), Axis(1e-6, 1e-1, 12, log=True), "weight", 8, 0.95))
print("\nM=16, rows eta (top = 1e-1), columns g in [1, 10]")
for row in region.mask[::-1]:
    print("".join("#" if m else "." for m in row))
