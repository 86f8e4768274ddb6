"""How screening empties the well.

A deep, long-ranged well (small alpha) holds many levels.  As alpha grows
the well narrows and levels leave the spectrum one by one, each at its own
critical range parameter.  This script follows that story for D = 3.

Run with ``python3 demos/01_spectrum_and_critical_alpha.py``.
"""
import numpy as np

from ptd import PhysicalParams, critical_alpha, energy_principal
from ptd.errors import NoBoundStateError

D = 3
V0 = 1.0

print(f"Levels of the D={D} well (V0={V0}) as the range parameter grows\n")
print("alpha   " + "".join(f"   n={n:<7d}" for n in range(4)))
for alpha in np.linspace(0.05, 0.6, 12):
    cells = []
    for n in range(4):
        try:
            cells.append(f"{energy_principal(PhysicalParams(V0, alpha), n, D):11.6f}")
        except NoBoundStateError:
            cells.append(f"{'unbound':>11s}")
    print(f"{alpha:5.3f}  " + " ".join(cells))

print("\nEach level disappears exactly at its critical alpha:")
for n in range(4):
    a_c = critical_alpha(n, D, V0)
    just_below = energy_principal(PhysicalParams(V0, a_c * (1 - 1e-4)), n, D)
    print(f"  n={n}: alpha_c = {a_c:.10f}, E just below it = {just_below:.3e}")

print("\nIn one dimension the ground level never leaves:")
for alpha in (0.5, 1.0, 4.0, 16.0):
    print(f"  alpha={alpha:5.1f}  E0 = {energy_principal(PhysicalParams(V0, alpha), 0, 1):.6f}")
