"""Why the corrected small-s exponent matters.

The eigenfunction behaves like ``s^(v/2)`` near the origin, with
``s = tanh^2(alpha r)``, so that ``R ~ r^((k-1)/2)``.  Raising ``s`` to the
power ``2v`` instead (the ``as-printed`` mode) gives a function
that still looks plausible on a plot but no longer solves the equation.
Two diagnostics tell them apart: the ODE residual and the log-slope of
``R`` at small ``r``.

Run with ``python3 demos/02_wavefunction_exponent.py``.
"""
import numpy as np

from ptd import PhysicalParams, StateLabel
from ptd.wavefunction import AS_PRINTED, CORRECTED, ode_residual, radial_s, radial_solution, small_r_slope

params = PhysicalParams(1.0, 0.25)
state = StateLabel(D=3, ell=1, n_r=1)
k = state.D + 2 * state.ell
s = np.linspace(0.05, 0.95, 91)

print(f"State {state}, alpha = {params.alpha}; expected small-r slope (k-1)/2 = {(k - 1) / 2}\n")
for mode in (CORRECTED, AS_PRINTED):
    sol = radial_solution(params, state, mode)
    scale = np.max(np.abs(radial_s(sol, s)))
    worst = np.max(np.abs(ode_residual(sol, s))) / scale
    print(f"{mode:>10s}: max |residual| / max |R| = {worst:.2e}, "
          f"small-r slope = {small_r_slope(sol):.6f}")

print("\nThe corrected form sits at the level of finite-difference noise;"
      "\nthe as-printed one misses by order one and has the wrong threshold power.")
