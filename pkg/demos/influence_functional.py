"""
Influence of a prescribed trajectory
====================================

Fix one particle's path r(t) and integrate the other particle's paths
exactly. The result is an influence functional: the free amplitude
times exp(-i Phi / hbar), with Phi an effective phase the moving
neighbor imprints. Three limits make the object easy to trust, and a
full two-particle contraction on the product lattice closes the loop.
"""

import numpy as np

from pathscat import (
    FixedPath,
    Gaussian,
    LatticeSpec,
    PairPotentials,
    SquareWell,
    TimeGrid,
    influence_K1,
    influence_K2,
    reconstruct_full_amplitude,
    time_sliced_propagator,
)

lat = LatticeSpec(-10.0, 10.0, 101)  # dx = 0.2, endpoints below sit on nodes
grid = TimeGrid(0.0, 1.0, 8)

# 1) no coupling: ten wildly different paths, identical amplitude
rng = np.random.default_rng(0)
free = PairPotentials(None, None, None)
amps = [
    influence_K1(
        free, FixedPath(grid, rng.uniform(-40, 40, grid.N + 1)), -2.0, 2.0,
        lat, grid, 1.0,
    ).amplitude
    for _ in range(10)
]
print("zero-coupling spread:", max(abs(a - amps[0]) for a in amps))

# 2) constant coupling: phase = strength x elapsed time, exactly
c = 0.4
wide = PairPotentials(None, SquareWell(c, 1000.0), None)
res = influence_K2(
    wide, FixedPath(grid, np.zeros(grid.N + 1)), -2.0, 2.0, lat, grid, 1.0
)
print("constant-coupling phase:", res.effective_phase, " c*T =", c * grid.duration)

# 3) frozen path: the influence functional must equal an ordinary
#    propagator in the frozen potential landscape
V_A, V_B, R0 = Gaussian(-0.35, 1.0), Gaussian(0.2, 0.7), 1.5
res = influence_K2(
    PairPotentials(V_A, V_B, None),
    FixedPath(grid, np.full(grid.N + 1, R0)),
    -2.0, 2.0, lat, grid, 1.0,
)
K = time_sliced_propagator(
    lambda x: V_A.evaluate(np.abs(x)) + V_B.evaluate(np.abs(x - R0)),
    lat, grid, 1.0,
)
ia = int(np.argmin(np.abs(lat.nodes + 2.0)))
ib = int(np.argmin(np.abs(lat.nodes - 2.0)))
print("static path vs static potential:", abs(res.amplitude - K.entries[ib, ia]))

# 4) the full two-particle amplitude, no path prescribed at all.
#    With the electron-ion coupling switched off it factorizes into a
#    product of one-particle propagators; with it on, it does not.
lat_small = LatticeSpec(-8.0, 8.0, 65)
pots = PairPotentials(V_A, None, Gaussian(0.15, 0.9))
full = reconstruct_full_amplitude(
    pots, (-2.0, 2.0), (-1.0, 1.0), lat_small, lat_small, TimeGrid(0.0, 1.0, 6),
    1.0, 10.0,
)
print("factorized two-particle amplitude:", full)
