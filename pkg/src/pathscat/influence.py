"""Influence functionals: one particle's path sum, the other held fixed.

With the companion trajectory frozen, each time slice sees a different
potential, so the contraction is an ordered product of slice-specific
transfer matrices rather than a matrix power. The extracted quantity is
the total accumulated phase against the free reference,

    amplitude = free_reference * exp(-(i/hbar) * effective_phase),

taken on the principal log branch. The free reference is the same
discretized product with all potentials off, which makes zero-coupling
phases vanish identically instead of at the lattice's accuracy floor.
A pointwise effective potential is deliberately not offered; only the
time-integrated phase is well defined here.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .propagator import TimeGrid, _kinetic_kernel, _one_slice

__all__ = [
    "FixedPath",
    "InfluenceResult",
    "influence_K1",
    "influence_K2",
    "reconstruct_full_amplitude",
]


@dataclass(frozen=True)
class FixedPath:
    """Companion trajectory sampled at the N+1 slice endpoints."""

    grid: TimeGrid
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", samples)
        if samples.shape != (self.grid.N + 1,):
            raise DomainError("path needs one sample per slice endpoint (N + 1)")
        if not np.all(np.isfinite(samples)):
            raise DomainError("path samples must be finite")


@dataclass
class InfluenceResult:
    """Endpoint matrix element of the functional and its phase."""

    amplitude: complex
    effective_phase: complex
    endpoints: tuple
    grid: TimeGrid
    free_reference: complex


def _pot_term(pot, r):
    if pot is None:
        return 0.0
    return pot.evaluate(np.abs(r))


def _node_index(lattice, pos, name):
    nodes = lattice.nodes
    i = int(np.argmin(np.abs(nodes - pos)))
    if abs(nodes[i] - pos) > 1e-6 * lattice.dx:
        raise DomainError(
            f"{name} = {pos} is not a lattice node; nearest node is {nodes[i]!r}"
        )
    return i


def _chain(slice_potentials, lattice, grid, mass, hbar, kinetic, sampling):
    """Ordered product T_N dx T_(N-1) ... dx T_1 of one-slice kernels."""
    dx = lattice.dx
    eps = grid.epsilon
    K = None
    for pot_j in slice_potentials:
        T = _one_slice(pot_j, lattice, eps, mass, hbar, kinetic, sampling)
        K = T if K is None else T @ (dx * K)
    return K


def _phase_from(amplitude, reference, hbar):
    if amplitude == 0 or reference == 0:
        raise NumericalError("vanishing amplitude; phase extraction undefined")
    return 1j * hbar * complex(np.log(amplitude / reference))


def _endpoint_element(slice_pots, a, b, lattice, grid, mass, hbar, kinetic, sampling):
    ia = _node_index(lattice, a, "start endpoint")
    ib = _node_index(lattice, b, "final endpoint")
    K = _chain(slice_pots, lattice, grid, mass, hbar, kinetic, sampling)
    K0 = _chain([None] * grid.N, lattice, grid, mass, hbar, kinetic, sampling)
    amp = complex(K[ib, ia])
    ref = complex(K0[ib, ia])
    return InfluenceResult(
        amplitude=amp,
        effective_phase=_phase_from(amp, ref, hbar),
        endpoints=(a, b),
        grid=grid,
        free_reference=ref,
    )


def influence_K1(
    pots,
    electron_path,
    R_a,
    R_b,
    lattice,
    grid,
    M,
    hbar=1.0,
    kinetic="pade2",
    sampling="endpoint",
):
    """Heavy-particle path sum with the electron trajectory frozen.

    Slice j sees V_B(r_j - R) + V_AB(R) with r_j the electron sample at
    the slice's arrival time. Returns the (R_a -> R_b) matrix element.
    """
    if electron_path.grid != grid:
        raise DomainError("fixed path and contraction use different time grids")
    r = electron_path.samples

    def slice_pot(j):
        rj = r[j]

        def V(R):
            return _pot_term(pots.V_B, rj - R) + _pot_term(pots.V_AB, R)

        return V

    slice_pots = (slice_pot(j) for j in range(1, grid.N + 1))
    return _endpoint_element(
        slice_pots, R_a, R_b, lattice, grid, M, hbar, kinetic, sampling
    )


def influence_K2(
    pots,
    ion_path,
    r_a,
    r_b,
    lattice,
    grid,
    m,
    hbar=1.0,
    kinetic="pade2",
    sampling="endpoint",
):
    """Electron path sum with the heavy trajectory frozen.

    Slice j sees V_A(r) + V_B(r - R_j) with R_j the ion sample at the
    slice's arrival time.
    """
    if ion_path.grid != grid:
        raise DomainError("fixed path and contraction use different time grids")
    R = ion_path.samples

    def slice_pot(j):
        Rj = R[j]

        def V(r):
            return _pot_term(pots.V_A, r) + _pot_term(pots.V_B, r - Rj)

        return V

    slice_pots = (slice_pot(j) for j in range(1, grid.N + 1))
    return _endpoint_element(
        slice_pots, r_a, r_b, lattice, grid, m, hbar, kinetic, sampling
    )


def reconstruct_full_amplitude(
    pots,
    r_endpoints,
    R_endpoints,
    lattice_e,
    lattice_i,
    grid,
    m,
    M,
    hbar=1.0,
    kinetic="pade2",
    sampling="endpoint",
    max_product=256 * 256,
):
    """Two-particle kernel element by direct product-lattice contraction.

    The joint field psi(r, R) starts as a delta pair and is pushed
    through N slices of kinetic kernels and the full coupled phase
    exp(-i eps (V_A(r) + V_AB(R) + V_B(r - R)) / hbar). The returned
    value is the kernel density K(r_b, R_b; r_a, R_a); it serves as the
    oracle for factorization and influence-functional identities.
    """
    if lattice_e.points * lattice_i.points > max_product:
        raise DomainError(
            f"product lattice {lattice_e.points} x {lattice_i.points} exceeds "
            f"the cap of {max_product} points"
        )
    if sampling not in ("endpoint", "symmetric"):
        raise DomainError("product-lattice contraction supports endpoint/symmetric")
    r_a, r_b = r_endpoints
    R_a, R_b = R_endpoints
    ia_e = _node_index(lattice_e, r_a, "electron start")
    ib_e = _node_index(lattice_e, r_b, "electron end")
    ia_i = _node_index(lattice_i, R_a, "ion start")
    ib_i = _node_index(lattice_i, R_b, "ion end")

    eps = grid.epsilon
    G_e = _kinetic_kernel(lattice_e, eps, m, hbar, kinetic)
    G_i = _kinetic_kernel(lattice_i, eps, M, hbar, kinetic)
    xe = lattice_e.nodes
    xi = lattice_i.nodes
    V = np.zeros((lattice_e.points, lattice_i.points))
    if pots.V_A is not None:
        V += np.asarray(pots.V_A.evaluate(np.abs(xe)))[:, None]
    if pots.V_AB is not None:
        V += np.asarray(pots.V_AB.evaluate(np.abs(xi)))[None, :]
    if pots.V_B is not None:
        V += pots.V_B.evaluate(np.abs(xe[:, None] - xi[None, :]))

    measure = lattice_e.dx * lattice_i.dx
    psi = np.zeros((lattice_e.points, lattice_i.points), dtype=complex)
    psi[ia_e, ia_i] = 1.0 / measure
    if sampling == "endpoint":
        ph = np.exp(-1j * eps * V / hbar)
        for _ in range(grid.N):
            psi = ph * ((G_e @ psi) @ G_i.T) * measure
    else:
        h = np.exp(-0.5j * eps * V / hbar)
        for _ in range(grid.N):
            psi = h * ((G_e @ (h * psi)) @ G_i.T) * measure
    return complex(psi[ib_e, ib_i])
