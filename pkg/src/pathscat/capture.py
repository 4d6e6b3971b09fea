"""First-order electron-capture amplitudes and cross sections.

Everything here works in atomic units (hbar = m_e = 1) and assumes
hydrogenic 1s states on both centers. Two coordinate treatments of the
capture amplitude are exposed:

* mode="obk": the classic Brinkman-Kramers shortcut. One heavy vector
  R carries both plane-wave phases and both bound states take the
  plain electron coordinate. The amplitude collapses to v_screened(q)
  times a bound-bound form factor at q = |p_a - p_b|. Forward
  scattering at zero screening diverges in this mode, so unscreened
  totals are unavailable here.
* mode="jacobi": incoming and outgoing channels use their own Jacobi
  coordinates. The proton-electron amplitude factorizes into a folded
  interaction at K_b = p_a - (1-gamma_b) p_b and the initial momentum
  wavefunction at K_a = (1-gamma_a) p_a - p_b; the internuclear term
  does not factorize and is evaluated by a 3-D momentum quadrature.

Every screened Coulomb carries screening constant lam >= 0; the
physical lam -> 0 limit is reached by Richardson extrapolation over a
geometric lam sequence. The brute-force oracle integrates the raw 6-D
integrand by scrambled Sobol points with exponential importance
sampling and block-wise error estimates; it never reuses the
momentum-space reductions it is meant to check.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.special
import scipy.stats.qmc

from .errors import DomainError, NumericalError
from .units import ATOMIC_UNITS, OPEN, channel_energetics, reduced_masses

__all__ = [
    "HydrogenicState",
    "CaptureChannelSpec",
    "CaptureQuadrature",
    "OracleEstimate",
    "CaptureTotal",
    "make_capture_spec",
    "capture_amplitude",
    "capture_amplitude_vectors",
    "ct_differential_cross_section",
    "ct_total_cross_section",
    "richardson_lambda_limit",
    "brute_force_oracle",
]

INTERACTIONS = ("ProtonElectron", "Internuclear", "Sum")
MODES = ("obk", "jacobi")


@dataclass(frozen=True)
class HydrogenicState:
    """1s state of effective charge Z_eff; phi(r) = sqrt(Z^3/pi) e^(-Zr)."""

    Z_eff: float
    n: int = 1

    def __post_init__(self):
        if self.Z_eff <= 0:
            raise DomainError("effective charge must be positive")
        if self.n != 1:
            raise DomainError("only 1s states are supported")

    @property
    def binding_energy(self):
        return -0.5 * self.Z_eff**2

    def position_wavefunction(self, r):
        Z = self.Z_eff
        return math.sqrt(Z**3 / math.pi) * np.exp(-Z * np.asarray(r, dtype=float))

    def momentum_wavefunction(self, k):
        """3-D transform of the 1s orbital, 8 sqrt(pi) Z^(5/2)/(Z^2+k^2)^2."""
        Z = self.Z_eff
        k = np.asarray(k, dtype=float)
        return 8.0 * math.sqrt(math.pi) * Z**2.5 / (Z**2 + k**2) ** 2


@dataclass(frozen=True)
class CaptureChannelSpec:
    """Kinematics plus initial/final states and the interaction choice."""

    kin: object
    energetics: object
    initial: HydrogenicState
    final: HydrogenicState
    interaction: str = "ProtonElectron"

    def __post_init__(self):
        if self.interaction not in INTERACTIONS:
            raise DomainError(
                f"unknown interaction {self.interaction!r}; options: {INTERACTIONS}"
            )
        if abs(self.energetics.eps_a - self.initial.binding_energy) > 1e-12:
            raise DomainError("eps_a must equal the initial state's binding energy")
        if abs(self.energetics.eps_b - self.final.binding_energy) > 1e-12:
            raise DomainError("eps_b must equal the final state's binding energy")

    @property
    def gamma_a(self):
        return self.kin.m / (self.kin.M_A + self.kin.m)

    @property
    def gamma_b(self):
        return self.kin.m / (self.kin.M_B + self.kin.m)


@dataclass(frozen=True)
class CaptureQuadrature:
    """Node counts for the 3-D momentum quadrature (jacobi internuclear)."""

    nk: int = 96
    nmu: int = 64
    nphi: int = 48
    k_scale: float = 4.0


@dataclass(frozen=True)
class OracleEstimate:
    value: complex
    error: float
    samples: int
    blocks: int


@dataclass(frozen=True)
class CaptureTotal:
    """Angular integral of the capture cross section."""

    value: float
    error: float
    evaluations: int


def make_capture_spec(A, B, Z_a, Z_b, v, interaction="ProtonElectron", units=None):
    """Spec for A-center 1s -> B-center 1s capture at relative speed v."""
    if v <= 0:
        raise DomainError("relative speed must be positive")
    kin = reduced_masses(A, B, units or ATOMIC_UNITS)
    initial = HydrogenicState(Z_a)
    final = HydrogenicState(Z_b)
    E_a = 0.5 * kin.mu_a * v**2
    energetics = channel_energetics(
        E_a, initial.binding_energy, final.binding_energy, kin
    )
    return CaptureChannelSpec(kin, energetics, initial, final, interaction)


def _require_open(spec):
    if spec.energetics.status != OPEN:
        raise DomainError("capture requires an open final channel")


def _canonical_vectors(spec, theta):
    if not 0.0 <= theta <= np.pi:
        raise DomainError("theta must lie in [0, pi]")
    p_a = spec.energetics.p_a
    p_b = spec.energetics.p_b
    p_a_vec = np.array([0.0, 0.0, p_a])
    p_b_vec = p_b * np.array([np.sin(theta), 0.0, np.cos(theta)])
    return p_a_vec, p_b_vec


def _screened_coulomb_ft(strength, lam, q2):
    # transform of strength * exp(-lam r)/r at squared momentum q2
    denom = lam**2 + q2
    if np.any(denom == 0.0):
        raise NumericalError(
            "unscreened Coulomb transform diverges at zero momentum transfer"
        )
    return 4.0 * np.pi * strength / denom


def _folded_interaction(Z_b, Z_B, lam, k2):
    """Transform of phi_b(u) * (-Z_B e^(-lam u)/u): one fold, one pole."""
    return -Z_B * math.sqrt(Z_b**3 / math.pi) * 4.0 * np.pi / ((Z_b + lam) ** 2 + k2)


def _overlap(Z_a, Z_b):
    """<phi_b|phi_a> for 1s orbitals on the same center."""
    return 8.0 * math.sqrt(Z_a**3 * Z_b**3) / (Z_a + Z_b) ** 3


def _form_factor(Z_a, Z_b, q2):
    """int phi_b phi_a e^{i q.r} d3r for same-center 1s orbitals."""
    s = Z_a + Z_b
    return 8.0 * math.sqrt(Z_a**3 * Z_b**3) * s / (s**2 + q2) ** 2


def _nn_momentum_quadrature(spec, lam, J_vec, Kb_vec, quad):
    """Z_A Z_B (2pi)^-3 int d3k phib(k) phia(|k-J|) 4pi/(lam^2+|k-Kb|^2)."""
    Z_A = spec.initial.Z_eff
    Z_B = spec.final.Z_eff
    J = float(np.linalg.norm(J_vec))
    Kb = float(np.linalg.norm(Kb_vec))
    if J > 0 and Kb > 0:
        cos_chi = float(np.dot(J_vec, Kb_vec) / (J * Kb))
        cos_chi = min(1.0, max(-1.0, cos_chi))
    else:
        cos_chi = 1.0
    sin_chi = math.sqrt(max(0.0, 1.0 - cos_chi**2))

    u, wu = np.polynomial.legendre.leggauss(quad.nk)
    kt = quad.k_scale
    k = kt * (1.0 + u) / (1.0 - u)
    dk = wu * kt * 2.0 / (1.0 - u) ** 2
    mu, wmu = np.polynomial.legendre.leggauss(quad.nmu)
    phi = 2.0 * np.pi * np.arange(quad.nphi) / quad.nphi
    wphi = 2.0 * np.pi / quad.nphi

    k_ = k[:, None, None]
    mu_ = mu[None, :, None]
    st_ = np.sqrt(1.0 - mu**2)[None, :, None]
    cphi = np.cos(phi)[None, None, :]

    phib = spec.final.momentum_wavefunction(k)[:, None, None]
    # J along the polar axis: |k - J| has no phi dependence
    ka2 = k_**2 - 2.0 * k_ * mu_ * J + J**2
    phia = spec.initial.momentum_wavefunction(np.sqrt(ka2))
    # K_b in the x-z plane at angle chi to J
    kdotKb = k_ * (st_ * sin_chi * cphi + mu_ * cos_chi) * Kb
    denom = lam**2 + k_**2 - 2.0 * kdotKb + Kb**2
    integrand = phib * phia * (4.0 * np.pi / denom)
    radial = (k**2 * dk)[:, None, None]
    total = np.sum(integrand * radial * wmu[None, :, None] * wphi)
    return Z_A * Z_B * total / (2.0 * np.pi) ** 3


def capture_amplitude_vectors(spec, p_a_vec, p_b_vec, lam=1.0, mode="obk", quad=None):
    """Capture amplitude for explicit momentum vectors.

    Only rotational invariants of (p_a_vec, p_b_vec) enter, so any
    rigid rotation of the pair leaves the value unchanged.
    """
    _require_open(spec)
    if mode not in MODES:
        raise DomainError(f"unknown coordinate mode {mode!r}; options: {MODES}")
    if lam < 0:
        raise DomainError("screening constant must be non-negative")
    quad = quad or CaptureQuadrature()
    p_a_vec = np.asarray(p_a_vec, dtype=float)
    p_b_vec = np.asarray(p_b_vec, dtype=float)
    Z_a = spec.initial.Z_eff
    Z_b = spec.final.Z_eff
    Z_A, Z_B = Z_a, Z_b

    if mode == "obk":
        q2 = float(np.sum((p_a_vec - p_b_vec) ** 2))
        pe = _screened_coulomb_ft(-Z_B, lam, q2) * _form_factor(Z_a, Z_b, q2)
        nn = _screened_coulomb_ft(Z_A * Z_B, lam, q2) * _overlap(Z_a, Z_b)
    else:
        ga = spec.gamma_a
        gb = spec.gamma_b
        K_a = (1.0 - ga) * p_a_vec - p_b_vec
        K_b = p_a_vec - (1.0 - gb) * p_b_vec
        J = ga * p_a_vec + gb * p_b_vec
        ka2 = float(np.sum(K_a**2))
        kb2 = float(np.sum(K_b**2))
        pe = _folded_interaction(
            Z_b, Z_B, lam, kb2
        ) * spec.initial.momentum_wavefunction(math.sqrt(ka2))
        nn = None
        if spec.interaction in ("Internuclear", "Sum"):
            nn = _nn_momentum_quadrature(spec, lam, J, K_b, quad)

    if spec.interaction == "ProtonElectron":
        return complex(pe)
    if spec.interaction == "Internuclear":
        return complex(nn)
    return complex(pe + nn)


def capture_amplitude(spec, theta, lam=1.0, mode="obk", quad=None):
    """Amplitude at scattering angle theta in the canonical frame."""
    p_a_vec, p_b_vec = _canonical_vectors(spec, theta)
    return capture_amplitude_vectors(spec, p_a_vec, p_b_vec, lam, mode, quad)


def ct_differential_cross_section(
    spec, theta, lam=1.0, mode="obk", quad=None, flux_ratio_power=2
):
    """dsigma/dOmega = (mu_b / 2 pi)^2 (p_b/p_a)^power |A|^2.

    Default power 2 squares the flux ratio; standard flux algebra gives
    power 1, hence the switch.
    """
    if flux_ratio_power not in (1, 2):
        raise DomainError("flux_ratio_power must be 1 or 2")
    A = capture_amplitude(spec, theta, lam, mode, quad)
    mu_b = spec.kin.mu_b
    ratio = spec.energetics.p_b / spec.energetics.p_a
    return (mu_b / (2.0 * np.pi)) ** 2 * ratio**flux_ratio_power * abs(A) ** 2


def richardson_lambda_limit(evaluate, lam0=1.0, rel_tol=1e-3):
    """lam -> 0 limit of a smooth quantity by two-step elimination.

    Evaluates at lam0/(1,2,4,8); the weights (8 A3 - 6 A2 + A1)/3
    cancel the linear and quadratic terms of the lam expansion. The
    error estimate is the spread between the two nested extrapolations;
    beyond rel_tol it raises instead of returning quietly.
    """
    if lam0 <= 0:
        raise DomainError("extrapolation needs a positive starting screening")
    A1, A2, A3, A4 = (evaluate(lam0 / s) for s in (1.0, 2.0, 4.0, 8.0))
    first = (8.0 * A3 - 6.0 * A2 + A1) / 3.0
    second = (8.0 * A4 - 6.0 * A3 + A2) / 3.0
    err = abs(second - first)
    scale = max(abs(first), abs(second))
    if scale > 0 and err > rel_tol * scale:
        raise NumericalError(
            "screening extrapolation did not settle; shrink lam0", estimate=err
        )
    return second, err


def ct_total_cross_section(
    spec,
    lam=1.0,
    mode="obk",
    quad=None,
    flux_ratio_power=2,
    theta_min=1e-7,
    theta_split=0.1,
    n_segments=12,
    seg_nodes=24,
    tail_nodes=64,
):
    """sigma = 2 pi int dsigma sin(theta) dtheta, forward-peak aware.

    Capture at heavy-particle momenta concentrates within milliradians,
    so [theta_min, theta_split] is covered by geometric segments with
    Gauss-Legendre nodes in each, the remainder by one rule, and the
    sub-theta_min cap by a flat-peak patch. The error estimate is the
    change under node doubling.
    """
    _require_open(spec)

    def dcs(theta):
        return ct_differential_cross_section(
            spec, theta, lam, mode, quad, flux_ratio_power
        )

    def quadrature(seg_n, tail_n):
        edges = np.geomspace(theta_min, theta_split, n_segments + 1)
        total = 0.0
        count = 0
        for lo, hi in zip(edges[:-1], edges[1:]):
            u, w = np.polynomial.legendre.leggauss(seg_n)
            t = 0.5 * (hi - lo) * u + 0.5 * (hi + lo)
            g = 0.5 * (hi - lo) * w
            total += sum(
                2.0 * np.pi * np.sin(ti) * dcs(ti) * gi for ti, gi in zip(t, g)
            )
            count += seg_n
        u, w = np.polynomial.legendre.leggauss(tail_n)
        t = 0.5 * (np.pi - theta_split) * u + 0.5 * (np.pi + theta_split)
        g = 0.5 * (np.pi - theta_split) * w
        total += sum(2.0 * np.pi * np.sin(ti) * dcs(ti) * gi for ti, gi in zip(t, g))
        count += tail_n
        # flat-peak cap below theta_min: dsigma is smooth at theta = 0
        total += np.pi * theta_min**2 * dcs(theta_min)
        return total, count + 1

    coarse, _ = quadrature(seg_nodes, tail_nodes)
    fine, count = quadrature(2 * seg_nodes, 2 * tail_nodes)
    if not np.isfinite(fine):
        raise NumericalError("angular quadrature produced a non-finite total")
    return CaptureTotal(value=fine, error=abs(fine - coarse), evaluations=count)


def _sample_iso_exp(U, kappa):
    """Map three uniforms to a 3-D point with density k^3 e^(-k r)/(8 pi)."""
    u = np.clip(U, 1e-15, 1.0 - 1e-15)
    r = scipy.special.gammaincinv(3.0, u[:, 0]) / kappa
    mu = 2.0 * u[:, 1] - 1.0
    phi = 2.0 * np.pi * u[:, 2]
    st = np.sqrt(1.0 - mu**2)
    vec = np.column_stack((r * st * np.cos(phi), r * st * np.sin(phi), r * mu))
    density = kappa**3 * np.exp(-kappa * r) / (8.0 * np.pi)
    return vec, r, density


def _oracle_plan(spec, lam, mode, interaction):
    """Importance-sampling constants; the second vector is the one the
    interaction decays in, so its rate always includes lam."""
    Z_a = spec.initial.Z_eff
    Z_b = spec.final.Z_eff
    if mode == "jacobi":
        kappa_s = Z_a
        kappa_w = Z_b + lam if interaction == "ProtonElectron" else lam
    else:
        kappa_s = Z_a + Z_b
        kappa_w = lam
    if kappa_w <= 0:
        raise DomainError(
            "oracle importance sampling needs lam > 0 for this mode/interaction"
        )
    return kappa_s, kappa_w


def _oracle_integrand(spec, lam, mode, interaction, p_a_vec, p_b_vec, s, w):
    """Raw 6-D integrand over the sampled pair (s, w), no reductions."""
    Z_B = spec.final.Z_eff
    Z_A = spec.initial.Z_eff
    phi_a = spec.initial.position_wavefunction
    phi_b = spec.final.position_wavefunction
    s_r = np.linalg.norm(s, axis=1)
    w_r = np.linalg.norm(w, axis=1)
    if mode == "obk":
        q_vec = p_a_vec - p_b_vec
        if interaction == "ProtonElectron":
            R = s - w
            V = -Z_B * np.exp(-lam * w_r) / w_r
        else:
            R = w
            V = Z_A * Z_B * np.exp(-lam * w_r) / w_r
        return phi_b(s_r) * phi_a(s_r) * V * np.exp(1j * (R @ q_vec))
    ga = spec.gamma_a
    gb = spec.gamma_b
    c = ga + gb - ga * gb
    if interaction == "ProtonElectron":
        # w is the outgoing electron coordinate r_b
        X = (1.0 - ga) * s - w
        V = -Z_B * np.exp(-lam * w_r) / w_r
        r_b_r = w_r
    else:
        # w is the internuclear separation
        X = -ga * s - w
        V = Z_A * Z_B * np.exp(-lam * w_r) / w_r
        r_b_r = np.linalg.norm(s + w, axis=1)
    R_out = c * s + (1.0 - gb) * X
    phase = np.exp(1j * ((X @ p_a_vec) - (R_out @ p_b_vec)))
    return phi_b(r_b_r) * phi_a(s_r) * V * phase


def _oracle_single(spec, theta, interaction, samples, lam, mode, seed, block, threads):
    kappa_s, kappa_w = _oracle_plan(spec, lam, mode, interaction)
    p_a_vec, p_b_vec = _canonical_vectors(spec, theta)
    n_blocks = max(2, math.ceil(samples / block))

    def block_mean(b):
        sob = scipy.stats.qmc.Sobol(d=6, scramble=True, seed=seed + b)
        U = sob.random(block)
        s, _, ps = _sample_iso_exp(U[:, :3], kappa_s)
        w, _, pw = _sample_iso_exp(U[:, 3:], kappa_w)
        vals = _oracle_integrand(
            spec, lam, mode, interaction, p_a_vec, p_b_vec, s, w
        ) / (ps * pw)
        return complex(np.mean(vals))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            means = list(pool.map(block_mean, range(n_blocks)))
    else:
        means = [block_mean(b) for b in range(n_blocks)]
    means = np.asarray(means)
    value = complex(np.mean(means))
    err = math.sqrt(
        (np.var(means.real, ddof=1) + np.var(means.imag, ddof=1)) / n_blocks
    )
    return OracleEstimate(value, err, n_blocks * block, n_blocks)


def brute_force_oracle(
    spec,
    theta,
    samples=1 << 20,
    lam=1.0,
    mode="obk",
    seed=7,
    block_size=1 << 15,
    n_threads=1,
):
    """Direct Sobol evaluation of the capture integral, value and error.

    Blocks get deterministic seeds (seed + block index) and the block
    means reduce in index order, so thread count cannot change the
    result. The Sum interaction runs its two terms separately and adds
    errors in quadrature.
    """
    _require_open(spec)
    if samples < 100000:
        raise DomainError("oracle needs at least 1e5 samples")
    if mode not in MODES:
        raise DomainError(f"unknown coordinate mode {mode!r}; options: {MODES}")
    if spec.interaction == "Sum":
        pe = _oracle_single(
            spec, theta, "ProtonElectron", samples, lam, mode, seed, block_size,
            n_threads,
        )
        nn = _oracle_single(
            spec, theta, "Internuclear", samples, lam, mode, seed, block_size,
            n_threads,
        )
        return OracleEstimate(
            pe.value + nn.value,
            math.hypot(pe.error, nn.error),
            pe.samples + nn.samples,
            pe.blocks + nn.blocks,
        )
    return _oracle_single(
        spec, theta, spec.interaction, samples, lam, mode, seed, block_size, n_threads
    )
