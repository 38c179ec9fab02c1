"""Closed-form bound-state data: energies, angular and radial
eigenfunctions, full normalized wavefunctions, and state enumeration.

Wavefunctions factorize as psi = R(r) Theta(theta) e^{i m phi} / sqrt(2 pi)
with R orthonormal under r^2 dr on (0, inf) and Theta orthonormal under
sin(theta) d(theta) on (0, pi/2). The combined normalization constant of an
EigenState is kept alongside the factor norms; the two agree to rounding,
which is one of the invariants the test-suite pins down.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .model import (
    AngularMode,
    PotentialParams,
    QuantumNumbers,
    RadialMode,
    angular_k,
    angular_lambda,
    angular_mode,
    effective_ell,
    radial_mode,
)
from .specfun import jacobi, laguerre, laguerre_all, log_gamma

__all__ = [
    "EigenState",
    "energy",
    "angular_energy",
    "angular_wavefunction",
    "radial_wavefunction",
    "full_wavefunction",
    "eigenstate",
    "enumerate_states",
]


@dataclass(frozen=True)
class EigenState:
    """One bound state: quantum numbers, factor modes, combined norm."""

    qn: QuantumNumbers
    angular: AngularMode
    radial: RadialMode
    total_norm: float

    @property
    def energy(self) -> float:
        return self.radial.energy


def energy(p: PotentialParams, qn: QuantumNumbers) -> float:
    """E = (2n + ell_tilde + 3/2) hbar omega - v0."""
    ell = effective_ell(p, qn.n_theta, qn.m)
    return (2 * qn.n + ell + 1.5) * p.hbar * p.omega - p.v0


def angular_energy(p: PotentialParams, n_theta: int, m: int) -> float:
    """Angular eigenvalue eps(n_theta) = (hbar^2/2mu)(2 n_theta + k + lambda + 1)^2."""
    if n_theta < 0:
        raise ValueError(f"n_theta must be >= 0, got {n_theta}")
    s = 2 * n_theta + angular_k(p) + angular_lambda(p, m) + 1
    return (p.hbar**2 / (2 * p.mu)) * s * s


def angular_wavefunction(mode: AngularMode, theta):
    """Theta(theta) = norm (sin theta)^lam (cos theta)^{k+1/2} P_{n_theta}^{(lam,k)}(cos 2theta).

    Orthonormal under the sin(theta) d(theta) measure on (0, pi/2).
    Accepts scalar or ndarray theta strictly inside the interval.
    """
    th = np.asarray(theta, dtype=float)
    if np.any(th <= 0) or np.any(th >= math.pi / 2):
        raise ValueError("angular_wavefunction requires 0 < theta < pi/2")
    val = (
        mode.norm
        * np.sin(th) ** mode.lam
        * np.cos(th) ** (mode.k + 0.5)
        * jacobi(mode.n_theta, mode.lam, mode.k, np.cos(2 * th))
    )
    return float(val) if np.ndim(theta) == 0 else val


def radial_wavefunction(p: PotentialParams, mode: RadialMode, n: int, r):
    """R(r) = norm e^{-mu omega r^2/2 hbar} (sqrt(mu omega/hbar) r)^{ell} L_n^{ell+1/2}(mu omega r^2/hbar).

    Orthonormal under the r^2 dr measure on (0, inf). Accepts scalar or
    ndarray r > 0.
    """
    ra = np.asarray(r, dtype=float)
    if np.any(ra <= 0):
        raise ValueError("radial_wavefunction requires r > 0")
    q = np.sqrt(p.mu * p.omega / p.hbar) * ra
    x = q * q
    val = mode.norm * np.exp(-0.5 * x) * q**mode.ell_tilde * laguerre(n, mode.ell_tilde + 0.5, x)
    return float(val) if np.ndim(r) == 0 else val


def full_wavefunction(p: PotentialParams, qn: QuantumNumbers, r, theta, phi):
    """psi(r, theta, phi) = R Theta e^{i m phi} / sqrt(2 pi), unit norm under
    r^2 sin(theta) dr d(theta) d(phi) over the half-space theta < pi/2."""
    st = eigenstate(p, qn.n, qn.n_theta, qn.m)
    rad = radial_wavefunction(p, st.radial, qn.n, r)
    ang = angular_wavefunction(st.angular, theta)
    ph = np.exp(1j * qn.m * np.asarray(phi, dtype=float))
    val = rad * ang * ph / math.sqrt(2 * math.pi)
    return complex(val) if np.ndim(val) == 0 else val


def eigenstate(p: PotentialParams, n: int, n_theta: int, m: int) -> EigenState:
    """Assemble the EigenState for (n, n_theta, m), rejecting inadmissible sectors."""
    qn = QuantumNumbers(n=n, n_theta=n_theta, m=m)
    ang = angular_mode(p, n_theta, m)
    rad = radial_mode(p, n, n_theta, m)
    # combined constant of the full wavefunction; equals
    # radial.norm * angular.norm / sqrt(2 pi) up to rounding
    s = 2 * n_theta + ang.k + ang.lam + 1
    scale = p.mu * p.omega / p.hbar
    log_total_sq = (
        math.log(2 / math.pi)
        + 1.5 * math.log(scale)
        + math.log(s)
        + log_gamma(n + 1.0)
        + log_gamma(n_theta + 1.0)
        + log_gamma(n_theta + ang.k + ang.lam + 1)
        - log_gamma(n_theta + ang.k + 1)
        - log_gamma(n_theta + ang.lam + 1)
        - log_gamma(n + rad.ell_tilde + 1.5)
    )
    return EigenState(qn=qn, angular=ang, radial=rad, total_norm=math.exp(0.5 * log_total_sq))


def _sector_floor(p: PotentialParams, n_theta: int, m: int) -> float | None:
    """Ground energy of the (n_theta, m) sector, or None if inadmissible."""
    base = angular_k(p) + angular_lambda(p, m) + 2 * n_theta + 1
    radicand = base * base + (p.alpha - p.beta)
    if radicand < 0.25:  # covers both collapse and ell_tilde < 0
        return None
    return (math.sqrt(radicand) + 1.0) * p.hbar * p.omega - p.v0


def enumerate_states(p: PotentialParams, e_max: float, m_max: int) -> list[EigenState]:
    """All admissible states with |m| <= m_max and energy <= e_max.

    Sorted by (energy, n, n_theta, m). The scan prunes on monotonicity:
    at fixed m the sector floor rises with n_theta, and within a sector
    the energy rises by 2 hbar omega per radial node, so each loop
    terminates from the energy bound alone. Inadmissible sectors
    (non-bound lambda, fall-to-center radicand, ell_tilde < 0) hold no
    states and are skipped; admissibility is restored at larger n_theta
    or |m|, so skipping never ends a scan early.
    """
    if not math.isfinite(e_max):
        raise ValueError(f"e_max must be finite, got {e_max}")
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")
    hw = p.hbar * p.omega
    states: list[EigenState] = []
    for m in range(0, m_max + 1):
        if p.beta + m * m < 0:
            continue
        for n_theta in itertools.count(0):
            floor = _sector_floor(p, n_theta, m)
            if floor is None:
                continue
            if floor > e_max:
                break
            n = 0
            while floor + 2 * n * hw <= e_max:
                for mm in {m, -m}:
                    states.append(eigenstate(p, n, n_theta, mm))
                n += 1
    states.sort(key=lambda s: (s.radial.energy, s.qn.n, s.qn.n_theta, s.qn.m))
    return states


def radial_profiles(p: PotentialParams, ell: float, n_max: int, r) -> np.ndarray:
    """Stacked radial eigenfunctions R_0..R_{n_max} at fixed ell_tilde.

    Shares one Laguerre recurrence pass across all degrees; spectral sums
    and quadrature loops call this instead of radial_wavefunction per n.
    """
    ra = np.atleast_1d(np.asarray(r, dtype=float))
    scale = p.mu * p.omega / p.hbar
    x = scale * ra * ra
    lag = laguerre_all(n_max, ell + 0.5, x)
    ns = np.arange(n_max + 1)
    log_norm = 0.5 * (
        math.log(2.0)
        + 1.5 * math.log(scale)
        + np.array([log_gamma(n + 1.0) - log_gamma(n + ell + 1.5) for n in ns])
    )
    profile = np.exp(-0.5 * x) * np.sqrt(scale * ra * ra) ** ell
    return np.exp(log_norm)[:, None] * profile[None, :] * lag
