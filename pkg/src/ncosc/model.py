"""Physical model: potential parameters, quantum numbers, the potential in
spherical and Cartesian coordinates, and the derived spectral indices.

The potential is

    V(r, theta) = -v0 + mu omega^2 r^2 / 2
                  + alpha hbar^2 / (2 mu r^2)
                  + beta  hbar^2 cos^2(theta) / (2 mu r^2 sin^2(theta))
                  + gamma hbar^2 / (2 mu r^2 cos^2(theta))

on r > 0, theta in (0, pi/2). The gamma barrier decouples the two
hemispheres, so the domain stays the upper half even at gamma = 0; in the
fully coupled-free limit alpha = beta = gamma = 0 the model therefore
reproduces only the odd-parity subset of the isotropic oscillator.

Separation constants:

    lambda    = sqrt(beta + m^2)
    k         = sqrt(gamma + 1/4)
    ell_tilde = sqrt((k + lambda + 2 n_theta + 1)^2 + alpha - beta) - 1/2

ell_tilde acts as the orbital quantum number of the reduced radial
problem. States need ell_tilde >= 0 to be normalizable; a negative
radicand means the fall-to-center regime, which is rejected rather than
modeled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import log_gamma

__all__ = [
    "PotentialParams",
    "QuantumNumbers",
    "AngularMode",
    "RadialMode",
    "potential_spherical",
    "potential_cartesian",
    "angular_lambda",
    "angular_k",
    "effective_ell",
    "angular_mode",
    "radial_mode",
]


@dataclass(frozen=True)
class PotentialParams:
    """Scales (hbar, mu, omega), energy offset v0, couplings alpha/beta/gamma."""

    hbar: float = 1.0
    mu: float = 1.0
    omega: float = 1.0
    v0: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self) -> None:
        if self.hbar <= 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if self.mu <= 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.gamma <= -0.25:
            raise ValueError(f"gamma must exceed -1/4, got {self.gamma}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial n, angular n_theta, azimuthal m."""

    n: int
    n_theta: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if self.n_theta < 0:
            raise ValueError(f"n_theta must be >= 0, got {self.n_theta}")


@dataclass(frozen=True)
class AngularMode:
    """One angular sector: indices (lam, k), degree n_theta, eigenvalue eps,
    and the norm that makes Theta orthonormal under sin(theta) d(theta)."""

    lam: float
    k: float
    n_theta: int
    eps: float
    norm: float


@dataclass(frozen=True)
class RadialMode:
    """Effective angular momentum, energy, and radial norm of one state."""

    ell_tilde: float
    energy: float
    norm: float


def potential_spherical(p: PotentialParams, r, theta):
    """V(r, theta); r > 0 and theta strictly inside (0, pi/2).

    Accepts scalars or broadcastable arrays.
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(r <= 0):
        raise ValueError("potential_spherical requires r > 0")
    if np.any(theta <= 0) or np.any(theta >= math.pi / 2):
        raise ValueError("potential_spherical requires 0 < theta < pi/2")
    c = p.hbar**2 / (2 * p.mu * r**2)
    sin2 = np.sin(theta) ** 2
    cos2 = np.cos(theta) ** 2
    out = (
        -p.v0
        + 0.5 * p.mu * p.omega**2 * r**2
        + p.alpha * c
        + p.beta * c * cos2 / sin2
        + p.gamma * c / cos2
    )
    return float(out) if out.ndim == 0 else out


def potential_cartesian(p: PotentialParams, x, y, z):
    """V in Cartesian form; agrees with potential_spherical under the
    spherical coordinate map.

    The grouping differs from the spherical form: the pure 1/r^2 term
    carries alpha - beta, the x^2+y^2 term carries beta.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    r2 = x**2 + y**2 + z**2
    rho2 = x**2 + y**2
    if np.any(r2 == 0):
        raise ValueError("potential_cartesian requires (x,y,z) != 0")
    if p.beta != 0 and np.any(rho2 == 0):
        raise ValueError("potential_cartesian requires x^2+y^2 > 0 when beta != 0")
    if p.gamma != 0 and np.any(z == 0):
        raise ValueError("potential_cartesian requires z != 0 when gamma != 0")
    c = p.hbar**2 / (2 * p.mu)
    out = -p.v0 + 0.5 * p.mu * p.omega**2 * r2 + (p.alpha - p.beta) * c / r2
    # the singular terms only enter when switched on, so 0/0 never forms
    if p.beta != 0:
        out = out + p.beta * c / rho2
    if p.gamma != 0:
        out = out + p.gamma * c / z**2
    return float(out) if np.ndim(out) == 0 else out


def angular_lambda(p: PotentialParams, m: int) -> float:
    """lambda = sqrt(beta + m^2); rejects non-bound sectors (negative radicand)."""
    radicand = p.beta + m * m
    if radicand < 0:
        raise ValueError(
            f"beta + m^2 must be >= 0 for a bound angular sector, got {radicand} (beta={p.beta}, m={m})"
        )
    return math.sqrt(radicand)


def angular_k(p: PotentialParams) -> float:
    """k = sqrt(gamma + 1/4) > 0."""
    if p.gamma <= -0.25:
        raise ValueError(f"gamma must exceed -1/4, got {p.gamma}")
    return math.sqrt(p.gamma + 0.25)


def effective_ell(p: PotentialParams, n_theta: int, m: int) -> float:
    """Effective orbital quantum number ell_tilde of the reduced radial problem.

    Raises:
        ValueError: negative radicand (fall-to-center regime) or
            ell_tilde < 0 (state not normalizable at the origin).
    """
    if n_theta < 0:
        raise ValueError(f"n_theta must be >= 0, got {n_theta}")
    base = angular_k(p) + angular_lambda(p, m) + 2 * n_theta + 1
    radicand = base * base + (p.alpha - p.beta)
    if radicand < 0:
        raise ValueError(
            f"(k+lambda+2*n_theta+1)^2 + alpha - beta = {radicand} < 0: fall-to-center regime, no bound state"
        )
    ell = math.sqrt(radicand) - 0.5
    if ell < 0:
        raise ValueError(
            f"ell_tilde = {ell} < 0: state not normalizable at the origin (inadmissible sector)"
        )
    return ell


def angular_mode(p: PotentialParams, n_theta: int, m: int) -> AngularMode:
    """Build the angular sector data for (n_theta, m).

    The norm squares to 2(2n_theta+k+lam+1) n_theta! Gamma(n_theta+k+lam+1)
    / [Gamma(n_theta+k+1) Gamma(n_theta+lam+1)], evaluated through log-gamma
    differences so large degrees stay in range.
    """
    if n_theta < 0:
        raise ValueError(f"n_theta must be >= 0, got {n_theta}")
    lam = angular_lambda(p, m)
    k = angular_k(p)
    s = 2 * n_theta + k + lam + 1
    eps = (p.hbar**2 / (2 * p.mu)) * s * s
    log_norm_sq = (
        math.log(2 * s)
        + log_gamma(n_theta + 1.0)
        + log_gamma(n_theta + k + lam + 1)
        - log_gamma(n_theta + k + 1)
        - log_gamma(n_theta + lam + 1)
    )
    return AngularMode(lam=lam, k=k, n_theta=n_theta, eps=eps, norm=math.exp(0.5 * log_norm_sq))


def radial_mode(p: PotentialParams, n: int, n_theta: int, m: int) -> RadialMode:
    """Build the radial data for state (n, n_theta, m).

    energy = (2n + ell_tilde + 3/2) hbar omega - v0; the norm squares to
    2 (mu omega/hbar)^{3/2} n! / Gamma(n + ell_tilde + 3/2).
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    ell = effective_ell(p, n_theta, m)
    energy = (2 * n + ell + 1.5) * p.hbar * p.omega - p.v0
    scale = p.mu * p.omega / p.hbar
    log_norm_sq = math.log(2.0) + 1.5 * math.log(scale) + log_gamma(n + 1.0) - log_gamma(n + ell + 1.5)
    return RadialMode(ell_tilde=ell, energy=energy, norm=math.exp(0.5 * log_norm_sq))
