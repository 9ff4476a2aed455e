"""Deformed relativistic dispersion relation in NC phase-space.

Pulling the free-particle extended Hamiltonian back through the Darboux map
replaces the momentum by the shifted momentum ``p + (eta/2hbar) N x``, where
``N`` is the unit constant-entry skew matrix. Only ``eta`` enters; ``theta``
is accepted for convenience and ignored.

All vector-valued functions broadcast over leading axes: ``x`` and ``p`` may
be arrays of shape ``(..., n)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidDimension,
    NegativeDiscriminant,
    SuperluminalBoost,
    UndefinedVelocity,
    ZeroMass,
)
from .symplectic import NCParams, skew_pattern

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParticleSpec:
    mass: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        if self.mass < 0:
            raise ValueError("mass must be non-negative")
        if self.c <= 0:
            raise ValueError("c must be positive")


@dataclass(frozen=True)
class ExtendedPhasePoint:
    """Point ``(t, x, H, p)`` of the extended phase-space; ``H`` is the energy coordinate."""

    t: float
    x: np.ndarray
    H: float
    p: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if x.shape != p.shape or x.ndim != 1:
            raise InvalidDimension("x and p must be vectors of equal length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(p))
                and np.isfinite(self.t) and np.isfinite(self.H)):
            raise ValueError("phase point components must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class SphericalState:
    """Position in spherical coordinates and physical momentum components.

    ``theta`` is the polar angle from +z, ``phi`` the azimuth from +x;
    ``p_r``, ``p_theta``, ``p_phi`` are components along the orthonormal
    vectors r-hat, theta-hat, phi-hat.
    """

    r: float
    theta: float
    phi: float
    p_r: float = 0.0
    p_theta: float = 0.0
    p_phi: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")
        if not 0 <= self.theta <= np.pi:
            raise ValueError("theta must lie in [0, pi]")
        if not 0 <= self.phi < 2 * np.pi:
            raise ValueError("phi must lie in [0, 2 pi)")

    def unit_vectors(self):
        st, ct = np.sin(self.theta), np.cos(self.theta)
        sp, cp = np.sin(self.phi), np.cos(self.phi)
        r_hat = np.array([st * cp, st * sp, ct])
        theta_hat = np.array([ct * cp, ct * sp, -st])
        phi_hat = np.array([-sp, cp, 0.0])
        return r_hat, theta_hat, phi_hat

    def to_cartesian(self):
        """Return ``(x, p)`` as Cartesian 3-vectors."""
        r_hat, theta_hat, phi_hat = self.unit_vectors()
        x = self.r * r_hat
        p = self.p_r * r_hat + self.p_theta * theta_hat + self.p_phi * phi_hat
        return x, p

    @property
    def momentum(self):
        return float(np.sqrt(self.p_r**2 + self.p_theta**2 + self.p_phi**2))


@dataclass(frozen=True)
class SphericalDispersion:
    energy: float
    energy_squared: float
    f: float
    g: float
    mode: str
    coefficients: dict = field(default_factory=dict)


def _eta_over_2hbar(params):
    if params is None:
        return 0.0
    if params.theta:
        logger.debug("theta=%g does not enter the dispersion relation", params.theta)
    return params.eta / (2 * params.hbar)


def shifted_momentum(x, p, params=None):
    """``p + (eta/2hbar) N x`` with ``N`` the unit skew matrix of dimension ``n``."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    if x.shape != p.shape:
        raise InvalidDimension("x and p must have the same shape")
    n = x.shape[-1]
    return p + _eta_over_2hbar(params) * x @ skew_pattern(n).T


def extended_hamiltonian(point, spec, params=None):
    """``H1 = [(p + (eta/2hbar) N x)^2 - H^2/c^2] / 2m + m c^2 / 2``.

    ``params=None`` (or ``eta = 0``) gives the Lorentz-invariant commutative
    extension. Massless particles have no ``H1``; use `reduce_on_shell`.
    """
    if spec.mass == 0:
        raise ZeroMass("the extended Hamiltonian needs m > 0")
    k = shifted_momentum(point.x, point.p, params)
    m, c = spec.mass, spec.c
    return float((k @ k - point.H**2 / c**2) / (2 * m) + 0.5 * m * c**2)


def reduce_on_shell(x, p, spec, params=None):
    """On-shell energy ``E = sqrt(c^2 |p + (eta/2hbar) N x|^2 + m^2 c^4)``.

    This is the value of the energy coordinate solving ``H1 = 0``.
    """
    k = shifted_momentum(x, p, params)
    c = spec.c
    return np.sqrt(c**2 * np.sum(k * k, axis=-1) + spec.mass**2 * c**4)


def group_velocity(x, p, spec, params=None):
    """``c' = grad_p E = (c^2/E) (p + (eta/2hbar) N x)``; ``|c'| = c`` when ``m = 0``."""
    k = shifted_momentum(x, p, params)
    energy = reduce_on_shell(x, p, spec, params)
    if np.any(energy == 0):
        raise UndefinedVelocity("E = 0: massless particle at zero shifted momentum")
    return spec.c**2 * k / np.expand_dims(energy, -1)


def angular_f(theta, phi):
    """Angular weight of the radial energy shift; ``|N x|^2 = 2 r^2 f``."""
    return 0.5 * (
        2
        - np.cos(phi) * np.sin(2 * theta)
        + np.sin(2 * theta) * np.sin(phi)
        + np.sin(theta) ** 2 * np.sin(2 * phi)
    )


def angular_g_printed(theta, phi):
    """The ``g(theta, phi)`` quoted in the literature.

    Equals the p_phi coefficient `phi_coefficient` plus ``sin(phi)``, so it
    agrees with the Cartesian result only where ``sin(phi) = 0`` at the pole.
    Reported for comparison; `spherical_dispersion` does not use it.
    """
    return np.cos(theta) * np.cos(phi) - np.cos(theta) * np.sin(phi) + np.sin(phi) - np.sin(theta)


def theta_coefficient(theta, phi):
    """``theta_hat . N r_hat``: weight of ``p_theta`` in the cross term."""
    return np.cos(phi) + np.sin(phi)


def phi_coefficient(theta, phi):
    """``phi_hat . N r_hat``: weight of ``p_phi`` in the cross term."""
    return np.cos(theta) * np.cos(phi) - np.cos(theta) * np.sin(phi) - np.sin(theta)


def spherical_dispersion(state, params, mode="full", c=1.0):
    """Massless dispersion in spherical coordinates (n = 3).

    ``full``::

        E^2 = c^2 p^2 + (c^2 eta/hbar) r [ (eta/2hbar) r f
              + p_theta (cos phi + sin phi)
              + p_phi (cos th cos phi - cos th sin phi - sin th) ]

    ``radial`` assumes ``p_theta = p_phi = 0`` and keeps only
    ``E^2 = c^2 p_r^2 + (c^2 eta^2 / 2 hbar^2) r^2 f``.

    Raises
    ------
    NegativeDiscriminant
        If the evaluated ``E^2`` is negative.
    ValueError
        For an unknown mode, or transverse momentum in radial mode.
    """
    th, ph, r = state.theta, state.phi, state.r
    eta, hbar = params.eta, params.hbar
    f = float(angular_f(th, ph))
    g = float(angular_g_printed(th, ph))
    if mode == "full":
        a = float(theta_coefficient(th, ph))
        b = float(phi_coefficient(th, ph))
        e2 = c**2 * state.momentum**2 + (c**2 * eta / hbar) * r * (
            eta / (2 * hbar) * r * f + state.p_theta * a + state.p_phi * b
        )
        coeffs = {"p_theta": a, "p_phi": b}
    elif mode == "radial":
        if state.p_theta or state.p_phi:
            raise ValueError("radial mode requires p_theta = p_phi = 0")
        e2 = c**2 * state.p_r**2 + c**2 * eta**2 / (2 * hbar**2) * r**2 * f
        coeffs = {}
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'full' or 'radial'")
    if e2 < 0:
        raise NegativeDiscriminant(f"E^2 = {e2!r} < 0")
    return SphericalDispersion(float(np.sqrt(e2)), float(e2), f, g, mode, coeffs)


def relative_energy_shift(r, energy, params, c=1.0):
    """Leading-order ``Delta E / E = eta^2 c^2 r^2 / (4 hbar^2 E^2)``."""
    if energy <= 0:
        raise ValueError("energy must be positive")
    if r < 0:
        raise ValueError("r must be non-negative")
    return params.eta**2 * c**2 * r**2 / (4 * params.hbar**2 * energy**2)


def eta_from_shift(shift, r, energy, hbar=1.0, c=1.0):
    """Invert `relative_energy_shift` for ``eta``."""
    if shift < 0:
        raise ValueError("shift must be non-negative")
    return 2 * hbar * energy * np.sqrt(shift) / (c * r)


def _boost_four_vector(scalar, vec, beta):
    b2 = float(beta @ beta)
    if b2 == 0:
        return scalar, vec.copy()
    gamma = 1.0 / np.sqrt(1.0 - b2)
    bv = float(beta @ vec)
    new_scalar = gamma * (scalar - bv)
    new_vec = vec + ((gamma - 1.0) * bv / b2 - gamma * scalar) * beta
    return new_scalar, new_vec


def lorentz_boost(point, beta, spec):
    """Boost ``(ct, x)`` and ``(H/c, p)`` by velocity ``beta * c``.

    ``beta`` has the same dimension as ``x``.
    """
    beta = np.asarray(beta, dtype=float)
    if beta.shape != point.x.shape:
        raise InvalidDimension("beta must match the spatial dimension")
    if not beta @ beta < 1.0:
        raise SuperluminalBoost(f"|beta| = {np.sqrt(beta @ beta)} >= 1")
    c = spec.c
    ct, x = _boost_four_vector(c * point.t, point.x, beta)
    e_over_c, p = _boost_four_vector(point.H / c, point.p, beta)
    return ExtendedPhasePoint(ct / c, x, e_over_c * c, p)


def on_shell_point(x, p, spec, params=None, t=0.0):
    """Extended phase point with ``H`` set to the on-shell energy."""
    energy = float(reduce_on_shell(x, p, spec, params))
    return ExtendedPhasePoint(t, x, energy, p)


__all__ = [
    "NCParams",
    "ParticleSpec",
    "ExtendedPhasePoint",
    "SphericalState",
    "SphericalDispersion",
    "shifted_momentum",
    "extended_hamiltonian",
    "reduce_on_shell",
    "group_velocity",
    "angular_f",
    "angular_g_printed",
    "theta_coefficient",
    "phi_coefficient",
    "spherical_dispersion",
    "relative_energy_shift",
    "eta_from_shift",
    "lorentz_boost",
    "on_shell_point",
]
