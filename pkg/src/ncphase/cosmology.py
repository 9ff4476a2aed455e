"""LCDM light-travel distance."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .constants import CODATA, KM_M, MPC_M
from .errors import NegativeRadicand, QuadratureFailure

DEFAULT_RTOL = 1e-10
MAX_SUBINTERVALS = 200


@dataclass(frozen=True)
class Cosmology:
    """Background parameters; ``H0`` in km/s/Mpc."""

    H0: float = 70.0
    omega_m: float = 0.27
    omega_lambda: float = 0.73
    omega_r: float = 0.0
    omega_k: float = 0.0

    def __post_init__(self):
        if not self.H0 > 0:
            raise ValueError("H0 must be positive")
        for name in ("omega_m", "omega_lambda", "omega_r"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def H0_si(self):
        """Hubble constant in 1/s."""
        return self.H0 * KM_M / MPC_M

    def hubble_distance(self, c=CODATA.c):
        """``c / H0`` in metres."""
        return c / self.H0_si


def hubble_E(z, cosmo=Cosmology()):
    """Dimensionless Hubble rate ``H(z)/H0``."""
    zp1 = 1.0 + np.asarray(z, dtype=float)
    radicand = (
        cosmo.omega_r * zp1**4
        + cosmo.omega_m * zp1**3
        + cosmo.omega_k * zp1**2
        + cosmo.omega_lambda
    )
    if np.any(radicand <= 0):
        raise NegativeRadicand(f"E(z)^2 <= 0 for z={z!r}")
    out = np.sqrt(radicand)
    return float(out) if out.ndim == 0 else out


def lookback_integral(z, cosmo=Cosmology(), rtol=DEFAULT_RTOL):
    """``int_0^z dz' / ((1+z') E(z'))`` by adaptive Gauss-Kronrod quadrature."""
    if z < 0:
        raise ValueError("redshift must be non-negative")
    if not 0 < rtol <= 1e-4:
        raise ValueError("rtol must lie in (0, 1e-4]")
    if rtol < 50 * np.finfo(float).eps:
        raise QuadratureFailure(f"rtol={rtol} is below double-precision reach")
    if z == 0:
        return 0.0

    def integrand(zz):
        return 1.0 / ((1.0 + zz) * hubble_E(zz, cosmo))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr, _, *failure = integrate.quad(
            integrand, 0.0, z, epsabs=0.0, epsrel=rtol, limit=MAX_SUBINTERVALS, full_output=1
        )
    # quad appends a message only when it gave up
    if failure:
        raise QuadratureFailure(f"quadrature did not reach rtol={rtol} at z={z}: {failure[0].splitlines()[0]}")
    if abserr > rtol * abs(value):
        raise QuadratureFailure(
            f"error estimate {abserr:.3g} exceeds rtol*|I| at z={z} (rtol={rtol})"
        )
    return value


def light_travel_distance(z, cosmo=Cosmology(), rtol=DEFAULT_RTOL, c=CODATA.c):
    """Light-travel distance in metres: ``(c/H0) int_0^z dz' / ((1+z') E(z'))``.

    Raises
    ------
    QuadratureFailure
        If the error estimate exceeds ``rtol`` within the subdivision budget.
    """
    return cosmo.hubble_distance(c) * lookback_integral(z, cosmo, rtol)


def light_travel_distances(zs, cosmo=Cosmology(), rtol=DEFAULT_RTOL, c=CODATA.c):
    return np.array([light_travel_distance(z, cosmo, rtol, c) for z in zs])
