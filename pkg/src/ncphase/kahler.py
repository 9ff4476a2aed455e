"""Compatible (omega, J, g) triplets on NC phase-space.

The almost complex structure is specified by its action on the Hamiltonian
vector fields of the coordinate functions, ``X_f^i = -omega^{ij} d_j f``.
For each conjugate pair ``(a, b)`` with ratio ``r`` we use::

    J X_a = -r X_b,      J X_b = X_a / r

with ``r = sqrt(theta/eta)`` for the spatial pairs and ``r = 1`` for the
commutative and ``(t, H)`` pairs. The metric is ``g(X, Y) = omega(X, J Y)``.

With ``omega`` equal to the inverse of the NC Poisson tensor this gives
``g(X_q, X_q) = sqrt(theta/eta)``, ``g(X_k, X_k) = sqrt(eta/theta)``,
the identity metric in the commutative case and ``-1`` on the time and
energy fields of the extended space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRatio, IncompatibleACS, InvalidDimension
from .symplectic import (
    CoordinateLayout,
    NCParams,
    SkewForm,
    as_poisson,
    as_symplectic,
    build_extended_form,
    build_nc_inverse_symplectic,
    canonical_poisson,
    compare_printed_form,
)

COMPAT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class AlmostComplexStructure:
    """Components ``J^i_j`` in the coordinate basis of ``layout``."""

    matrix: np.ndarray
    layout: CoordinateLayout

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (self.layout.dim, self.layout.dim):
            raise InvalidDimension("ACS shape does not match layout")
        scale = max(1.0, np.abs(m).max() ** 2)
        if np.abs(m @ m + np.eye(len(m))).max() > 1e-12 * scale:
            raise ValueError("matrix does not square to -Id")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class CompatibleTriplet:
    omega: SkewForm
    acs: AlmostComplexStructure
    metric: np.ndarray

    @property
    def layout(self):
        return self.omega.layout

    def hamiltonian_fields(self):
        """Columns are the vector fields ``X_{z^i}`` of the coordinate functions."""
        return -as_poisson(self.omega).matrix

    def field_metric(self):
        """``g(X_{z^i}, X_{z^j})`` on the Hamiltonian vector fields."""
        x = self.hamiltonian_fields()
        return x.T @ self.metric @ x

    def compatibility_residual(self):
        """``max |g_ij - omega(e_i, J e_j)|`` relative to ``max |g|``."""
        direct = self.omega.matrix @ self.acs.matrix
        return float(np.abs(self.metric - direct).max() / np.abs(self.metric).max())

    def acs_residual(self):
        j = self.acs.matrix
        return float(np.abs(j @ j + np.eye(len(j))).max())

    def signature(self):
        """Number of (positive, negative) eigenvalues of the metric."""
        w = np.linalg.eigvalsh(self.metric)
        return int(np.sum(w > 0)), int(np.sum(w < 0))


def _ratio(params):
    if params.theta == 0 and params.eta == 0:
        return 1.0
    if params.theta == 0 or params.eta == 0:
        raise DegenerateRatio(
            "sqrt(theta/eta) is undefined when exactly one of theta, eta vanishes"
        )
    return float(np.sqrt(params.theta / params.eta))


def build_acs(params, form):
    """Almost complex structure compatible with ``form``.

    Parameters
    ----------
    params : NCParams
        Supplies the ratio ``sqrt(theta/eta)``; ``theta = eta = 0`` selects
        the canonical structure.
    form : SkewForm
        Either the 2-form or its Poisson tensor, plain or extended layout.

    Raises
    ------
    DegenerateRatio
        If exactly one of ``theta``, ``eta`` is zero.
    """
    layout = form.layout
    r = _ratio(params)
    # action of J on the field basis: J X = X @ action
    action = np.zeros((layout.dim, layout.dim))
    for a, b in zip(layout.position_slots, layout.momentum_slots):
        action[b, a] = -r
        action[a, b] = 1.0 / r
    if layout.extended:
        t, h = layout.time_energy_slots
        action[h, t] = -1.0
        action[t, h] = 1.0
    fields = -as_poisson(form).matrix
    j = fields @ action @ np.linalg.inv(fields)
    return AlmostComplexStructure(j, layout)


def build_metric(form, acs, tol=COMPAT_TOL):
    """Complete ``(form, acs)`` into a compatible triplet.

    The metric is first evaluated on the Hamiltonian vector fields,
    ``G_kl = omega(X_k, J X_l)``, then converted to coordinate components via
    ``g_ij = omega_ik omega_jl G_kl``.

    Raises
    ------
    IncompatibleACS
        If ``J^T omega J != omega`` or the resulting metric is not symmetric,
        beyond ``tol`` relative.
    """
    omega = as_symplectic(form)
    w = omega.matrix
    j = acs.matrix
    if acs.layout != omega.layout:
        raise IncompatibleACS("ACS and form use different layouts")
    scale = np.abs(w).max()
    if np.abs(j.T @ w @ j - w).max() > tol * scale:
        raise IncompatibleACS("J does not preserve omega")
    fields = -as_poisson(omega).matrix
    on_fields = fields.T @ w @ j @ fields
    g = w @ on_fields @ w.T
    if np.abs(g - g.T).max() > tol * np.abs(g).max():
        raise IncompatibleACS("omega(X, JY) is not symmetric")
    g = 0.5 * (g + g.T)
    g.setflags(write=False)
    return CompatibleTriplet(omega, acs, g)


def build_triplet(params, n=2, extended=False):
    """Triplet for the NC phase-space of ``params`` in dimension ``n``."""
    form = build_nc_inverse_symplectic(params, n)
    if extended:
        form = build_extended_form(form)
    return build_metric(form, build_acs(params, form))


def pfaffian(matrix):
    """Pfaffian of a real skew-symmetric matrix.

    Skew Gaussian elimination with partial pivoting (Parlett-Reid).
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n % 2:
        return 0.0
    pf = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.abs(a[k + 1:, k]).argmax())
        if kp != k + 1:
            a[[k + 1, kp], :] = a[[kp, k + 1], :]
            a[:, [k + 1, kp]] = a[:, [kp, k + 1]]
            pf = -pf
        if a[k + 1, k] == 0.0:
            return 0.0
        pf *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k, k + 2:] / a[k, k + 1]
            col = a[k + 2:, k + 1]
            a[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return pf


def canonical_pfaffian(layout):
    """Pfaffian of the commutative 2-form in ``layout``; used to fix the sign."""
    return pfaffian(np.linalg.inv(canonical_poisson(layout)))


def volume_forms(triplet):
    """Metric and symplectic volume densities per unit coordinate volume.

    Returns
    -------
    vol_g : float
        ``sqrt(|det g|)``.
    vol_omega : float
        ``Pf(omega)``, normalised so the commutative form has volume +1.
    """
    vol_g = float(np.sqrt(abs(np.linalg.det(triplet.metric))))
    vol_omega = pfaffian(triplet.omega.matrix) / canonical_pfaffian(triplet.layout)
    return vol_g, float(vol_omega)


def printed_metric(params, extended=False):
    """The closed-form n=2 metric matrix (plain 4x4 or extended 6x6) from the literature.

    Layout is ``[q1, q2, k1, k2]`` or ``[t, q1, q2, H, k1, k2]``.
    """
    th, et, hb = params.theta, params.eta, params.hbar
    if th <= 0 or et <= 0:
        raise DegenerateRatio("the printed metric needs theta > 0 and eta > 0")
    den = (th * et - hb**2) ** 2
    dq = hb**2 * (np.sqrt(et / th) * hb**2 - np.sqrt(et**3 * th)) / den
    dk = hb**2 * (np.sqrt(th / et) * hb**2 - np.sqrt(et * th**3)) / den
    off = hb * np.sqrt(et * th) / (hb**2 - th * et)
    g = np.array(
        [
            [dq, 0, 0, off],
            [0, dq, -off, 0],
            [0, -off, dk, 0],
            [off, 0, 0, dk],
        ]
    )
    if not extended:
        return g
    layout = CoordinateLayout(2, extended=True)
    out = np.zeros((6, 6))
    slots = layout.position_slots + layout.momentum_slots
    out[np.ix_(slots, slots)] = g
    for s in layout.time_energy_slots:
        out[s, s] = -1.0
    return out


def proportionality(metric, reference, zero_tol=1e-14):
    """Fit ``metric ~ scale * reference`` entrywise.

    Returns ``(scale, spread)`` where ``spread`` is the largest relative
    deviation of an individual entry ratio from ``scale``. Entries that are
    zero in ``reference`` must be zero (to ``zero_tol`` relative) in
    ``metric``; otherwise ``spread`` is infinite.
    """
    metric = np.asarray(metric, dtype=float)
    reference = np.asarray(reference, dtype=float)
    mask = np.abs(reference) > zero_tol * np.abs(reference).max()
    if np.any(np.abs(metric[~mask]) > zero_tol * np.abs(metric).max()):
        return float("nan"), float("inf")
    ratios = metric[mask] / reference[mask]
    scale = float(np.median(ratios))
    spread = float(np.abs(ratios - scale).max() / abs(scale))
    return scale, spread


def limit_metric(alpha, n=2):
    """Fixed-ratio (``theta = alpha * eta``) commutative limit of the metric."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return np.diag([alpha**-0.5] * n + [alpha**0.5] * n)


def commutative_limit(alpha, eta_sequence, hbar=1.0, n=2):
    """Metrics along ``theta = alpha * eta`` for each ``eta`` in ``eta_sequence``."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    metrics = []
    for eta in eta_sequence:
        if eta <= 0:
            raise ValueError("eta_sequence must contain positive values")
        metrics.append(build_triplet(NCParams(alpha * eta, eta, hbar), n).metric)
    return metrics


def commutative_triplet(n=2, hbar=1.0, extended=False):
    return build_triplet(NCParams.commutative(hbar), n, extended)


def geometry_report(params, n=2, extended=False, limit_alpha=None):
    """JSON-ready summary of the triplet and its comparisons with printed formulas."""
    poisson = build_nc_inverse_symplectic(params, n)
    form = build_extended_form(poisson) if extended else poisson
    triplet = build_metric(form, build_acs(params, form))
    vol_g, vol_omega = volume_forms(triplet)
    c = params.coupling
    report = {
        "inputs": {"theta": params.theta, "eta": params.eta, "hbar": params.hbar,
                   "n": n, "extended": extended},
        "layout": triplet.layout.labels,
        "omega": triplet.omega.matrix.tolist(),
        "omega_inverse": as_poisson(triplet.omega).matrix.tolist(),
        "J": triplet.acs.matrix.tolist(),
        "g": triplet.metric.tolist(),
        "g_on_hamiltonian_fields": triplet.field_metric().tolist(),
        "signature": list(triplet.signature()),
        "checks": {
            "acs_residual": triplet.acs_residual(),
            "compatibility_residual": triplet.compatibility_residual(),
        },
        "volume": {
            "vol_g": vol_g,
            "vol_omega": vol_omega,
            "pfaffian_closed_form": 1.0 / (1.0 - c) if n == 2 else 1.0 / (1.0 - 3.0 * c),
            # printed normalisation hbar^4/(hbar^2 - eta*theta); differs by a power of hbar
            "printed_closed_form": params.hbar**4 / (params.hbar**2 - params.eta * params.theta),
        },
    }
    report["volume"]["printed_matches"] = bool(
        np.isclose(report["volume"]["printed_closed_form"], vol_omega, rtol=1e-10, atol=0)
    )
    if n == 2:
        report["printed_form_comparison"] = compare_printed_form(params, n)
        if params.theta > 0 and params.eta > 0:
            scale, spread = proportionality(triplet.metric, printed_metric(params, extended))
            report["printed_metric_comparison"] = {"scale": scale, "spread": spread}
    if limit_alpha is not None:
        etas = [10.0**-k for k in range(1, 7)]
        target = limit_metric(limit_alpha, n)
        metrics = commutative_limit(limit_alpha, etas, params.hbar, n)
        report["commutative_limit"] = {
            "alpha": limit_alpha,
            "eta": etas,
            "distance_to_limit": [float(np.abs(m - target).max()) for m in metrics],
            "limit": target.tolist(),
        }
    return report
