"""Constant-coefficient symplectic forms for noncommutative phase-space.

The commutators of the NC algebra fix the *inverse* symplectic matrix (the
Poisson tensor) directly::

    [q^i, q^j] = i theta_ij,   [k_i, k_j] = i eta_ij,   [q^i, k_j] = i hbar delta_ij

so the Poisson tensor is the block matrix ``[[Theta/hbar, Id], [-Id, N/hbar]]``
and the symplectic form ``omega`` is defined as its matrix inverse. All
matrices are expressed in a fixed coordinate ordering described by
`CoordinateLayout`: ``[q1..qn, k1..kn]`` for phase-space and
``[t, q1..qn, H, k1..kn]`` for the extended phase-space.

For ``n = 3`` the constant skew matrices carry the same value on every
upper-triangular entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .errors import InvalidDimension, InvalidParameters, SingularForm, UnsupportedDimension

EPSILON_2D = np.array([[0.0, 1.0], [-1.0, 0.0]])

# |det M| / prod(row norms) below this counts as singular (Hadamard ratio).
SINGULAR_RTOL = 1e-12

FORM = "form"
INVERSE = "inverse"


@dataclass(frozen=True)
class NCParams:
    """The NC scales: ``theta`` (m^2), ``eta`` ((kg m/s)^2), ``hbar`` (J s).

    Any consistent unit system works; the library only ever uses the
    combinations ``theta/hbar``, ``eta/hbar`` and ``theta*eta/hbar**2``.
    """

    theta: float = 0.0
    eta: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("theta", "eta", "hbar"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise InvalidParameters(f"{name} must be finite, got {value!r}")
        if self.theta < 0 or self.eta < 0:
            raise InvalidParameters("theta and eta must be non-negative")
        if self.hbar <= 0:
            raise InvalidParameters("hbar must be positive")
        if abs(self.coupling - 1.0) <= SINGULAR_RTOL:
            raise SingularForm(
                f"theta*eta = hbar^2 (theta={self.theta}, eta={self.eta}, hbar={self.hbar})"
            )

    @property
    def coupling(self):
        """Dimensionless ``theta*eta/hbar**2``."""
        return self.theta * self.eta / self.hbar**2

    @property
    def is_commutative(self):
        return self.theta == 0 and self.eta == 0

    @classmethod
    def commutative(cls, hbar=1.0):
        return cls(0.0, 0.0, hbar)


@dataclass(frozen=True)
class CoordinateLayout:
    """Ordering of phase-space coordinates in every matrix we build.

    ``frame`` is ``"nc"`` for the noncommutative ``(q, k)`` chart and
    ``"darboux"`` for the canonical ``(x, p)`` chart.
    """

    n: int
    extended: bool = False
    frame: Literal["nc", "darboux"] = "nc"

    def __post_init__(self):
        if self.n not in (2, 3):
            raise InvalidDimension(f"spatial dimension must be 2 or 3, got {self.n!r}")
        if self.frame not in ("nc", "darboux"):
            raise ValueError(f"unknown frame {self.frame!r}")

    @property
    def dim(self):
        return 2 * self.n + (2 if self.extended else 0)

    @property
    def labels(self):
        pos, mom = ("q", "k") if self.frame == "nc" else ("x", "p")
        qs = [f"{pos}{i + 1}" for i in range(self.n)]
        ks = [f"{mom}{i + 1}" for i in range(self.n)]
        if self.extended:
            return ["t", *qs, "H", *ks]
        return qs + ks

    def index(self, label):
        return self.labels.index(label)

    @property
    def position_slots(self):
        off = 1 if self.extended else 0
        return list(range(off, off + self.n))

    @property
    def momentum_slots(self):
        off = self.n + (2 if self.extended else 0)
        return list(range(off, off + self.n))

    @property
    def time_energy_slots(self):
        """Indices of ``(t, H)``, or ``None`` for non-extended layouts."""
        if not self.extended:
            return None
        return 0, self.n + 1

    def with_extension(self):
        return CoordinateLayout(self.n, True, self.frame)


def _hadamard_ratio(matrix):
    norms = np.linalg.norm(matrix, axis=1)
    if np.any(norms == 0):
        return 0.0
    return abs(np.linalg.det(matrix)) / np.prod(norms)


@dataclass(frozen=True, eq=False)
class SkewForm:
    """A constant skew-symmetric invertible matrix.

    ``kind`` records whether the matrix holds the components ``omega_ij`` of
    the 2-form (``"form"``) or of its inverse ``omega^ij`` (``"inverse"``).
    The stored matrix is exactly antisymmetric.
    """

    matrix: np.ndarray
    layout: CoordinateLayout
    kind: Literal["form", "inverse"] = FORM
    atol: float = field(default=1e-12, repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (self.layout.dim, self.layout.dim):
            raise InvalidDimension(
                f"matrix shape {m.shape} does not match layout dim {self.layout.dim}"
            )
        if self.kind not in (FORM, INVERSE):
            raise ValueError(f"unknown kind {self.kind!r}")
        scale = max(np.abs(m).max(), 1.0)
        if np.abs(m + m.T).max() > self.atol * scale:
            raise ValueError("matrix is not skew-symmetric")
        m = 0.5 * (m - m.T)
        if _hadamard_ratio(m) <= SINGULAR_RTOL:
            raise SingularForm("skew form is degenerate (determinant vanishes)")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.layout.dim

    def __call__(self, u, v):
        """Evaluate the bilinear form on two vectors."""
        return float(np.asarray(u) @ self.matrix @ np.asarray(v))


@dataclass(frozen=True, eq=False)
class LinearFrameMap:
    """Linear change of chart ``z_target = matrix @ z_source``."""

    matrix: np.ndarray
    source_layout: CoordinateLayout
    target_layout: CoordinateLayout

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (self.target_layout.dim, self.source_layout.dim):
            raise InvalidDimension("map shape does not match layouts")
        if _hadamard_ratio(m) <= SINGULAR_RTOL:
            raise SingularForm("frame map is not invertible")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, z):
        return self.matrix @ np.asarray(z, dtype=float)

    def inverse(self):
        return LinearFrameMap(np.linalg.inv(self.matrix), self.target_layout, self.source_layout)

    def commutators(self, hbar, source_poisson=None):
        """Matrix of ``[z_target^i, z_target^j] / i`` induced by the map.

        The source chart carries the Poisson tensor ``source_poisson``
        (canonical by default), so the target brackets are
        ``hbar * M P M^T``.
        """
        if source_poisson is None:
            source_poisson = canonical_poisson(self.source_layout)
        return hbar * self.matrix @ source_poisson @ self.matrix.T


def skew_pattern(n):
    """Unit constant-entry skew matrix: ``epsilon`` for n=2, all-ones above the diagonal for n=3."""
    if n == 2:
        return EPSILON_2D.copy()
    if n == 3:
        u = np.triu(np.ones((3, 3)), k=1)
        return u - u.T
    raise InvalidDimension(f"spatial dimension must be 2 or 3, got {n!r}")


def canonical_poisson(layout):
    """Poisson tensor of the commutative chart: ``[[0, Id], [-Id, 0]]`` per pair.

    In extended layouts the ``(t, H)`` pair carries the opposite orientation,
    since the momentum conjugate to ``t`` is ``-H``.
    """
    m = np.zeros((layout.dim, layout.dim))
    for i, j in zip(layout.position_slots, layout.momentum_slots):
        m[i, j], m[j, i] = 1.0, -1.0
    if layout.extended:
        t, h = layout.time_energy_slots
        m[t, h], m[h, t] = -1.0, 1.0
    return m


def build_nc_inverse_symplectic(params, n=2):
    """Poisson tensor ``omega^{-1} = [[Theta/hbar, Id], [-Id, N/hbar]]``.

    Parameters
    ----------
    params : NCParams
    n : {2, 3}
        Spatial dimension.

    Returns
    -------
    SkewForm
        With ``kind="inverse"`` in the ``[q.., k..]`` layout.

    Raises
    ------
    InvalidDimension
        If ``n`` is not 2 or 3.
    SingularForm
        If the resulting tensor is degenerate (for n=3 this happens at
        ``theta*eta = hbar**2 / 3``).
    """
    if n not in (2, 3):
        raise InvalidDimension(f"spatial dimension must be 2 or 3, got {n!r}")
    layout = CoordinateLayout(n)
    eps = skew_pattern(n)
    ident = np.eye(n)
    m = np.block(
        [
            [params.theta / params.hbar * eps, ident],
            [-ident, params.eta / params.hbar * eps],
        ]
    )
    return SkewForm(m, layout, INVERSE)


def invert_form(form):
    """Matrix inverse of a skew form, re-antisymmetrized to remove roundoff.

    Returns the dual object: a ``"form"`` becomes an ``"inverse"`` and vice
    versa.
    """
    if _hadamard_ratio(form.matrix) <= SINGULAR_RTOL:
        raise SingularForm("cannot invert a degenerate form")
    inv = np.linalg.inv(form.matrix)
    inv = 0.5 * (inv - inv.T)
    kind = INVERSE if form.kind == FORM else FORM
    return SkewForm(inv, form.layout, kind, atol=np.inf)


def as_poisson(form):
    """Return the Poisson tensor (``kind="inverse"``) for either representation."""
    return form if form.kind == INVERSE else invert_form(form)


def as_symplectic(form):
    """Return the 2-form (``kind="form"``) for either representation."""
    return form if form.kind == FORM else invert_form(form)


def gradient(f, point, h=None):
    """Central-difference gradient with step ``1e-6 * max(1, |point|)``."""
    point = np.asarray(point, dtype=float)
    if h is None:
        h = 1e-6 * max(1.0, float(np.linalg.norm(point)))
    grad = np.empty_like(point)
    for i in range(point.size):
        step = np.zeros_like(point)
        step[i] = h
        grad[i] = (f(point + step) - f(point - step)) / (2 * h)
    return grad


def bracket(form_inverse, f: Callable, g: Callable, point, h=None):
    """Poisson bracket ``omega^{kl} d_k f d_l g`` evaluated at ``point``.

    ``f`` and ``g`` map a coordinate vector (in ``form_inverse.layout``) to a
    scalar. Gradients come from central differences. Passing a ``"form"``
    inverts it first.
    """
    poisson = as_poisson(form_inverse).matrix
    point = np.asarray(point, dtype=float)
    if point.shape != (poisson.shape[0],):
        raise InvalidDimension(f"point must have {poisson.shape[0]} components")
    return float(gradient(f, point, h) @ poisson @ gradient(g, point, h))


def coordinate_function(index):
    """The scalar field returning coordinate ``index``."""
    return lambda z: z[index]


def darboux_map(params, n=2):
    """Linear map from the canonical ``(x, p)`` chart to the NC ``(q, k)`` chart.

    ``q^i = x^i - (theta/2hbar) eps^{ij} p_j`` and
    ``k_i = p_i + (eta/2hbar) eps_{ij} x^j``.

    The map reproduces ``[q, q] = i theta eps`` and ``[k, k] = i eta eps`` but
    gives ``[q^i, k_j] = i hbar (1 + theta*eta/4hbar^2) delta_ij``, so it is
    canonical only to first order in ``theta*eta``.
    """
    if n != 2:
        raise UnsupportedDimension("the Darboux map is defined with the 2-index epsilon; n must be 2")
    a = params.theta / (2 * params.hbar)
    b = params.eta / (2 * params.hbar)
    ident = np.eye(2)
    m = np.block([[ident, -a * EPSILON_2D], [b * EPSILON_2D, ident]])
    return LinearFrameMap(m, CoordinateLayout(2, frame="darboux"), CoordinateLayout(2))


def build_extended_form(spatial):
    """Append the ``(t, H)`` pair to a spatial form.

    Spatial blocks are copied; the new pair contributes ``-dH ^ dt``, i.e.
    ``omega_{tH} = +1``, or the corresponding ``omega^{tH} = -1`` when
    ``spatial`` is a Poisson tensor.
    """
    lay = spatial.layout
    if lay.extended:
        raise InvalidDimension("form is already extended")
    ext = lay.with_extension()
    m = np.zeros((ext.dim, ext.dim))
    slots = ext.position_slots + ext.momentum_slots
    m[np.ix_(slots, slots)] = spatial.matrix
    t, h = ext.time_energy_slots
    sign = 1.0 if spatial.kind == FORM else -1.0
    m[t, h], m[h, t] = sign, -sign
    return SkewForm(m, ext, spatial.kind)


def printed_explicit_form(params, n=2):
    """The closed-form ``omega_NC`` quoted in the literature, as a matrix.

    ``(1 - eta theta/4hbar^2) [ (4hbar^2 - eta theta) dq^i^dk_i
    - 4 eta hbar sum_{i<j} dq^i^dq^j - 4 theta hbar sum_{i<j} dk_i^dk_j ]``.

    Kept only for comparison against `invert_form`; the two disagree.
    """
    th, et, hb = params.theta, params.eta, params.hbar
    pre = 1 - et * th / (4 * hb**2)
    upper = np.triu(np.ones((n, n)), k=1)
    m = np.zeros((2 * n, 2 * n))
    m[:n, n:] = (4 * hb**2 - et * th) * np.eye(n)
    m[:n, :n] = -4 * et * hb * upper
    m[n:, n:] = -4 * th * hb * upper
    m = pre * m
    return m - m.T


def compare_printed_form(params, n=2, rtol=1e-8):
    """Compare the printed closed-form ``omega_NC`` with the true inverse.

    Returns a dict with both matrices, the least-squares scalar relating
    them, the residual left after that scalar, and ``consistent``.
    """
    ours = invert_form(build_nc_inverse_symplectic(params, n)).matrix
    printed = printed_explicit_form(params, n)
    denom = float(np.sum(printed * printed))
    scale = float(np.sum(ours * printed) / denom) if denom else float("nan")
    residual = float(np.abs(ours - scale * printed).max() / np.abs(ours).max())
    return {
        "omega": ours.tolist(),
        "printed_omega": printed.tolist(),
        "best_scale": scale,
        "relative_residual": residual,
        "consistent": bool(residual <= rtol),
    }
