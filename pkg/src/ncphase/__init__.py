"""Noncommutative phase-space geometry and its phenomenology.

Submodules
----------
symplectic
    Constant symplectic forms built from the NC commutators, the Darboux map
    and Poisson brackets.
kahler
    Almost complex structures, compatible metrics and volume forms.
dispersion
    Extended Hamiltonians, deformed dispersion relation, group velocity and
    Lorentz boosts.
cosmology
    Flat LCDM light-travel distance.
grb
    GRB catalog ingestion and the per-burst bound on the momentum scale.
"""

from .errors import NCPhaseError
from .symplectic import NCParams

__all__ = ["NCParams", "NCPhaseError"]
__version__ = "0.1.0"
