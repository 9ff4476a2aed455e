"""Physical constants and unit conversions (SI throughout)."""

from dataclasses import dataclass

from scipy import constants as _codata

MPC_M = 3.0856775814913673e22
ERG_PER_CM2_IN_J_PER_M2 = 1e-3
KM_M = 1e3


@dataclass(frozen=True)
class PhysicalConstants:
    """Constant set used by the distance and bound computations.

    ``c`` in m/s, ``hbar`` in J s, ``eV`` in J.
    """

    name: str
    c: float
    hbar: float
    eV: float

    @property
    def ev_per_c(self):
        """1 eV/c expressed in kg m/s."""
        return self.eV / self.c

    @property
    def hbar_ev_s(self):
        return self.hbar / self.eV


CODATA = PhysicalConstants("codata", c=_codata.c, hbar=_codata.hbar, eV=_codata.e)
# c rounded to 3e8 m/s; hbar and eV stay exact so only the c choice is probed.
PAPER_ROUNDED = PhysicalConstants("paper-rounded", c=3.0e8, hbar=_codata.hbar, eV=_codata.e)

CONSTANT_SETS = {CODATA.name: CODATA, PAPER_ROUNDED.name: PAPER_ROUNDED}


def get_constants(name):
    try:
        return CONSTANT_SETS[name]
    except KeyError:
        raise ValueError(
            f"unknown constant set {name!r}; choose from {sorted(CONSTANT_SETS)}"
        ) from None
