"""GRB catalog ingestion and per-burst bounds on the NC momentum scale.

Taking the fluence uncertainty as the largest admissible energy deformation,
each burst at light-travel distance ``r`` bounds::

    eta <= (2 hbar A / (c r)) * sqrt(F * dF)

for detector area ``A``. The catalog-wide bound is the smallest per-burst
``sqrt(eta)``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .constants import CODATA, ERG_PER_CM2_IN_J_PER_M2
from .cosmology import DEFAULT_RTOL, Cosmology, light_travel_distance
from .errors import DuplicateName, NCPhaseError, ParseError, ValidationError

logger = logging.getLogger(__name__)

CATALOG_HEADER = ("name", "fluence_erg_cm2", "dfluence_erg_cm2", "z")
CATALOG_RESOURCE = "grb_catalog.csv"


@dataclass(frozen=True)
class GrbRecord:
    """One burst; fluences in absolute erg/cm^2."""

    name: str
    fluence: float
    dfluence: float
    z: float

    def __post_init__(self):
        if not self.name or not self.name.strip():
            raise ValidationError("name", "must be non-empty")
        checks = (
            ("fluence", self.fluence, lambda v: v > 0, "must be positive"),
            ("dfluence", self.dfluence, lambda v: v >= 0, "must be non-negative"),
            ("z", self.z, lambda v: v > 0, "must be positive"),
        )
        for name, value, ok, why in checks:
            if not math.isfinite(value) or not ok(value):
                raise ValidationError(name, f"{why}, got {value!r}")


@dataclass(frozen=True)
class DetectorConfig:
    area: float = 1.0  # m^2
    band: str = "BATSE 50-300 keV"

    def __post_init__(self):
        if not self.area > 0:
            raise ValueError("detector area must be positive")


@dataclass(frozen=True)
class EtaBound:
    name: str
    z: float
    r: float
    eta_si: float
    eta_ev2: float
    sqrt_eta_ev_per_c: float
    warnings: tuple = ()

    def as_dict(self):
        return {
            "name": self.name,
            "z": self.z,
            "r_m": self.r,
            "eta_si": self.eta_si,
            "eta_ev2_per_c2": self.eta_ev2,
            "sqrt_eta_ev_per_c": self.sqrt_eta_ev_per_c,
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class RowFailure:
    name: str
    error: str

    def as_dict(self):
        return {"name": self.name, "error": self.error}


def _decode(source):
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    elif isinstance(source, str):
        return source
    else:
        data = source.read()
        if isinstance(data, str):
            return data
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(f"catalog is not valid UTF-8: {exc}") from None


def parse_catalog(source):
    """Parse a CSV catalog into validated records.

    Parameters
    ----------
    source : bytes, str or file object
        UTF-8 CSV with header ``name,fluence_erg_cm2,dfluence_erg_cm2,z``.
        Blank lines and lines starting with ``#`` are skipped.

    Returns
    -------
    list of GrbRecord
        In file order.

    Raises
    ------
    ParseError
        Malformed header or row, with its line number.
    ValidationError
        A field that fails conversion or its invariant.
    DuplicateName
        A burst name appearing twice.
    """
    text = _decode(source)
    records = []
    seen = set()
    header_seen = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            cells = [c.strip() for c in next(csv.reader([line]))]
        except csv.Error as exc:
            raise ParseError(str(exc), lineno) from None
        if not header_seen:
            if tuple(cells) != CATALOG_HEADER:
                raise ParseError(f"expected header {','.join(CATALOG_HEADER)!r}", lineno)
            header_seen = True
            continue
        if len(cells) != len(CATALOG_HEADER):
            raise ParseError(f"expected {len(CATALOG_HEADER)} columns, got {len(cells)}", lineno)
        name, *numbers = cells
        values = []
        for field_name, raw in zip(("fluence", "dfluence", "z"), numbers):
            try:
                values.append(float(raw))
            except ValueError:
                raise ValidationError(field_name, f"not a number: {raw!r}", lineno) from None
        try:
            record = GrbRecord(name, *values)
        except ValidationError as exc:
            raise ValidationError(exc.field, exc.detail, lineno) from None
        if name in seen:
            raise DuplicateName(name, lineno)
        seen.add(name)
        records.append(record)
    return records


def read_catalog(path):
    with open(path, "rb") as fh:
        return parse_catalog(fh)


def bundled_catalog():
    """The bundled fourteen-burst catalog."""
    data = resources.files("ncphase").joinpath("data", CATALOG_RESOURCE).read_bytes()
    return parse_catalog(data)


def eta_from_energy(energy, denergy, r, hbar=CODATA.hbar, c=CODATA.c):
    """``eta = 2 hbar sqrt(E dE) / (c r)``; SI in, (kg m/s)^2 out."""
    return 2 * hbar * math.sqrt(energy * denergy) / (c * r)


def eta_bound(record, det=DetectorConfig(), cosmo=Cosmology(), constants=CODATA,
              rtol=DEFAULT_RTOL):
    """Upper bound on ``eta`` from one burst.

    Fluences are converted to J/m^2 and multiplied by the detector area to
    give ``E`` and ``dE``. ``sqrt(eta)`` is reported in eV/c; ``eta_ev2`` is
    computed independently in eV-based units as a unit cross-check.
    """
    r = light_travel_distance(record.z, cosmo, rtol, constants.c)
    energy = record.fluence * ERG_PER_CM2_IN_J_PER_M2 * det.area
    denergy = record.dfluence * ERG_PER_CM2_IN_J_PER_M2 * det.area
    eta_si = eta_from_energy(energy, denergy, r, constants.hbar, constants.c)
    sqrt_eta = math.sqrt(eta_si) / constants.ev_per_c
    # same bound with hbar in eV s and energies in eV gives (eV/c)^2 directly
    eta_ev2 = (
        2 * constants.hbar_ev_s * constants.c / r
        * math.sqrt((energy / constants.eV) * (denergy / constants.eV))
    )
    notes = ()
    if record.dfluence == 0:
        notes = ("zero fluence uncertainty: bound degenerates to eta = 0",)
        logger.warning("%s: %s", record.name, notes[0])
    return EtaBound(record.name, record.z, r, eta_si, eta_ev2, sqrt_eta, notes)


@dataclass
class PipelineReport:
    rows: list
    config: dict
    failures: list = field(default_factory=list)

    @property
    def bounds(self):
        return [r for r in self.rows if isinstance(r, EtaBound)]

    @property
    def summary(self):
        values = [b.sqrt_eta_ev_per_c for b in self.bounds]
        if not values:
            return {"min": None, "max": None, "median": None, "tightest": None}
        tightest = min(self.bounds, key=lambda b: b.sqrt_eta_ev_per_c)
        return {
            "min": min(values),
            "max": max(values),
            "median": statistics.median(values),
            "tightest": tightest.name,
        }

    @property
    def exit_code(self):
        return 3 if self.failures else 0

    def to_dict(self):
        return {
            "rows": [r.as_dict() for r in self.rows],
            "summary": self.summary,
            "failures": [f.as_dict() for f in self.failures],
            "config": self.config,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "z", "r_m", "eta_si", "sqrt_eta_ev_per_c", "warnings"])
        for row in self.rows:
            if isinstance(row, EtaBound):
                writer.writerow([row.name, repr(row.z), repr(row.r), repr(row.eta_si),
                                 repr(row.sqrt_eta_ev_per_c), "; ".join(row.warnings)])
            else:
                writer.writerow([row.name, "", "", "", "", f"error: {row.error}"])
        return buf.getvalue()

    def to_table(self):
        lines = [f"{'GRB':<10} {'z':>7} {'r (1e25 m)':>11} {'sqrt(eta) (eV/c)':>17}"]
        for row in self.rows:
            if isinstance(row, EtaBound):
                lines.append(f"{row.name:<10} {row.z:>7.4g} {row.r / 1e25:>11.6g} "
                             f"{row.sqrt_eta_ev_per_c:>17.4e}")
            else:
                lines.append(f"{row.name:<10} error: {row.error}")
        s = self.summary
        if s["min"] is not None:
            lines.append("")
            lines.append(f"min sqrt(eta) = {s['min']:.4e} eV/c ({s['tightest']})")
            lines.append(f"median        = {s['median']:.4e} eV/c")
            lines.append(f"max           = {s['max']:.4e} eV/c")
        return "\n".join(lines) + "\n"


def run_pipeline(catalog, det=DetectorConfig(), cosmo=Cosmology(), constants=CODATA,
                 rtol=DEFAULT_RTOL, workers=1):
    """Bound every burst in ``catalog``; rows keep input order.

    A row that raises is recorded in ``failures`` and does not stop the
    remaining rows.
    """
    catalog = list(catalog)
    if not catalog:
        raise ValueError("catalog is empty")

    def one(record):
        try:
            return eta_bound(record, det, cosmo, constants, rtol)
        except NCPhaseError as exc:
            return RowFailure(record.name, f"{type(exc).__name__}: {exc}")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, catalog))
    else:
        rows = [one(rec) for rec in catalog]
    config = {
        "area_m2": det.area,
        "band": det.band,
        "cosmology": {
            "H0": cosmo.H0,
            "omega_m": cosmo.omega_m,
            "omega_lambda": cosmo.omega_lambda,
            "omega_r": cosmo.omega_r,
            "omega_k": cosmo.omega_k,
        },
        "constants": {"name": constants.name, "c": constants.c,
                      "hbar": constants.hbar, "eV": constants.eV},
        "rtol": rtol,
    }
    failures = [r for r in rows if isinstance(r, RowFailure)]
    return PipelineReport(rows, config, failures)


def default_catalog_path():
    return Path(str(resources.files("ncphase").joinpath("data", CATALOG_RESOURCE)))
