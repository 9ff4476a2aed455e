"""Command-line interface: ``ncphase {bound,distance,dispersion,geometry}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import __version__
from .constants import CONSTANT_SETS, MPC_M, get_constants
from .cosmology import DEFAULT_RTOL, Cosmology, light_travel_distance
from .dispersion import (
    ParticleSpec,
    SphericalState,
    group_velocity,
    reduce_on_shell,
    spherical_dispersion,
)
from .errors import NCPhaseError, ParseError, ValidationError
from .grb import DetectorConfig, default_catalog_path, read_catalog, run_pipeline
from .kahler import geometry_report
from .symplectic import NCParams

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PARTIAL = 3

log = logging.getLogger("ncphase")


def _add_cosmology_args(p):
    p.add_argument("--h0", type=float, default=70.0, help="H0 in km/s/Mpc (default 70)")
    p.add_argument("--omega-m", type=float, default=0.27)
    p.add_argument("--omega-lambda", type=float, default=0.73)
    p.add_argument("--omega-r", type=float, default=0.0)
    p.add_argument("--omega-k", type=float, default=0.0)
    p.add_argument("--rtol", type=float, default=DEFAULT_RTOL,
                   help="quadrature relative tolerance (default 1e-10)")
    p.add_argument("--constants", choices=sorted(CONSTANT_SETS), default="codata")


def _add_nc_args(p, n_default=None):
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--hbar", type=float, default=1.0)
    if n_default is not None:
        p.add_argument("--n", type=int, choices=(2, 3), default=n_default)


def _cosmology(args):
    return Cosmology(args.h0, args.omega_m, args.omega_lambda, args.omega_r, args.omega_k)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ncphase",
        description="Noncommutative phase-space geometry and GRB bounds on the momentum scale.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", help="per-burst upper bounds on sqrt(eta)")
    bound.add_argument("--catalog", default=None,
                       help="CSV catalog (default: bundled fourteen-burst table)")
    bound.add_argument("--area-m2", type=float, default=1.0)
    _add_cosmology_args(bound)
    bound.add_argument("--format", choices=("table", "csv", "json"), default="table")
    bound.add_argument("--workers", type=int, default=1)

    dist = sub.add_parser("distance", help="light-travel distance for redshift(s)")
    dist.add_argument("--z", type=float, nargs="+", required=True)
    _add_cosmology_args(dist)

    disp = sub.add_parser("dispersion", help="deformed dispersion relation at one state")
    _add_nc_args(disp)
    disp.add_argument("--mass", type=float, default=0.0)
    disp.add_argument("--c", type=float, default=1.0)
    disp.add_argument("--x", type=float, nargs="+", help="Cartesian position (2 or 3 components)")
    disp.add_argument("--p", type=float, nargs="+", help="Cartesian momentum")
    disp.add_argument("--spherical", type=float, nargs=3, metavar=("R", "THETA", "PHI"))
    disp.add_argument("--p-sph", type=float, nargs=3, metavar=("P_R", "P_THETA", "P_PHI"),
                      default=(0.0, 0.0, 0.0))
    disp.add_argument("--mode", choices=("full", "radial"), default="full")

    geo = sub.add_parser("geometry", help="symplectic form, ACS, metric and volumes")
    _add_nc_args(geo, n_default=2)
    geo.add_argument("--extended", action="store_true")
    geo.add_argument("--alpha", type=float, default=None,
                     help="also report the fixed-ratio commutative limit theta = alpha*eta")
    return parser


def _cmd_bound(args, out):
    path = args.catalog or default_catalog_path()
    try:
        catalog = read_catalog(path)
    except (ParseError, ValidationError, OSError) as exc:
        print(f"ncphase: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not catalog:
        print("ncphase: catalog contains no rows", file=sys.stderr)
        return EXIT_OK
    report = run_pipeline(
        catalog,
        DetectorConfig(args.area_m2),
        _cosmology(args),
        get_constants(args.constants),
        args.rtol,
        workers=args.workers,
    )
    render = {"table": report.to_table, "csv": report.to_csv, "json": report.to_json}
    out.write(render[args.format]())
    for failure in report.failures:
        print(f"ncphase: {failure.name}: {failure.error}", file=sys.stderr)
    return report.exit_code


def _cmd_distance(args, out):
    cosmo = _cosmology(args)
    c = get_constants(args.constants).c
    for z in args.z:
        d = light_travel_distance(z, cosmo, args.rtol, c)
        out.write(f"z={z:g}  d={d:.9e} m  ({d / MPC_M:.6f} Mpc)\n")
    return EXIT_OK


def _cmd_dispersion(args, out):
    params = NCParams(args.theta, args.eta, args.hbar)
    spec = ParticleSpec(args.mass, args.c)
    result = {"inputs": {"theta": args.theta, "eta": args.eta, "hbar": args.hbar,
                         "mass": args.mass, "c": args.c}}
    checks = {}
    if args.spherical is not None:
        if args.mass != 0:
            raise ValueError("spherical states describe massless particles; drop --mass")
        state = SphericalState(*args.spherical, *args.p_sph)
        sph = spherical_dispersion(state, params, args.mode, args.c)
        x, p = state.to_cartesian()
        cart = float(reduce_on_shell(x, p, spec, params))
        result.update(E=sph.energy, f=sph.f, g=sph.g, mode=args.mode,
                      angular_coefficients=sph.coefficients)
        checks["cartesian_E"] = cart
        checks["relative_difference"] = abs(sph.energy - cart) / cart if cart else 0.0
    else:
        if args.x is None or args.p is None:
            raise ValueError("give --x and --p, or --spherical")
        x, p = np.array(args.x), np.array(args.p)
        result.update(E=float(reduce_on_shell(x, p, spec, params)), f=None, g=None)
    energy = float(reduce_on_shell(x, p, spec, params))
    if energy > 0:
        v = group_velocity(x, p, spec, params)
        result["c_prime"] = v.tolist()
        checks["speed_over_c"] = float(np.linalg.norm(v) / args.c)
    else:
        result["c_prime"] = None
    result["checks"] = checks
    out.write(json.dumps(result, indent=2) + "\n")
    return EXIT_OK


def _cmd_geometry(args, out):
    params = NCParams(args.theta, args.eta, args.hbar)
    report = geometry_report(params, args.n, args.extended, args.alpha)
    out.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


COMMANDS = {
    "bound": _cmd_bound,
    "distance": _cmd_distance,
    "dispersion": _cmd_dispersion,
    "geometry": _cmd_geometry,
}


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = out or sys.stdout
    try:
        return COMMANDS[args.command](args, out)
    except (NCPhaseError, ValueError) as exc:
        print(f"ncphase: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
