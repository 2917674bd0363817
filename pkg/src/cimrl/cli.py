"""Command line: ``cimrl solve``, ``cimrl check`` and ``cimrl shapes``."""

import argparse
import logging
import math
from pathlib import Path
import sys
import time

from . import reference as ref
from .config import SHAPES, load_config
from .errors import DomainError, ParseError, ValidationError, ValidityError
from .medium import MU0

EXIT_OK, EXIT_FATAL, EXIT_PARTIAL = 0, 1, 2


def _solve(args):
    from dataclasses import replace
    from .report import plot_result, write_csv
    from .sweep import run_sweep

    spec = load_config(args.config)
    if args.reference is not None:
        if not 1 <= args.reference <= len(spec.conductors) or len(spec.conductors) < 2:
            raise ValidationError(f"--reference {args.reference} is not a valid conductor")
        spec = replace(spec, reference=args.reference - 1)
    t0 = time.perf_counter()
    res = run_sweep(spec, threads=args.threads)
    elapsed = time.perf_counter() - t0
    if not res.records:
        for f in res.failures:
            print(f"failed at {f.frequency:.6g} Hz: {f.error}", file=sys.stderr)
        print("error: no frequency could be solved", file=sys.stderr)
        return EXIT_FATAL
    out = write_csv(res, args.out)
    print(f"{len(res.records)} frequencies, {res.meta['unknowns']} unknowns, "
          f"{elapsed:.2f} s -> {out}")
    if args.plot:
        png = plot_result(res, Path(args.out).with_suffix(".png"))
        print(f"figure -> {png}")
    for f in res.failures:
        print(f"skipped {f.frequency:.6g} Hz: {f.error}", file=sys.stderr)
    return EXIT_PARTIAL if res.failures else EXIT_OK


def _check(args):
    if args.oracle == "dc":
        if args.radius is not None:
            area = math.pi * args.radius ** 2
        elif args.area is not None:
            area = args.area
        else:
            raise DomainError("give --radius or --area")
        print(f"R_dc = {ref.dc_resistance(area, args.sigma):.6e} ohm/m")
    elif args.oracle == "roundwire":
        spec = ref.RoundWireSpec(args.radius, args.sigma, args.mu_r * MU0)
        z = ref.round_wire_internal_impedance(spec, 2.0 * math.pi * args.freq)
        print(f"Z_int = {z.real:.6e} {z.imag:+.6e}j ohm/m")
    else:
        a2 = args.radius2 if args.radius2 is not None else args.radius
        lval = ref.separated_pair_external_inductance(args.radius, a2, args.spacing)
        print(f"L_ext = {lval:.6e} H/m")
    return EXIT_OK


def _shapes(_args):
    for name, keys in SHAPES.items():
        print(f"{name:10s} {keys}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="cimrl",
                                description="Per-unit-length R(f), L(f) of multiconductor lines.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run a frequency sweep from a TOML config")
    s.add_argument("config")
    s.add_argument("--out", required=True, help="CSV output path")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--reference", type=int, help="1-based return conductor (overrides config)")
    s.add_argument("--plot", action="store_true", help="also write a PNG next to the CSV")
    s.set_defaults(func=_solve)

    c = sub.add_parser("check", help="evaluate an analytic oracle")
    csub = c.add_subparsers(dest="oracle", required=True)
    dc = csub.add_parser("dc", help="DC resistance 1/(sigma*area)")
    dc.add_argument("--sigma", type=float, required=True)
    dc.add_argument("--radius", type=float)
    dc.add_argument("--area", type=float)
    rw = csub.add_parser("roundwire", help="round-wire internal impedance")
    rw.add_argument("--radius", type=float, required=True)
    rw.add_argument("--sigma", type=float, required=True)
    rw.add_argument("--freq", type=float, required=True)
    rw.add_argument("--mu-r", type=float, default=1.0)
    pl = csub.add_parser("pairL", help="external inductance of two separated wires")
    pl.add_argument("--radius", type=float, required=True)
    pl.add_argument("--radius2", type=float)
    pl.add_argument("--spacing", type=float, required=True)
    c.set_defaults(func=_check)

    sh = sub.add_parser("shapes", help="list conductor shape generators")
    sh.set_defaults(func=_shapes)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_FATAL
    try:
        return args.func(args)
    except (ParseError, ValidationError, ValidityError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
