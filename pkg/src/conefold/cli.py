"""Command-line entry point.

Exit status: 0 success or admissible, 1 negative domain verdict, 2 input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import foliation
from .cone_geometry import (
    OBSERVATIONAL_TOLERANCE,
    StringTension,
    admissible_genus,
    deficit_from_tension,
    gauss_bonnet_residual,
    parse_surface,
)
from .flat_structure import (
    DEFAULT_SAMPLES,
    PlanarLoop,
    cone_metric_length,
    half_plane_count,
    holonomy_around_point,
    natural_coordinate_closed_form,
    natural_coordinate_quadrature,
)
from .observational import (
    DEFAULT_COUNT_CAP,
    PLANCK_MASS_GEV,
    euler_bound_report,
    find_bound,
    gut_scale_estimate,
    load_bound_catalog,
    sample_network,
)
from .reporting import RunConfig, default_seed, fmt, render

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def _complex(text: str) -> complex:
    re_, _, im = text.partition(",")
    return complex(float(re_), float(im) if im else 0.0)


def _fmt_complex(z: complex) -> str:
    return f"{fmt(z.real)},{fmt(z.imag)}"


def _tensions(text: str) -> list[StringTension]:
    return [StringTension(float(x), f"arg[{i}]") for i, x in enumerate(filter(None, text.split(",")))]


def _genus_set(gs) -> str:
    return "{" + ",".join(str(g) for g in sorted(gs)) + "}"


def cmd_surface_check(args) -> int:
    surface = parse_surface(Path(args.file).read_text(), allow_negative_deficits=args.allow_negative)
    residual = gauss_bonnet_residual(surface)
    ok = abs(residual) <= args.tol
    genera = admissible_genus([p.tension for p in surface.points], args.tol)
    print(f"genus: {surface.genus}")
    print(f"points: {len(surface.points)}")
    print(f"tolerance: {fmt(args.tol)}")
    print(f"residual: {fmt(residual)}")
    print(f"admissible: {'yes' if ok else 'no'}")
    print(f"admissible_genus: {_genus_set(genera)}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_surface_genus(args) -> int:
    ts = _tensions(args.tensions)
    genera = admissible_genus(ts, args.tol)
    print(f"tensions: {len(ts)}")
    print(f"tolerance: {fmt(args.tol)}")
    print(f"admissible_genus: {_genus_set(genera)}")
    return EXIT_OK if genera else EXIT_NEGATIVE


def cmd_bounds_report(args) -> int:
    catalog = load_bound_catalog(args.config)
    gut = gut_scale_estimate(m_pl=args.planck_mass)
    print(f"gut_estimate_g_mu: {fmt(gut.g_mu)}")
    for b in catalog:
        rep = euler_bound_report(sample_network(0, DEFAULT_COUNT_CAP, b, "fixed_at_bound"))
        t = StringTension(b.g_mu_max, b.name)
        print(
            f"{b.name}: g_mu_max={fmt(b.g_mu_max)} deficit={fmt(deficit_from_tension(t))} "
            f"chi_derived@{DEFAULT_COUNT_CAP}={fmt(rep.chi_derived)} chi_paper@{DEFAULT_COUNT_CAP}={fmt(rep.chi_paper)} "
            f"source={b.source!r}"
        )
    return EXIT_OK


def cmd_network_sample(args) -> int:
    bound = find_bound(load_bound_catalog(args.config), args.bound)
    dist = {"fixed": "fixed_at_bound"}.get(args.dist, args.dist)
    seed = default_seed() if args.seed is None else args.seed
    net = sample_network(seed, args.count, bound, dist, override_cap=args.override_cap)
    rep = euler_bound_report(net)
    if args.csv:
        print("name,count,sum_gmu,chi_derived,chi_paper,genus_verdict")
        print(f"{bound.name},{net.count},{net.sum_gmu()!r},{rep.chi_derived!r},{rep.chi_paper!r},{rep.genus_verdict}")
        return EXIT_OK
    print(f"bound: {bound.name}")
    print(f"g_mu_max: {fmt(bound.g_mu_max)}")
    print(f"seed: {seed}")
    print(f"count: {net.count}")
    print(f"distribution: {dist}")
    print(f"tensions: {','.join(fmt(t.g_mu) for t in net.tensions)}")
    print(f"sum_gmu: {fmt(net.sum_gmu())}")
    print(f"chi_derived: {fmt(rep.chi_derived)}")
    print(f"chi_paper: {fmt(rep.chi_paper)}")
    print(f"nearest_even_integer: {rep.nearest_even_integer}")
    print(f"genus_verdict: {rep.genus_verdict}")
    return EXIT_OK


def cmd_natural_coord(args) -> int:
    z = _complex(args.z)
    print(f"order: {fmt(args.order)}")
    print(f"w: {_fmt_complex(natural_coordinate_closed_form(args.order, z))}")
    if float(args.order).is_integer():
        print(f"half_planes: {half_plane_count(int(args.order))}")
    return EXIT_OK


def cmd_quadrature_check(args) -> int:
    z = _complex(args.z)
    quad = natural_coordinate_quadrature(args.order, z, args.samples, cutoff=args.cutoff)
    closed = natural_coordinate_closed_form(args.order, z)
    if args.cutoff > 0:
        closed -= natural_coordinate_closed_form(args.order, args.cutoff * z / abs(z))
    rel = abs(quad - closed) / abs(closed)
    print(f"quadrature: {_fmt_complex(quad)}")
    print(f"closed_form: {_fmt_complex(closed)}")
    print(f"relative_error: {rel:.3e}")
    return EXIT_OK if rel <= 1e-8 else EXIT_NEGATIVE


def cmd_holonomy(args) -> int:
    loop = PlanarLoop.parse(args.loop) if args.loop else PlanarLoop.circle()
    t = StringTension(args.gmu)
    hol = holonomy_around_point(t, loop)
    expected = deficit_from_tension(t) * round(loop.winding())
    print(f"winding: {round(loop.winding())}")
    print(f"holonomy: {fmt(hol)}")
    print(f"expected: {fmt(expected)}")
    print(f"abs_error: {abs(hol - expected):.3e}")
    return EXIT_OK


def cmd_length(args) -> int:
    loop = PlanarLoop.parse(args.loop, closed=not args.open)
    print(f"length: {fmt(cone_metric_length(args.c, loop))}")
    return EXIT_OK


def cmd_classify(args) -> int:
    flags = dict(strings_exist=not args.no_strings, observational_constraints_hold=not args.no_observations)
    if args.enumerate:
        table = foliation.enumerate_scenarios(**flags)
        print(foliation.format_table(table))
        return EXIT_OK
    scenario = foliation.scenario_from_key(args.scenario, **flags)
    verdict = foliation.classify(scenario)
    print(foliation.format_verdict(scenario, verdict))
    return EXIT_NEGATIVE if verdict.excluded else EXIT_OK


def cmd_report(args) -> int:
    cfg = RunConfig(
        command="report all",
        config=args.config,
        seed=default_seed() if args.seed is None else args.seed,
        chi=args.chi,
        order_convention=args.order_convention,
        format=args.format,
        bound=args.bound,
        count=args.count,
        planck_mass=args.planck_mass,
    )
    text = render(cfg)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conefold", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True)

    surface = sub.add_parser("surface", help="flatness checks for cone surfaces").add_subparsers(dest="action", required=True)
    sc = surface.add_parser("check", help="check a surface file")
    sc.add_argument("file")
    sc.add_argument("--tol", type=float, default=OBSERVATIONAL_TOLERANCE)
    sc.add_argument("--allow-negative", action="store_true", help="admit negative deficits")
    sc.set_defaults(func=cmd_surface_check)
    sg = surface.add_parser("genus", help="admissible genera for a list of tensions")
    sg.add_argument("--tensions", default="", help="comma-separated G*mu values")
    sg.add_argument("--tol", type=float, default=OBSERVATIONAL_TOLERANCE)
    sg.set_defaults(func=cmd_surface_genus)

    bounds = sub.add_parser("bounds", help="observational bound catalog").add_subparsers(dest="action", required=True)
    br = bounds.add_parser("report")
    br.add_argument("--config", default="builtin")
    br.add_argument("--planck-mass", type=float, default=PLANCK_MASS_GEV)
    br.set_defaults(func=cmd_bounds_report)

    network = sub.add_parser("network", help="string networks per horizon volume").add_subparsers(dest="action", required=True)
    ns = network.add_parser("sample")
    ns.add_argument("--seed", type=int, default=None, help="defaults to $CONEFOLD_SEED or 0")
    ns.add_argument("--count", type=int, default=DEFAULT_COUNT_CAP)
    ns.add_argument("--bound", default="SPT")
    ns.add_argument("--dist", choices=("uniform", "fixed", "fixed_at_bound"), default="uniform")
    ns.add_argument("--config", default="builtin")
    ns.add_argument("--override-cap", action="store_true")
    ns.add_argument("--csv", action="store_true")
    ns.set_defaults(func=cmd_network_sample)

    flat = sub.add_parser("flat", help="local flat structure").add_subparsers(dest="action", required=True)
    nc = flat.add_parser("natural-coord")
    nc.add_argument("--order", type=float, required=True)
    nc.add_argument("--z", required=True, help="re,im (use --z=-1,0 for negative parts)")
    nc.set_defaults(func=cmd_natural_coord)
    qc = flat.add_parser("quadrature-check")
    qc.add_argument("--order", type=float, required=True)
    qc.add_argument("--z", required=True)
    qc.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    qc.add_argument("--cutoff", type=float, default=0.0)
    qc.set_defaults(func=cmd_quadrature_check)

    probe = sub.add_parser("probe", help="numerical probes of the cone metric").add_subparsers(dest="action", required=True)
    ph = probe.add_parser("holonomy")
    ph.add_argument("--gmu", type=float, required=True)
    ph.add_argument("--loop", default="", help="r1,a1:r2,a2:... (radians); default unit circle")
    ph.set_defaults(func=cmd_holonomy)
    pl = probe.add_parser("length")
    pl.add_argument("--c", type=float, required=True)
    pl.add_argument("--loop", required=True)
    pl.add_argument("--open", action="store_true", help="do not join last vertex to first")
    pl.set_defaults(func=cmd_length)

    cl = sub.add_parser("classify", help="foliation topology verdicts")
    g = cl.add_mutually_exclusive_group(required=True)
    g.add_argument("--scenario", choices=foliation.SCENARIO_KEYS + ("one-nonintersecting-unknown",))
    g.add_argument("--enumerate", action="store_true")
    cl.add_argument("--no-strings", action="store_true")
    cl.add_argument("--no-observations", action="store_true")
    cl.set_defaults(func=cmd_classify)

    report = sub.add_parser("report", help="full pipeline report").add_subparsers(dest="action", required=True)
    ra = report.add_parser("all")
    ra.add_argument("--format", choices=("text", "csv", "svg-data"), default="text")
    ra.add_argument("--chi", choices=("derived", "paper", "both"), default="both")
    ra.add_argument("--order-convention", choices=("self_consistent", "paper"), default="self_consistent")
    ra.add_argument("--seed", type=int, default=None)
    ra.add_argument("--config", default="builtin")
    ra.add_argument("--bound", default="", help="defaults to the tightest catalog bound")
    ra.add_argument("--count", type=int, default=DEFAULT_COUNT_CAP)
    ra.add_argument("--planck-mass", type=float, default=PLANCK_MASS_GEV)
    ra.add_argument("--output", default="")
    ra.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
