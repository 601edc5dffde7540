"""End-to-end report: GUT estimate, bound catalog, worst-case network, chi, genus, topology table.

Every number printed here comes from a core-module call; this module only
formats.  Text output uses 12 significant digits, CSV uses ``repr`` so rows
round-trip exactly.  Nothing time- or host-dependent is emitted, so equal
configurations give byte-identical output.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields
from typing import Sequence

from . import foliation
from .cone_geometry import StringTension, chi_from_tensions, deficit_from_tension
from .flat_structure import convention_cone_angle_mismatch, order_from_tension, pole_admissibility
from .observational import (
    CONVENTION_NOTE,
    DEFAULT_COUNT_CAP,
    GUT_SCALE_GEV,
    PLANCK_MASS_GEV,
    ObservationalBound,
    euler_bound_report,
    find_bound,
    gut_scale_estimate,
    load_bound_catalog,
    sample_network,
    tightest_bound,
    verdict_from_chi,
    verdicts_agree,
)

SEED_ENV = "CONEFOLD_SEED"
DEFAULT_SEED = 0
FORMATS = ("text", "csv", "svg-data")


def default_seed() -> int:
    value = os.environ.get(SEED_ENV)
    return int(value) if value not in (None, "") else DEFAULT_SEED


def fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class RunConfig:
    command: str = "report all"
    config: str = "builtin"
    seed: int = DEFAULT_SEED
    chi: str = "both"
    order_convention: str = "self_consistent"
    format: str = "text"
    bound: str = ""
    count: int = DEFAULT_COUNT_CAP
    planck_mass: float = PLANCK_MASS_GEV
    eta: float = GUT_SCALE_GEV

    def __post_init__(self):
        if self.chi not in ("derived", "paper", "both"):
            raise ValueError(f"chi must be derived, paper or both, got {self.chi!r}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")

    @property
    def chi_columns(self) -> tuple[str, ...]:
        return ("derived", "paper") if self.chi == "both" else (self.chi,)

    def header(self) -> list[str]:
        return [f"# {f.name}: {getattr(self, f.name)}" for f in fields(self)]


def _verdict_text(genus) -> str:
    names = {0: "sphere", 1: "torus"}
    if genus == "none":
        return "none"
    return f"{genus} ({names.get(genus, f'genus-{genus} surface')})"


def _chosen_bound(cfg: RunConfig, catalog: Sequence[ObservationalBound]) -> ObservationalBound:
    return find_bound(catalog, cfg.bound) if cfg.bound else tightest_bound(catalog)


def report_text(cfg: RunConfig) -> str:
    catalog = load_bound_catalog(cfg.config)
    bound = _chosen_bound(cfg, catalog)
    out = ["# conefold report", *cfg.header(), ""]

    gut = gut_scale_estimate(cfg.eta, cfg.planck_mass)
    out += [
        "## GUT-scale estimate",
        f"eta_gev: {fmt(cfg.eta)}",
        f"planck_mass_gev: {fmt(cfg.planck_mass)}",
        f"g_mu: {fmt(gut.g_mu)}",
        f"order_of_magnitude: 1e{round(math.log10(gut.g_mu))}",
        f"physical: {'yes' if gut.physical else 'no'}",
        "",
        "## Bound catalog",
    ]
    for b in catalog:
        t = StringTension(b.g_mu_max, b.name)
        out.append(f"{b.name}: g_mu_max={fmt(b.g_mu_max)} deficit={fmt(deficit_from_tension(t))} source={b.source!r}")
    out.append("")

    net = sample_network(cfg.seed, cfg.count, bound, "fixed_at_bound")
    rep = euler_bound_report(net)
    out += [
        "## Worst-case network",
        f"bound: {bound.name}",
        f"count: {net.count}",
        "distribution: fixed_at_bound",
        f"sum_gmu: {fmt(net.sum_gmu())}",
        "",
        "## Euler characteristic",
    ]
    if "derived" in cfg.chi_columns:
        out.append(f"chi_derived: {fmt(rep.chi_derived)}")
    if "paper" in cfg.chi_columns:
        out.append(f"chi_paper: {fmt(rep.chi_paper)}")
    if cfg.chi == "both":
        out.append(f"convention_ratio: {fmt(rep.chi_paper / rep.chi_derived) if rep.chi_derived else 'n/a'}")
        out.append(f"note: {CONVENTION_NOTE}")
        out.append(f"conventions_agree_on_verdict: {'yes' if verdicts_agree(rep) else 'no'}")
    chi_used = rep.chi_paper if cfg.chi == "paper" else rep.chi_derived
    even, genus = verdict_from_chi(chi_used)
    out += [
        f"nearest_even_integer: {even if even is not None else 'none'}",
        f"genus_verdict: {_verdict_text(genus)}",
        "",
        "## Pole order at the bound",
    ]
    t = StringTension(bound.g_mu_max, bound.name)
    n = order_from_tension(t, cfg.order_convention)
    mismatch = convention_cone_angle_mismatch(t, cfg.order_convention)
    out += [
        f"order_convention: {cfg.order_convention}",
        f"order_n: {fmt(n)}",
        f"pole_admissible: {'yes' if pole_admissibility(t, cfg.order_convention) else 'no'}",
        f"cone_angle_mismatch: {fmt(mismatch)}",
    ]
    if cfg.order_convention == "paper":
        out.append(
            "discrepancy: factor 2 -- n = -16 g_mu gives cone angle (n+2)pi = 2pi(1 - 8 g_mu), "
            "twice the string deficit 8pi g_mu; the self_consistent convention uses n = -8 g_mu"
        )
    out.append("")

    mc = sample_network(cfg.seed, cfg.count, bound, "uniform")
    mc_rep = euler_bound_report(mc)
    out += [
        f"## Uniform sample (seed {cfg.seed})",
        f"tensions: {','.join(fmt(x.g_mu) for x in mc.tensions)}",
        f"sum_gmu: {fmt(mc.sum_gmu())}",
    ]
    if "derived" in cfg.chi_columns:
        out.append(f"chi_derived: {fmt(mc_rep.chi_derived)}")
    if "paper" in cfg.chi_columns:
        out.append(f"chi_paper: {fmt(mc_rep.chi_paper)}")
    out += [f"genus_verdict: {_verdict_text(mc_rep.genus_verdict)}", "", "## Topology classification"]
    out.append(foliation.format_table(foliation.enumerate_scenarios()))
    return "\n".join(out) + "\n"


def chi_vs_count(cfg: RunConfig) -> list[tuple[str, int, float, float]]:
    """Worst-case chi for every catalog bound and string count 1..count."""
    rows = []
    for b in load_bound_catalog(cfg.config):
        for k in range(1, cfg.count + 1):
            ts = sample_network(cfg.seed, k, b, "fixed_at_bound").tensions
            rows.append((b.name, k, chi_from_tensions(ts, "derived"), chi_from_tensions(ts, "paper")))
    return rows


def report_csv(cfg: RunConfig) -> str:
    cols = cfg.chi_columns
    lines = ["bound,count," + ",".join(f"chi_{c}" for c in cols)]
    for name, k, chi_d, chi_p in chi_vs_count(cfg):
        vals = {"derived": chi_d, "paper": chi_p}
        lines.append(f"{name},{k}," + ",".join(repr(vals[c]) for c in cols))
    return "\n".join(lines) + "\n"


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def report_svg(cfg: RunConfig, width: int = 640, height: int = 400) -> str:
    """Log-scale line plot of worst-case chi against string count."""
    rows = chi_vs_count(cfg)
    cols = cfg.chi_columns
    series: dict[tuple[str, str], list[tuple[int, float]]] = {}
    for name, k, chi_d, chi_p in rows:
        for c, v in (("derived", chi_d), ("paper", chi_p)):
            if c in cols:
                series.setdefault((name, c), []).append((k, v))
    values = [v for pts in series.values() for _, v in pts]
    lo = math.floor(math.log10(min(values)))
    hi = math.ceil(math.log10(max(values)))
    if hi == lo:
        hi += 1
    left, right, top, bottom = 70, 170, 20, 50
    pw, ph = width - left - right, height - top - bottom

    def px(k):
        return left + pw * (k - 1) / max(cfg.count - 1, 1)

    def py(v):
        return top + ph * (hi - math.log10(v)) / (hi - lo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>',
    ]
    for e in range(lo, hi + 1):
        y = py(10.0**e)
        out.append(f'<line x1="{left - 4}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="#000"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" font-size="11" text-anchor="end">1e{e}</text>')
    for k in range(1, cfg.count + 1):
        x = px(k)
        out.append(f'<text x="{x:.2f}" y="{top + ph + 16}" font-size="11" text-anchor="middle">{k}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 10}" font-size="12" text-anchor="middle">strings per horizon volume</text>')
    out.append(f'<text x="14" y="{top + ph / 2:.2f}" font-size="12" transform="rotate(-90 14 {top + ph / 2:.2f})" text-anchor="middle">chi (worst case)</text>')
    for i, ((name, c), pts) in enumerate(series.items()):
        color = _PALETTE[(i // len(cols)) % len(_PALETTE)]
        dash = ' stroke-dasharray="5,3"' if c == "paper" else ""
        path = " ".join(f"{px(k):.2f},{py(v):.2f}" for k, v in pts)
        out.append(f'<polyline points="{path}" fill="none" stroke="{color}"{dash}/>')
        ly = top + 14 * (i + 1)
        out.append(f'<line x1="{left + pw + 10}" y1="{ly - 4}" x2="{left + pw + 30}" y2="{ly - 4}" stroke="{color}"{dash}/>')
        out.append(f'<text x="{left + pw + 34}" y="{ly}" font-size="11">{name} ({c})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(cfg: RunConfig) -> str:
    if cfg.format == "csv":
        return report_csv(cfg)
    if cfg.format == "svg-data":
        return report_svg(cfg)
    return report_text(cfg)
