"""Local flat structure of a quadratic differential near a zero or simple pole.

Near a point of order ``n`` the differential can be put in the normal form

    phi(z) dz^2 = ((n + 2) / 2)^2 z^n dz^2,

whose natural coordinate is ``w = z^((n+2)/2)``.  With ``r = |w|`` and
``theta = arg z`` the induced metric is the cone ``dr^2 + (c r dtheta)^2``,
``c = (n + 2) / 2``, of total angle ``(n + 2) pi``.

The numerical probes here (quadrature of the natural coordinate, metric
lengths of chart paths, parallel transport around a cone point) give
independent checks of those closed forms.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .cone_geometry import StringTension, TWO_PI

ORDER_CONVENTIONS = ("self_consistent", "paper")

#: radial quadrature: initial total node count and hard cap
DEFAULT_SAMPLES = 4096
MAX_SAMPLES = 2**20
QUADRATURE_RTOL = 1e-8
_NODES_PER_CELL = 16
# 2**-960 keeps the innermost graded cell clear of float underflow
_MAX_GRADED_CELLS = 960

#: RK4 steps per radian of chart angle swept in holonomy transport
HOLONOMY_STEPS_PER_RADIAN = 1024


class FlatStructureError(ValueError):
    pass


@dataclass(frozen=True)
class LocalModel:
    """Normal form ``c^2 z^n dz^2`` around a zero (n > 0) or simple pole (n = -1)."""

    order_n: float

    def __post_init__(self):
        n = float(self.order_n)
        if not math.isfinite(n) or n <= -2:
            raise FlatStructureError(f"order must exceed -2, got {self.order_n!r}")
        object.__setattr__(self, "order_n", n)

    @property
    def c(self) -> float:
        return (self.order_n + 2.0) / 2.0

    @property
    def coefficient(self) -> float:
        return self.c**2

    @property
    def cone_angle(self) -> float:
        return (self.order_n + 2.0) * math.pi

    def phi(self, z):
        return self.coefficient * np.power(z, self.order_n)

    def sqrt_phi(self, z):
        # branch matched to d/dz of the principal z**c
        return self.c * np.power(z, self.order_n / 2.0)


def natural_coordinate_closed_form(n: float, z: complex) -> complex:
    """Principal-branch ``z ** ((n + 2) / 2)``, cut along the negative real axis."""
    model = LocalModel(n)
    z = complex(z)
    c = model.c
    if z == 0:
        if c.is_integer() and c > 0:
            return 0j
        raise FlatStructureError("natural coordinate is branched at z = 0 for non-integer exponent")
    if c.is_integer():
        return z ** int(c)
    return cmath.exp(c * cmath.log(z))


@lru_cache(maxsize=None)
def _gauss_legendre(m: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(m)
    return (x + 1.0) / 2.0, w / 2.0


def _radial_breakpoints(length: float, cutoff: float, cells: int) -> np.ndarray:
    """Cell edges on ``[cutoff, length]``, geometrically graded toward the origin."""
    if cutoff > 0:
        return length * (cutoff / length) ** (np.arange(cells + 1) / cells)
    cells = min(cells, _MAX_GRADED_CELLS)
    edges = length * 0.5 ** np.arange(cells + 1, dtype=float)
    return np.append(edges, 0.0)


def radial_quadrature(n: float, z_end: complex, samples: int, cutoff: float = 0.0) -> complex:
    """Integral of ``sqrt(phi)`` along the ray from ``cutoff * z_end/|z_end|`` to ``z_end``.

    Fixed-budget composite Gauss-Legendre on a mesh graded toward the origin,
    so the integrable ``r**(n/2)`` endpoint singularity for ``n < 0`` is
    resolved.  ``samples`` is the total number of integrand evaluations.
    """
    model = LocalModel(n)
    z_end = complex(z_end)
    length = abs(z_end)
    if length == 0:
        raise FlatStructureError("radial path to the origin has no direction")
    if cutoff < 0 or cutoff >= length:
        raise FlatStructureError(f"cutoff must lie in [0, |z_end|), got {cutoff!r}")
    if samples < 1:
        raise FlatStructureError("samples must be positive")
    u = z_end / length

    cells = max(1, samples // _NODES_PER_CELL)
    edges = _radial_breakpoints(length, cutoff, cells)
    m = max(1, samples // (len(edges) - 1))
    x, w = _gauss_legendre(m)
    hi, lo = edges[:-1], edges[1:]
    widths = hi - lo
    t = lo[:, None] + widths[:, None] * x[None, :]
    vals = model.sqrt_phi(t.astype(complex) * u) * u
    return complex(np.sum(vals * (widths[:, None] * w[None, :])))


def natural_coordinate_quadrature(
    n: float,
    z_end: complex,
    path_samples: int = DEFAULT_SAMPLES,
    cutoff: float = 0.0,
    rtol: float = QUADRATURE_RTOL,
    max_samples: int = MAX_SAMPLES,
) -> complex:
    """Natural coordinate at ``z_end`` by numerical integration of ``sqrt(phi)``.

    The sample count doubles until two successive estimates agree to a tenth
    of ``rtol`` or ``max_samples`` is reached.  With ``cutoff = 0`` the base
    point is the singular point itself, matching the normalisation of
    :func:`natural_coordinate_closed_form`; otherwise compare against the
    difference of closed-form endpoint values.
    """
    samples = int(path_samples)
    prev = radial_quadrature(n, z_end, samples, cutoff)
    while samples * 2 <= max_samples:
        samples *= 2
        cur = radial_quadrature(n, z_end, samples, cutoff)
        if abs(cur - prev) <= 0.1 * rtol * abs(cur):
            return cur
        prev = cur
    return prev


def half_plane_count(n: int) -> int:
    """Number of half-planes the natural coordinate maps a neighbourhood onto."""
    if isinstance(n, bool) or int(n) != n:
        raise FlatStructureError(f"order must be an integer, got {n!r}")
    if n < -1:
        raise FlatStructureError(f"poles of degree {n} have infinite norm")
    return int(n) + 2


def order_from_tension(t: StringTension, convention: str = "self_consistent") -> float:
    """Order of the quadratic differential at a string of tension ``t``.

    ``self_consistent`` gives ``-8 g_mu``, for which the cone angle
    ``(n + 2) pi`` equals ``2 pi (1 - 4 g_mu)``.  ``paper`` gives the printed
    ``-16 g_mu``, whose cone angle ``2 pi (1 - 8 g_mu)`` doubles the deficit.
    """
    if convention == "self_consistent":
        return -8.0 * t.g_mu
    if convention == "paper":
        return -16.0 * t.g_mu
    raise FlatStructureError(f"unknown order convention {convention!r}; use one of {ORDER_CONVENTIONS}")


def pole_admissibility(t: StringTension, convention: str = "self_consistent") -> bool:
    """True iff the string induces at worst a simple pole (order >= -1)."""
    return order_from_tension(t, convention) >= -1.0


def convention_cone_angle_mismatch(t: StringTension, convention: str) -> float:
    """``(n + 2) pi - 2 pi (1 - 4 g_mu)`` for the given order convention."""
    n = order_from_tension(t, convention)
    return (n + 2.0) * math.pi - TWO_PI * (1.0 - 4.0 * t.g_mu)


@dataclass(frozen=True)
class PlanarLoop:
    """Polyline in one polar chart ``(r, angle)`` around the cone point.

    Consecutive vertices are joined by chart-straight segments, i.e. ``r``
    and the angle vary linearly.  The angular step of each segment is taken
    the short way round, so it must not be exactly ``pi``.
    """

    vertices: tuple[tuple[float, float], ...]
    closed: bool = True
    theta_max: float = TWO_PI

    def __post_init__(self):
        verts = tuple((float(r), float(a)) for r, a in self.vertices)
        if len(verts) < 2:
            raise FlatStructureError("a path needs at least two vertices")
        for r, a in verts:
            if not r > 0 or not math.isfinite(r):
                raise FlatStructureError(f"chart radius must be positive, got {r!r}")
            if not 0.0 <= a < self.theta_max:
                raise FlatStructureError(f"angle {a!r} outside [0, {self.theta_max!r})")
        object.__setattr__(self, "vertices", verts)
        for _, _, _, da in self.segments():
            if abs(abs(da) - self.theta_max / 2) < 1e-15:
                raise FlatStructureError("segment angular step of half a turn is ambiguous")

    @classmethod
    def circle(cls, radius: float = 1.0, turns: int = 1, vertices_per_turn: int = 8) -> "PlanarLoop":
        step = TWO_PI / vertices_per_turn
        verts = [(radius, (k % vertices_per_turn) * step) for k in range(vertices_per_turn * turns)]
        return cls(tuple(verts), closed=True)

    @classmethod
    def parse(cls, text: str, closed: bool = True) -> "PlanarLoop":
        """Parse ``r1,a1:r2,a2:...`` (angles in radians)."""
        verts = []
        for item in text.split(":"):
            r, a = item.split(",")
            verts.append((float(r), float(a)))
        return cls(tuple(verts), closed=closed)

    def scaled(self, factor: float) -> "PlanarLoop":
        return PlanarLoop(tuple((r * factor, a) for r, a in self.vertices), self.closed, self.theta_max)

    def segments(self) -> Iterator[tuple[float, float, float, float]]:
        """Yield ``(r0, a0, dr, da)`` for each segment."""
        verts = self.vertices
        pairs = list(zip(verts, verts[1:]))
        if self.closed:
            pairs.append((verts[-1], verts[0]))
        half = self.theta_max / 2
        for (r0, a0), (r1, a1) in pairs:
            da = math.remainder(a1 - a0, self.theta_max)
            if da == -half:
                da = half
            yield r0, a0, r1 - r0, da

    def winding(self) -> float:
        return math.fsum(da for *_, da in self.segments()) / self.theta_max


def cone_metric_length(c: float, path: PlanarLoop, nodes: int = 64, pieces: int = 4) -> float:
    """Length of ``path`` under ``dr^2 + (c r dtheta)^2``."""
    if not c > 0:
        raise FlatStructureError(f"cone factor must be positive, got {c!r}")
    x, w = _gauss_legendre(nodes)
    s = ((np.arange(pieces)[:, None] + x[None, :]) / pieces).ravel()
    ws = np.tile(w, pieces) / pieces
    total = []
    for r0, _, dr, da in path.segments():
        r = r0 + dr * s
        total.append(float(np.sum(ws * np.sqrt(dr * dr + (c * r * da) ** 2))))
    return math.fsum(total)


def phi_circumference(n: float, radius: float, nodes: int = 64) -> float:
    """Length of the chart circle ``|z| = radius`` in the metric ``|sqrt(phi)| |dz|``."""
    model = LocalModel(n)
    if not radius > 0:
        raise FlatStructureError("radius must be positive")
    x, w = _gauss_legendre(nodes)
    # half-open sweep keeps the sample points off the branch cut
    theta = -math.pi + TWO_PI * x
    z = radius * np.exp(1j * theta)
    dz = 1j * z * TWO_PI
    return float(np.sum(w * np.abs(model.sqrt_phi(z) * dz)))


def _transport_segment(vr, vt, r0, dr, da, a2, steps):
    """RK4 for parallel transport along one chart-straight segment.

    Metric ``dr^2 + a^2 r^2 dtheta^2``; only nonzero Christoffels are
    ``Gamma^r_tt = -a^2 r`` and ``Gamma^t_rt = 1/r``.  Yields the state after
    each step.
    """
    h = 1.0 / steps

    def f(s, vr, vt):
        r = r0 + dr * s
        return a2 * r * vt * da, -(dr * vt + da * vr) / r

    s = 0.0
    for _ in range(steps):
        k1r, k1t = f(s, vr, vt)
        k2r, k2t = f(s + h / 2, vr + h / 2 * k1r, vt + h / 2 * k1t)
        k3r, k3t = f(s + h / 2, vr + h / 2 * k2r, vt + h / 2 * k2t)
        k4r, k4t = f(s + h, vr + h * k3r, vt + h * k3t)
        vr += h / 6 * (k1r + 2 * k2r + 2 * k3r + k4r)
        vt += h / 6 * (k1t + 2 * k2t + 2 * k3t + k4t)
        s += h
        yield vr, vt, r0 + dr * s


def holonomy_around_point(
    t: StringTension,
    loop: PlanarLoop,
    steps_per_radian: int = HOLONOMY_STEPS_PER_RADIAN,
) -> float:
    """Rotation of a vector parallel-transported once along ``loop``.

    The transverse plane of a straight string carries
    ``dr^2 + (1 - 4 g_mu)^2 r^2 dtheta^2`` with ``theta`` in ``[0, 2 pi)``.
    The rotation is measured in the orthonormal polar frame and unwrapped, so
    a loop of winding ``k`` returns ``k`` times the deficit rather than its
    value mod 2 pi.
    """
    if not loop.closed:
        raise FlatStructureError("holonomy needs a closed loop")
    wind = loop.winding()
    k = round(wind)
    if k == 0 or abs(wind - k) > 1e-9:
        raise FlatStructureError(f"loop must wind a non-zero whole number of times, got {wind!r}")
    if not t.physical:
        raise FlatStructureError(f"g_mu={t.g_mu!r} >= 1/4 has no cone")
    a = 1.0 - 4.0 * t.g_mu
    a2 = a * a

    vr, vt = 1.0, 0.0
    start = prev = 0.0
    turns = 0
    for r0, _, dr, da in loop.segments():
        steps = max(16, math.ceil(abs(da) * steps_per_radian))
        for vr, vt, r in _transport_segment(vr, vt, r0, dr, da, a2, steps):
            cur = math.atan2(a * r * vt, vr)
            if cur - prev > math.pi:
                turns -= 1
            elif cur - prev < -math.pi:
                turns += 1
            prev = cur
    # the polar frame itself turns once per winding
    return (prev - start) + TWO_PI * (turns + k)

