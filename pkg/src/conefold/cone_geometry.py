"""Cone points sourced by straight strings and the Gauss-Bonnet flatness check.

A string of dimensionless tension ``g_mu`` (the product G*mu) cuts a wedge of
angle ``8*pi*g_mu`` out of the plane transverse to it.  Everything in this
module is a different view of that one number:

    deficit   Delta = 8 pi g_mu
    cone angle theta = 2 pi (1 - 4 g_mu) = 2 pi (beta + 1)
    beta            = -4 g_mu

A closed connected surface of genus ``g`` carrying cone points can be given a
flat metric iff ``2 pi chi + sum(theta_i - 2 pi) == 0`` with ``chi = 2 - 2g``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

TWO_PI = 2.0 * math.pi

#: absolute tolerance for checking a surface built from exact cone data
CHECK_TOLERANCE = 1e-9
#: absolute tolerance when inferring genus from observational tension sums
OBSERVATIONAL_TOLERANCE = 1e-3
#: genus search cap for :func:`admissible_genus`
GENUS_MAX = 64

CHI_CONVENTIONS = ("derived", "paper")


class ConeGeometryError(ValueError):
    """Raised for invalid tensions, cone data or surfaces."""


@dataclass(frozen=True)
class StringTension:
    """Dimensionless string tension G*mu with a free-form provenance label.

    Values ``>= 1/4`` can be held (they arise from unphysical estimates) but
    are rejected by every operation that needs a positive cone angle; see
    :attr:`physical`.  Negative values require ``allow_negative=True``.
    """

    g_mu: float
    label: str = ""
    allow_negative: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        g = float(self.g_mu)
        if not math.isfinite(g):
            raise ConeGeometryError(f"g_mu must be finite, got {self.g_mu!r}")
        if g < 0 and not self.allow_negative:
            raise ConeGeometryError(
                f"negative g_mu={g!r} needs allow_negative_deficits"
            )
        object.__setattr__(self, "g_mu", g)

    @property
    def physical(self) -> bool:
        """True when the cone angle 2 pi (1 - 4 g_mu) is positive."""
        return self.g_mu < 0.25


def _require_physical(t: StringTension) -> None:
    if not t.physical:
        raise ConeGeometryError(
            f"g_mu={t.g_mu!r} >= 1/4 leaves no positive cone angle"
        )


def deficit_from_tension(t: StringTension) -> float:
    """Angle deficit ``8 pi g_mu`` in radians."""
    _require_physical(t)
    return 8.0 * math.pi * t.g_mu


def tension_from_deficit(
    delta: float, label: str = "", allow_negative: bool = False
) -> StringTension:
    """Inverse of :func:`deficit_from_tension`."""
    delta = float(delta)
    if not math.isfinite(delta) or delta >= TWO_PI:
        raise ConeGeometryError(f"deficit must be finite and < 2 pi, got {delta!r}")
    return StringTension(delta / (8.0 * math.pi), label, allow_negative=allow_negative)


def _close(a: float, b: float) -> bool:
    # a few ulps at the scale of 2 pi
    return math.isclose(a, b, rel_tol=1e-15, abs_tol=8 * TWO_PI * 2.0**-52)


@dataclass(frozen=True)
class ConicalPoint:
    """One cone singularity, stored in all five of its equivalent forms.

    The redundancy is deliberate: construction checks that the views agree,
    so a hand-built point with inconsistent fields cannot exist.
    """

    tension: StringTension
    deficit_delta: float
    cone_angle_theta: float
    beta: float
    order_n: float

    def __post_init__(self):
        g = self.tension.g_mu
        checks = {
            "deficit_delta": (self.deficit_delta, 8.0 * math.pi * g),
            "cone_angle_theta": (self.cone_angle_theta, TWO_PI * (1.0 - 4.0 * g)),
            "theta + delta": (self.cone_angle_theta + self.deficit_delta, TWO_PI),
            "2 pi (beta + 1)": (TWO_PI * (self.beta + 1.0), self.cone_angle_theta),
        }
        for name, (got, want) in checks.items():
            if not _close(got, want):
                raise ConeGeometryError(f"inconsistent cone point: {name} {got!r} != {want!r}")
        if not math.isclose(self.beta, -4.0 * g, rel_tol=1e-15, abs_tol=1e-300):
            raise ConeGeometryError(f"inconsistent cone point: beta {self.beta!r}")

    @property
    def excess(self) -> float:
        """``theta - 2 pi``; this point's contribution to the flatness sum."""
        return -self.deficit_delta


def cone_point_from_tension(
    t: StringTension, order_convention: str = "self_consistent"
) -> ConicalPoint:
    """Build a :class:`ConicalPoint` whose fields all derive from ``t``."""
    from .flat_structure import order_from_tension

    delta = deficit_from_tension(t)
    return ConicalPoint(
        tension=t,
        deficit_delta=delta,
        cone_angle_theta=TWO_PI * (1.0 - 4.0 * t.g_mu),
        beta=-4.0 * t.g_mu,
        order_n=order_from_tension(t, order_convention),
    )


@dataclass(frozen=True)
class FlatConeSurface:
    """Closed orientable surface of given genus with cone points.

    There is no mesh or atlas: the curvature of the flat cone metric is
    concentrated on the points, so the points list is the whole curvature.
    """

    genus: int
    points: tuple[ConicalPoint, ...] = ()
    connected: bool = True
    allow_negative_deficits: bool = False

    def __post_init__(self):
        if isinstance(self.genus, bool) or int(self.genus) != self.genus or self.genus < 0:
            raise ConeGeometryError(f"genus must be a non-negative integer, got {self.genus!r}")
        object.__setattr__(self, "genus", int(self.genus))
        object.__setattr__(self, "points", tuple(self.points))
        if not self.allow_negative_deficits:
            for p in self.points:
                if p.tension.g_mu < 0:
                    raise ConeGeometryError(
                        "negative deficit found; set allow_negative_deficits=True"
                    )

    @classmethod
    def from_tensions(
        cls,
        genus: int,
        tensions: Iterable[StringTension],
        connected: bool = True,
        allow_negative_deficits: bool = False,
    ) -> "FlatConeSurface":
        pts = tuple(cone_point_from_tension(t) for t in tensions)
        return cls(genus, pts, connected, allow_negative_deficits)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus

    def integrated_scalar_curvature(self) -> float:
        """Integral of ``R = -4 pi sum(beta_i delta(p_i))`` over the surface.

        The smooth part vanishes.  Half of this is the integrated Gaussian
        curvature, which equals ``2 pi chi`` on an admissible surface.
        """
        return -4.0 * math.pi * math.fsum(p.beta for p in self.points)

    def residual(self) -> float:
        return gauss_bonnet_residual(self)

    def is_admissible(self, tolerance: float = CHECK_TOLERANCE) -> bool:
        return abs(gauss_bonnet_residual(self)) <= tolerance


def _residual(genus: int, excess_sum: float) -> float:
    return TWO_PI * (2 - 2 * genus) + excess_sum


def gauss_bonnet_residual(s: FlatConeSurface) -> float:
    """``2 pi chi + sum(theta_i - 2 pi)``; zero iff ``s`` admits the flat cone metric."""
    if not s.connected:
        raise ConeGeometryError(
            "flatness condition holds per connected component; split the surface first"
        )
    return _residual(s.genus, math.fsum(p.cone_angle_theta - TWO_PI for p in s.points))


def admissible_genus(
    tensions: Sequence[StringTension],
    tolerance: float = OBSERVATIONAL_TOLERANCE,
    genus_max: int = GENUS_MAX,
) -> set[int]:
    """All genera ``0..genus_max`` whose flatness residual is within ``tolerance``."""
    if not tolerance > 0:
        raise ConeGeometryError(f"tolerance must be positive, got {tolerance!r}")
    excess = math.fsum(-deficit_from_tension(t) for t in tensions)
    found = set()
    for g in range(genus_max + 1):
        r = _residual(g, excess)
        if abs(r) <= tolerance:
            found.add(g)
        elif r < -tolerance:
            # residual drops by 4 pi per genus step
            break
    return found


def chi_from_tensions(tensions: Sequence[StringTension], convention: str = "derived") -> float:
    """Euler characteristic implied by a set of string tensions.

    ``derived`` is ``4 * sum(g_mu)``, the value the flatness condition forces.
    ``paper`` is ``8 pi * sum(g_mu)``, the printed relation.  The two differ by
    a factor 2 pi and agree on every genus verdict reachable from observed
    tensions.  An empty list gives 0 under both.
    """
    total = math.fsum(t.g_mu for t in tensions)
    if convention == "derived":
        return 4.0 * total
    if convention == "paper":
        return 8.0 * math.pi * total
    raise ConeGeometryError(f"unknown chi convention {convention!r}; use one of {CHI_CONVENTIONS}")


class SurfaceFileError(ConeGeometryError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_surface(text: str, allow_negative_deficits: bool = False) -> FlatConeSurface:
    """Parse the line-oriented surface format.

    ::

        # comments run to end of line
        genus 1
        point gmu=1.7e-7
        point gmu=1.7e-7
    """
    genus = None
    tensions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if genus is None:
            if head != "genus":
                raise SurfaceFileError(f"expected `genus <integer>`, got {line!r}", lineno)
            try:
                genus = int(rest)
            except ValueError:
                raise SurfaceFileError(f"genus must be an integer, got {rest!r}", lineno) from None
            if genus < 0:
                raise SurfaceFileError(f"genus must be non-negative, got {genus}", lineno)
            continue
        if head != "point" or not rest.startswith("gmu="):
            raise SurfaceFileError(f"expected `point gmu=<decimal>`, got {line!r}", lineno)
        try:
            g = float(rest[len("gmu="):])
            tensions.append(StringTension(g, f"line {lineno}", allow_negative=allow_negative_deficits))
            deficit_from_tension(tensions[-1])
        except ValueError as exc:
            raise SurfaceFileError(str(exc), lineno) from None
    if genus is None:
        raise SurfaceFileError("missing `genus <integer>` line")
    return FlatConeSurface.from_tensions(genus, tensions, allow_negative_deficits=allow_negative_deficits)
