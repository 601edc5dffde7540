"""
Natural coordinates, cone metrics and holonomy
==============================================

Near a zero of order n of a quadratic differential the natural coordinate is
w = z^((n+2)/2).  We check that against direct quadrature, measure cone
angles with the induced metric, and parallel-transport a vector around a
string to recover its deficit angle.
"""
import math

from conefold import (
    LocalModel,
    PlanarLoop,
    StringTension,
    cone_metric_length,
    half_plane_count,
    holonomy_around_point,
    natural_coordinate_closed_form,
    natural_coordinate_quadrature,
    order_from_tension,
    phi_circumference,
    pole_admissibility,
)

# %%
# Closed form against quadrature along a ray, including the simple pole.
for n in (-1, 0, 1, 2, 3):
    z = 4 * complex(math.cos(0.4), math.sin(0.4))
    w = natural_coordinate_closed_form(n, z)
    q = natural_coordinate_quadrature(n, z)
    print(f"n={n:+d}  half-planes={half_plane_count(n)}  rel err {abs(q - w) / abs(w):.1e}")

# %%
# Circumference over radius in the flat metric is the cone angle (n+2) pi.
for n in (-1, 0, 1, 2):
    r = abs(natural_coordinate_closed_form(n, 0.8))
    via_phi = phi_circumference(n, 0.8) / r
    via_cone = cone_metric_length(LocalModel(n).c, PlanarLoop.circle(r)) / r
    print(f"n={n:+d}  {via_phi / math.pi:.10f} pi  {via_cone / math.pi:.10f} pi")

# %%
# Two readings of the order of a string.  The self-consistent one matches the
# string cone angle; the other doubles the deficit and moves the pole bound.
t = StringTension(0.1)
for conv in ("self_consistent", "paper"):
    n = order_from_tension(t, conv)
    print(f"{conv:16s} n={n:+.2f}  cone angle {(n + 2):.2f} pi  simple-pole ok: {pole_admissibility(t, conv)}")

# %%
# Holonomy around a string equals its deficit, for any loop and any scale.
t = StringTension(0.05)
wobbly = PlanarLoop(((1.0, 0.0), (2.0, 1.0), (0.5, 2.5), (3.0, 4.0), (1.0, 5.5)))
print(f"deficit  {8 * math.pi * t.g_mu:.12f}")
print(f"circle   {holonomy_around_point(t, PlanarLoop.circle()):.12f}")
print(f"wobbly   {holonomy_around_point(t, wobbly):.12f}")
print(f"x1000    {holonomy_around_point(t, wobbly.scaled(1000)):.12f}")
print(f"3 turns  {holonomy_around_point(t, PlanarLoop.circle(turns=3)) / 3:.12f} per turn")
