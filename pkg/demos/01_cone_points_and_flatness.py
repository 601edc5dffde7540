"""
Cone points and the flatness condition
======================================

A straight string of tension G*mu removes a wedge of angle 8 pi G*mu from
the plane transverse to it.  Put a handful of such points on a closed
surface and ask which genus can carry a flat metric with exactly those
cone points.
"""
import math

from conefold import (
    FlatConeSurface,
    StringTension,
    admissible_genus,
    cone_point_from_tension,
    gauss_bonnet_residual,
    tension_from_deficit,
)

# %%
# One string at the GUT-scale tension, seen four ways.
p = cone_point_from_tension(StringTension(1e-6, "GUT"))
print(f"deficit    {p.deficit_delta:.6e} rad")
print(f"cone angle {p.cone_angle_theta:.12f} rad (2 pi = {2 * math.pi:.12f})")
print(f"beta       {p.beta:.1e}")
print(f"order n    {p.order_n:.1e}")

# %%
# Torus and sphere without strings.  Only the torus is flat.
for g in (0, 1):
    print(f"genus {g}: residual {gauss_bonnet_residual(FlatConeSurface(g)):+.6f}")

# %%
# Ten strings at the tightest bound on a torus.  The residual is tiny but not
# zero, so the surface is admissible only at an observational tolerance.
spt = [StringTension(1.7e-7, "SPT")] * 10
torus = FlatConeSurface.from_tensions(1, spt)
print(f"residual {gauss_bonnet_residual(torus):.6e}")
print(f"admissible at 1e-9: {torus.is_admissible(1e-9)}, at 1e-3: {torus.is_admissible(1e-3)}")
print("admissible genus:", admissible_genus(spt, 1e-3))

# %%
# The pillowcase: four cone points of angle pi make a flat sphere.
pillow = FlatConeSurface.from_tensions(0, [tension_from_deficit(math.pi)] * 4)
print(f"pillowcase residual {gauss_bonnet_residual(pillow):.1e}")

# %%
# Higher genus needs negative deficits (cone angles above 2 pi).
neg = tension_from_deficit(-4 * math.pi, allow_negative=True)
genus2 = FlatConeSurface.from_tensions(2, [neg], allow_negative_deficits=True)
print(f"genus 2 with one 6 pi cone point: residual {gauss_bonnet_residual(genus2):.1e}")
