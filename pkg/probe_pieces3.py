"""Probe 3: Q identity at 13/15; full piece + cover probes at 12/29, 11/35, 9/14."""
from fractions import Fraction as F

from octapet.exact_geom import (
    SimilarityMap, canon_poly, convex_subtract, poly_area2,
    poly_intersection, region_area2, region_eq, translate_poly,
)
from octapet.renorm import (
    left_portion, renorm_map, _zones_unvalidated, _phi_unvalidated,
)
from octapet.tiling import compute_tiling

from probe_pieces import (
    x_region, reflect_region, region_intersect, merge, union_accum, lines,
)

HALF = F(1, 2)


def refl_map_D(s):
    return SimilarityMap(0, -1, -1, 0, -2 * s, -2 * s)


RH = SimilarityMap(1, 0, 0, -1, 0, 0)
RV = SimilarityMap(-1, 0, 0, 1, -2, 0)


def pieces(s):
    X = x_region(s)
    H, V, D, E = lines(s)
    out = {}
    for lab, ln in (("A", H), ("B", V), ("P", D), ("Q", E)):
        raw = region_intersect(X, reflect_region(ln, X))
        clipped = left_portion(s, raw)
        out[lab] = merge(clipped)
        if out[lab] is None:
            print(f"  !! {lab} at {s} nonconvex:", len(clipped), "pieces",
                  "area2", region_area2(clipped))
            out[lab] = clipped
    return out


def show(tag, poly):
    print(tag, [(str(x), str(y)) for (x, y) in poly])


def subtract_all(region, polys):
    rem = tuple(region)
    for p in polys:
        rem = tuple(
            r for pp in rem for r in convex_subtract(pp, p)
            if poly_area2(r) > 0
        )
    return rem


def tile_decompose(s, til, leftover):
    """Split a leftover region into whole tiles; return (tiles, unmatched)."""
    rem = tuple(leftover)
    used = []
    changed = True
    while changed:
        changed = False
        for tile in til:
            a = F(0)
            for p in rem:
                c = poly_intersection(tile.polygon, p)
                if len(c) >= 3:
                    a += poly_area2(c)
            if a == poly_area2(tile.polygon):
                used.append(tile)
                rem = subtract_all(rem, [tile.polygon])
                changed = True
    return used, rem


# --- Q identity at 13/15 -------------------------------------------------
s = F(13, 15)
zs = _zones_unvalidated(s)
RD = refl_map_D(s)
pc = pieces(s)
show("A(13/15)", pc["A"])
show("B(13/15)", pc["B"])
show("P(13/15)", pc["P"])
show("Q(13/15)", pc["Q"])
nu_p = tuple(
    canon_poly(translate_poly(p, (-zs.shift[0], -zs.shift[1])))
    for p in zs.psi[1] + zs.psi[2]
)
expQ = union_accum([tuple(RD.apply_poly(p) for p in nu_p)])
print("Q == R_D(T^-1(Psi^1 u Psi^2)):",
      region_eq((pc["Q"],) if pc["Q"][0] and not isinstance(pc["Q"][0], tuple)
                or isinstance(pc["Q"][0][0], F) else pc["Q"], expQ))

# --- pieces at the s < 1/2 case parameters --------------------------------
for sv in (F(12, 29), F(11, 35), F(9, 14), F(18, 23), F(12, 31), F(5, 13)):
    print("=== s =", sv, " t =", renorm_map(sv))
    pc = pieces(sv)
    for lab in "ABPQ":
        if pc[lab] is not None and isinstance(pc[lab][0][0], F):
            show(f"  {lab}", pc[lab])
