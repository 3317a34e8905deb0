"""Probe 2: B/Q extent and cover equations at 13/15, unclipped vs clipped."""
from fractions import Fraction as F

from octapet.exact_geom import (
    Line2, SimilarityMap, canon_poly, clip_halfplane, contains_point,
    convex_hull, convex_subtract, poly_area2, poly_intersection,
    region_area2, region_eq, region_subtract, reflect_poly, translate_poly,
)
from octapet.pet import make_system
from octapet.renorm import renorm_map, _zones_unvalidated, _phi_unvalidated
from octapet.tiling import compute_tiling

from probe_pieces import (
    x_region, reflect_region, region_intersect, region_clip_x, merge,
    union_accum, lines,
)

s = F(13, 15)
t = renorm_map(s)
pm = _phi_unvalidated(s)
zs = _zones_unvalidated(s)
til = compute_tiling(s)
H, V, D, E = lines(s)
RD = SimilarityMap(0, -1, -1, 0, -2 * s, -2 * s)
RV = SimilarityMap(-1, 0, 0, 1, -2, 0)
X = x_region(s)

print("layer areas:", [str(region_area2(p)) for p in zs.psi], "K =", zs.K)

B_raw = region_intersect(X, reflect_region(V, X))
print("B raw area2 =", region_area2(B_raw), "merged:", merge(B_raw))

Q_raw = region_intersect(X, reflect_region(E, X))
print("Q raw area2 =", region_area2(Q_raw), "pieces:", len(Q_raw))
print("Q raw merged:", merge(Q_raw))

nu = zs.psi[0] + zs.psi[1] + zs.psi[2]
nu_p = tuple(
    canon_poly(translate_poly(p, (-zs.shift[0], -zs.shift[1])))
    for p in zs.psi[1] + zs.psi[2]
)
expQ = tuple(RD.apply_poly(p) for p in nu_p)
print("expQ = R_D(T^-1(Psi1 u Psi2)) area2 =", region_area2(expQ))
for p in expQ:
    print("   expQ piece", [(str(x), str(y)) for (x, y) in p])


def cleanliness(region):
    bad = []
    for tile in til:
        a = F(0)
        for piece in region:
            c = poly_intersection(tile.polygon, piece)
            if len(c) >= 3:
                a += poly_area2(c)
        if a != 0 and a != poly_area2(tile.polygon):
            bad.append(tile)
    return bad


print("clean B raw:", len(cleanliness(B_raw)), "bad tiles")
print("clean Q raw:", len(cleanliness(Q_raw)), "bad tiles")
print("clean expQ:", len(cleanliness(expQ)), "bad tiles")

# B cover, unclipped
for acut_tag, acut in (("-5t", -5 * t), ("-t", -t)):
    A_t = canon_poly(
        [(F(-1), F(0)), (t - 1, -t), (acut, -t), (acut, t), (t - 1, t)]
    )
    term = RD.apply_poly(pm.left.apply_poly(A_t))
    cover = union_accum([nu, tuple(RV.apply_poly(p) for p in nu), (term,)])
    rem = B_raw
    for p in cover:
        rem = tuple(
            r for pp in rem for r in convex_subtract(pp, p)
            if poly_area2(r) > 0
        )
    over = cover
    for p in B_raw:
        over = tuple(
            r for pp in over for r in convex_subtract(pp, p)
            if poly_area2(r) > 0
        )
    print(f"A_t cut {acut_tag}: B-cover leftover area2 = {region_area2(rem)}, "
          f"overflow outside B = {region_area2(over)}")
    for p in rem[:8]:
        print("   leftover", [(str(x), str(y)) for (x, y) in p],
              "area2", poly_area2(p))
