"""Probe: pin down symmetric piece polygons against the cover equations."""
from fractions import Fraction as F

from octapet.exact_geom import (
    Line2, SimilarityMap, canon_poly, clip_halfplane, convex_hull,
    convex_subtract, poly_area2, poly_intersection, region_area2,
    region_eq, region_subtract, reflect_poly, translate_poly,
)
from octapet.pet import make_system
from octapet.renorm import (
    central_left_x, layering_constant, left_portion, renorm_map,
    trivial_tile, wings, x0_polygon, zones, _zones_unvalidated,
    _phi_unvalidated,
)


def x_region(s):
    sysm = make_system(s)
    return (sysm.F1,) + tuple(convex_subtract(sysm.F2, sysm.F1))


def reflect_region(line, region):
    return tuple(reflect_poly(line, p) for p in region)


def region_intersect(R1, R2):
    out = []
    for p in R1:
        for q in R2:
            c = poly_intersection(p, q)
            if len(c) >= 3 and poly_area2(c) > 0:
                out.append(canon_poly(c))
    return tuple(out)


def region_clip_x(region, cut):
    out = []
    for p in region:
        c = clip_halfplane(p, F(1), F(0), cut)
        if len(c) >= 3 and poly_area2(c) > 0:
            out.append(canon_poly(c))
    return tuple(out)


def merge(region):
    pts = [v for p in region for v in p]
    hull = convex_hull(pts)
    if poly_area2(hull) == region_area2(region):
        return canon_poly(hull)
    return None


def union_accum(regions):
    acc = ()
    for reg in regions:
        for p in reg:
            rem = ((p,))
            for q in acc:
                nxt = []
                for r in rem:
                    nxt.extend(convex_subtract(r, q))
                rem = tuple(nxt)
            acc = acc + tuple(r for r in rem if poly_area2(r) > 0)
    return acc


def lines(s):
    H = Line2.make(0, 1, 0)
    V = Line2.make(1, 0, -1)
    D = Line2.make(1, 1, -2 * s)
    if s <= F(1, 2):
        E = Line2.make(1, 1, -4 * s)
    else:
        E = Line2.make(1, -1, 0)
    return H, V, D, E


def piece(s, line, cut):
    X = x_region(s)
    raw = region_intersect(X, reflect_region(line, X))
    clipped = region_clip_x(raw, cut)
    return clipped, merge(clipped)


def show(tag, poly):
    if poly is None:
        print(tag, "NONCONVEX")
    else:
        print(tag, [(str(x), str(y)) for (x, y) in poly])


s = F(13, 15)
t = renorm_map(s)
print("=== s = 13/15, t =", t, "K =", layering_constant(s))
H, V, D, E = lines(s)
pm = _phi_unvalidated(s)
zs = _zones_unvalidated(s)
print("cut candidates: central_left_x =", central_left_x(s), " -s =", -s)

for cut_tag, cut in (("cen", central_left_x(s)), ("-s", -s)):
    regA, A = piece(s, H, cut)
    show(f"A[{cut_tag}]", A)

# expected A from the cover equation: R_D phi(B_t)
tt = t
B_t = canon_poly([(F(-1), F(0)), (-1 - tt, -tt), (tt - 1, -tt)])
RD = SimilarityMap(0, -1, -1, 0, -2 * s, -2 * s)
expA = RD.apply_poly(pm.left.apply_poly(B_t))
show("expA", expA)

regB, B = piece(s, V, -s)
show("B", B)
regP, P = piece(s, D, -s)
show("P", P)
regQ, Q = piece(s, E, -s)
show("Q(raw -s clip)", Q)
print("Q raw pieces:", len(regQ), "area2 =", region_area2(regQ))

# expected Q = R_D(nu'), nu' = T^{-1}(psi^1)  (K = 2)
Tv = zs.shift
nu_p = tuple(canon_poly(translate_poly(p, (-Tv[0], -Tv[1]))) for p in zs.psi[1])
expQ = tuple(RD.apply_poly(p) for p in nu_p)
print("expQ area2 =", region_area2(expQ))
show("expQ merged", merge(expQ))

# expected P = nu u R_D(nu), nu = psi^0 u psi^1
nu = zs.psi[0] + zs.psi[1]
expP = union_accum([nu, tuple(RD.apply_poly(p) for p in nu)])
print("expP area2 =", region_area2(expP), " P area2 =", region_area2(regP))
print("P == expP:", region_eq(regP, expP) if P else "skip")

# B equation: nu u R_V(nu) u R_D phi(A_t) u Theta
RV = SimilarityMap(-1, 0, 0, 1, -2, 0)
for acut_tag, acut in (("-5t", -5 * tt), ("-t", -tt)):
    A_t = canon_poly(
        [(F(-1), F(0)), (tt - 1, -tt), (acut, -tt), (acut, tt), (tt - 1, tt)]
    )
    term = RD.apply_poly(pm.left.apply_poly(A_t))
    cover = union_accum([nu, tuple(RV.apply_poly(p) for p in nu), (term,)])
    inside = region_eq(region_intersect(cover, regB), cover)
    resid = region_subtract(regB, cover[0]) if len(cover) == 1 else None
    rem = regB
    for p in cover:
        rem = tuple(
            r for q in [p] for pp in rem for r in convex_subtract(pp, q)
            if poly_area2(r) > 0
        )
    print(f"B cover with A_t cut {acut_tag}: cover inside B: {inside}, "
          f"leftover area2 = {region_area2(rem)}")
    for p in rem[:6]:
        print("   leftover piece", [(str(x), str(y)) for (x, y) in p],
              "area2", poly_area2(p))
