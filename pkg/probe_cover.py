"""Probe 4: cover equations for all four cases with locked piece defs."""
from fractions import Fraction as F

from octapet.exact_geom import (
    Line2, SimilarityMap, canon_poly, clip_halfplane, convex_hull,
    convex_subtract, poly_area2, poly_intersection, region_area2,
    region_eq, translate_poly,
)
from octapet.renorm import (
    left_portion, renorm_map, _zones_unvalidated, _phi_unvalidated,
)
from octapet.tiling import compute_tiling

from probe_pieces import (
    x_region, reflect_region, region_intersect, merge, union_accum,
)

HALF = F(1, 2)
RH = SimilarityMap(1, 0, 0, -1, 0, 0)
RV = SimilarityMap(-1, 0, 0, 1, -2, 0)


def RD(s):
    return SimilarityMap(0, -1, -1, 0, -2 * s, -2 * s)


def piece_polys(s):
    """Locked definitions: A/P clipped left, B full, Q corner-clipped."""
    X = x_region(s)
    H = Line2.make(0, 1, 0)
    V = Line2.make(1, 0, -1)
    D = Line2.make(1, 1, -2 * s)
    E = Line2.make(1, 1, -4 * s) if s <= HALF else Line2.make(1, -1, 0)
    out = {}
    for lab, ln in (("A", H), ("B", V), ("P", D), ("Q", E)):
        raw = region_intersect(X, reflect_region(ln, X))
        if lab == "B":
            clipped = raw
        elif lab == "Q" and s > HALF:
            clipped = tuple(
                canon_poly(c) for p in raw
                for c in [clip_halfplane(p, F(1), F(1), F(-1))]
                if len(c) >= 3 and poly_area2(c) > 0
            )
        else:
            clipped = left_portion(s, raw)
        out[lab] = merge(clipped)
        assert out[lab] is not None, (lab, s, len(clipped))
    return out


def region_diff(R1, R2):
    """(R1 - R2, R2 - R1) as regions."""
    a = tuple(R1)
    for p in R2:
        a = tuple(r for pp in a for r in convex_subtract(pp, p)
                  if poly_area2(r) > 0)
    b = tuple(R2)
    for p in R1:
        b = tuple(r for pp in b for r in convex_subtract(pp, p)
                  if poly_area2(r) > 0)
    return a, b


def report(tag, piece, cover):
    missing, extra = region_diff((piece,), cover)
    print(f"  {tag}: missing {region_area2(missing)}  extra {region_area2(extra)}")
    return missing, extra


def tilefit(s, region, kinds=None):
    """Decompose region into whole tiles; returns (kinds, leftover area2)."""
    til = compute_tiling(s)
    rem = tuple(region)
    out = []
    for tile in til:
        a = F(0)
        for p in rem:
            c = poly_intersection(tile.polygon, p)
            if len(c) >= 3:
                a += poly_area2(c)
        if a == 0:
            continue
        if a == poly_area2(tile.polygon):
            out.append(tile.kind)
            rem = tuple(r for pp in rem for r in convex_subtract(pp, tile.polygon)
                        if poly_area2(r) > 0)
        else:
            out.append("PARTIAL-" + tile.kind)
    return out, region_area2(rem)


# ---- case i: s = 13/15, K = 3 --------------------------------------------
s = F(13, 15)
t = renorm_map(s)
pm = _phi_unvalidated(s)
zs = _zones_unvalidated(s)
pcs = piece_polys(s)
pct = piece_polys(t)
rd = RD(s)
print("=== case i at 13/15, K =", zs.K)
phi = pm.left

expA = (rd.apply_poly(phi.apply_poly(pcs_bt := piece_polys(t)["B"])),)
print("  A == R_D phi(B_t):", region_eq((pcs["A"],), expA))

nu = zs.psi[0] + zs.psi[1] + zs.psi[2]
cover = union_accum([
    nu, tuple(RV.apply_poly(p) for p in nu),
    (rd.apply_poly(phi.apply_poly(pct["A"])),),
])
mis, ext = report("B = nu u RV nu u RD phi A_t", pcs["B"], cover)
if region_area2(mis):
    print("   missing tiles:", tilefit(s, mis))
if region_area2(ext):
    print("   extra:", [[(str(x), str(y)) for x, y in p] for p in ext[:4]])

coverP = union_accum([nu, tuple(rd.apply_poly(p) for p in nu)])
report("P = nu u RD nu", pcs["P"], coverP)

nu_q = tuple(
    canon_poly(translate_poly(p, (-zs.shift[0], -zs.shift[1])))
    for p in zs.psi[1] + zs.psi[2] + zs.psi[3]
)
expQ = (canon_poly(convex_hull([v for p in nu_q for v in p])),)
expQ_rv = tuple(RV.apply_poly(p) for p in nu_q)
report("Q = RV T^-1(Psi^1..K)", pcs["Q"], union_accum([expQ_rv]))

# ---- case ii: s = 9/14, K = 1 ---------------------------------------------
s = F(9, 14)
t = renorm_map(s)
pm = _phi_unvalidated(s)
zs = _zones_unvalidated(s)
pcs = piece_polys(s)
pct = piece_polys(t)
rd = RD(s)
phi = pm.left
print("=== case ii at 9/14, K =", zs.K)
print("  A == R_D phi(B_t):",
      region_eq((pcs["A"],), (rd.apply_poly(phi.apply_poly(pct["B"])),)))
coverB = union_accum([
    (rd.apply_poly(phi.apply_poly(pct["A"])),),
    (phi.apply_poly(pct["Q"]),),
    (RV.apply_poly(phi.apply_poly(pct["Q"])),),
])
report("B = RD phi A_t u phi Q_t u RV phi Q_t", pcs["B"], coverB)
coverP = union_accum([
    (phi.apply_poly(pct["P"]),),
    (phi.apply_poly(pct["Q"]),),
    (rd.apply_poly(phi.apply_poly(pct["Q"])),),
])
report("P = phi P_t u phi Q_t u RD phi Q_t", pcs["P"], coverP)
print("  Q == RV phi(Q_t):",
      region_eq((pcs["Q"],), (RV.apply_poly(phi.apply_poly(pct["Q"])),)))

# ---- case iii: s = 12/29, K = 2 -------------------------------------------
s = F(12, 29)
t = renorm_map(s)
pm = _phi_unvalidated(s)
zs = _zones_unvalidated(s)
pcs = piece_polys(s)
pct = piece_polys(t)
rd = RD(s)
phi = pm.left
print("=== case iii at 12/29, K =", zs.K, " t =", t)
nu = zs.psi[0] + zs.psi[1]
nu_p1 = zs.psi[1]
nu_p1K = zs.psi[1] + zs.psi[2]
for tag, nup in (("nu'=Psi1", nu_p1), ("nu'=Psi1..K", nu_p1K)):
    coverA = union_accum([
        (rd.apply_poly(phi.apply_poly(pct["A"])),),
        (RH.compose(rd).apply_poly(phi.apply_poly(pct["A"])),),
        tuple(rd.apply_poly(p) for p in nup),
        tuple(RH.compose(rd).apply_poly(p) for p in nup),
    ])
    mis, ext = report(f"A [{tag}]", pcs["A"], coverA)
    if region_area2(mis):
        print("   missing tiles:", tilefit(s, mis))
    if region_area2(ext):
        print("   extra area pieces:", [[(str(x), str(y)) for x, y in p]
                                        for p in ext[:4]])

coverB = union_accum([nu, tuple(RV.apply_poly(p) for p in nu)])
mis, ext = report("B = nu u RV nu (minus Theta)", pcs["B"], coverB)
if region_area2(ext):
    print("   Theta tiles:", tilefit(s, ext))
coverP = union_accum([(pcs["A"],), (rd.apply_poly(pcs["A"]),)])
report("P = A u RD A", pcs["P"], coverP)
print("  Q == phi(B_t):",
      region_eq((pcs["Q"],), (phi.apply_poly(pct["B"]),)))

# ---- case iv: s = 11/35, K = 1 --------------------------------------------
s = F(11, 35)
t = renorm_map(s)
pm = _phi_unvalidated(s)
zs = _zones_unvalidated(s)
pcs = piece_polys(s)
pct = piece_polys(t)
rd = RD(s)
phi = pm.left
print("=== case iv at 11/35, K =", zs.K, " t =", t)
coverA = union_accum([
    (rd.apply_poly(phi.apply_poly(pct["A"])),),
    (RH.compose(rd).apply_poly(phi.apply_poly(pct["A"])),),
    (phi.apply_poly(pct["Q"]),),
])
mis, ext = report("A = RD phi A_t u RH RD phi A_t u phi Q_t", pcs["A"], coverA)
if region_area2(mis):
    print("   Theta tiles:", tilefit(s, mis))
if region_area2(ext):
    print("   extra:", [[(str(x), str(y)) for x, y in p] for p in ext[:4]])
print("  B == phi(P_t):",
      region_eq((pcs["B"],), (phi.apply_poly(pct["P"]),)))
coverP = union_accum([
    (phi.apply_poly(pct["A"]),),
    (rd.apply_poly(phi.apply_poly(pct["A"])),),
    (RH.compose(rd).apply_poly(phi.apply_poly(pct["A"])),),
])
mis, ext = report("P = phi A_t u RD phi A_t u RH RD phi A_t", pcs["P"], coverP)
if region_area2(mis):
    print("   Theta tiles:", tilefit(s, mis))
print("  Q == phi(B_t):",
      region_eq((pcs["Q"],), (phi.apply_poly(pct["B"]),)))
