from fractions import Fraction as F
from itertools import combinations

from octapet.exact_geom import (
    canon_poly, poly_area2, poly_intersection, region_area2,
    region_contains_poly,
)
from octapet.renorm import renorm_map, phi_map, zones
from octapet.symmetry import (
    _complete_tiling, _piece_polygon, _region_diff, _restricted_fragments,
    _whole_tiles, fundamental_lines, reflection_map,
)
from octapet.tiling import fragments_congruent


def probe(s):
    t = renorm_map(s)
    pm = phi_map(s)
    phi = pm.left
    lines = fundamental_lines(s)
    r_d = reflection_map(lines.D)
    r_h = reflection_map(lines.H)
    r_v = reflection_map(lines.V)
    til_s = _complete_tiling(s)
    til_t = _complete_tiling(t)

    maps = {
        "phi": phi,
        "d.phi": r_d.compose(phi),
        "h.phi": r_h.compose(phi),
        "v.phi": r_v.compose(phi),
        "hd.phi": r_h.compose(r_d).compose(phi),
        "dh.phi": r_d.compose(r_h).compose(phi),
        "vd.phi": r_v.compose(r_d).compose(phi),
        "dv.phi": r_d.compose(r_v).compose(phi),
        "dhd.phi": r_d.compose(r_h).compose(r_d).compose(phi),
        "hdh.phi": r_h.compose(r_d).compose(r_h).compose(phi),
    }
    windows = {}
    for src in "ABPQ":
        try:
            windows[src] = _piece_polygon(t, src)
        except ValueError:
            pass

    for lab in "ABP":
        piece = _piece_polygon(s, lab)
        pa = poly_area2(piece)
        cands = []
        for src, window in windows.items():
            wfrags = _restricted_fragments(til_t, (window,))
            for mname, m in maps.items():
                image = canon_poly(m.apply_poly(window))
                if not region_contains_poly((piece,), image):
                    continue
                ifrags = _restricted_fragments(til_s, (image,))
                if not fragments_congruent(wfrags, ifrags, m):
                    continue
                cands.append((src, mname, image, poly_area2(image)))
        print(f"s={s} piece {lab} area2={pa}: {len(cands)} candidates")
        for src, mname, image, a in cands:
            print(f"   {src} via {mname}  area2={a}")
        # search disjoint subsets whose leftover is whole periodic tiles
        found = []
        for r in range(0, min(len(cands), 4) + 1):
            for combo in combinations(range(len(cands)), r):
                polys = [cands[i][2] for i in combo]
                ok = True
                for i in range(len(polys)):
                    for j in range(i + 1, len(polys)):
                        cut = poly_intersection(polys[i], polys[j])
                        if len(cut) >= 3 and poly_area2(cut) > 0:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    continue
                leftover = _region_diff((piece,), tuple(polys))
                if region_area2(leftover) == 0:
                    found.append((combo, {}))
                    continue
                try:
                    tiles = _whole_tiles(til_s, leftover)
                except AssertionError:
                    continue
                kinds = {}
                for tile in tiles:
                    kinds[tile.kind] = kinds.get(tile.kind, 0) + 1
                found.append((combo, kinds))
            if found:
                break
        for combo, kinds in found[:6]:
            desc = [f"{cands[i][0]} via {cands[i][1]}" for i in combo]
            print(f"   COVER: {desc} + {kinds}")
        print()


probe(F(5, 14))
probe(F(5, 24))
