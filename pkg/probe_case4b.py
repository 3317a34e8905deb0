from fractions import Fraction as F

from octapet.exact_geom import (
    canon_poly, poly_area2, poly_intersection, region_area2,
    region_contains_poly,
)
from octapet.renorm import renorm_map, phi_map
from octapet.symmetry import (
    _complete_tiling, _piece_polygon, _region_diff, _restricted_fragments,
    _whole_tiles, fundamental_lines, reflection_map,
)
from octapet.tiling import fragments_congruent


def try_combo(s, lab, combo):
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
        "hd.phi": r_h.compose(r_d).compose(phi),
        "dhd.phi": r_d.compose(r_h).compose(r_d).compose(phi),
        "dv.phi": r_d.compose(r_v).compose(phi),
    }
    piece = _piece_polygon(s, lab)
    images = []
    for src, mname in combo:
        m = maps[mname]
        window = _piece_polygon(t, src)
        image = canon_poly(m.apply_poly(window))
        if not region_contains_poly((piece,), image):
            return f"{src} via {mname} leaves piece"
        wf = _restricted_fragments(til_t, (window,))
        imf = _restricted_fragments(til_s, (image,))
        if not fragments_congruent(wf, imf, m):
            return f"{src} via {mname} not tile congruent"
        images.append(image)
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            cut = poly_intersection(images[i], images[j])
            if len(cut) >= 3 and poly_area2(cut) > 0:
                return f"overlap between {combo[i]} and {combo[j]}"
    leftover = _region_diff((piece,), tuple(images))
    if region_area2(leftover) == 0:
        return "EXACT no tiles"
    try:
        tiles = _whole_tiles(til_s, leftover)
    except AssertionError as e:
        return f"leftover bad: {e}"
    kinds = {}
    for tile in tiles:
        kinds[tile.kind] = kinds.get(tile.kind, 0) + 1
    return f"OK tiles={kinds}"


for s in (F(5, 14), F(5, 24)):
    print("s =", s)
    print("  A 3p:", try_combo(s, "A", [("A", "d.phi"), ("A", "hd.phi"), ("Q", "dv.phi")]))
    print("  B 2p:", try_combo(s, "B", [("P", "phi"), ("Q", "phi")]))
    print("  P 4p:", try_combo(s, "P", [("A", "phi"), ("A", "d.phi"), ("A", "hd.phi"), ("A", "dhd.phi")]))
    print("  P 3p:", try_combo(s, "P", [("A", "phi"), ("A", "d.phi"), ("A", "hd.phi")]))
    print()
