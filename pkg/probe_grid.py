from fractions import Fraction as F

from octapet.exact_geom import (
    SimilarityMap, canon_poly, region_contains_poly,
)
from octapet.renorm import left_portion, zones
from octapet.symmetry import (
    _complete_tiling, _poly_center, _restricted_fragments, build_octagrid,
    fundamental_lines, reflection_map,
)
from octapet.tiling import fragments_congruent

s = F(13, 32)
grid = build_octagrid(s)
zs = zones(s)
til = _complete_tiling(s)
z0 = left_portion(s, zs.Z)
lines = fundamental_lines(s)
gens = {
    "h": reflection_map(lines.H),
    "v": reflection_map(lines.V),
    "d": reflection_map(lines.D),
    "e": reflection_map(lines.E),
}
words = {"": SimilarityMap.identity()}
frontier = {"": SimilarityMap.identity()}
for _ in range(3):
    nxt = {}
    for w, m in frontier.items():
        for g, gm in gens.items():
            m2 = gm.compose(m)
            if m2 not in set(words.values()) and m2 not in set(nxt.values()):
                nxt[g + w] = m2
    words.update(nxt)
    frontier = nxt
print("group elements:", len(words))

step = zs.shift
span = 5


def reduce_comp(comp):
    frags = _restricted_fragments(til, (comp,))
    hits = []
    for a in range(-span, span + 1):
        sh = SimilarityMap.translation((a * step[0], a * step[1]))
        for w, refl in words.items():
            m = sh.compose(refl)
            image = canon_poly(m.apply_poly(comp))
            if not region_contains_poly(z0, image):
                continue
            image_frags = _restricted_fragments(til, (image,))
            if fragments_congruent(frags, image_frags, m):
                hits.append((a, w))
    return hits


bad = []
for comp in grid.components:
    if region_contains_poly(z0, comp):
        continue
    if any(region_contains_poly((t.polygon,), comp) for t in til):
        continue
    hits = reduce_comp(comp)
    c = _poly_center(comp)
    if hits:
        print(f"comp near ({c[0]}, {c[1]}): {hits[:4]}")
    else:
        bad.append(c)
        print(f"comp near ({c[0]}, {c[1]}): NO MOTION FOUND")
print("unreduced:", len(bad))
