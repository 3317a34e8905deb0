from fractions import Fraction as F

from octapet.renorm import layering_constant, renorm_map, zones, phi_map
from octapet.symmetry import patch_cover, iterated_patch_scales

descent = [F(13, 15), F(2, 15), F(3, 4), F(12, 29), F(5, 24), F(2, 5),
           F(9, 14), F(5, 14), F(11, 35), F(13, 22), F(11, 13)]
for s in descent:
    t = renorm_map(s)
    try:
        k = layering_constant(s)
    except Exception as e:
        k = f"ERR {e}"
    print(f"s={s}  t={t}  K={k}")

print()
for s in [F(2, 15), F(3, 4), F(5, 24), F(2, 5), F(5, 14), F(13, 22), F(11, 13)]:
    for lab in "ABPQ":
        try:
            cov = patch_cover(s, lab)
            kinds = {}
            for tile in cov.tiles:
                kinds[tile.kind] = kinds.get(tile.kind, 0) + 1
            print(f"patch_cover({s}, {lab}): patches={[p[0] for p in cov.patches]} tiles={kinds}")
        except Exception as e:
            print(f"patch_cover({s}, {lab}): {type(e).__name__}: {e}")
    print()
