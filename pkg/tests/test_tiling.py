from fractions import Fraction

import pytest

from octapet.exact_geom import canon_poly, hausdorff2, inner_point, poly_area2
from octapet.pet import make_system, orbit
from octapet.tiling import (
    KIND_BOX,
    KIND_DIAMOND,
    KIND_OCTAGON,
    KIND_TRIANGLE,
    central_tiles,
    classify_tile,
    compute_tiling,
    fragments_congruent,
    restrict_tiling,
    tiling_to_json,
)

F = Fraction


def test_half_parameter_tiling_frozen():
    # at s = 1/2 the map is the identity a.e.; the five tiles are the
    # central box and four right isosceles triangles split along the
    # half-step definedness lines
    T = compute_tiling(F(1, 2))
    assert T.status == "complete"
    assert T.covered_area == 2
    assert len(T.tiles) == 5
    kinds = sorted(t.kind for t in T)
    assert kinds == [KIND_BOX] + [KIND_TRIANGLE] * 4
    assert all(t.period == 1 for t in T)


def test_oddly_even_parameter_has_no_octagons():
    T = compute_tiling(F(12, 29))
    assert T.status == "complete"
    kinds = {t.kind for t in T}
    assert kinds <= {KIND_BOX, KIND_DIAMOND, KIND_TRIANGLE}


def test_octagon_central_tile_at_8_13():
    T = compute_tiling(F(8, 13))
    central = central_tiles(F(8, 13))
    assert len(central) == 1
    matches = [t for t in T if t.polygon == central[0]]
    assert len(matches) == 1
    assert matches[0].kind == KIND_OCTAGON
    assert matches[0].period == 1


@pytest.mark.parametrize("txt", ["2/5", "5/13", "8/13", "13/15", "5/24"])
def test_completeness_and_rotation_invariance(txt):
    s = F(txt)
    T = compute_tiling(s)
    assert T.status == "complete"
    assert T.covered_area == 4 * s
    polys = {t.polygon for t in T}
    for t in T:
        flipped = canon_poly([(-x, -y) for x, y in t.polygon])
        assert flipped in polys


def test_words_close_and_match_orbits():
    s = F(2, 5)
    T = compute_tiling(s)
    system = make_system(s)
    for t in T:
        sx = sum(v[0] for v in t.word)
        sy = sum(v[1] for v in t.word)
        assert sx == 0 and sy == 0
        res = orbit(system, inner_point(t.polygon), budget=10 * t.period)
        assert res.status == "periodic"
        assert res.steps == t.period
        assert tuple(res.word) == t.word


def test_words_distinct_at_generic_parameters():
    for txt in ["2/5", "5/13", "9/14"]:
        T = compute_tiling(F(txt))
        words = [t.word for t in T]
        assert len(set(words)) == len(words)


def test_central_tiles_box_run():
    tiles = central_tiles(F(5, 24))
    assert len(tiles) == 3
    assert all(classify_tile(p) == KIND_BOX for p in tiles)
    s = F(5, 24)
    T = compute_tiling(s)
    polys = {t.polygon for t in T}
    for p in tiles:
        assert p in polys

    assert len(central_tiles(F(2, 5))) == 1
    assert len(central_tiles(F(1, 8))) == 7


def test_central_tiles_big_parameter():
    tiles = central_tiles(F(5, 4))
    assert len(tiles) == 1
    assert classify_tile(tiles[0]) == KIND_DIAMOND
    T = compute_tiling(F(5, 4))
    assert T.status == "complete"
    assert tiles[0] in {t.polygon for t in T}
    assert len(central_tiles(F(9, 4))) == 3


def test_classify_tile_cases():
    box = canon_poly([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert classify_tile(box) == KIND_BOX
    diamond = canon_poly([(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert classify_tile(diamond) == KIND_DIAMOND
    tri = canon_poly([(0, 0), (1, 0), (0, 1)])
    assert classify_tile(tri) == KIND_TRIANGLE
    rect = canon_poly([(0, 0), (2, 0), (2, 1), (0, 1)])
    assert classify_tile(rect) == "other"
    tilted = canon_poly([(0, 0), (3, 1), (1, 2)])
    assert classify_tile(tilted) == KIND_TRIANGLE
    lopsided = canon_poly([(0, 0), (3, 0), (0, 1)])
    assert classify_tile(lopsided) == "other"
    octa = central_tiles(F(8, 13))[0]
    assert classify_tile(octa) == KIND_OCTAGON
    squashed = canon_poly([(2, 0), (3, 2), (2, 4), (0, 4), (-1, 2), (0, 0)])
    assert classify_tile(squashed) == "other"


def test_restrict_tiling_whole_and_partial():
    s = F(2, 5)
    T = compute_tiling(s)
    X = make_system(s).F1
    inside, crossing = restrict_tiling(T, X)
    assert len(inside) == len(T.tiles)
    assert crossing == []
    # a window cutting through the central box
    window = canon_poly([(0, 0), (1, 0), (1, 1), (0, 1)])
    inside, crossing = restrict_tiling(T, window)
    central = central_tiles(s)[0]
    assert central in [t.polygon for t in crossing]


def test_fragments_congruent_identity_and_mismatch():
    from octapet.exact_geom import SimilarityMap

    T = compute_tiling(F(2, 5))
    ident = SimilarityMap.identity()
    assert fragments_congruent(T.tiles, T.tiles, ident)
    assert not fragments_congruent(T.tiles[:-1], T.tiles, ident)


def test_tiling_json_frozen():
    text = tiling_to_json(compute_tiling(F(1, 2)))
    assert text == (
        '{"s":"1/2","status":"complete","tiles":['
        '{"vertices":[["-3/2","-1/2"],["-1/2","-1/2"],["-1","0"]],"period":1,"kind":"triangle"},'
        '{"vertices":[["-1","0"],["-1/2","-1/2"],["-1/2","1/2"]],"period":1,"kind":"triangle"},'
        '{"vertices":[["-1/2","-1/2"],["1/2","-1/2"],["1/2","1/2"],["-1/2","1/2"]],"period":1,"kind":"box"},'
        '{"vertices":[["1/2","-1/2"],["1","0"],["1/2","1/2"]],"period":1,"kind":"triangle"},'
        '{"vertices":[["1/2","1/2"],["1","0"],["3/2","1/2"]],"period":1,"kind":"triangle"}]}'
    )


def test_tiling_budget_truncation():
    T = compute_tiling(F(30, 73), budget_period=3)
    assert T.status == "truncated"
    assert T.covered_area < 4 * F(30, 73)


def _min_hausdorff2(ref, tiles, boxes):
    # the hausdorff distance is at least the worst bbox-extreme offset,
    # which prunes nearly every exact evaluation
    rxs = [float(x) for x, _ in ref]
    rys = [float(y) for _, y in ref]
    rbox = (min(rxs), min(rys), max(rxs), max(rys))
    order = sorted(
        range(len(tiles)),
        key=lambda i: max(abs(boxes[i][k] - rbox[k]) for k in range(4)),
    )
    best = None
    for i in order:
        gap = max(abs(boxes[i][k] - rbox[k]) for k in range(4))
        if best is not None and gap * gap > float(best) + 1e-9:
            break
        d = hausdorff2(ref, tiles[i].polygon)
        if best is None or d < best:
            best = d
    return best


def test_tile_convergence_along_convergents():
    # rationals marching toward the same irrational share tile geometry:
    # every tile of the deepest tiling is tracked ever more closely by a
    # tile of the earlier ones (rational stand-in for the irrational limit)
    target = compute_tiling(F(41, 112))
    worst = []
    for r in [F(4, 11), F(11, 30), F(15, 41)]:
        T = compute_tiling(r)
        boxes = []
        for t in T:
            xs = [float(x) for x, _ in t.polygon]
            ys = [float(y) for _, y in t.polygon]
            boxes.append((min(xs), min(ys), max(xs), max(ys)))
        gaps = [_min_hausdorff2(ref.polygon, T.tiles, boxes) for ref in target]
        worst.append(max(gaps))
    assert worst[2] < worst[1] < worst[0]
    assert worst[2] <= F(1, 900)


def test_area_accounting_exact():
    for txt in ["2/5", "8/13"]:
        T = compute_tiling(F(txt))
        total = sum(poly_area2(t.polygon) for t in T)
        assert total == 8 * F(txt)
