"""Periodic tilings at rational parameters.

The map is a translation on every partition piece, so the set of points
sharing an itinerary is convex and refines under iteration. In coordinates
scaled by 2q (s = p/q) every vertex that can ever appear is an integer
point: all cutting lines are horizontal, vertical or slope +-1 with even
offsets, and such lines meet at integer points. The refinement loop runs
on plain machine integers.

A cell that returns to its start with zero net vector is a complete tile,
and its whole forward orbit consists of tiles as well, so the orbit is
emitted in one shot and a registry of emitted polygons kills the cells
that would rediscover the same orbit from a later starting position.
"""

from __future__ import annotations

import json
from array import array
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_geom import (
    Point,
    Poly,
    SimilarityMap,
    canon_poly,
    contains_point,
    cross,
    dot,
    format_scalar,
    poly_area2,
    poly_intersection,
    vsub,
)
from .pet import PETSystem, make_system, translation_partition

KIND_BOX = "box"
KIND_DIAMOND = "diamond"
KIND_TRIANGLE = "right-isosceles-triangle"
KIND_OCTAGON = "semi-regular-octagon"
KIND_OTHER = "other"

_JSON_KIND = {
    KIND_TRIANGLE: "triangle",
    KIND_OCTAGON: "octagon",
}

DEFAULT_BUDGET_CELLS = 10 ** 6
DEFAULT_BUDGET_PERIOD = 10 ** 5


class Tile:
    """One maximal periodic tile: polygon, period, kind, translation word."""

    __slots__ = ("polygon", "period", "kind", "_ids", "_shift", "_vectors")

    def __init__(self, polygon, period, kind, ids, shift, vectors):
        self.polygon = polygon
        self.period = period
        self.kind = kind
        self._ids = ids
        self._shift = shift
        self._vectors = vectors

    @property
    def word(self) -> Tuple[Point, ...]:
        ids = self._ids
        n = self.period
        k = self._shift
        vecs = self._vectors
        return tuple(vecs[ids[(k + i) % n]] for i in range(n))

    def __repr__(self):
        return f"Tile(kind={self.kind!r}, period={self.period}, ngon={len(self.polygon)})"


@dataclass(frozen=True)
class Tiling:
    s: Fraction
    tiles: Tuple[Tile, ...]
    status: str                 # "complete" | "truncated"
    covered_area: Fraction      # equals 4s exactly when complete

    def __iter__(self):
        return iter(self.tiles)

    def __len__(self):
        return len(self.tiles)


def _scaled_int(x, scale: int) -> int:
    v = x * scale
    if v.denominator != 1:
        raise AssertionError("vertex does not land on the integer grid")
    return int(v)


def _halfplanes(poly) -> Tuple[Tuple[int, int, int], ...]:
    # CCW polygon -> (a, b, c) rows with ax + by <= c inside
    out = []
    n = len(poly)
    for i in range(n):
        px, py = poly[i]
        qx, qy = poly[(i + 1) % n]
        dx = qx - px
        dy = qy - py
        out.append((dy, -dx, dy * px - dx * py))
    return tuple(out)


def _area2_int(poly) -> int:
    total = 0
    n = len(poly)
    for i in range(n):
        px, py = poly[i]
        qx, qy = poly[(i + 1) % n]
        total += px * qy - qx * py
    return total


def _bbox_int(poly):
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), min(ys), max(xs), max(ys)


def _clip_int(poly, a: int, b: int, c: int):
    """Keep the part of a CCW integer polygon with ax + by <= c.

    Crossing points are exact; the line family in play guarantees they are
    integers, which divmod asserts.
    """
    out = []
    n = len(poly)
    px, py = poly[-1]
    fp = a * px + b * py - c
    for i in range(n):
        qx, qy = poly[i]
        fq = a * qx + b * qy - c
        if fp <= 0:
            out.append((px, py))
        if (fp < 0 < fq) or (fq < 0 < fp):
            den = fp - fq
            # crossing at P + (Q - P) * fp / den, always an integer point
            x, rx = divmod(px * den + (qx - px) * fp, den)
            y, ry = divmod(py * den + (qy - py) * fp, den)
            if rx or ry:
                raise AssertionError("clip point off the integer grid")
            out.append((x, y))
        px, py, fp = qx, qy, fq
    return out


def _tidy(poly):
    """Drop duplicate and collinear vertices; None when area is gone."""
    if len(poly) < 3:
        return None
    dedup = []
    for pt in poly:
        if not dedup or dedup[-1] != pt:
            dedup.append(pt)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    if len(dedup) < 3:
        return None
    keep = []
    n = len(dedup)
    for i in range(n):
        ax, ay = dedup[i - 1]
        bx, by = dedup[i]
        cx, cy = dedup[(i + 1) % n]
        if (bx - ax) * (cy - by) - (by - ay) * (cx - bx) != 0:
            keep.append((bx, by))
    if len(keep) < 3 or _area2_int(keep) <= 0:
        return None
    return tuple(keep)


def _canon_rot(poly):
    i = min(range(len(poly)), key=poly.__getitem__)
    return poly[i:] + poly[:i]


def classify_tile(polygon: Poly) -> str:
    """Exact shape class from vertex count, angles and squared lengths."""
    n = len(polygon)
    edges = [vsub(polygon[(i + 1) % n], polygon[i]) for i in range(n)]
    if n == 4:
        lens = [dot(e, e) for e in edges]
        if len(set(lens)) == 1 and all(
            dot(edges[i], edges[(i + 1) % 4]) == 0 for i in range(4)
        ):
            if all(e[0] == 0 or e[1] == 0 for e in edges):
                return KIND_BOX
            if all(abs(e[0]) == abs(e[1]) for e in edges):
                return KIND_DIAMOND
        return KIND_OTHER
    if n == 3:
        for i in range(3):
            u = edges[i]
            w = edges[(i + 2) % 3]
            # right angle at vertex i between incoming -w and outgoing u
            if dot(u, w) == 0 and dot(u, u) == dot(w, w):
                return KIND_TRIANGLE
        return KIND_OTHER
    if n == 8:
        for i in range(8):
            u = edges[i]
            v = edges[(i + 1) % 8]
            turn = cross(u, v)
            if turn <= 0 or turn != dot(u, v):
                return KIND_OTHER
            if dot(u, u) != dot(edges[(i + 2) % 8], edges[(i + 2) % 8]):
                return KIND_OTHER
        return KIND_OCTAGON
    return KIND_OTHER


def compute_tiling(
    s,
    budget_cells: int = DEFAULT_BUDGET_CELLS,
    budget_period: int = DEFAULT_BUDGET_PERIOD,
) -> Tiling:
    """All periodic tiles of the exchange map at rational s.

    Status is "truncated" when a budget trips; verification helpers treat
    anything but "complete" as unusable rather than silently wrong.
    """
    s = Fraction(s)
    return _compute_tiling_cached(s, budget_cells, budget_period)


@lru_cache(maxsize=64)
def _compute_tiling_cached(s: Fraction, budget_cells: int, budget_period: int) -> Tiling:
    system = make_system(s)
    scale = 2 * s.denominator
    partition = translation_partition(system)

    piece_polys = []
    piece_planes = []
    piece_bbox = []
    piece_vecs_int = []
    piece_vecs = []
    for poly, vec in partition:
        ipoly = tuple((_scaled_int(x, scale), _scaled_int(y, scale)) for x, y in poly)
        piece_polys.append(ipoly)
        piece_planes.append(_halfplanes(ipoly))
        piece_bbox.append(_bbox_int(ipoly))
        piece_vecs_int.append((_scaled_int(vec[0], scale), _scaled_int(vec[1], scale)))
        piece_vecs.append((vec[0], vec[1]))
    piece_vecs = tuple(piece_vecs)
    m = len(piece_polys)
    if m > 255:
        raise AssertionError("partition larger than the index byte")

    # stack cells: (poly, netx, nety, steps, parent_chain, ids)
    stack = []
    for poly in piece_polys:
        stack.append((poly, 0, 0, 0, None, array("B")))
    cells_created = m
    registry: Dict[tuple, bool] = {}
    emitted: List[Tuple[tuple, int, array, int]] = []  # (poly, period, ids, shift)
    truncated = False

    while stack:
        poly, netx, nety, steps, parent, ids = stack.pop()
        while True:
            if steps >= budget_period:
                truncated = True
                break
            x0, y0, x1, y1 = _bbox_int(poly)
            hit = -1
            for j in range(m):
                bx0, by0, bx1, by1 = piece_bbox[j]
                if bx0 > x1 or x0 > bx1 or by0 > y1 or y0 > by1:
                    continue
                inside = True
                for a, b, c in piece_planes[j]:
                    for vx, vy in poly:
                        if a * vx + b * vy > c:
                            inside = False
                            break
                    if not inside:
                        break
                if inside:
                    hit = j
                    break
            if hit >= 0:
                vx, vy = piece_vecs_int[hit]
                ids.append(hit)
                poly = tuple((px + vx, py + vy) for px, py in poly)
                netx += vx
                nety += vy
                steps += 1
                if netx == 0 and nety == 0:
                    key = _canon_rot(poly)
                    if key not in registry:
                        _emit_orbit(poly, steps, parent, ids, piece_vecs_int, registry, emitted)
                    break
                if _canon_rot(poly) in registry:
                    break
                continue
            # the image straddles pieces: split and requeue the fragments
            fragments = []
            for j in range(m):
                bx0, by0, bx1, by1 = piece_bbox[j]
                if bx0 > x1 or x0 > bx1 or by0 > y1 or y0 > by1:
                    continue
                part = poly
                for a, b, c in piece_planes[j]:
                    part = _clip_int(part, a, b, c)
                    if len(part) < 3:
                        break
                part = _tidy(part)
                if part is not None:
                    fragments.append((part, j))
            if len(fragments) < 2:
                raise AssertionError("cell failed to split over the partition")
            chain = (parent, ids)
            for part, j in fragments:
                if _canon_rot(part) in registry:
                    continue
                vx, vy = piece_vecs_int[j]
                moved = tuple((px + vx, py + vy) for px, py in part)
                nx2 = netx + vx
                ny2 = nety + vy
                ids2 = array("B", (j,))
                if nx2 == 0 and ny2 == 0:
                    key = _canon_rot(moved)
                    if key not in registry:
                        _emit_orbit(moved, steps + 1, chain, ids2, piece_vecs_int, registry, emitted)
                elif _canon_rot(moved) not in registry:
                    stack.append((moved, nx2, ny2, steps + 1, chain, ids2))
            cells_created += len(fragments)
            if cells_created > budget_cells:
                truncated = True
            break
        if truncated:
            break

    tiles = []
    covered2 = 0
    vec_lookup = piece_vecs
    for ipoly, period, word_ids, shift in emitted:
        covered2 += _area2_int(ipoly)
        fpoly = canon_poly([(Fraction(x, scale), Fraction(y, scale)) for x, y in ipoly])
        tiles.append(Tile(fpoly, period, classify_tile(fpoly), word_ids, shift, vec_lookup))
    status = "truncated" if truncated else "complete"
    if not truncated:
        expected = 32 * s.numerator * s.denominator
        if covered2 != expected:
            raise AssertionError("tiling terminated without covering the domain")
    tiles.sort(key=lambda t: t.polygon)
    covered = Fraction(covered2, 2 * scale * scale)
    return Tiling(s=s, tiles=tuple(tiles), status=status, covered_area=covered)


def _emit_orbit(poly, period, parent, ids, vecs_int, registry, emitted):
    """Close a cell: record every position of its forward orbit as a tile."""
    seq = array("B")
    chain = (parent, ids)
    rev = []
    while chain is not None:
        rev.append(chain[1])
        chain = chain[0]
    for part in reversed(rev):
        seq.extend(part)
    if len(seq) != period:
        raise AssertionError("word length disagrees with the period")
    px = [p[0] for p in poly]
    py = [p[1] for p in poly]
    n = len(poly)
    x, y = 0, 0
    for k in range(period):
        pos = tuple((px[i] + x, py[i] + y) for i in range(n))
        key = _canon_rot(pos)
        if key in registry:
            raise AssertionError("orbit position emitted twice")
        registry[key] = True
        emitted.append((pos, period, seq, k))
        vx, vy = vecs_int[seq[k]]
        x += vx
        y += vy
    if x or y:
        raise AssertionError("orbit word does not close up")


def central_tiles(s) -> List[Poly]:
    """The tile(s) around the origin: one octagon for 1/2 < s < 1, a run of
    grid squares for s <= 1/2, diagonal squares for s >= 1."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError("parameter must be positive")
    one = Fraction(1)
    if Fraction(1, 2) < s < 1:
        return [canon_poly([
            (s, 1 - s), (1 - s, s), (s - 1, s), (-s, 1 - s),
            (-s, s - 1), (s - 1, -s), (1 - s, -s), (s, s - 1),
        ])]
    if s <= Fraction(1, 2):
        reach = Fraction(1, 2 * s) - 1
        kmax = int(reach)
        out = []
        for k in range(-kmax, kmax + 1):
            cx = 2 * k * s
            out.append(canon_poly([
                (cx - s, -s), (cx + s, -s), (cx + s, s), (cx - s, s),
            ]))
        return out
    kmax = int(s - 1)
    out = []
    for k in range(-kmax, kmax + 1):
        c = k * one
        out.append(canon_poly([
            (c - 1, c), (c, c - 1), (c + 1, c), (c, c + 1),
        ]))
    return out


def restrict_tiling(tiling: Tiling, region: Poly):
    """Split the tiles into those inside the convex region and those
    crossing its boundary; tiles fully outside are dropped."""
    inside = []
    crossing = []
    for tile in tiling.tiles:
        if all(contains_point(region, v) for v in tile.polygon):
            inside.append(tile)
            continue
        overlap = poly_intersection(tile.polygon, region)
        if len(overlap) >= 3 and poly_area2(overlap) != 0:
            crossing.append(tile)
    return inside, crossing


def fragments_congruent(tiles_a: Sequence, tiles_b: Sequence, mapping: SimilarityMap) -> bool:
    """True when the map carries the first polygon set exactly onto the second."""

    def polyset(tiles, m: Optional[SimilarityMap]):
        out = set()
        for t in tiles:
            poly = t.polygon if isinstance(t, Tile) else t
            if m is not None:
                poly = m.apply_poly(poly)
            out.add(canon_poly(poly))
        return out

    return polyset(tiles_a, mapping) == polyset(tiles_b, None)


def tiling_to_json(tiling: Tiling) -> str:
    """Canonical JSON: exact scalar strings, fixed key order, sorted tiles."""
    tiles = []
    for t in tiling.tiles:
        tiles.append({
            "vertices": [[format_scalar(x), format_scalar(y)] for x, y in t.polygon],
            "period": t.period,
            "kind": _JSON_KIND.get(t.kind, t.kind),
        })
    doc = {"s": format_scalar(tiling.s), "status": tiling.status, "tiles": tiles}
    return json.dumps(doc, separators=(",", ":"))
