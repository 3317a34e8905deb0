"""Bilateral symmetry structure of the octagonal PET.

The domain X_s carries four distinguished reflection lines.  Intersecting
X_s with its reflected copy produces the symmetric pieces A, B, P, Q whose
restricted tilings are reflection invariant.  The pieces admit exact covers
by renormalization patches plus whole periodic tiles, which is the engine
behind the limit set analysis.  This module builds the lines and pieces,
verifies shield structure at oddly even parameters, detects diamond
pyramids, assembles the octagrid, and certifies patch covers.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .exact_geom import (
    Line2,
    Point,
    Poly,
    Region,
    Scalar,
    SimilarityMap,
    canon_poly,
    clip_halfplane,
    contains_point,
    convex_hull,
    convex_subtract,
    floor_scalar,
    format_scalar,
    poly_area2,
    poly_intersection,
    region_area2,
    region_contains_poly,
    region_eq,
    scalar_sign,
    translate_poly,
)
from .pet import make_system
from .renorm import (
    central_left_x,
    is_oddly_even,
    left_portion,
    phi_map,
    renorm_map,
    x0_polygon,
    zones,
)
from .tiling import Tile, Tiling, compute_tiling, fragments_congruent

HALF = Fraction(1, 2)
SQUARE_KINDS = ("box", "diamond")
PERIODIC_KINDS = ("box", "diamond", "semi-regular-octagon")

__all__ = [
    "FundamentalLines",
    "SymmetricPiece",
    "ShieldReport",
    "Pyramid",
    "Octagrid",
    "PatchCover",
    "fundamental_lines",
    "reflection_map",
    "symmetric_pieces",
    "is_clean",
    "shield_report",
    "detect_pyramid",
    "build_octagrid",
    "octagrid_component_check",
    "patch_cover",
    "iterated_patch_scales",
]


# ---------------------------------------------------------------------------
# fundamental lines and reflections


@dataclass(frozen=True)
class FundamentalLines:
    """The four reflection lines H, V, D, E at parameter s."""

    s: Scalar
    H: Line2
    V: Line2
    D: Line2
    E: Line2


def fundamental_lines(s: Scalar) -> FundamentalLines:
    """Reflection lines of the tiling at parameter s in (0, 1).

    H is the horizontal axis and V the vertical line through (-1, 0).
    Below one half, D and E are the slope -1 lines through (-ms, -ms)
    and (-(m+1)s, -(m+1)s) where m counts the central squares on each
    side; with a single central square these pass through (-s, -s) and
    (-2s, -2s).  Above one half D runs through (-s, -s) and E is the
    main diagonal y = x.
    """
    if scalar_sign(s) <= 0 or scalar_sign(1 - s) <= 0:
        raise ValueError("parameter must lie in (0, 1)")
    one = Fraction(1)
    if scalar_sign(HALF - s) > 0:
        m = floor_scalar(1 / (2 * s))
        d_line = Line2.make(one, one, -2 * m * s)
        e_line = Line2.make(one, one, -2 * (m + 1) * s)
    else:
        d_line = Line2.make(one, one, -2 * s)
        e_line = Line2.make(one, -one, Fraction(0))
    return FundamentalLines(
        s=s,
        H=Line2.make(Fraction(0), one, Fraction(0)),
        V=Line2.make(one, Fraction(0), -one),
        D=d_line,
        E=e_line,
    )


def reflection_map(line: Line2) -> SimilarityMap:
    """Orthogonal reflection across ax + by = c as a similarity map."""
    a, b, c = line
    n = a * a + b * b
    return SimilarityMap(
        1 - 2 * a * a / n,
        -2 * a * b / n,
        -2 * a * b / n,
        1 - 2 * b * b / n,
        2 * c * a / n,
        2 * c * b / n,
    )


# ---------------------------------------------------------------------------
# region helpers


def _x_region(s) -> Region:
    """X_s as a region: F1 plus the part of F2 outside F1."""
    system = make_system(s)
    extra = tuple(
        p for p in convex_subtract(system.F2, system.F1) if poly_area2(p) > 0
    )
    return (canon_poly(system.F1),) + tuple(canon_poly(p) for p in extra)


def _map_region(m: SimilarityMap, region: Region) -> Region:
    return tuple(canon_poly(m.apply_poly(p)) for p in region)


def _region_intersect(r1: Region, r2: Region) -> Region:
    out = []
    for p in r1:
        for q in r2:
            c = poly_intersection(p, q)
            if len(c) >= 3 and poly_area2(c) > 0:
                out.append(canon_poly(c))
    return tuple(out)


def _region_clip(region: Region, a, b, c) -> Region:
    out = []
    for p in region:
        cp = clip_halfplane(p, a, b, c)
        if len(cp) >= 3 and poly_area2(cp) > 0:
            out.append(canon_poly(cp))
    return tuple(out)


def _merge_convex(region: Region) -> Optional[Poly]:
    """Single convex polygon covering the region exactly, if one exists."""
    if not region:
        return None
    hull = convex_hull([v for p in region for v in p])
    if len(hull) < 3:
        return None
    if poly_area2(hull) != region_area2(region):
        return None
    return canon_poly(hull)


def _region_diff(r1: Region, r2: Region) -> Region:
    rest = tuple(r1)
    for p in r2:
        rest = tuple(
            q
            for piece in rest
            for q in convex_subtract(piece, p)
            if poly_area2(q) > 0
        )
    return rest


def _normalize_region(region) -> Region:
    """Accept a bare polygon or a tuple of polygons."""
    if not region:
        return ()
    first = region[0]
    if first and isinstance(first[0], tuple):
        return tuple(region)
    return (tuple(region),)


# ---------------------------------------------------------------------------
# symmetric pieces


@dataclass(frozen=True)
class SymmetricPiece:
    """One of the four reflection invariant pieces of the domain."""

    label: str
    polygon: Poly
    line: Line2


_PIECE_LINE = {"A": "H", "B": "V", "P": "D", "Q": "E"}


def _piece_polygon(s, label: str) -> Poly:
    """The piece as a single convex polygon.

    A, P and (below one half) Q are the portions of X meet R_L(X) to the
    left of the central tiles.  B keeps the full intersection, a triangle
    at every parameter.  Above one half Q is cut off by the line x+y = -1
    carrying the lower left edge of the central octagon.
    """
    if label not in _PIECE_LINE:
        raise ValueError("piece label must be one of A, B, P, Q")
    lines = fundamental_lines(s)
    line = getattr(lines, _PIECE_LINE[label])
    refl = reflection_map(line)
    x_s = _x_region(s)
    raw = _region_intersect(x_s, _map_region(refl, x_s))
    if label == "B":
        clipped = raw
    elif label == "Q" and scalar_sign(s - HALF) > 0:
        clipped = _region_clip(raw, Fraction(1), Fraction(1), Fraction(-1))
    else:
        clipped = left_portion(s, raw)
    merged = _merge_convex(clipped)
    if merged is None:
        raise ValueError(f"piece {label} is degenerate at s = {format_scalar(s)}")
    return merged


def _complete_tiling(s) -> Tiling:
    til = compute_tiling(s)
    if til.status != "complete":
        raise RuntimeError(
            "tiling truncated; raise budget_cells or budget_period"
        )
    return til


def is_clean(s, region) -> bool:
    """True when no tile of the tiling crosses the region boundary.

    Every periodic tile must lie entirely inside or entirely outside the
    region (shared edges are fine).  The region may be a single polygon
    or a tuple of polygons.
    """
    reg = _normalize_region(region)
    til = _complete_tiling(s)
    for tile in til:
        overlap = Fraction(0)
        for p in reg:
            cut = poly_intersection(tile.polygon, p)
            if len(cut) >= 3:
                overlap = overlap + poly_area2(cut)
        if overlap != 0 and overlap != poly_area2(tile.polygon):
            return False
    return True


def _restricted_fragments(til: Tiling, region: Region) -> Tuple[Poly, ...]:
    """Clipped pieces of every tile meeting the region."""
    out = []
    for tile in til:
        for p in region:
            cut = poly_intersection(tile.polygon, p)
            if len(cut) >= 3 and poly_area2(cut) > 0:
                out.append(canon_poly(cut))
    return tuple(out)


def symmetric_pieces(s) -> Tuple[SymmetricPiece, ...]:
    """The symmetric pieces at s in [1/4, 1), each verified.

    Verification per piece: the polygon is invariant under its reflection,
    the piece is clean, and the reflection permutes the restricted tiles
    exactly.  At s = 1/2 the piece Q collapses to a point and is omitted.
    """
    if scalar_sign(s - Fraction(1, 4)) < 0 or scalar_sign(1 - s) <= 0:
        raise ValueError("symmetric pieces are defined for s in [1/4, 1)")
    lines = fundamental_lines(s)
    til = _complete_tiling(s)
    pieces = []
    for label in ("A", "B", "P", "Q"):
        if label == "Q" and s == HALF:
            continue
        poly = _piece_polygon(s, label)
        line = getattr(lines, _PIECE_LINE[label])
        refl = reflection_map(line)
        if canon_poly(refl.apply_poly(poly)) != poly:
            raise AssertionError(f"piece {label} not symmetric at {format_scalar(s)}")
        if not is_clean(s, poly):
            raise AssertionError(f"piece {label} not clean at {format_scalar(s)}")
        frags = _restricted_fragments(til, (poly,))
        if not fragments_congruent(frags, frags, refl):
            raise AssertionError(
                f"restricted tiling of {label} not reflection invariant"
            )
        pieces.append(SymmetricPiece(label=label, polygon=poly, line=line))
    return tuple(pieces)


# ---------------------------------------------------------------------------
# shield structure at oddly even parameters


@dataclass(frozen=True)
class ShieldReport:
    """Contact structure along the shield of an oddly even parameter.

    sigma holds one or two exact segments, apex their common endpoint.
    triangle is the unique right isosceles tile whose contact covers the
    apex.  squares lists the abutting square tiles ordered from the far
    end of each arm toward the apex.
    """

    s: Fraction
    sigma: Tuple[Tuple[Point, Point], ...]
    apex: Point
    triangle: Optional[Tile]
    squares: Tuple[Tile, ...]
    item1: bool
    item2: bool
    item4: bool

    @property
    def ok(self) -> bool:
        return self.item1 and self.item2 and self.item4


def _segment_overlap(p, q, u, v) -> Optional[Tuple[Point, Point]]:
    """Positive length overlap of collinear segments pq and uv, or None."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    ex, ey = v[0] - u[0], v[1] - u[1]
    if dx * ey - dy * ex != 0:
        return None
    # u must lie on the line through p and q
    if dx * (u[1] - p[1]) - dy * (u[0] - p[0]) != 0:
        return None
    den = dx * dx + dy * dy
    t0 = ((u[0] - p[0]) * dx + (u[1] - p[1]) * dy) / den
    t1 = ((v[0] - p[0]) * dx + (v[1] - p[1]) * dy) / den
    lo, hi = min(t0, t1), max(t0, t1)
    lo = max(lo, Fraction(0))
    hi = min(hi, Fraction(1))
    if scalar_sign(hi - lo) <= 0:
        return None
    return (
        (p[0] + lo * dx, p[1] + lo * dy),
        (p[0] + hi * dx, p[1] + hi * dy),
    )


def _tile_contacts(tile: Tile, sigma) -> list:
    """Overlap segments between the tile boundary and the shield."""
    contacts = []
    poly = tile.polygon
    for i in range(len(poly)):
        p, q = poly[i], poly[(i + 1) % len(poly)]
        for u, v in sigma:
            seg = _segment_overlap(u, v, p, q)
            if seg is not None:
                contacts.append(seg)
    return contacts


def _contact_covers(contacts, point) -> bool:
    for a, b in contacts:
        lo_x, hi_x = min(a[0], b[0]), max(a[0], b[0])
        lo_y, hi_y = min(a[1], b[1]), max(a[1], b[1])
        if lo_x <= point[0] <= hi_x and lo_y <= point[1] <= hi_y:
            return True
    return False


def shield_report(s) -> ShieldReport:
    """Verify the contact structure along the shield of the piece A.

    Defined only at oddly even rational parameters.  The shield runs from
    (-1, 0) along the upper left edge of A to the apex (s-1, s), then to
    the midpoint of the top edge; at s = 1/2 only the first segment
    survives.  Checks: a single right isosceles triangle touches the apex
    (item1), abutting squares shrink monotonically toward the apex
    (item2), and every realized square size has a representative with a
    vertex within its own diameter of the apex (item4).
    """
    if not isinstance(s, Fraction):
        s = Fraction(s) if isinstance(s, int) else s
    if not isinstance(s, Fraction) or not is_oddly_even(s):
        raise ValueError("shield structure requires an oddly even rational")
    if s > HALF:
        raise ValueError("shield structure is defined up to s = 1/2")
    apex = (s - 1, s)
    base = (Fraction(-1), Fraction(0))
    if s == HALF:
        sigma = ((base, apex),)
    else:
        cut = central_left_x(s)
        mid = ((s - 1 + cut) / 2, s)
        sigma = ((base, apex), (apex, mid))

    til = _complete_tiling(s)
    triangles = []
    squares = []
    arms = [[] for _ in sigma]
    for tile in til:
        contacts = _tile_contacts(tile, sigma)
        if not contacts:
            continue
        if tile.kind == "right-isosceles-triangle":
            triangles.append((tile, contacts))
        elif tile.kind in SQUARE_KINDS:
            squares.append((tile, contacts))
            for j, seg in enumerate(sigma):
                per_arm = _tile_contacts(tile, (seg,))
                if per_arm:
                    arms[j].append((tile, per_arm))

    apex_triangles = [t for t, c in triangles if _contact_covers(c, apex)]
    item1 = len(apex_triangles) == 1
    witness = apex_triangles[0] if apex_triangles else None

    def apex_gap2(tile: Tile) -> Scalar:
        best = None
        for v in tile.polygon:
            d = (v[0] - apex[0]) ** 2 + (v[1] - apex[1]) ** 2
            if best is None or d < best:
                best = d
        return best

    # order squares by how close their contact comes to the apex
    def contact_gap2(contacts) -> Scalar:
        best = None
        for a, b in contacts:
            for v in (a, b):
                d = (v[0] - apex[0]) ** 2 + (v[1] - apex[1]) ** 2
                if best is None or d < best:
                    best = d
        return best

    # squares shrink toward the apex along each arm separately
    item2 = True
    for arm in arms:
        arm.sort(key=lambda tc: contact_gap2(tc[1]), reverse=True)
        prev = None
        for tile, _ in arm:
            size = poly_area2(tile.polygon)
            if prev is not None and size > prev:
                item2 = False
            prev = size
    squares.sort(key=lambda tc: contact_gap2(tc[1]), reverse=True)

    item4 = True
    sizes = sorted({poly_area2(t.polygon) for t, _ in squares})
    for size in sizes:
        # diameter squared of a square tile is twice its area
        budget = 2 * size
        if not any(
            poly_area2(t.polygon) == size and apex_gap2(t) <= budget
            for t, _ in squares
        ):
            item4 = False
    return ShieldReport(
        s=s,
        sigma=sigma,
        apex=apex,
        triangle=witness,
        squares=tuple(t for t, _ in squares),
        item1=item1,
        item2=item2,
        item4=item4,
    )


# ---------------------------------------------------------------------------
# pyramids


@dataclass(frozen=True)
class Pyramid:
    """Lattice of square tiles riding the line D near the central cluster.

    tiles maps lattice cells (a, b) to periodic tiles.  Cells with
    b = size-1-|a| form the flank; in a type 1 pyramid they hold
    semi-regular octagons, otherwise everything is a diamond.  The base
    holds the cells a = 0 whose centers lie on D.  When extended is set
    the type 0 lattice also carries the row of upright squares at
    b = size-|a|.
    """

    s: Fraction
    size: int
    kind: int
    tiles: Dict[Tuple[int, int], Tile]
    extended: bool
    base: Tuple[Tile, ...]


def _tile_center(tile: Tile) -> Point:
    xs = [v[0] for v in tile.polygon]
    ys = [v[1] for v in tile.polygon]
    return (sum(xs) / len(xs), sum(ys) / len(ys))


def _center_key(p: Point) -> Tuple[str, str]:
    return (format_scalar(p[0]), format_scalar(p[1]))


def _shape_key(tile: Tile) -> Tuple:
    c = _tile_center(tile)
    moved = translate_poly(tile.polygon, (-c[0], -c[1]))
    return canon_poly(moved)


def _pyramid_cells(size: int):
    for a in range(-(size - 1), size):
        for b in range(0, size - abs(a)):
            yield (a, b)


def detect_pyramid(s, want_extended: bool = False) -> Pyramid:
    """Detect the diamond pyramid seeded at the trivial zone image.

    Valid for s < 1/2.  The lattice basis is e+ = (r, r), e- = (r, -r)
    with r = 1 - 2s, anchored at (r - 1, 0).  The size is the largest K
    whose full triangular cell block is realized by congruent tiles.
    Raises when not even the anchor cell carries a square tile.
    """
    if scalar_sign(HALF - s) <= 0:
        raise ValueError("pyramids are defined for s < 1/2")
    til = _complete_tiling(s)
    r = 1 - 2 * s
    c0 = (r - 1, Fraction(0) if isinstance(s, Fraction) else 0 * s)
    by_center = {_center_key(_tile_center(t)): t for t in til}

    def cell_tile(a: int, b: int) -> Optional[Tile]:
        center = (c0[0] + (a + b) * r, c0[1] + (a - b) * r)
        return by_center.get(_center_key(center))

    anchor = cell_tile(0, 0)
    if anchor is None or anchor.kind not in SQUARE_KINDS:
        raise ValueError(f"no pyramid anchor tile at s = {format_scalar(s)}")
    anchor_shape = _shape_key(anchor)

    def block_type(size: int) -> Optional[int]:
        # type 0: all cells congruent diamonds; type 1: octagon flank
        flank_shape = None
        kind = 0
        for a, b in _pyramid_cells(size):
            tile = cell_tile(a, b)
            if tile is None:
                return None
            on_flank = b == size - 1 - abs(a)
            if not on_flank or size == 1:
                if _shape_key(tile) != anchor_shape:
                    return None
                continue
            shape = _shape_key(tile)
            if tile.kind == anchor.kind and shape == anchor_shape:
                continue
            if tile.kind != "semi-regular-octagon":
                return None
            if flank_shape is None:
                flank_shape = shape
            elif shape != flank_shape:
                return None
            kind = 1
        return kind

    size, kind = 1, 0
    k = 1
    while k < 64:
        got = block_type(k + 1)
        if got is None:
            break
        size, kind = k + 1, got
        k += 1
    if size == 1:
        got = block_type(1)
        if got is None:
            raise ValueError(f"no pyramid at s = {format_scalar(s)}")
        kind = got

    tiles = {cell: cell_tile(*cell) for cell in _pyramid_cells(size)}
    extended = kind == 1
    if kind == 0 and want_extended:
        extra = {}
        cap_shape = None
        for a in range(-size, size + 1):
            tile = cell_tile(a, size - abs(a))
            if tile is None or tile.kind != "box":
                raise ValueError(
                    f"extended pyramid row missing at s = {format_scalar(s)}"
                )
            shape = _shape_key(tile)
            if cap_shape is None:
                cap_shape = shape
            elif shape != cap_shape:
                raise ValueError("extended pyramid row tiles are not congruent")
            extra[(a, size - abs(a))] = tile
        tiles.update(extra)
        extended = True
    base = tuple(tiles[(0, b)] for b in range(size))
    return Pyramid(
        s=s, size=size, kind=kind, tiles=tiles, extended=extended, base=base
    )


# ---------------------------------------------------------------------------
# octagrid


@dataclass(frozen=True)
class Octagrid:
    """Line arrangement through the extended pyramid centers on X^0."""

    s: Fraction
    lines: Tuple[Line2, ...]
    components: Tuple[Poly, ...]
    pyramid: Pyramid


def _integer_value(x) -> Optional[int]:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else None
    return None


def build_octagrid(s) -> Octagrid:
    """Arrangement of the four line directions through pyramid centers.

    Requires s < 1/2 with renormalized parameter below 1/2 as well.  Each
    pyramid tile center must sit on the exact lattice spanned by (r, r)
    and (r, -r); the components of the arrangement partition X^0.
    """
    t = renorm_map(s)
    if scalar_sign(HALF - s) <= 0 or scalar_sign(HALF - t) <= 0:
        raise ValueError(
            "octagrid needs s < 1/2 with renormalized parameter below 1/2"
        )
    pyr = detect_pyramid(s, want_extended=True)
    r = 1 - 2 * s
    c0 = (r - 1, Fraction(0))
    lines = {}
    for tile in pyr.tiles.values():
        cx, cy = _tile_center(tile)
        # lattice membership is exact: (dx+dy)/2r and (dx-dy)/2r integers
        a = ((cx - c0[0]) + (cy - c0[1])) / (2 * r)
        b = ((cx - c0[0]) - (cy - c0[1])) / (2 * r)
        if _integer_value(a) is None or _integer_value(b) is None:
            raise AssertionError(
                f"pyramid center off lattice at s = {format_scalar(s)}"
            )
        one = Fraction(1)
        zero = Fraction(0)
        for line in (
            Line2.make(zero, one, cy),
            Line2.make(one, zero, cx),
            Line2.make(one, -one, cx - cy),
            Line2.make(one, one, cx + cy),
        ):
            key = (format_scalar(line.a), format_scalar(line.b), format_scalar(line.c))
            lines[key] = line
    ordered = tuple(lines[k] for k in sorted(lines))

    cells = [x0_polygon(s)]
    for line in ordered:
        split = []
        for cell in cells:
            lo = clip_halfplane(cell, line.a, line.b, line.c)
            hi = clip_halfplane(cell, -line.a, -line.b, -line.c)
            for part in (lo, hi):
                if len(part) >= 3 and poly_area2(part) > 0:
                    split.append(canon_poly(part))
        cells = split
    total = sum(poly_area2(c) for c in cells)
    if total != poly_area2(x0_polygon(s)):
        raise AssertionError("octagrid components do not partition X^0")
    components = tuple(sorted(cells, key=lambda c: _center_key(_poly_center(c))))
    return Octagrid(s=s, lines=ordered, components=components, pyramid=pyr)


def _poly_center(poly: Poly) -> Point:
    xs = [v[0] for v in poly]
    ys = [v[1] for v in poly]
    return (sum(xs) / len(xs), sum(ys) / len(ys))


def octagrid_component_check(s) -> bool:
    """Certify that every octagrid component reduces to zone material.

    A component passes when it already lies in the first zone layer, sits
    inside a single periodic tile, or is carried into the layer by a
    motion T^a composed with grid reflections that maps its restricted
    tiling exactly onto the target fragments.  Raises naming the first
    component that fails.
    """
    grid = build_octagrid(s)
    zs = zones(s)
    til = _complete_tiling(s)
    # the first layer holds the zone's left portion plus the image of the
    # renormalized central tile; components may straddle that boundary
    z0 = zs.psi[0]
    lines = fundamental_lines(s)
    r_d = reflection_map(lines.D)
    r_v = reflection_map(lines.V)
    step = zs.shift

    reflections = [
        SimilarityMap.identity(),
        r_d,
        r_v,
        r_d.compose(r_v),
        r_v.compose(r_d),
        r_d.compose(r_v).compose(r_d),
    ]
    span = grid.pyramid.size + 1
    motions = []
    for a in range(-span, span + 1):
        shift = SimilarityMap(
            Fraction(1), Fraction(0), Fraction(0), Fraction(1),
            a * step[0], a * step[1],
        )
        for refl in reflections:
            motions.append(shift.compose(refl))

    for comp in grid.components:
        if region_contains_poly(z0, comp):
            continue
        if any(region_contains_poly((t.polygon,), comp) for t in til):
            continue
        frags = _restricted_fragments(til, (comp,))
        found = False
        for m in motions:
            image = canon_poly(m.apply_poly(comp))
            if not region_contains_poly(z0, image):
                continue
            image_frags = _restricted_fragments(til, (image,))
            if fragments_congruent(frags, image_frags, m):
                found = True
                break
        if not found:
            center = _poly_center(comp)
            raise AssertionError(
                "octagrid component not reducible to zone material near "
                f"({format_scalar(center[0])}, {format_scalar(center[1])})"
            )
    return True


# ---------------------------------------------------------------------------
# patch covers


@dataclass(frozen=True)
class PatchCover:
    """Exact cover of a symmetric piece by patches and whole tiles.

    Each patch (label, psi, u) maps the piece `label` of the renormalized
    parameter u into the piece at s so that psi carries the restricted
    tiling at u exactly onto the restricted tiling of the image.  tiles
    holds the whole periodic tiles covering whatever the patches leave.
    """

    s: Fraction
    label: str
    region: Poly
    tiles: Tuple[Tile, ...]
    patches: Tuple[Tuple[str, SimilarityMap, Scalar], ...]


def _whole_tiles(til: Tiling, region: Region) -> Tuple[Tile, ...]:
    """Decompose the region into whole tiles; raises if any tile is cut."""
    picked = []
    rest = tuple(region)
    for tile in til:
        overlap = Fraction(0)
        for p in rest:
            cut = poly_intersection(tile.polygon, p)
            if len(cut) >= 3:
                overlap = overlap + poly_area2(cut)
        if overlap == 0:
            continue
        if overlap != poly_area2(tile.polygon):
            raise AssertionError("leftover region cuts a periodic tile")
        picked.append(tile)
        rest = _region_diff(rest, (tile.polygon,))
    if region_area2(rest) != 0:
        raise AssertionError("leftover region not exhausted by whole tiles")
    return tuple(picked)


def _verify_patch(
    til_s: Tiling, til_t: Tiling, window: Poly, psi: SimilarityMap, piece: Poly
) -> Poly:
    """Check one patch window and return its image polygon."""
    image = canon_poly(psi.apply_poly(window))
    if not region_contains_poly((piece,), image):
        raise AssertionError("patch image leaves the piece")
    source = _restricted_fragments(til_t, (window,))
    target = _restricted_fragments(til_s, (image,))
    if not fragments_congruent(source, target, psi):
        raise AssertionError("patch does not carry tiles onto tiles")
    return image


def _zone_union(regions: Sequence[Region]) -> Region:
    out = []
    for reg in regions:
        out.extend(reg)
    return tuple(out)


def _disjointify(region: Region) -> Region:
    """Remove pairwise overlaps so the pieces tile their union."""
    out: Tuple[Poly, ...] = ()
    for p in region:
        fresh = (p,)
        for q in out:
            fresh = tuple(
                r
                for piece in fresh
                for r in convex_subtract(piece, q)
                if poly_area2(r) > 0
            )
        out = out + fresh
    return out


def patch_cover(s, label: str) -> PatchCover:
    """Cover the symmetric piece at s by renormalization patches.

    Four regimes split on the range of s and the layer count K.  Patches
    always target the renormalized parameter t; the remainder decomposes
    into whole periodic tiles lying in the named zone material, except
    for finitely many square tiles (one regime admits a semi-regular
    octagon).  Everything is verified exactly; failures raise.
    """
    if label not in _PIECE_LINE:
        raise ValueError("piece label must be one of A, B, P, Q")
    if not isinstance(s, Fraction):
        raise ValueError("patch covers need a rational parameter")
    if s == HALF:
        raise ValueError("the parameter 1/2 is terminal")
    t = renorm_map(s)
    pm = phi_map(s)
    zs = zones(s)
    til_s = _complete_tiling(s)
    til_t = _complete_tiling(t)
    lines = fundamental_lines(s)
    r_d = reflection_map(lines.D)
    r_h = reflection_map(lines.H)
    r_v = reflection_map(lines.V)
    phi = pm.left
    piece = _piece_polygon(s, label)
    k = zs.K

    t_inv = zs.T.inverse()
    nu = _zone_union(zs.psi[j] for j in range(min(k, len(zs.psi))))
    if s > HALF:
        tail = _zone_union(zs.psi[j] for j in range(1, k + 1))
        nu_shift = tuple(canon_poly(t_inv.apply_poly(p)) for p in tail)
    else:
        nu_prime = _zone_union(zs.psi[j] for j in range(1, k))

    specs = []  # (source label, map)
    zone_material: Region = ()
    allowed_kinds = SQUARE_KINDS
    identity_target: Optional[Region] = None

    if s > HALF and k > 1:
        if label == "A":
            specs = [("B", r_d.compose(phi))]
        elif label == "B":
            specs = [("A", r_d.compose(phi))]
            zone_material = nu + _map_region(r_v, nu)
        elif label == "P":
            identity_target = nu + _map_region(r_d, nu)
        else:
            identity_target = _map_region(r_v, nu_shift)
    elif s > HALF:
        if label == "A":
            specs = [("B", r_d.compose(phi))]
        elif label == "B":
            specs = [
                ("A", r_d.compose(phi)),
                ("Q", phi),
                ("Q", r_v.compose(phi)),
            ]
        elif label == "P":
            specs = [("P", phi), ("Q", phi), ("Q", r_d.compose(phi))]
        else:
            specs = [("Q", r_v.compose(phi))]
    elif k > 1:
        wide = (
            _map_region(r_d, nu_prime)
            + _map_region(r_h.compose(r_d), nu_prime)
        )
        if label == "A":
            specs = [("A", r_d.compose(phi)), ("A", r_h.compose(r_d).compose(phi))]
            zone_material = wide
        elif label == "B":
            identity_target = None  # resolved below from the layer tiles
        elif label == "P":
            specs = [
                ("A", phi),
                ("A", r_d.compose(phi)),
                ("A", r_h.compose(r_d).compose(phi)),
                ("A", r_d.compose(r_h).compose(r_d).compose(phi)),
            ]
            zone_material = wide + _map_region(r_d, wide)
        else:
            specs = [("B", phi)]
    else:
        # with t above one half the leftovers are squares plus possibly a
        # semi-regular octagon; below, phi misses more material and the
        # remainder is whole periodic tiles of any kind
        t_low = scalar_sign(HALF - t) > 0
        allowed_kinds = None if t_low else PERIODIC_KINDS
        if label == "A":
            q_twist = r_d.compose(r_v).compose(phi) if t_low else phi
            specs = [
                ("A", r_d.compose(phi)),
                ("A", r_h.compose(r_d).compose(phi)),
                ("Q", q_twist),
            ]
        elif label == "B":
            specs = [("P", phi), ("Q", phi)] if t_low else [("P", phi)]
        elif label == "P":
            specs = [
                ("A", phi),
                ("A", r_d.compose(phi)),
                ("A", r_h.compose(r_d).compose(phi)),
            ]
        else:
            specs = [("B", phi)]

    if s < HALF and k > 1 and label == "B":
        # the layers cover B after dropping their top squares, then mirror
        layer_tiles = _whole_tiles(til_s, nu)
        kept = [
            t for t in layer_tiles
            if region_contains_poly((piece,), t.polygon)
        ]
        dropped = [t for t in layer_tiles if t not in kept]
        if any(t.kind not in SQUARE_KINDS for t in dropped):
            raise AssertionError("non square tile dropped from the layers")
        trimmed = tuple(t.polygon for t in kept)
        identity_target = trimmed + _map_region(r_v, trimmed)

    patches = []
    covered: Region = ()
    dropped_window = False
    for src, psi in specs:
        try:
            window = _piece_polygon(t, src)
        except ValueError:
            if src == "Q":
                # the window collapses at terminal parameters; its material
                # stays behind as whole periodic tiles of any kind
                dropped_window = True
                continue
            raise
        image = _verify_patch(til_s, til_t, window, psi, piece)
        patches.append((src, psi, t))
        covered = covered + (image,)
    if dropped_window:
        allowed_kinds = None

    leftover = _region_diff((piece,), covered)
    tiles = _whole_tiles(til_s, leftover) if leftover else ()

    if identity_target is not None:
        if not region_eq((piece,), _disjointify(identity_target)):
            raise AssertionError(
                f"zone identity fails for piece {label} at {format_scalar(s)}"
            )
    elif zone_material:
        for tile in tiles:
            if region_contains_poly(zone_material, tile.polygon):
                continue
            if allowed_kinds is not None and tile.kind not in allowed_kinds:
                raise AssertionError(
                    f"stray {tile.kind} outside zone material in piece {label}"
                )
    elif allowed_kinds is not None:
        for tile in tiles:
            if tile.kind not in allowed_kinds:
                raise AssertionError(
                    f"stray {tile.kind} left over in piece {label}"
                )

    return PatchCover(
        s=s,
        label=label,
        region=piece,
        tiles=tiles,
        patches=tuple(patches),
    )


def iterated_patch_scales(s, label: str, depth: int = 3) -> Tuple[Scalar, ...]:
    """Largest squared patch scale per level of the iterated cover.

    Levels follow the renormalization downward: the cover of the piece is
    expanded patch by patch, composing the maps.  Levels without patches
    report zero.  After three levels every composite contraction is at
    most one half, which is what makes the covers shrink.
    """
    frontier = [(label, SimilarityMap.identity(), s)]
    maxima = []
    for _ in range(depth):
        best = Fraction(0)
        nxt = []
        for lab, acc, u in frontier:
            cover = patch_cover(u, lab)
            for src, psi, v in cover.patches:
                comp = acc.compose(psi)
                sc = comp.scale2
                if scalar_sign(sc - best) > 0:
                    best = sc
                nxt.append((src, comp, v))
        maxima.append(best)
        frontier = nxt
        if not frontier:
            break
    return tuple(maxima)
