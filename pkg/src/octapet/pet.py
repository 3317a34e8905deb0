"""The two-lattice polygon exchange on the parallelogram X.

For a parameter s > 0 the phase space is the parallelogram F1 given by
|y| <= s, |x - y| <= 1; F2 is its quarter turn. The lattices are
L1 = <(0,2), (2s,2s)> and L2 = <(2,0), (2s,-2s)>, the lattices spanned by
the sides of the two reflected copies of F1, and each F_i is a fundamental
domain for both. (The lattice spanned by F1's own sides tiles with F1 but
not with F2, so it is not the right choice.) The half step moves a point
of F_j by the unique vector of L_{3-j} placing it inside F_{3-j}; the full
map is the square of the half step, a piecewise translation of F1. Points
that can only reach a boundary raise BoundaryHit, they are never snapped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Tuple

from .exact_geom import (
    Point,
    Poly,
    Scalar,
    bbox,
    canon_poly,
    contains_point,
    cross,
    floor_scalar,
    poly_area2,
    poly_intersection,
    scalar_sign,
    translate_poly,
    vadd,
)

ZERO2: Point = (Fraction(0), Fraction(0))


class BoundaryHit(Exception):
    """A half step landed on (or started from) a piece boundary."""

    def __init__(self, point: Point, step: int = 0):
        self.point = point
        self.step = step
        super().__init__(f"boundary ambiguity at step {step}: {point}")


@dataclass(frozen=True)
class PETSystem:
    s: Scalar
    F1: Poly
    F2: Poly
    L1: Tuple[Point, Point]
    L2: Tuple[Point, Point]

    @property
    def area2(self) -> Scalar:
        return poly_area2(self.F1)

    def domain(self, index: int) -> Poly:
        return self.F1 if index == 1 else self.F2

    def lattice(self, index: int) -> Tuple[Point, Point]:
        return self.L1 if index == 1 else self.L2


@dataclass(frozen=True)
class OrbitResult:
    status: str          # "periodic" | "boundary" | "budget"
    steps: int           # the period when periodic, completed steps otherwise
    word: tuple          # net translation vector of each completed full step


@lru_cache(maxsize=None)
def make_system(s: Scalar) -> PETSystem:
    if isinstance(s, int):
        s = Fraction(s)
    if not isinstance(s, Fraction):
        raise ValueError("parameter must be rational")
    if scalar_sign(s) <= 0:
        raise ValueError("parameter must be positive")
    one = Fraction(1)
    F1 = canon_poly([(1 + s, s), (-1 + s, s), (-1 - s, -s), (1 - s, -s)])
    F2 = canon_poly([(-s, 1 + s), (-s, -1 + s), (s, -1 - s), (s, 1 - s)])
    L1 = ((0 * one, 2 * one), (2 * s, 2 * s))
    L2 = ((2 * one, 0 * one), (2 * s, -2 * s))
    system = PETSystem(s=s, F1=F1, F2=F2, L1=L1, L2=L2)
    for F in (F1, F2):
        for L in (L1, L2):
            if not is_fundamental_domain(F, L):
                raise AssertionError("domain/lattice tiling check failed")
    return system


def _basis_coords(basis, w: Point) -> Tuple[Scalar, Scalar]:
    u, v = basis
    den = cross(u, v)
    return cross(w, v) / den, cross(u, w) / den


def lattice_points_near(basis, window) -> Iterator[Point]:
    """Lattice vectors i*u + j*v whose coefficient box meets the window.

    window is a coordinate bbox (xmin, ymin, xmax, ymax); the iteration covers
    every lattice vector lying in it, with one spare ring for safety.
    """
    xmin, ymin, xmax, ymax = window
    corners = [(xmin, ymin), (xmin, ymax), (xmax, ymin), (xmax, ymax)]
    coords = [_basis_coords(basis, c) for c in corners]
    imin = min(floor_scalar(a) for a, _ in coords) - 1
    imax = max(floor_scalar(a) for a, _ in coords) + 1
    jmin = min(floor_scalar(b) for _, b in coords) - 1
    jmax = max(floor_scalar(b) for _, b in coords) + 1
    u, v = basis
    for i in range(imin, imax + 1):
        for j in range(jmin, jmax + 1):
            yield (i * u[0] + j * v[0], i * u[1] + j * v[1])


def is_fundamental_domain(F: Poly, basis) -> bool:
    """Exact check that the translates of F under the lattice tile the plane.

    Tiles the basis parallelogram: the translates meeting it must cover its
    area exactly and overlap each other only in boundaries.
    """
    u, v = basis
    # area(F) must equal the covolume |det|
    if poly_area2(F) != 2 * abs(cross(u, v)):
        return False
    cell = canon_poly([ZERO2, u, vadd(u, v), v])
    fx0, fy0, fx1, fy1 = bbox(F)
    cx0, cy0, cx1, cy1 = bbox(cell)
    window = (cx0 - fx1, cy0 - fy1, cx1 - fx0, cy1 - fy0)
    pieces = []
    total = Fraction(0)
    for lam in lattice_points_near(basis, window):
        piece = poly_intersection(cell, translate_poly(F, lam))
        if len(piece) >= 3:
            a = poly_area2(piece)
            total = total + a
            pieces.append(piece)
    if total != poly_area2(cell):
        return False
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            if poly_area2(poly_intersection(pieces[i], pieces[j])) != 0:
                return False
    return True


def pet_half_step(system: PETSystem, p: Point, source: int) -> Tuple[Point, Point]:
    """One half step: from F_source into F_(3-source) by a vector of L_(3-source).

    Returns (image, vector). Raises BoundaryHit when the point starts on the
    source boundary or no lattice translate puts it in the target interior.
    """
    if source not in (1, 2):
        raise ValueError("source index must be 1 or 2")
    F_src = system.domain(source)
    if not contains_point(F_src, p):
        raise ValueError("point outside the source domain")
    if not contains_point(F_src, p, strict=True):
        raise BoundaryHit(p)
    target = 3 - source
    F_tgt = system.domain(target)
    basis = system.lattice(target)
    alpha, beta = _basis_coords(basis, (-p[0], -p[1]))
    i0, j0 = floor_scalar(alpha), floor_scalar(beta)
    u, v = basis
    closed_hit = False
    for i in (i0, i0 + 1, i0 - 1, i0 + 2):
        for j in (j0, j0 + 1, j0 - 1, j0 + 2):
            lam = (i * u[0] + j * v[0], i * u[1] + j * v[1])
            q = vadd(p, lam)
            if contains_point(F_tgt, q, strict=True):
                return q, lam
            if contains_point(F_tgt, q):
                closed_hit = True
    if closed_hit:
        raise BoundaryHit(p)
    raise RuntimeError("no lattice translate reaches the target domain")


def pet_map(system: PETSystem, p: Point) -> Tuple[Point, Point]:
    """The full exchange f = (half step)^2 on F1. Returns (image, net vector)."""
    q1, v1 = pet_half_step(system, p, 1)
    q2, v2 = pet_half_step(system, q1, 2)
    return q2, vadd(v1, v2)


def _lattice_overlaps(A: Poly, B: Poly, basis):
    """Pieces A cut by lattice translates of B: yields (A n (B - lam), lam)."""
    ax0, ay0, ax1, ay1 = bbox(A)
    bx0, by0, bx1, by1 = bbox(B)
    # lam with (B - lam) meeting A's box: lam in box(B) - box(A)
    window = (bx0 - ax1, by0 - ay1, bx1 - ax0, by1 - ay0)
    for lam in lattice_points_near(basis, window):
        piece = poly_intersection(A, translate_poly(B, (-lam[0], -lam[1])))
        if len(piece) >= 3:
            yield piece, lam


def translation_partition(system: PETSystem):
    """Maximal convex pieces of F1 on which f acts as one translation.

    Composes the two half-step partitions; the result is the list of
    (piece, vector) pairs in canonical order. f is undefined on the piece
    boundaries.
    """
    out = []
    for piece1, lam in _lattice_overlaps(system.F1, system.F2, system.L2):
        moved = translate_poly(piece1, lam)
        for piece2, mu in _lattice_overlaps(moved, system.F1, system.L1):
            back = translate_poly(piece2, (-lam[0], -lam[1]))
            out.append((back, vadd(lam, mu)))
    out.sort(key=lambda pv: pv[0])
    return tuple(out)


def orbit(system: PETSystem, p: Point, budget: int) -> OrbitResult:
    """Iterate the exchange from p until first return, boundary, or budget."""
    start = (p[0] + 0, p[1] + 0)
    current = start
    word = []
    for step in range(1, budget + 1):
        try:
            current, vec = pet_map(system, current)
        except BoundaryHit:
            return OrbitResult(status="boundary", steps=step, word=tuple(word))
        word.append(vec)
        if current == start:
            return OrbitResult(status="periodic", steps=step, word=tuple(word))
    return OrbitResult(status="budget", steps=budget, word=tuple(word))
