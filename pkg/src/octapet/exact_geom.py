"""Exact plane geometry over Q and the real quadratic fields Q(sqrt(d)).

Scalars are Fraction or Surd (a + b*sqrt(d) with rational a, b and a fixed
integer radicand d). Every geometric predicate reduces to a sign test on such
scalars, so nothing in this module uses floats or tolerances.

Polygons are tuples of vertices in counterclockwise order with collinear
vertices removed, starting at the lexicographically smallest vertex; the
empty tuple, a single point and a two-point segment are the degenerate cases
and are accepted by the "closed" variants of the predicates. Regions are
tuples of convex polygons with pairwise disjoint interiors.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union


# ---------------------------------------------------------------------------
# scalars

def _isqrt_exact(d: int) -> Union[int, None]:
    r = math.isqrt(d)
    return r if r * r == d else None


class Surd:
    """a + b*sqrt(d) with a, b rational and d a fixed nonsquare integer >= 2.

    Values with b == 0 compare and hash equal to the plain rational a, so
    Surd and Fraction can share sets and dict keys.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if b != 0:
            if d < 2:
                raise ValueError("radicand must be >= 2 when b != 0")
            r = _isqrt_exact(d)
            if r is not None:
                a, b, d = a + b * r, Fraction(0), 0
        else:
            d = 0
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def sqrt(cls, d: int) -> "Surd":
        return cls(0, 1, d)

    def _coerced(self, other):
        # returns (a2, b2) of other in this value's field, or None
        if isinstance(other, Surd):
            if other.b == 0:
                return other.a, Fraction(0)
            if self.b == 0 or self.d == other.d:
                return other.a, other.b
            return None
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def _field_d(self, other) -> int:
        if self.b != 0:
            return self.d
        if isinstance(other, Surd) and other.b != 0:
            return other.d
        return 0

    def __add__(self, other):
        co = self._coerced(other)
        if co is None:
            return NotImplemented
        a2, b2 = co
        d = self._field_d(other)
        if d == 0:
            return self.a + a2
        return Surd(self.a + a2, self.b + b2, d)

    __radd__ = __add__

    def __neg__(self):
        if self.b == 0:
            return -self.a
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        co = self._coerced(other)
        if co is None:
            return NotImplemented
        a2, b2 = co
        d = self._field_d(other)
        if d == 0:
            return self.a - a2
        return Surd(self.a - a2, self.b - b2, d)

    def __rsub__(self, other):
        neg = self.__neg__()
        if isinstance(neg, Surd):
            return neg.__add__(other)
        return other + neg

    def __mul__(self, other):
        co = self._coerced(other)
        if co is None:
            return NotImplemented
        a2, b2 = co
        d = self._field_d(other)
        if d == 0:
            return self.a * a2
        a = self.a * a2 + self.b * b2 * d
        b = self.a * b2 + self.b * a2
        if b == 0:
            return a
        return Surd(a, b, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        co = self._coerced(other)
        if co is None:
            return NotImplemented
        a2, b2 = co
        d = self._field_d(other)
        norm = a2 * a2 - b2 * b2 * d
        if norm == 0:
            raise ZeroDivisionError("division by zero scalar")
        inv_a = a2 / norm
        inv_b = -b2 / norm
        if d == 0:
            return self.a * inv_a
        a = self.a * inv_a + self.b * inv_b * d
        b = self.a * inv_b + self.b * inv_a
        if b == 0:
            return a
        return Surd(a, b, d)

    def __rtruediv__(self, other):
        oa = Fraction(other) if isinstance(other, (int, Fraction)) else None
        if oa is None:
            return NotImplemented
        return Surd(oa, 0, 0).__truediv__(self) if self.b != 0 else oa / self.a

    def sign(self) -> int:
        if self.b == 0:
            return -1 if self.a < 0 else (1 if self.a > 0 else 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 against b^2 d
        lhs = self.a * self.a
        rhs = self.b * self.b * self.d
        if lhs == rhs:
            return 0  # cannot happen for nonsquare d, kept for safety
        bigger_rational = lhs > rhs
        return (1 if bigger_rational else -1) if self.a > 0 else (-1 if bigger_rational else 1)

    def _cmp_sign(self, other) -> int:
        diff = self.__sub__(other)
        if diff is NotImplemented:
            raise TypeError(f"cannot compare Surd with {type(other).__name__}")
        if isinstance(diff, Surd):
            return diff.sign()
        return -1 if diff < 0 else (1 if diff > 0 else 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, Surd):
            return self._cmp_sign(other) == 0
        return NotImplemented

    def __lt__(self, other):
        return self._cmp_sign(other) < 0

    def __le__(self, other):
        return self._cmp_sign(other) <= 0

    def __gt__(self, other):
        return self._cmp_sign(other) > 0

    def __ge__(self, other):
        return self._cmp_sign(other) >= 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __floor__(self):
        if self.b == 0:
            return math.floor(self.a)
        n = math.floor(float(self))
        # float seed, then exact adjustment
        while self._cmp_sign(n) < 0:
            n -= 1
        while self._cmp_sign(n + 1) >= 0:
            n += 1
        return n

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, Surd]
Point = tuple  # (Scalar, Scalar)
Poly = tuple   # tuple of Point


def scalar_sign(x: Scalar) -> int:
    if isinstance(x, Surd):
        return x.sign()
    return -1 if x < 0 else (1 if x > 0 else 0)


def floor_scalar(x: Scalar) -> int:
    return math.floor(x)


def format_scalar(x: Scalar) -> str:
    """Canonical exact text form: "p/q" or "a/b+c/e*sqrt(d)" (parts omitted when zero)."""
    if isinstance(x, Surd) and x.b == 0:
        x = x.a
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return str(x)
    root = f"sqrt({x.d})"
    if x.b == 1:
        bpart = root
    elif x.b == -1:
        bpart = "-" + root
    else:
        bpart = f"{x.b}*{root}"
    if x.a == 0:
        return bpart
    if x.b > 0:
        return f"{x.a}+{bpart}"
    return f"{x.a}-{bpart.lstrip('-')}"


_TOKEN_RE = re.compile(r"\s*(sqrt|\d+|[()+\-*/])")


def parse_number(text: str) -> Scalar:
    """Parse an exact scalar expression: rationals, sqrt(n), + - * / and parens.

    Examples: "5/13", "sqrt(2)/2", "(sqrt(3)-1)/2". All sqrt radicands in one
    expression must generate the same quadratic field.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"bad scalar syntax at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)  # sentinel
    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take(expected=None):
        tok = tokens[idx[0]]
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r}, got {tok!r} in {text!r}")
        idx[0] += 1
        return tok

    def parse_expr():
        if peek() == "-":
            take()
            value = -parse_term()
        else:
            value = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term():
        value = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def parse_factor():
        tok = peek()
        if tok == "(":
            take()
            value = parse_expr()
            take(")")
            return value
        if tok == "sqrt":
            take()
            take("(")
            rad = take()
            if rad is None or not rad.isdigit():
                raise ValueError(f"sqrt needs an integer radicand in {text!r}")
            take(")")
            return Surd.sqrt(int(rad))
        if tok is not None and tok.isdigit():
            take()
            return Fraction(int(tok))
        raise ValueError(f"bad scalar syntax near {tok!r} in {text!r}")

    value = parse_expr()
    if peek() is not None:
        raise ValueError(f"trailing input in scalar {text!r}")
    if isinstance(value, Surd) and value.b == 0:
        return value.a
    if isinstance(value, int):
        return Fraction(value)
    return value


# ---------------------------------------------------------------------------
# points and polygons

def vsub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def vadd(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def cross(u: Point, v: Point) -> Scalar:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Point, v: Point) -> Scalar:
    return u[0] * v[0] + u[1] * v[1]


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the signed area of the triangle p, q, r."""
    return scalar_sign(cross(vsub(q, p), vsub(r, p)))


def dist2(p: Point, q: Point) -> Scalar:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def _fr(x: Scalar) -> Scalar:
    return Fraction(x) if isinstance(x, int) else x


def convex_hull(points: Sequence[Point]) -> Poly:
    """Strict convex hull, CCW, starting at the lexicographic minimum.

    Collinear points are dropped; 0, 1 and 2 point outputs represent the
    empty set, a point and a segment. Integer coordinates are widened to
    Fraction so later divisions stay exact.
    """
    pts = sorted({(_fr(p[0]), _fr(p[1])) for p in points})
    if len(pts) <= 2:
        return tuple(pts)
    lower = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = tuple(lower[:-1] + upper[:-1])
    if len(hull) < 3:  # all collinear: extremes only
        return tuple((min(pts), max(pts)))
    return hull


def canon_poly(points: Sequence[Point]) -> Poly:
    """Canonical form of the convex hull of `points`."""
    return convex_hull(points)


def poly_area2(poly: Poly) -> Scalar:
    """Twice the area; 0 for degenerate input."""
    if len(poly) < 3:
        return Fraction(0)
    s = Fraction(0)
    for i, p in enumerate(poly):
        q = poly[(i + 1) % len(poly)]
        s = s + cross(p, q)
    return s


def translate_poly(poly: Poly, v: Point) -> Poly:
    return tuple(vadd(p, v) for p in poly)


def bbox(poly: Poly):
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    return min(xs), min(ys), max(xs), max(ys)


def _lerp(p: Point, q: Point, t: Scalar) -> Point:
    return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))


def clip_halfplane(poly: Poly, a, b, c, closed: bool = False) -> Poly:
    """Intersect a convex polygon (possibly degenerate) with {a x + b y <= c}.

    With closed=True degenerate results (segment, point) are kept; otherwise
    anything without interior collapses to ().
    """
    n = len(poly)
    if n == 0:
        return ()
    vals = [a * p[0] + b * p[1] - c for p in poly]
    signs = [scalar_sign(v) for v in vals]
    if n == 1:
        keep = signs[0] <= 0
        return poly if (keep and closed) else ()
    if n == 2:
        (p, q), (vp, vq), (sp, sq) = poly, vals, signs
        if not closed:
            return ()
        if sp <= 0 and sq <= 0:
            return poly
        if sp > 0 and sq > 0:
            return ()
        t = vp / (vp - vq)
        m = _lerp(p, q, t)
        kept = (p, m) if sp <= 0 else (m, q)
        return canon_poly(kept)
    out = []
    for i in range(n):
        p, sp, vp = poly[i], signs[i], vals[i]
        j = (i + 1) % n
        q, sq, vq = poly[j], signs[j], vals[j]
        if sp <= 0:
            out.append(p)
            if sq > 0 and sp < 0:
                out.append(_lerp(p, q, vp / (vp - vq)))
        elif sq < 0:
            out.append(_lerp(p, q, vp / (vp - vq)))
    res = canon_poly(out)
    if not closed and len(res) < 3:
        return ()
    return res


def poly_halfplanes(poly: Poly):
    """Halfplane list (a, b, c) with the set equal to the intersection of {ax+by <= c}."""
    n = len(poly)
    if n == 0:
        raise ValueError("empty polygon has no halfplane form")
    if n == 1:
        (x, y) = poly[0]
        one = Fraction(1)
        return [(one, 0 * one, x), (-one, 0 * one, -x), (0 * one, one, y), (0 * one, -one, -y)]
    if n == 2:
        p, q = poly
        u = vsub(q, p)
        # carrier line both ways plus perpendicular end caps
        a, b = u[1], -u[0]
        c = a * p[0] + b * p[1]
        caps = [
            (-u[0], -u[1], -(u[0] * p[0] + u[1] * p[1])),
            (u[0], u[1], u[0] * q[0] + u[1] * q[1]),
        ]
        return [(a, b, c), (-a, -b, -c)] + caps
    planes = []
    for i in range(n):
        p = poly[i]
        q = poly[(i + 1) % n]
        u = vsub(q, p)
        # interior of a CCW polygon is left of each edge
        a, b = u[1], -u[0]
        planes.append((a, b, a * p[0] + b * p[1]))
    return planes


def poly_intersection(P: Poly, Q: Poly, closed: bool = False) -> Poly:
    """Exact intersection of two convex polygons (canonical form)."""
    if len(P) == 0 or len(Q) == 0:
        return ()
    if len(Q) < 3 and len(P) >= 3:
        P, Q = Q, P  # clip the thin one by the fat one
    res = P
    for (a, b, c) in poly_halfplanes(Q):
        res = clip_halfplane(res, a, b, c, closed=closed)
        if len(res) == 0:
            return ()
    return res


def polys_touch(P: Poly, Q: Poly) -> bool:
    """True when the closed sets intersect (shared boundary counts)."""
    return len(poly_intersection(P, Q, closed=True)) > 0


def contains_point(poly: Poly, p: Point, strict: bool = False) -> bool:
    n = len(poly)
    if n == 0:
        return False
    if n == 1:
        return (not strict) and poly[0] == tuple(p)
    if n == 2:
        if strict:
            return False
        a, b = poly
        if orient(a, b, p) != 0:
            return False
        lo = min(a, b)
        hi = max(a, b)
        return lo <= tuple(p) <= hi
    for i in range(n):
        o = orient(poly[i], poly[(i + 1) % n], p)
        if o < 0 or (strict and o == 0):
            return False
    return True


def convex_subtract(P: Poly, Q: Poly):
    """Closure of P minus Q as a list of interior-disjoint convex polygons."""
    if len(P) < 3:
        return []
    if len(Q) == 0:
        return [P]
    rest = P
    out = []
    for (a, b, c) in poly_halfplanes(Q):
        outside = clip_halfplane(rest, -a, -b, -c)
        if len(outside) >= 3:
            out.append(outside)
        rest = clip_halfplane(rest, a, b, c)
        if len(rest) == 0:
            break
    return out


Region = tuple  # tuple of Poly


def region_subtract(region: Region, poly: Poly) -> Region:
    out = []
    for piece in region:
        out.extend(convex_subtract(piece, poly))
    return tuple(out)


def region_area2(region: Region) -> Scalar:
    total = Fraction(0)
    for piece in region:
        total = total + poly_area2(piece)
    return total


def region_eq(R1: Region, R2: Region) -> bool:
    """Equality up to boundaries (symmetric difference has zero area)."""
    if region_area2(R1) != region_area2(R2):
        return False
    left = R1
    for piece in R2:
        left = region_subtract(left, piece)
    if region_area2(left) != 0:
        return False
    right = R2
    for piece in R1:
        right = region_subtract(right, piece)
    return region_area2(right) == 0


def region_contains_poly(region: Region, poly: Poly) -> bool:
    """poly lies in the region up to boundaries."""
    rest = (poly,)
    for piece in region:
        rest = region_subtract(rest, piece)
        if region_area2(rest) == 0:
            return True
    return region_area2(rest) == 0


def diam2(poly: Poly) -> Scalar:
    if len(poly) == 0:
        return Fraction(0)
    best = Fraction(0)
    for i in range(len(poly)):
        for j in range(i + 1, len(poly)):
            d = dist2(poly[i], poly[j])
            if d > best:
                best = d
    return best


def dist2_point_seg(p: Point, a: Point, b: Point) -> Scalar:
    a = (_fr(a[0]), _fr(a[1]))
    u = vsub((_fr(b[0]), _fr(b[1])), a)
    uu = dot(u, u)
    if scalar_sign(uu) == 0:
        return dist2(p, a)
    t = dot(vsub(p, a), u) / uu
    if scalar_sign(t) < 0:
        t = Fraction(0)
    elif scalar_sign(t - 1) > 0:
        t = Fraction(1)
    return dist2(p, _lerp(a, b, t))


def point_poly_dist2(poly: Poly, p: Point) -> Scalar:
    if len(poly) == 0:
        raise ValueError("distance to empty set")
    if contains_point(poly, p):
        return Fraction(0)
    if len(poly) == 1:
        return dist2(p, poly[0])
    best = None
    n = len(poly)
    edge_count = 1 if n == 2 else n
    for i in range(edge_count):
        d = dist2_point_seg(p, poly[i], poly[(i + 1) % n])
        if best is None or d < best:
            best = d
    return best


def hausdorff2(P: Poly, Q: Poly) -> Scalar:
    """Squared Hausdorff distance between convex compacta (exact).

    For convex sets the directed sup of the distance function is attained at
    a vertex, so vertex loops are enough.
    """
    if len(P) == 0 or len(Q) == 0:
        raise ValueError("hausdorff distance needs nonempty sets")
    best = Fraction(0)
    for v in P:
        d = point_poly_dist2(Q, v)
        if d > best:
            best = d
    for v in Q:
        d = point_poly_dist2(P, v)
        if d > best:
            best = d
    return best


def inner_point(poly: Poly) -> Point:
    """An interior point of a nondegenerate convex polygon (vertex average)."""
    n = len(poly)
    if n == 0:
        raise ValueError("no inner point of the empty set")
    sx = sum(p[0] for p in poly)
    sy = sum(p[1] for p in poly)
    return (sx / Fraction(n), sy / Fraction(n))


# ---------------------------------------------------------------------------
# lines and similarity maps

class Line2(NamedTuple):
    """Line a x + b y = c, canonicalized so the leading coefficient is 1."""

    a: Scalar
    b: Scalar
    c: Scalar

    @classmethod
    def make(cls, a, b, c) -> "Line2":
        a, b, c = _fr(a), _fr(b), _fr(c)
        if scalar_sign(a) != 0:
            return cls(a / a, b / a, c / a)
        if scalar_sign(b) != 0:
            return cls(a / b, b / b, c / b)
        raise ValueError("degenerate line")

    def eval_at(self, p: Point) -> Scalar:
        return self.a * p[0] + self.b * p[1] - self.c

    def side(self, p: Point) -> int:
        return scalar_sign(self.eval_at(p))


def line_through(p: Point, q: Point) -> Line2:
    a = q[1] - p[1]
    b = p[0] - q[0]
    if scalar_sign(a) == 0 and scalar_sign(b) == 0:
        raise ValueError("coincident points define no line")
    return Line2.make(a, b, a * p[0] + b * p[1])


def reflect_point(line: Line2, p: Point) -> Point:
    a, b, c = line
    norm = a * a + b * b
    f = 2 * (a * p[0] + b * p[1] - c) / norm
    return (p[0] - f * a, p[1] - f * b)


def reflect_poly(line: Line2, poly: Poly) -> Poly:
    return canon_poly([reflect_point(line, p) for p in poly])


@dataclass(frozen=True)
class SimilarityMap:
    """Affine similarity p -> M p + t with M^T M = k I, k > 0."""

    m00: Scalar
    m01: Scalar
    m10: Scalar
    m11: Scalar
    tx: Scalar
    ty: Scalar

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11", "tx", "ty"):
            object.__setattr__(self, name, _fr(getattr(self, name)))
        k1 = self.m00 * self.m00 + self.m10 * self.m10
        k2 = self.m01 * self.m01 + self.m11 * self.m11
        mixed = self.m00 * self.m01 + self.m10 * self.m11
        if k1 != k2 or scalar_sign(mixed) != 0 or scalar_sign(k1) == 0:
            raise ValueError("matrix is not a nonzero similarity")

    @property
    def scale2(self) -> Scalar:
        return self.m00 * self.m00 + self.m10 * self.m10

    @property
    def det(self) -> Scalar:
        return self.m00 * self.m11 - self.m01 * self.m10

    @property
    def orientation(self) -> int:
        return scalar_sign(self.det)

    def apply(self, p: Point) -> Point:
        return (
            self.m00 * p[0] + self.m01 * p[1] + self.tx,
            self.m10 * p[0] + self.m11 * p[1] + self.ty,
        )

    def apply_poly(self, poly: Poly) -> Poly:
        return canon_poly([self.apply(p) for p in poly])

    def compose(self, other: "SimilarityMap") -> "SimilarityMap":
        """self after other."""
        m00 = self.m00 * other.m00 + self.m01 * other.m10
        m01 = self.m00 * other.m01 + self.m01 * other.m11
        m10 = self.m10 * other.m00 + self.m11 * other.m10
        m11 = self.m10 * other.m01 + self.m11 * other.m11
        tx, ty = self.apply((other.tx, other.ty))
        return SimilarityMap(m00, m01, m10, m11, tx, ty)

    def inverse(self) -> "SimilarityMap":
        det = self.det
        i00 = self.m11 / det
        i01 = -self.m01 / det
        i10 = -self.m10 / det
        i11 = self.m00 / det
        tx = -(i00 * self.tx + i01 * self.ty)
        ty = -(i10 * self.tx + i11 * self.ty)
        return SimilarityMap(i00, i01, i10, i11, tx, ty)

    @classmethod
    def identity(cls) -> "SimilarityMap":
        one = Fraction(1)
        return cls(one, 0 * one, 0 * one, one, 0 * one, 0 * one)

    @classmethod
    def translation(cls, v: Point) -> "SimilarityMap":
        one = Fraction(1)
        return cls(one, 0 * one, 0 * one, one, v[0], v[1])

    @classmethod
    def rotation(cls, quarter_turns: int) -> "SimilarityMap":
        """Rotation about the origin by quarter_turns * 90 degrees CCW."""
        c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter_turns % 4]
        one = Fraction(1)
        return cls(c * one, -s * one, s * one, c * one, 0 * one, 0 * one)

    @classmethod
    def reflection(cls, line: Line2) -> "SimilarityMap":
        a, b, c = line
        n = a * a + b * b
        m00 = 1 - 2 * a * a / n
        m01 = -2 * a * b / n
        m10 = m01
        m11 = 1 - 2 * b * b / n
        return cls(m00, m01, m10, m11, 2 * c * a / n, 2 * c * b / n)
