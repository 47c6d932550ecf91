"""Exact planar primitives: orientation, proper crossing, hulls, angular order.

Coordinates are read as decimal strings and held exactly (a common scaled
integer grid per point set), so every predicate in this module is computed
with integer or rational arithmetic and is never wrong due to rounding.
Lengths only ever leave the exact world as squared rationals; square roots
appear solely in reported float values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .errors import GeneralPositionError, PreconditionError, UsageError

# Rational stand-in for 1/phi used by the deterministic perturbation.
PHI = Fraction("0.6180339887")


class Orientation(Enum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


@dataclass(frozen=True)
class Point:
    id: int
    x: Fraction
    y: Fraction


@dataclass(frozen=True, order=True)
class Segment:
    """Undirected edge between two point ids, stored with a < b."""

    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"degenerate segment {self.a}-{self.b}")
        if self.a > self.b:
            a, b = self.a, self.b
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)

    def other(self, v: int) -> int:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise ValueError(f"{v} is not an endpoint of {self}")

    def touches(self, v: int) -> bool:
        return v == self.a or v == self.b

    def shares_endpoint(self, s: "Segment") -> bool:
        return self.a == s.a or self.a == s.b or self.b == s.a or self.b == s.b

    def as_pair(self) -> tuple[int, int]:
        return (self.a, self.b)


class PointSet:
    """Indexed planar points with exact pairwise-distinct coordinates.

    Internally all coordinates are scaled to a common integer grid; fast
    predicates run on the integer coordinates, exact rationals are exposed
    through :meth:`x`, :meth:`y` and :meth:`point`.
    """

    def __init__(self, coords: Sequence[tuple[Fraction | int | str, Fraction | int | str]]):
        xs = [Fraction(c[0]) for c in coords]
        ys = [Fraction(c[1]) for c in coords]
        scale = 1
        for f in xs:
            scale = scale * f.denominator // math.gcd(scale, f.denominator)
        for f in ys:
            scale = scale * f.denominator // math.gcd(scale, f.denominator)
        self._scale = scale
        self._sx = [int(f * scale) for f in xs]
        self._sy = [int(f * scale) for f in ys]
        seen: dict[tuple[int, int], int] = {}
        for i, key in enumerate(zip(self._sx, self._sy)):
            if key in seen:
                raise PreconditionError(
                    f"points {seen[key]} and {i} share coordinates {xs[i]}, {ys[i]}"
                )
            seen[key] = i

    def __len__(self) -> int:
        return len(self._sx)

    @property
    def ids(self) -> range:
        return range(len(self._sx))

    @property
    def scale(self) -> int:
        return self._scale

    def scaled(self, i: int) -> tuple[int, int]:
        return self._sx[i], self._sy[i]

    def x(self, i: int) -> Fraction:
        return Fraction(self._sx[i], self._scale)

    def y(self, i: int) -> Fraction:
        return Fraction(self._sy[i], self._scale)

    def point(self, i: int) -> Point:
        return Point(i, self.x(i), self.y(i))

    def coords(self) -> list[tuple[Fraction, Fraction]]:
        return [(self.x(i), self.y(i)) for i in self.ids]

    def dist_sq(self, i: int, j: int) -> Fraction:
        dx = self._sx[i] - self._sx[j]
        dy = self._sy[i] - self._sy[j]
        return Fraction(dx * dx + dy * dy, self._scale * self._scale)

    def sdist_sq(self, i: int, j: int) -> int:
        """Squared distance on the internal integer grid (scale**2 units)."""
        dx = self._sx[i] - self._sx[j]
        dy = self._sy[i] - self._sy[j]
        return dx * dx + dy * dy

    def seg_len_sq(self, s: Segment) -> Fraction:
        return self.dist_sq(s.a, s.b)

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        if not len(self):
            raise PreconditionError("bbox of empty point set")
        sc = self._scale
        return (
            Fraction(min(self._sx), sc),
            Fraction(min(self._sy), sc),
            Fraction(max(self._sx), sc),
            Fraction(max(self._sy), sc),
        )

    def reflected(self) -> "PointSet":
        """Mirror image across the x-axis (y -> -y); ids are preserved."""
        return PointSet([(self.x(i), -self.y(i)) for i in self.ids])

    def perturbed(self, eps: Fraction | None = None) -> "PointSet":
        """Deterministic general-position perturbation: point i moves by
        eps*((i*PHI) mod 1, (i*PHI^2) mod 1).  Default eps is 1e-7 times the
        larger bbox side.

        The golden-ratio folding keeps the offsets quasi-random, so evenly
        spaced collinear inputs (the canonical degenerate case) scatter off
        their common line; a straight i*eps shift would leave them on one.
        """
        if eps is None:
            minx, miny, maxx, maxy = self.bbox()
            extent = max(maxx - minx, maxy - miny, Fraction(1))
            eps = extent / 10**7
        else:
            eps = Fraction(eps)
        phi2 = PHI * PHI
        return PointSet(
            [
                (self.x(i) + eps * ((i * PHI) % 1), self.y(i) + eps * ((i * phi2) % 1))
                for i in self.ids
            ]
        )

    def collinear_triple(self) -> tuple[int, int, int] | None:
        """Return some collinear id triple, or None.  O(n^2) per anchor point."""
        n = len(self)
        for i in range(n):
            buckets: dict[tuple[int, int], int] = {}
            for j in range(n):
                if j == i:
                    continue
                dx = self._sx[j] - self._sx[i]
                dy = self._sy[j] - self._sy[i]
                g = math.gcd(abs(dx), abs(dy))
                dx //= g
                dy //= g
                if dy < 0 or (dy == 0 and dx < 0):
                    dx, dy = -dx, -dy
                if (dx, dy) in buckets:
                    return (i, buckets[(dx, dy)], j)
                buckets[(dx, dy)] = j
        return None

    # --- point set file format: one `id x y` per line, `#` comments ---

    @classmethod
    def from_text(cls, text: str) -> "PointSet":
        rows: dict[int, tuple[str, str]] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise UsageError(f"line {lineno}: expected `id x y`, got {raw!r}")
            try:
                pid = int(parts[0])
                x, y = parts[1], parts[2]
                Fraction(x), Fraction(y)
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"line {lineno}: {exc}") from exc
            if pid in rows:
                raise UsageError(f"line {lineno}: duplicate id {pid}")
            rows[pid] = (x, y)
        if not rows:
            raise UsageError("empty point file")
        n = len(rows)
        if sorted(rows) != list(range(n)):
            raise UsageError(f"ids must be contiguous 0..{n - 1}")
        return cls([rows[i] for i in range(n)])

    def to_text(self) -> str:
        lines = [f"{i} {format_coord(self.x(i))} {format_coord(self.y(i))}" for i in self.ids]
        return "\n".join(lines) + "\n"


def format_coord(f: Fraction) -> str:
    """Exact textual form: decimal when the denominator is 2^a*5^b, else p/q."""
    den = f.denominator
    if den == 1:
        return str(f.numerator)
    twos = fives = 0
    d = den
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{f.numerator}/{f.denominator}"
    digits = max(twos, fives)
    scaled = f.numerator * 10**digits // den
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}" if digits else f"{sign}{text}"


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def cross_sign(ax, ay, bx, by, cx, cy) -> int:
    """Sign of the cross product (b - a) x (c - a); works for int or Fraction."""
    return _sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    """Exact orientation of the ordered triple (p, q, r)."""
    return Orientation(cross_sign(p.x, p.y, q.x, q.y, r.x, r.y))


def orientation_ids(ps: PointSet, a: int, b: int, c: int) -> Orientation:
    ax, ay = ps.scaled(a)
    bx, by = ps.scaled(b)
    cx, cy = ps.scaled(c)
    return Orientation(cross_sign(ax, ay, bx, by, cx, cy))


def properly_cross(s1: Segment, s2: Segment, ps: PointSet) -> bool:
    """True iff the open segments meet in exactly one point and share no
    endpoint.  Collinear overlaps and endpoint contacts count as non-crossing."""
    for v in (s1.a, s1.b, s2.a, s2.b):
        if v not in ps.ids:
            raise PreconditionError(f"segment endpoint {v} not in point set")
    if s1.shares_endpoint(s2):
        return False
    ax, ay = ps.scaled(s1.a)
    bx, by = ps.scaled(s1.b)
    cx, cy = ps.scaled(s2.a)
    dx, dy = ps.scaled(s2.b)
    return _proper_cross_scaled(ax, ay, bx, by, cx, cy, dx, dy)


def _proper_cross_scaled(ax, ay, bx, by, cx, cy, dx, dy) -> bool:
    # Bounding-box reject keeps the all-pairs planarity checks cheap.
    if min(ax, bx) > max(cx, dx) or min(cx, dx) > max(ax, bx):
        return False
    if min(ay, by) > max(cy, dy) or min(cy, dy) > max(ay, by):
        return False
    d1 = cross_sign(ax, ay, bx, by, cx, cy)
    d2 = cross_sign(ax, ay, bx, by, dx, dy)
    if d1 * d2 >= 0:
        return False
    d3 = cross_sign(cx, cy, dx, dy, ax, ay)
    d4 = cross_sign(cx, cy, dx, dy, bx, by)
    return d3 * d4 < 0


def crossing_pairs(edges: Sequence[Segment], ps: PointSet) -> list[tuple[Segment, Segment]]:
    """All properly crossing pairs within one edge list (O(m^2) exact check)."""
    coords = [(*(ps.scaled(e.a)), *(ps.scaled(e.b))) for e in edges]
    out = []
    for i in range(len(edges)):
        ei = edges[i]
        ci = coords[i]
        for j in range(i + 1, len(edges)):
            ej = edges[j]
            if ei.shares_endpoint(ej):
                continue
            if _proper_cross_scaled(*ci, *coords[j]):
                out.append((ei, ej))
    return out


def collinear_overlap(s1: Segment, s2: Segment, ps: PointSet) -> bool:
    """True iff the segments are collinear and overlap in more than one point.

    Such pairs are non-crossing by convention; verification can optionally
    flag them.
    """
    ax, ay = ps.scaled(s1.a)
    bx, by = ps.scaled(s1.b)
    cx, cy = ps.scaled(s2.a)
    dx, dy = ps.scaled(s2.b)
    if cross_sign(ax, ay, bx, by, cx, cy) or cross_sign(ax, ay, bx, by, dx, dy):
        return False
    # Project on the dominant axis of s1.
    if abs(bx - ax) >= abs(by - ay):
        lo1, hi1 = sorted((ax, bx))
        lo2, hi2 = sorted((cx, dx))
    else:
        lo1, hi1 = sorted((ay, by))
        lo2, hi2 = sorted((cy, dy))
    return max(lo1, lo2) < min(hi1, hi2)


def convex_hull(ids: Sequence[int], ps: PointSet) -> list[int]:
    """Counterclockwise hull of the given ids; collinear mid-edge points are
    dropped; the walk starts at the lowest-y (then lowest-x) vertex."""
    if not ids:
        raise PreconditionError("convex hull of empty id list")
    pts = sorted(ids, key=lambda i: ps.scaled(i))
    if len(pts) == 1:
        return [pts[0]]

    def build(seq: Iterable[int]) -> list[int]:
        chain: list[int] = []
        for i in seq:
            while len(chain) >= 2:
                ax, ay = ps.scaled(chain[-2])
                bx, by = ps.scaled(chain[-1])
                cx, cy = ps.scaled(i)
                if cross_sign(ax, ay, bx, by, cx, cy) <= 0:
                    chain.pop()
                else:
                    break
            chain.append(i)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points collinear: keep the two extremes
        hull = [pts[0], pts[-1]]
    start = min(range(len(hull)), key=lambda k: (ps.scaled(hull[k])[1], ps.scaled(hull[k])[0]))
    return hull[start:] + hull[:start]


def point_strictly_inside_polygon(
    poly: Sequence[int], ps: PointSet, qx: Fraction, qy: Fraction
) -> bool:
    """Strict interior test against a counterclockwise convex polygon."""
    if len(poly) < 3:
        return False
    for k in range(len(poly)):
        ax, ay = ps.x(poly[k]), ps.y(poly[k])
        nxt = poly[(k + 1) % len(poly)]
        bx, by = ps.x(nxt), ps.y(nxt)
        if cross_sign(ax, ay, bx, by, qx, qy) <= 0:
            return False
    return True


def point_strictly_inside_triangle(
    ax, ay, bx, by, cx, cy, qx, qy
) -> bool:
    s1 = cross_sign(ax, ay, bx, by, qx, qy)
    s2 = cross_sign(bx, by, cx, cy, qx, qy)
    s3 = cross_sign(cx, cy, ax, ay, qx, qy)
    return s1 == s2 == s3 and s1 != 0


def _angular_cmp(dirs: dict[int, tuple[Fraction, Fraction]], ps: PointSet, mirror: bool):
    """Comparator ordering ids by angle from the positive x-axis; `mirror`
    flips to clockwise order.  Ties (same ray) break by distance then id."""

    def half(d: tuple[Fraction, Fraction]) -> int:
        dx, dy = d
        if mirror:
            dy = -dy
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def cmp(i: int, j: int) -> int:
        di, dj = dirs[i], dirs[j]
        hi, hj = half(di), half(dj)
        if hi != hj:
            return -1 if hi < hj else 1
        c = di[0] * dj[1] - di[1] * dj[0]
        if mirror:
            c = -c
        if c != 0:
            return -1 if c > 0 else 1
        li = di[0] * di[0] + di[1] * di[1]
        lj = dj[0] * dj[0] + dj[1] * dj[1]
        if li != lj:
            return -1 if li < lj else 1
        return -1 if i < j else 1

    return cmp


def _order_around(pivot: Point, ids: Sequence[int], ps: PointSet, mirror: bool) -> list[int]:
    dirs: dict[int, tuple[Fraction, Fraction]] = {}
    for i in ids:
        dx = ps.x(i) - pivot.x
        dy = ps.y(i) - pivot.y
        if dx == 0 and dy == 0:
            raise PreconditionError(f"pivot coincides with point {i}")
        dirs[i] = (dx, dy)
    return sorted(ids, key=cmp_to_key(_angular_cmp(dirs, ps, mirror)))


def ccw_order_around(pivot: Point, ids: Sequence[int], ps: PointSet) -> list[int]:
    """Ids sorted counterclockwise by angle from the positive x-axis at pivot."""
    return _order_around(pivot, ids, ps, mirror=False)


def cw_order_around(pivot: Point, ids: Sequence[int], ps: PointSet) -> list[int]:
    """Ids sorted clockwise by angle from the positive x-axis at pivot."""
    return _order_around(pivot, ids, ps, mirror=True)


def same_ray(d1: tuple, d2: tuple) -> bool:
    """Both direction vectors point the same way from a shared apex."""
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    if cross != 0:
        return False
    return d1[0] * d2[0] + d1[1] * d2[1] > 0


def strictly_inside_cone(da: tuple, db: tuple, d: tuple) -> bool:
    """Strict membership of direction d in the convex (< pi) cone spanned by
    da and db.  Directions on a bounding ray are outside."""
    c = da[0] * db[1] - da[1] * db[0]
    if c == 0:
        raise GeneralPositionError("cone boundary rays are collinear")
    if c < 0:
        da, db = db, da
    return (da[0] * d[1] - da[1] * d[0]) > 0 and (d[0] * db[1] - d[1] * db[0]) > 0
