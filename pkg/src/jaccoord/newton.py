"""Newton polygon construction and the triangle / face-form gates.

The polygon of P is the convex hull of the exponent support together with
the origin (the origin is always a member, whether or not P has a constant
term).  The triangle gate checks that the hull is the right triangle spanned
by (degx, 0) and (0, degy), and the face gate checks that the hypotenuse
polynomial is a power of a binomial y^q - a*x^p.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Tuple, Union

from ._ratback import RAT_ONE
from .qpoly import BiPoly, UniPoly

Point = Tuple[int, int]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    """Convex hull vertices, counter-clockwise, starting at (0,0)."""

    vertices: Tuple[Point, ...]
    dim: int

    def edges(self) -> List[Tuple[Point, Point]]:
        v = self.vertices
        if self.dim == 2:
            return [(v[k], v[(k + 1) % len(v)]) for k in range(len(v))]
        if self.dim == 1:
            return [(v[0], v[1])]
        return []


def newton_polygon(P: BiPoly) -> LatticePolygon:
    """Hull of support union {(0,0)} via the monotone chain."""
    pts = sorted(set(P.support()) | {(0, 0)})
    if len(pts) == 1:
        return LatticePolygon(((0, 0),), 0)
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2:
        # all points collinear; keep the two extremes
        return LatticePolygon((hull[0], hull[1]), 1)
    k = hull.index((0, 0))  # origin is the lexicographic minimum, always a vertex
    hull = hull[k:] + hull[:k]
    return LatticePolygon(tuple(hull), 2)


def lattice_counts(N: LatticePolygon) -> Tuple[int, int, int]:
    """(interior points, boundary points, twice the area).

    Interior points are counted by direct enumeration over the bounding box,
    independently of Pick's identity, so the identity stays testable.
    """
    v = N.vertices
    if N.dim == 0:
        return 0, 1, 0
    if N.dim == 1:
        (x0, y0), (x1, y1) = v
        return 0, gcd(abs(x1 - x0), abs(y1 - y0)) + 1, 0
    n = len(v)
    a2 = 0
    b = 0
    for k in range(n):
        (x0, y0), (x1, y1) = v[k], v[(k + 1) % n]
        a2 += x0 * y1 - x1 * y0
        b += gcd(abs(x1 - x0), abs(y1 - y0))
    a2 = abs(a2)
    xs = [p[0] for p in v]
    ys = [p[1] for p in v]
    interior = 0
    for px in range(min(xs) + 1, max(xs)):
        for py in range(min(ys) + 1, max(ys)):
            inside = True
            for k in range(n):
                if _cross(v[k], v[(k + 1) % n], (px, py)) <= 0:
                    inside = False
                    break
            if inside:
                interior += 1
    return interior, b, a2


@dataclass(frozen=True)
class TriangleFace:
    """Hypotenuse data: degrees and the edge polynomial."""

    dx: int
    dy: int
    E: BiPoly


@dataclass(frozen=True)
class FaceForm:
    """Face polynomial matched as C*(y^q - a*x^p)^m with gcd(p,q)=1."""

    C: object
    a: object
    p: int
    q: int
    m: int

    def expand(self) -> BiPoly:
        base = BiPoly({(0, self.q): RAT_ONE, (self.p, 0): -self.a})
        return base ** self.m * self.C


@dataclass(frozen=True)
class ObstructionPolygonNotTriangle:
    kind = "PolygonNotTriangle"
    point: Optional[Point] = None
    missing_vertex: Optional[Point] = None


@dataclass(frozen=True)
class ObstructionFaceNotBinomialPower:
    kind = "FaceNotBinomialPower"
    k: int = 0


def triangle_face(P: BiPoly) -> Union[TriangleFace, ObstructionPolygonNotTriangle]:
    """Gate: the polygon is the triangle (0,0), (dx,0), (0,dy).

    Requires degx(P) >= 1 and degy(P) >= 1.  Succeeds iff both pure-power
    vertices carry nonzero coefficients and every support point lies on or
    under the hypotenuse; returns the hypotenuse polynomial.
    """
    dx, dy = P.degx, P.degy
    if dx < 1 or dy < 1:
        raise ValueError("triangle_face requires degx >= 1 and degy >= 1")
    if P.coeff(dx, 0) == 0:
        return ObstructionPolygonNotTriangle(missing_vertex=(dx, 0))
    if P.coeff(0, dy) == 0:
        return ObstructionPolygonNotTriangle(missing_vertex=(0, dy))
    edge = {}
    bound = dx * dy
    for (i, j), c in P.items():
        v = dy * i + dx * j
        if v > bound:
            return ObstructionPolygonNotTriangle(point=(i, j))
        if v == bound:
            edge[(i, j)] = c
    return TriangleFace(dx, dy, BiPoly(edge))


def face_binomial_power(
    F: TriangleFace,
) -> Union[FaceForm, ObstructionFaceNotBinomialPower]:
    """Gate: the edge polynomial is C*(y^q - a*x^p)^m.

    m is forced to gcd(dx, dy); a is read off the k = m-1 edge coefficient
    and must be nonzero, then every edge coefficient is checked against the
    binomial expansion.
    """
    m = gcd(F.dx, F.dy)
    p, q = F.dx // m, F.dy // m
    C = F.E.coeff(0, F.dy)
    u1 = F.E.coeff(p, q * (m - 1))
    a = -u1 / (C * m)
    if a == 0:
        # no admissible a: the first k < m with a zero edge coefficient is
        # the first slot no nonzero a could ever fill
        for k in range(m):
            if F.E.coeff(p * (m - k), q * k) == 0:
                return ObstructionFaceNotBinomialPower(k=k)
    binom = 1
    for k in range(m + 1):
        # binom holds C(m, k); expected coefficient of x^{p(m-k)} y^{qk}
        expected = C * binom * (-a) ** (m - k)
        if F.E.coeff(p * (m - k), q * k) != expected:
            return ObstructionFaceNotBinomialPower(k=k)
        binom = binom * (m - k) // (k + 1)
    return FaceForm(C=C, a=a, p=p, q=q, m=m)


def edge_faces(P: BiPoly, N: LatticePolygon) -> List[dict]:
    """Per-edge face data for nondegeneracy checks.

    For each edge, e is the face polynomial in the edge parameter, anchored
    at the first vertex: face = x^a y^b * e(t) with t stepping along the
    primitive edge direction.  full_length is the edge lattice length, so a
    face missing an endpoint monomial shows up as deg(e) < full_length or
    e(0) = 0.
    """
    out = []
    for v0, v1 in N.edges():
        ux, uy = v1[0] - v0[0], v1[1] - v0[1]
        g = gcd(abs(ux), abs(uy))
        sx, sy = ux // g, uy // g
        coeffs = []
        for k in range(g + 1):
            coeffs.append(P.coeff(v0[0] + k * sx, v0[1] + k * sy))
        e = UniPoly(coeffs)
        out.append({"v0": v0, "v1": v1, "dir": (sx, sy), "e": e, "full_length": g})
    return out
