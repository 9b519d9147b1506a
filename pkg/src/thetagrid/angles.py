"""Exact angle tests at grid vertices.

The angle at a vertex ``B`` between rays ``B->A`` and ``B->C`` is decided
entirely from two integers,

    cross = (A.x-B.x)*(C.y-B.y) - (C.x-B.x)*(A.y-B.y)
    dot   = (A.x-B.x)*(C.x-B.x) + (A.y-B.y)*(C.y-B.y)

whose quotient ``|cross| / dot`` is the tangent of the angle.  An angle with
rational tangent ``s*p/q`` therefore matches iff ``|cross|*q == p*|dot|``
with the sign of ``dot`` agreeing with ``s`` (acute: dot > 0, obtuse:
dot < 0).  No floating point is involved anywhere.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

from .grid import Construction, DimLike, GridDim, Point, as_dim, point_key


class ThetaSyntaxError(ValueError):
    """Malformed angle text."""


class NotRepresentableError(ValueError):
    """The requested angle has no exact rational-tangent encoding."""


class DegenerateAngleError(ValueError):
    """Zero angles are not angles of a point triple."""


class NotPeacefulError(ValueError):
    """An operation required a peaceful construction; carries one violation."""

    def __init__(self, message: str, violation: "ForbiddenTriple"):
        super().__init__(message)
        self.violation = violation


#: Degrees for the parse shortcuts with exact tangents.
_DEG_FORMS = {45: (1, 1, 1), 135: (-1, 1, 1)}


@dataclass(frozen=True)
class AngleSpec:
    """A target angle: exact tangent, right angle, or straight (180 degrees).

    ``kind`` is one of ``"tangent"``, ``"right"``, ``"collinear"``.  For
    tangents, ``sign`` is +1 for acute angles (0, 90) and -1 for obtuse
    angles (90, 180), and ``p/q`` is the reduced unsigned tangent.
    """

    kind: str
    sign: int = 0
    p: int = 0
    q: int = 0

    @classmethod
    def tangent(cls, sign: int, p: int, q: int) -> "AngleSpec":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if p <= 0 or q <= 0:
            raise ValueError("tangent components must be positive")
        if math.gcd(p, q) != 1:
            raise ValueError(f"tangent {p}/{q} is not reduced")
        return cls("tangent", sign, p, q)

    @classmethod
    def right(cls) -> "AngleSpec":
        return cls("right")

    @classmethod
    def collinear(cls) -> "AngleSpec":
        return cls("collinear")

    def __str__(self) -> str:
        if self.kind == "right":
            return "deg=90"
        if self.kind == "collinear":
            return "deg=180"
        sign = "-" if self.sign < 0 else ""
        frac = f"{self.p}" if self.q == 1 else f"{self.p}/{self.q}"
        return f"tan={sign}{frac}"


RIGHT = AngleSpec.right()
COLLINEAR = AngleSpec.collinear()
DEG45 = AngleSpec.tangent(1, 1, 1)
DEG135 = AngleSpec.tangent(-1, 1, 1)

_TAN_RE = re.compile(r"tan=([+-]?)(\d+)(?:/(\d+))?")
_DEG_RE = re.compile(r"deg=(\d+)")


def parse_theta(text: str) -> AngleSpec:
    """Parse an angle given as ``deg=D`` or ``tan=[+-]p[/q]``.

    Only degree values with an exact encoding are accepted: 45, 135
    (rational tangent), 90 and 180 (dedicated variants).  ``tan=0`` is a
    zero angle and refused.
    """
    t = text.strip()
    m = _DEG_RE.fullmatch(t)
    if m:
        deg = int(m.group(1))
        if deg == 90:
            return RIGHT
        if deg == 180:
            return COLLINEAR
        if deg in _DEG_FORMS:
            return AngleSpec.tangent(*_DEG_FORMS[deg])
        raise NotRepresentableError(
            f"deg={deg} has no exact rational-tangent encoding; "
            "use deg=45/90/135/180 or tan=p/q"
        )
    m = _TAN_RE.fullmatch(t)
    if m:
        sign = -1 if m.group(1) == "-" else 1
        p = int(m.group(2))
        q = int(m.group(3)) if m.group(3) else 1
        if q == 0:
            raise ThetaSyntaxError("zero denominator; a vertical tangent is deg=90")
        if p == 0:
            raise DegenerateAngleError("tan=0 is a zero angle, not an angle of a triple")
        g = math.gcd(p, q)
        return AngleSpec.tangent(sign, p // g, q // g)
    raise ThetaSyntaxError(f"cannot parse angle {text!r}; expected deg=D or tan=p/q")


class Degeneracy(Enum):
    COINCIDENT_POINTS = "coincident-points"
    ZERO_ANGLE = "zero-angle"


class VertexAngle(NamedTuple):
    """Exact angle data at a vertex: |cross|, dot, and a degeneracy flag."""

    cross_abs: int
    dot: int
    degenerate: Optional[Degeneracy]


def tangent_at_vertex(a: Point, vertex: Point, c: Point) -> VertexAngle:
    """Exact cross/dot pair of the angle at ``vertex``; symmetric in a, c."""
    ax, ay = a.x - vertex.x, a.y - vertex.y
    cx, cy = c.x - vertex.x, c.y - vertex.y
    cross = ax * cy - cx * ay
    dot = ax * cx + ay * cy
    if (ax == 0 and ay == 0) or (cx == 0 and cy == 0):
        flag: Optional[Degeneracy] = Degeneracy.COINCIDENT_POINTS
    elif cross == 0 and dot > 0:
        flag = Degeneracy.ZERO_ANGLE
    else:
        flag = None
    return VertexAngle(abs(cross), dot, flag)


def angle_equals(a: Point, vertex: Point, c: Point, theta: AngleSpec) -> bool:
    """True iff the three (distinct) points form an angle of theta at vertex."""
    va = tangent_at_vertex(a, vertex, c)
    if va.degenerate is not None:
        return False
    if theta.kind == "right":
        return va.dot == 0
    if theta.kind == "collinear":
        return va.cross_abs == 0 and va.dot < 0
    if theta.sign > 0:
        return va.dot > 0 and va.cross_abs * theta.q == theta.p * va.dot
    return va.dot < 0 and va.cross_abs * theta.q == theta.p * -va.dot


class ForbiddenTriple(NamedTuple):
    """Three distinct points forming the target angle at ``vertex``.

    The legs are kept in lexicographic (x, y) order, so each geometric
    triple appears once per vertex.  A 3-point set can contribute up to
    three triples, one per vertex choice.
    """

    a: Point
    vertex: Point
    c: Point

    @classmethod
    def canonical(cls, a: Point, vertex: Point, c: Point) -> "ForbiddenTriple":
        if c < a:
            a, c = c, a
        return cls(a, vertex, c)

    def points(self) -> tuple[Point, Point, Point]:
        return (self.a, self.vertex, self.c)


class TripleKind(Enum):
    GRID_FITTED = "grid-fitted"
    SNEAKY = "sneaky"


def classify_triple(t: ForbiddenTriple) -> TripleKind:
    """Grid-fitted iff at least one ray from the vertex is axis-aligned."""
    for leg in (t.a, t.c):
        if leg.x == t.vertex.x or leg.y == t.vertex.y:
            return TripleKind.GRID_FITTED
    return TripleKind.SNEAKY


def iter_forbidden_triples(dim: DimLike, theta: AngleSpec) -> Iterator[ForbiddenTriple]:
    """All forbidden triples of the grid, streamed in canonical order."""
    d = as_dim(dim)
    pts = list(d.points())
    for v in pts:
        for i, a in enumerate(pts):
            if a == v:
                continue
            for c in pts[i + 1 :]:
                if c == v:
                    continue
                if angle_equals(a, v, c, theta):
                    yield ForbiddenTriple.canonical(a, v, c)


def forbidden_triples(
    dim: DimLike, theta: AngleSpec, max_side: int = 64
) -> list[ForbiddenTriple]:
    """Materialized triple list; refuses grids past ``max_side`` (memory guard)."""
    d = as_dim(dim)
    if d.n > max_side:
        raise ValueError(
            f"n={d.n} exceeds the materialization cap {max_side}; "
            "use iter_forbidden_triples to stream"
        )
    return list(iter_forbidden_triples(d, theta))


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of checking a construction: peaceful, or the violating triples."""

    violations: tuple[ForbiddenTriple, ...]
    truncated: bool = False

    @property
    def peaceful(self) -> bool:
        return not self.violations


# Above this many chosen points the vectorized scan takes over.
_VERIFY_NUMPY_MIN = 40


def verify(c: Construction, theta: AngleSpec, limit: Optional[int] = None) -> VerifyResult:
    """Check a construction against theta.

    Returns all violating triples in canonical order (vertex first, then
    legs), or the first ``limit`` of them when given.
    """
    pts = c.points
    m = len(pts)
    if m < 3:
        return VerifyResult(())
    if m >= _VERIFY_NUMPY_MIN:
        hits = _verify_numpy(pts, theta, limit)
    else:
        hits = _verify_scan(pts, theta, limit)
    truncated = limit is not None and len(hits) == limit
    return VerifyResult(tuple(hits), truncated)


def _verify_scan(
    pts: Sequence[Point], theta: AngleSpec, limit: Optional[int]
) -> list[ForbiddenTriple]:
    out: list[ForbiddenTriple] = []
    m = len(pts)
    for vi in range(m):
        v = pts[vi]
        for i in range(m):
            if i == vi:
                continue
            a = pts[i]
            for j in range(i + 1, m):
                if j == vi:
                    continue
                if angle_equals(a, v, pts[j], theta):
                    out.append(ForbiddenTriple.canonical(a, v, pts[j]))
                    if limit is not None and len(out) >= limit:
                        return out
    return out


def _match_mask(cross_abs: np.ndarray, dot: np.ndarray, theta: AngleSpec) -> np.ndarray:
    if theta.kind == "right":
        return dot == 0
    if theta.kind == "collinear":
        return (cross_abs == 0) & (dot < 0)
    if theta.sign > 0:
        return (dot > 0) & (cross_abs * theta.q == theta.p * dot)
    return (dot < 0) & (cross_abs * theta.q == theta.p * -dot)


def _verify_numpy(
    pts: Sequence[Point], theta: AngleSpec, limit: Optional[int]
) -> list[ForbiddenTriple]:
    arr = np.array(pts, dtype=np.int64)
    m = len(pts)
    upper = np.triu(np.ones((m, m), dtype=bool), k=1)
    out: list[ForbiddenTriple] = []
    for vi in range(m):
        d = arr - arr[vi]
        dx, dy = d[:, 0], d[:, 1]
        cross = np.abs(dx[:, None] * dy[None, :] - dx[None, :] * dy[:, None])
        dot = dx[:, None] * dx[None, :] + dy[:, None] * dy[None, :]
        mask = _match_mask(cross, dot, theta) & upper
        mask[vi, :] = False
        mask[:, vi] = False
        for i, j in np.argwhere(mask):
            out.append(ForbiddenTriple.canonical(pts[int(i)], pts[vi], pts[int(j)]))
            if limit is not None and len(out) >= limit:
                return out
    return out


# Above this many (pair, cell) combinations the vectorized path takes over.
_BLOCKED_NUMPY_MIN = 4000


def _pair_witness(
    z: Point, u: Point, v: Point, theta: AngleSpec
) -> Optional[ForbiddenTriple]:
    """First theta-triple among {z, u, v} in fixed vertex order, if any."""
    if angle_equals(u, z, v, theta):
        return ForbiddenTriple.canonical(u, z, v)
    if angle_equals(v, u, z, theta):
        return ForbiddenTriple.canonical(v, u, z)
    if angle_equals(u, v, z, theta):
        return ForbiddenTriple.canonical(u, v, z)
    return None


def blocked_report(c: Construction, theta: AngleSpec) -> dict[Point, ForbiddenTriple]:
    """Empty cells whose addition would violate theta, with one witness each.

    Requires a peaceful input (raises :class:`NotPeacefulError` otherwise),
    so every violation of ``c + {z}`` involves ``z`` and two chosen points.
    The witness reported per cell is the first match scanning chosen pairs
    in canonical order, trying the added cell as vertex first.
    """
    res = verify(c, theta, limit=1)
    if not res.peaceful:
        raise NotPeacefulError(
            "blocked-cell query requires a peaceful construction",
            res.violations[0],
        )
    pts = c.points
    m = len(pts)
    empties = [z for z in c.dim.points() if z not in c]
    if m < 2 or not empties:
        return {}
    pairs = [(pts[i], pts[j]) for i in range(m) for j in range(i + 1, m)]
    if len(pairs) * len(empties) >= _BLOCKED_NUMPY_MIN:
        flagged = _blocked_numpy(pairs, empties, theta)
    else:
        flagged = empties
    out: dict[Point, ForbiddenTriple] = {}
    for z in flagged:
        for u, v in pairs:
            w = _pair_witness(z, u, v, theta)
            if w is not None:
                out[z] = w
                break
    return out


def _blocked_numpy(
    pairs: Sequence[tuple[Point, Point]], empties: Sequence[Point], theta: AngleSpec
) -> list[Point]:
    u = np.array([p[0] for p in pairs], dtype=np.int64)
    v = np.array([p[1] for p in pairs], dtype=np.int64)
    z = np.array(empties, dtype=np.int64)
    # Rays broadcast to (pairs, cells): three vertex assignments to test.
    zu = u[:, None, :] - z[None, :, :]
    zv = v[:, None, :] - z[None, :, :]
    uv = (v - u)[:, None, :]
    uz = z[None, :, :] - u[:, None, :]
    vu = -uv
    vz = z[None, :, :] - v[:, None, :]
    hit = np.zeros((len(pairs), len(empties)), dtype=bool)
    for r1, r2 in ((zu, zv), (uv, uz), (vu, vz)):
        cross = np.abs(r1[..., 0] * r2[..., 1] - r2[..., 0] * r1[..., 1])
        dot = r1[..., 0] * r2[..., 0] + r1[..., 1] * r2[..., 1]
        hit |= _match_mask(cross, dot, theta)
    mask = hit.any(axis=0)
    return [empties[i] for i in np.flatnonzero(mask)]


def blocked_cells(c: Construction, theta: AngleSpec) -> tuple[Point, ...]:
    """The blocked cells alone, in canonical order."""
    return tuple(blocked_report(c, theta).keys())
