"""Interior-point classification, anti-diagonal bucket statistics, and bounds.

The 135-degree analysis runs on the slope -1 ("anti-diagonal") bucket
partition.  For a peaceful 2n-point construction the occupied-bucket count
``k`` controls how much room is left: at most ``2n - 1 - k`` further points
fit, and ``k`` is itself at least ``n + 1``, which yields the ``3n - 2``
ceiling.  For a general tangent ``p/q`` the same style of argument gives
``2n + f(p,q) - 2*max(p, q)`` with ``f`` the bucket count of that slope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .angles import DEG135, AngleSpec, NotPeacefulError, verify
from .grid import (
    MINUS_ONE,
    Construction,
    DimLike,
    Point,
    Slope,
    SlopeBucketIndex,
    as_dim,
    count_buckets,
)


@dataclass(frozen=True)
class InteriorFlags:
    """Whether a chosen point lies strictly between two other chosen points."""

    column_interior: bool
    row_interior: bool
    bucket_interior: bool


def interior_report(c: Construction) -> dict[Point, InteriorFlags]:
    """Interior flags for every chosen point, in canonical order.

    A point is column-interior when two chosen points of its column sit
    strictly below and above it; row- and bucket-interior are the analogous
    straddles in x within its row / its anti-diagonal bucket.
    """
    index = SlopeBucketIndex.build(c.dim, MINUS_ONE)
    by_col: dict[int, list[int]] = {}
    by_row: dict[int, list[int]] = {}
    by_bucket: dict[int, list[int]] = {}
    for p in c.points:
        by_col.setdefault(p.x, []).append(p.y)
        by_row.setdefault(p.y, []).append(p.x)
        by_bucket.setdefault(index.bucket_id(p), []).append(p.x)

    def strictly_between(v: int, values: list[int]) -> bool:
        return min(values) < v < max(values)

    out: dict[Point, InteriorFlags] = {}
    for p in c.points:
        out[p] = InteriorFlags(
            column_interior=strictly_between(p.y, by_col[p.x]),
            row_interior=strictly_between(p.x, by_row[p.y]),
            bucket_interior=strictly_between(p.x, by_bucket[index.bucket_id(p)]),
        )
    return out


@dataclass(frozen=True)
class BucketStats:
    """Occupancy counts of the anti-diagonal buckets.

    ``k``: buckets holding at least one chosen point.
    ``multi_buckets``: buckets holding two or more.
    ``multi_points``: chosen points inside those buckets.
    ``interior_multi``: bucket-interior points among them, which always
    equals ``multi_points - 2*multi_buckets`` (each multi-bucket has exactly
    two non-interior extremes).
    """

    k: int
    multi_buckets: int
    multi_points: int
    interior_multi: int


def bucket_stats(c: Construction) -> BucketStats:
    index = SlopeBucketIndex.build(c.dim, MINUS_ONE)
    occupancy: dict[int, int] = {}
    for p in c.points:
        bid = index.bucket_id(p)
        occupancy[bid] = occupancy.get(bid, 0) + 1
    multi = [size for size in occupancy.values() if size >= 2]
    return BucketStats(
        k=len(occupancy),
        multi_buckets=len(multi),
        multi_points=sum(multi),
        interior_multi=sum(size - 2 for size in multi),
    )


def _is_obtuse_at_most_flat(theta: AngleSpec) -> bool:
    """Tangent encoding of 135 <= theta < 180: negative sign with p <= q."""
    return theta.kind == "tangent" and theta.sign < 0 and theta.p <= theta.q


def lower_bound(theta: AngleSpec, dim: DimLike) -> Optional[int]:
    """Best known general lower bound, or None.

    2n is guaranteed (by the two-rows construction) exactly for angles in
    [135, 180).  For 180 degrees the 2n figure is only conjectural and for
    everything else nothing general is known, so those return None.
    """
    d = as_dim(dim)
    if _is_obtuse_at_most_flat(theta):
        return 2 * d.n
    return None


@dataclass(frozen=True)
class UpperBound:
    value: int
    formula: str
    external: bool = False


def upper_bound(theta: AngleSpec, dim: DimLike) -> UpperBound:
    """Tightest applicable upper bound, tagged with its formula.

    Candidates, kept in this priority order for deterministic ties:
      * 135 degrees: ``3n - 2``.
      * any tangent with p, q < n: ``2n + f(p,q) - 2*max(p, q)``.
      * 180 degrees: ``2n`` (pigeonhole on rows).
      * 90 degrees, n >= 2: ``2n - 2`` (external literature result, not
        re-derived here).
      * always: the grid size ``n^2``.
    """
    d = as_dim(dim)
    n = d.n
    candidates: list[UpperBound] = []
    if theta == DEG135:
        candidates.append(UpperBound(3 * n - 2, "3n-2"))
    if theta.kind == "tangent" and theta.p < n and theta.q < n:
        f = count_buckets(Slope(theta.p, theta.q), d)
        candidates.append(
            UpperBound(2 * n + f - 2 * max(theta.p, theta.q), "2n+f(p,q)-2max(p,q)")
        )
    if theta.kind == "collinear":
        candidates.append(UpperBound(2 * n, "2n-pigeonhole"))
    if theta.kind == "right" and n >= 2:
        candidates.append(UpperBound(2 * n - 2, "2n-2-literature", external=True))
    candidates.append(UpperBound(n * n, "n^2"))
    return min(candidates, key=lambda ub: ub.value)


@dataclass(frozen=True)
class Bounds:
    """Combined bound context as served over the wire."""

    lower: Optional[int]
    upper: int
    formula: str
    external: bool


def bounds(theta: AngleSpec, dim: DimLike) -> Bounds:
    ub = upper_bound(theta, dim)
    return Bounds(lower_bound(theta, dim), ub.value, ub.formula, ub.external)


def capacity_after(c: Construction, theta: AngleSpec = DEG135) -> int:
    """Room left above a peaceful 2n-point 135-degree construction: 2n-1-k.

    Only defined under those hypotheses; anything else is rejected.
    """
    if theta != DEG135:
        raise ValueError("capacity bound is specific to 135 degrees")
    n = c.dim.n
    if len(c) != 2 * n:
        raise ValueError(f"capacity bound needs exactly 2n={2 * n} points, got {len(c)}")
    res = verify(c, theta, limit=1)
    if not res.peaceful:
        raise NotPeacefulError(
            "capacity bound needs a peaceful construction", res.violations[0]
        )
    return 2 * n - 1 - bucket_stats(c).k
