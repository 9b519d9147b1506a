"""Grid data model and slope-bucket partitions.

Points are 1-based integer coordinates with ``(1, 1)`` the bottom-left
corner of an ``n x n`` grid.  A *slope bucket* for a rational slope is the
set of grid points lying on one line of that slope; the bucket partition
underlies both the interior-point bookkeeping in :mod:`thetagrid.analysis`
and the counting formula ``p*n + q*n - p*q`` for the number of buckets.

Everything here is an immutable value; all arithmetic is exact integer
arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Union


class OutOfGridError(ValueError):
    """A point lies outside the grid it is being used with."""


class SlopeRangeError(ValueError):
    """Slope numerator or denominator too large for the bucket-count formula."""


class Point(NamedTuple):
    """A grid point, column ``x`` and row ``y`` (both 1-based)."""

    x: int
    y: int

    def key(self) -> tuple[int, int]:
        """Canonical ordering key: by row, then column."""
        return (self.y, self.x)


def point_key(p: Point) -> tuple[int, int]:
    return (p.y, p.x)


@dataclass(frozen=True)
class GridDim:
    """Side length of the square grid."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"grid side must be >= 1, got {self.n}")

    def contains(self, p: Point) -> bool:
        return 1 <= p.x <= self.n and 1 <= p.y <= self.n

    def points(self) -> Iterator[Point]:
        """All grid points in canonical (bottom row first, left to right) order."""
        for y in range(1, self.n + 1):
            for x in range(1, self.n + 1):
                yield Point(x, y)

    def cell_index(self, p: Point) -> int:
        """Dense index of a point in canonical order, 0 .. n*n-1."""
        return (p.y - 1) * self.n + (p.x - 1)

    def cell_at(self, index: int) -> Point:
        y, x = divmod(index, self.n)
        return Point(x + 1, y + 1)


DimLike = Union[GridDim, int]


def as_dim(dim: DimLike) -> GridDim:
    return dim if isinstance(dim, GridDim) else GridDim(int(dim))


@dataclass(frozen=True)
class Construction:
    """A duplicate-free set of chosen points on a grid.

    ``points`` is kept canonically sorted; membership tests go through a
    frozenset.  Instances are immutable: :meth:`add` and :meth:`remove`
    return new constructions.
    """

    dim: GridDim
    points: tuple[Point, ...]

    @classmethod
    def of(cls, dim: DimLike, points: Iterable[tuple[int, int]] = ()) -> "Construction":
        d = as_dim(dim)
        pts = [p if isinstance(p, Point) else Point(int(p[0]), int(p[1])) for p in points]
        for p in pts:
            if not d.contains(p):
                raise OutOfGridError(f"point {tuple(p)} outside grid of side {d.n}")
        if len(set(pts)) != len(pts):
            seen: set[Point] = set()
            dup = next(p for p in pts if (p in seen) or seen.add(p))
            raise ValueError(f"duplicate point {tuple(dup)}")
        return cls(d, tuple(sorted(pts, key=point_key)))

    @cached_property
    def point_set(self) -> frozenset[Point]:
        return frozenset(self.points)

    def __contains__(self, p: Point) -> bool:
        return p in self.point_set

    def __len__(self) -> int:
        return len(self.points)

    def add(self, p: Point) -> "Construction":
        if p in self.point_set:
            return self
        return Construction.of(self.dim, self.points + (p,))

    def remove(self, p: Point) -> "Construction":
        return Construction.of(self.dim, tuple(q for q in self.points if q != p))

    def mask(self) -> int:
        """The set as a bitmask over canonical cell indices."""
        m = 0
        for p in self.points:
            m |= 1 << self.dim.cell_index(p)
        return m

    @classmethod
    def from_mask(cls, dim: DimLike, mask: int) -> "Construction":
        d = as_dim(dim)
        pts = []
        while mask:
            low = mask & -mask
            pts.append(d.cell_at(low.bit_length() - 1))
            mask ^= low
        return cls.of(d, pts)


@dataclass(frozen=True)
class Slope:
    """A reduced rational slope.

    ``p``/``q`` is the unsigned fraction (``gcd(p, q) == 1``); ``negative``
    carries the sign.  Horizontal lines are ``p == 0`` (never negative),
    vertical lines are the sentinel ``p == 1, q == 0``.
    """

    p: int
    q: int
    negative: bool = False

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise ValueError("use the negative flag, not signed components")
        if self.q == 0 and self.p != 1:
            raise ValueError("vertical slope is the sentinel p=1, q=0")
        if self.q == 0 and self.negative:
            raise ValueError("vertical slope carries no sign")
        if self.p == 0 and (self.q != 1 or self.negative):
            raise ValueError("horizontal slope is p=0, q=1, non-negative")
        if self.p and self.q and math.gcd(self.p, self.q) != 1:
            raise ValueError(f"slope {self.p}/{self.q} is not reduced")

    @classmethod
    def of(cls, num: int, den: int) -> "Slope":
        """Build from a signed fraction num/den (den may be 0 for vertical)."""
        if num == 0 and den == 0:
            raise ValueError("0/0 is not a slope")
        if den == 0:
            return cls(1, 0)
        negative = (num < 0) != (den < 0)
        num, den = abs(num), abs(den)
        if num == 0:
            return cls(0, 1)
        g = math.gcd(num, den)
        return cls(num // g, den // g, negative)

    @classmethod
    def vertical(cls) -> "Slope":
        return cls(1, 0)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        """Parse "-1", "2", "1/2", "-3/2", "0" or "vertical"."""
        t = text.strip().lower()
        if t in ("vertical", "inf", "v"):
            return cls.vertical()
        m = re.fullmatch(r"([+-]?\d+)(?:/(\d+))?", t)
        if not m:
            raise ValueError(f"cannot parse slope {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError("zero denominator; use 'vertical'")
        return cls.of(num, den)

    @property
    def is_vertical(self) -> bool:
        return self.q == 0

    def signed(self) -> tuple[int, int]:
        """Effective (rise, run) with the sign folded into the rise."""
        return (-self.p if self.negative else self.p, self.q)

    def line_key(self, p: Point) -> int:
        """Integer invariant constant along lines of this slope."""
        rise, run = self.signed()
        return rise * p.x - run * p.y

    def collinear(self, a: Point, b: Point) -> bool:
        """True iff the line through a and b has exactly this slope."""
        if a == b:
            return False
        rise, run = self.signed()
        return (b.y - a.y) * run == (b.x - a.x) * rise

    def __str__(self) -> str:
        if self.is_vertical:
            return "vertical"
        sign = "-" if self.negative else ""
        return f"{sign}{self.p}" if self.q == 1 else f"{sign}{self.p}/{self.q}"


#: The anti-diagonal slope, used throughout the 135-degree analysis.
MINUS_ONE = Slope(1, 1, negative=True)


@dataclass(frozen=True)
class SlopeBucketIndex:
    """Partition of the grid into lines ("buckets") of one fixed slope.

    Bucket ids are dense integers assigned in canonical discovery order,
    which for slope -1 makes ``id == x + y - 2`` (anti-diagonals numbered
    from the bottom-left corner).
    """

    dim: GridDim
    slope: Slope
    buckets: tuple[tuple[Point, ...], ...]

    @classmethod
    def build(cls, dim: DimLike, slope: Slope) -> "SlopeBucketIndex":
        d = as_dim(dim)
        ids: dict[int, int] = {}
        buckets: list[list[Point]] = []
        for p in d.points():
            key = slope.line_key(p)
            bid = ids.get(key)
            if bid is None:
                bid = len(buckets)
                ids[key] = bid
                buckets.append([])
            buckets[bid].append(p)
        return cls(d, slope, tuple(tuple(b) for b in buckets))

    @cached_property
    def bucket_of(self) -> dict[Point, int]:
        return {p: i for i, bucket in enumerate(self.buckets) for p in bucket}

    def bucket_id(self, p: Point) -> int:
        if not self.dim.contains(p):
            raise OutOfGridError(f"point {tuple(p)} outside grid of side {self.dim.n}")
        return self.bucket_of[p]

    def __len__(self) -> int:
        return len(self.buckets)


def dihedral_images(p: Point, n: int) -> tuple[Point, ...]:
    """The eight images of a point under the symmetries of the square grid."""
    x, y = p
    r = n + 1
    return (
        Point(x, y),
        Point(r - x, y),
        Point(x, r - y),
        Point(r - x, r - y),
        Point(y, x),
        Point(r - y, x),
        Point(y, r - x),
        Point(r - y, r - x),
    )


def apply_dihedral(p: Point, n: int, k: int) -> Point:
    """Apply the k-th (0..7) square symmetry to a point."""
    return dihedral_images(p, n)[k]


def bucket_id(point: Point, slope: Slope, dim: DimLike) -> int:
    """Dense bucket id of ``point`` under the given slope partition."""
    return SlopeBucketIndex.build(dim, slope).bucket_id(point)


def count_buckets(slope: Slope, dim: DimLike) -> int:
    """Number of distinct lines of the given slope meeting the grid.

    Computed by the closed form ``p*n + q*n - p*q`` on the unsigned reduced
    components (a reflection x -> n+1-x maps negative slopes onto positive
    ones without changing the partition shape).  The formula is exact for
    p, q <= n; larger components are refused, since then lines hold at most
    two grid points each and only direct enumeration via
    :class:`SlopeBucketIndex` applies.
    """
    d = as_dim(dim)
    p, q = slope.p, slope.q
    if p > d.n or q > d.n:
        raise SlopeRangeError(
            f"bucket-count formula needs p, q <= n; got {p}/{q} on side {d.n} "
            "(enumerate via SlopeBucketIndex instead)"
        )
    return p * d.n + q * d.n - p * q


def representative_set(slope: Slope, dim: DimLike) -> Construction:
    """One point per slope bucket: the first ``p`` rows and first ``q`` columns.

    The returned set has exactly ``count_buckets`` points, covers every
    bucket, and no two of its members share a bucket.  Negative slopes are
    handled by reflecting the positive-slope set across the vertical axis.
    """
    d = as_dim(dim)
    count_buckets(slope, d)  # validate range
    if slope.is_vertical:
        pts = [Point(x, 1) for x in range(1, d.n + 1)]
        return Construction.of(d, pts)
    p, q = slope.p, slope.q
    chosen = [pt for pt in d.points() if pt.y <= p or pt.x <= q]
    if slope.negative:
        chosen = [Point(d.n + 1 - pt.x, pt.y) for pt in chosen]
    return Construction.of(d, chosen)
