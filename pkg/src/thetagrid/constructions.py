"""Closed-form constructions.

``two_rows`` fills the bottom and top rows of the grid: 2n points that stay
peaceful for every angle from 135 up to (but excluding) 180 degrees.  Any
angle formed by two rows is either straight, at most 90 degrees (both legs
reaching across), or strictly below 135 degrees (one leg inside a row), so
nothing in [135, 180) can appear.

``witness`` realizes an arbitrary rational-tangent angle with three points
on a grid of side ``2*max(p, q) + 2``: two adjacent points on a middle row
plus one point offset by the tangent's (run, rise).
"""

from __future__ import annotations

from dataclasses import dataclass

from .angles import AngleSpec, ForbiddenTriple
from .grid import Construction, DimLike, GridDim, Point, as_dim


def two_rows(dim: DimLike, transpose: bool = False) -> Construction:
    """All 2n points with y in {1, n} (or x in {1, n} when transposed)."""
    d = as_dim(dim)
    if d.n < 2:
        raise ValueError("two-rows needs n >= 2; the rows coincide on a 1-grid")
    pts = [Point(x, y) for y in (1, d.n) for x in range(1, d.n + 1)]
    if transpose:
        pts = [Point(p.y, p.x) for p in pts]
    return Construction.of(d, pts)


@dataclass(frozen=True)
class Witness:
    """A smallest-by-recipe grid realizing the target angle."""

    dim: GridDim
    triple: ForbiddenTriple
    kind: str  # "tangent-offset" | "axis-corner" | "collinear-segment"


def witness(theta: AngleSpec) -> Witness:
    """Three points forming theta, with the grid that contains them.

    For tangents the vertex sits at ``(n/2+1, 1)`` with one horizontal leg
    and one leg along (run, rise); the run flips sign for obtuse angles.
    Right and straight angles get dedicated corner / segment witnesses.
    """
    if theta.kind == "right":
        return Witness(
            GridDim(2),
            ForbiddenTriple.canonical(Point(2, 1), Point(1, 1), Point(1, 2)),
            "axis-corner",
        )
    if theta.kind == "collinear":
        return Witness(
            GridDim(3),
            ForbiddenTriple.canonical(Point(1, 1), Point(2, 1), Point(3, 1)),
            "collinear-segment",
        )
    p, q = theta.p, theta.q
    run = -q if theta.sign < 0 else q
    n = 2 * max(p, q) + 2
    vertex = Point(n // 2 + 1, 1)
    along = Point(n // 2 + 2, 1)
    offset = Point(n // 2 + 1 + run, 1 + p)
    return Witness(GridDim(n), ForbiddenTriple.canonical(along, vertex, offset), "tangent-offset")
