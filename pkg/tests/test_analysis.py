import pytest

from thetagrid import (
    COLLINEAR,
    DEG45,
    DEG135,
    RIGHT,
    Construction,
    NotPeacefulError,
    Point,
    bounds,
    bucket_stats,
    capacity_after,
    interior_report,
    lower_bound,
    parse_theta,
    two_rows,
    upper_bound,
)


class TestInteriorReport:
    def test_column_triple(self):
        c = Construction.of(5, [(2, 1), (2, 3), (2, 5)])
        rep = interior_report(c)
        assert rep[Point(2, 3)].column_interior
        assert not rep[Point(2, 1)].column_interior
        assert not rep[Point(2, 5)].column_interior
        assert not rep[Point(2, 3)].row_interior
        assert not rep[Point(2, 3)].bucket_interior

    def test_antidiagonal_triple(self):
        c = Construction.of(5, [(1, 5), (3, 3), (5, 1)])
        rep = interior_report(c)
        assert rep[Point(3, 3)].bucket_interior
        assert not rep[Point(1, 5)].bucket_interior

    def test_row_triple(self):
        c = Construction.of(4, [(1, 2), (3, 2), (4, 2)])
        assert interior_report(c)[Point(3, 2)].row_interior

    def test_two_points_have_no_interior(self):
        c = Construction.of(4, [(1, 1), (4, 4)])
        assert not any(
            f.column_interior or f.row_interior or f.bucket_interior
            for f in interior_report(c).values()
        )


class TestBucketStats:
    def test_empty(self):
        st = bucket_stats(Construction.of(4, []))
        assert (st.k, st.multi_buckets, st.multi_points, st.interior_multi) == (0, 0, 0, 0)

    def test_full_antidiagonal_of_g3(self):
        st = bucket_stats(Construction.of(3, [(1, 3), (2, 2), (3, 1)]))
        assert (st.k, st.multi_buckets, st.multi_points, st.interior_multi) == (1, 1, 3, 1)

    def test_two_rows_g4(self):
        st = bucket_stats(two_rows(4))
        assert st.k == 7
        assert st.k >= 4 + 1

    def test_occupancy_identity(self):
        # k equals |c| - |P| + |B| for any construction
        import random

        rng = random.Random(5)
        for _ in range(30):
            n = rng.randint(1, 6)
            cells = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
            c = Construction.of(n, rng.sample(cells, rng.randint(0, n * n)))
            st = bucket_stats(c)
            assert st.k == len(c) - st.multi_points + st.multi_buckets
            assert st.interior_multi == st.multi_points - 2 * st.multi_buckets


class TestLowerBound:
    def test_obtuse_range_gets_2n(self):
        assert lower_bound(DEG135, 6) == 12
        assert lower_bound(parse_theta("tan=-1/2"), 6) == 12

    def test_everything_else_unknown(self):
        assert lower_bound(DEG45, 6) is None
        assert lower_bound(parse_theta("tan=-2"), 6) is None  # below 135
        assert lower_bound(COLLINEAR, 6) is None  # open problem
        assert lower_bound(RIGHT, 6) is None


class TestUpperBound:
    def test_deg135(self):
        ub = upper_bound(DEG135, 10)
        assert (ub.value, ub.formula, ub.external) == (28, "3n-2", False)

    def test_general_tangent(self):
        ub = upper_bound(parse_theta("tan=1/2"), 4)
        assert (ub.value, ub.formula) == (14, "2n+f(p,q)-2max(p,q)")

    def test_collinear_pigeonhole(self):
        ub = upper_bound(COLLINEAR, 5)
        assert (ub.value, ub.formula) == (10, "2n-pigeonhole")

    def test_right_is_external(self):
        ub = upper_bound(RIGHT, 4)
        assert (ub.value, ub.external) == (6, True)

    def test_grid_size_fallback(self):
        # tangent components at or past n: the bucket formula does not apply
        ub = upper_bound(parse_theta("tan=-3/2"), 3)
        assert (ub.value, ub.formula) == (9, "n^2")
        assert upper_bound(RIGHT, 1).value == 1

    def test_single_cell_grid(self):
        assert upper_bound(DEG135, 1).value == 1


class TestBounds:
    def test_combined(self):
        b = bounds(DEG135, 6)
        assert (b.lower, b.upper, b.formula, b.external) == (12, 16, "3n-2", False)


class TestCapacityAfter:
    def test_two_rows_g6_is_saturated(self):
        # two_rows(6) occupies all 11 anti-diagonal buckets: no room at all
        assert capacity_after(two_rows(6)) == 0

    def test_bounded_by_n_minus_2(self):
        for n in (3, 4, 6, 8):
            assert capacity_after(two_rows(n)) <= n - 2

    def test_wrong_size_rejected(self):
        with pytest.raises(ValueError, match="2n"):
            capacity_after(Construction.of(4, [(1, 1)]))

    def test_non_peaceful_rejected(self):
        # 8 points on G_4 with a 135 violation
        pts = [(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (4, 2), (2, 4), (3, 3)]
        c = Construction.of(4, pts)
        with pytest.raises((NotPeacefulError, ValueError)):
            capacity_after(c)

    def test_other_angles_rejected(self):
        with pytest.raises(ValueError):
            capacity_after(two_rows(4), RIGHT)
