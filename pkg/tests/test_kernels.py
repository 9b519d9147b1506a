"""Pure-Python and compiled search cores must agree bit for bit."""

import pytest

from thetagrid import COLLINEAR, DEG45, DEG135, RIGHT, parse_theta
from thetagrid.solver import HAVE_SPEEDUPS, SearchConfig, solve_exact, solve_oracle

pytestmark = pytest.mark.skipif(not HAVE_SPEEDUPS, reason="extension not built")

THETAS = [DEG45, RIGHT, DEG135, COLLINEAR, parse_theta("tan=-3/2")]


def _strip(report):
    return (report.size, report.best, report.optimal, report.nodes_explored)


class TestKernelEquivalence:
    def test_oracle_identical_reports(self):
        # the pure oracle re-checks angles directly, so this also validates
        # the pair-completion tables the compiled kernel runs on
        for theta in THETAS:
            for n in (1, 2, 3):
                p = solve_oracle(n, theta, SearchConfig(kernel="pure"))
                c = solve_oracle(n, theta, SearchConfig(kernel="compiled"))
                assert _strip(p) == _strip(c), (str(theta), n)

    def test_oracle_identical_at_n4(self):
        p = solve_oracle(4, DEG135, SearchConfig(kernel="pure"))
        c = solve_oracle(4, DEG135, SearchConfig(kernel="compiled"))
        assert _strip(p) == _strip(c)

    def test_exact_identical_reports(self):
        for theta in THETAS:
            for n in (2, 3, 4):
                for sym in (True, False):
                    cfg_p = SearchConfig(kernel="pure", symmetry_breaking=sym)
                    cfg_c = SearchConfig(kernel="compiled", symmetry_breaking=sym)
                    p = solve_exact(n, theta, cfg_p)
                    c = solve_exact(n, theta, cfg_c)
                    assert _strip(p) == _strip(c), (str(theta), n, sym)

    def test_node_budget_stops_identically(self):
        for budget in (1, 10, 200):
            cfg_p = SearchConfig(kernel="pure", node_budget=budget, symmetry_breaking=False)
            cfg_c = SearchConfig(kernel="compiled", node_budget=budget, symmetry_breaking=False)
            p = solve_exact(4, DEG135, cfg_p)
            c = solve_exact(4, DEG135, cfg_c)
            assert _strip(p) == _strip(c), budget

    def test_kernel_names_reported(self):
        assert solve_exact(3, DEG135, SearchConfig(kernel="pure")).kernel == "pure"
        assert solve_exact(3, DEG135, SearchConfig(kernel="compiled")).kernel == "compiled"

    def test_compiled_refuses_large_grids(self):
        with pytest.raises(ValueError):
            solve_exact(9, DEG135, SearchConfig(kernel="compiled"))

    def test_auto_spills_to_pure_past_64_cells(self):
        r = solve_exact(
            9, DEG45, SearchConfig(kernel="auto", node_budget=2000, symmetry_breaking=False)
        )
        assert r.kernel == "pure"
