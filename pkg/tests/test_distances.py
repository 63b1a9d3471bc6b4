import pytest

from qkdclone.cloners import CloningMachine, fidelity_bh_closed
from qkdclone.distances import (
    OK,
    OUT_OF_DOMAIN,
    OUT_OF_WINDOW,
    TABLE_BH_ALPHA_SQ,
    TABLE_WZ_ALPHA_SQ,
    bh_efficiency_table,
    condition_check,
    hs_upper,
    trace_dist_sq_upper,
    wz_efficiency_table,
)

from reference_tables import BH_ROWS, KNOWN_MISMATCHES, WZ_ROWS, cell_matches

WZ = CloningMachine.wootters_zurek()


class TestBoundFunctions:
    def test_spot_values(self):
        assert round(trace_dist_sq_upper(0.8286), 4) == 0.3134
        assert round(hs_upper(0.8286), 4) == 0.6268
        # 0.1562 needs the unrounded fidelity of xi=0.4, alpha^2=0.001
        assert round(hs_upper(fidelity_bh_closed(0.001, 0.4)), 4) == 0.1562
        assert round(hs_upper(0.9602), 4) == 0.1560

    def test_endpoints(self):
        assert trace_dist_sq_upper(1.0) == 0.0 and hs_upper(0.0) == 2.0

    @pytest.mark.parametrize("F", [-0.1, 1.1])
    def test_range(self, F):
        with pytest.raises(ValueError):
            hs_upper(F)


class TestConditionCheck:
    def test_wz_violation(self):
        # measured HS(E, ideal) = 2 a2 b2 = 0.48 exceeds HS(E, E') = 2 (2 a2 - 1)^2 = 0.08
        c = condition_check(WZ, 0.4)
        assert not c.holds
        assert c.hs_eve_ideal == pytest.approx(0.48, abs=1e-12)
        assert c.hs_eve_pair == pytest.approx(0.08, abs=1e-12)
        assert c.trace_dist_pair == pytest.approx(0.2, abs=1e-12)

    def test_wz_basis_input_holds(self):
        c = condition_check(WZ, 1.0)
        assert c.holds and c.hs_eve_ideal == pytest.approx(0.0, abs=1e-15)

    def test_bh_half_fails(self):
        # both outputs collapse to I/2, so the pair distance is 0
        c = condition_check(CloningMachine.buzek_hillery(0.5), 0.3)
        assert not c.holds and c.hs_eve_pair == pytest.approx(0.0, abs=1e-15)

    def test_range(self):
        with pytest.raises(ValueError):
            condition_check(WZ, 1.2)


class TestWzTable:
    def test_default_rows_in_window(self):
        rows = wz_efficiency_table()
        assert [r.alpha_sq for r in rows] == list(TABLE_WZ_ALPHA_SQ)
        assert all(r.status == OK and r.xi is None for r in rows)

    @pytest.mark.parametrize("row", WZ_ROWS, ids=lambda r: f"a{r[0]}")
    def test_reference_cells(self, row):
        a2, F, d2, dhs = row
        (out,) = wz_efficiency_table([a2])
        assert cell_matches(out.fidelity, F)
        assert cell_matches(out.trace_dist_sq_bound, d2)
        if ("wz", None, a2, "DHS") not in KNOWN_MISMATCHES:
            assert cell_matches(out.hs_bound, dhs)

    def test_flags(self):
        rows = wz_efficiency_table([0.0, 0.2, 0.4, 0.5, 0.7])
        assert [r.status for r in rows] == [OUT_OF_DOMAIN, OUT_OF_WINDOW, OK, OUT_OF_DOMAIN, OUT_OF_DOMAIN]

    def test_intervals(self):
        (r,) = wz_efficiency_table([0.35])
        assert r.trace_dist_sq_interval == (0.0, r.trace_dist_sq_bound)
        assert r.hs_interval == (0.0, r.hs_bound)


class TestBhTable:
    def test_default_shape(self):
        rows = bh_efficiency_table()
        assert len(rows) == sum(len(v) for v in TABLE_BH_ALPHA_SQ.values()) == 30

    @pytest.mark.parametrize("row", BH_ROWS, ids=lambda r: f"xi{r[0]}-a{r[1]}")
    def test_reference_cells(self, row):
        xi, a2, F, d2, dhs = row
        (out,) = bh_efficiency_table([xi], [a2])
        cells = {"F": (out.fidelity, F), "D2": (out.trace_dist_sq_bound, d2), "DHS": (out.hs_bound, dhs)}
        for name, (got, want) in cells.items():
            if ("bh", xi, a2, name) in KNOWN_MISMATCHES:
                continue
            assert cell_matches(got, want), name

    def test_shared_grid(self):
        rows = bh_efficiency_table([0.2, 0.3], [0.25, 0.35])
        assert [(r.xi, r.alpha_sq) for r in rows] == [(0.2, 0.25), (0.2, 0.35), (0.3, 0.25), (0.3, 0.35)]

    def test_flags(self):
        rows = bh_efficiency_table([0.1, 0.47], [0.1, 0.3])
        assert [r.status for r in rows] == [OUT_OF_WINDOW, OK, OUT_OF_DOMAIN, OUT_OF_DOMAIN]

    def test_first_published_row_sits_on_window_edge(self):
        # the xi = 0.455 window opens at 0, so 0.001 is inside
        (r,) = bh_efficiency_table([0.455], [0.001])
        assert r.status == OK


def all_table_rows():
    return wz_efficiency_table() + bh_efficiency_table()


class TestMeasuredInequalities:
    @pytest.mark.parametrize("row", all_table_rows(), ids=lambda r: f"xi{r.xi}-a{r.alpha_sq}")
    def test_on_actual_states(self, row):
        assert row.measured_trace_dist_sq <= row.trace_dist_sq_bound + 1e-12
        assert row.measured_hs_pair <= 2 * row.measured_trace_dist_sq + 1e-12

    def test_condition_reported_not_absorbed(self):
        rows = all_table_rows()
        assert any(not r.condition_holds for r in rows)
