"""Embedded reference grid: counts, spot cells, relations, consistency."""

import pytest

from ric_bounds import bt_relation, entries, lookup
from ric_bounds.reference_tables import reference_for_kind

ALPHAS = (0.1, 0.3, 0.5, 0.7, 0.9)


class TestLoader:
    def test_total_cell_count(self):
        assert len(entries()) == 270

    def test_exact_counts_per_quantity(self):
        counts = {}
        for e in entries():
            counts[e.quantity] = counts.get(e.quantity, 0) + 1
        assert counts["xi_uric_BT"] == 25
        assert counts["xi_uric_u"] == 25
        assert counts["xi_uric_u_low"] == 25
        assert counts["xi_lric_BT"] == 20
        assert counts["xi_lric_l"] == 20
        assert counts["xi_lric_l_lift"] == 20
        assert counts["c3_opt"] == 45  # 25 upper cells + 20 lower cells
        assert counts["nu_opt"] == 45
        assert counts["gamma_opt"] == 45

    def test_keys_unique(self):
        keys = {(e.table_id, e.alpha, e.rho, e.quantity) for e in entries()}
        assert len(keys) == len(entries())


class TestLookup:
    def test_spot_cells(self):
        assert lookup(1, 0.5, 0.3, "xi_uric_u") == 2.0560
        assert lookup(5, 0.9, 0.5, "xi_lric_l") == -0.002
        assert lookup(7, 0.1, 0.5, "c3_opt") == 37.468
        assert lookup(3, 0.1, 0.1, "nu_opt") == 11.375
        assert lookup(4, 0.9, 0.9, "xi_uric_u_low") == 2.0522

    def test_float_artifact_keys(self):
        assert lookup(1, 0.30000000000000004, 0.1, "xi_uric_u") == 1.8049

    def test_missing_key_names_the_cell(self):
        with pytest.raises(KeyError, match="table_id=7.*rho=0.2"):
            lookup(7, 0.1, 0.2, "c3_opt")


class TestBtRelation:
    def test_unit_isometry(self):
        assert bt_relation(1.0, "upper") == 0.0
        assert bt_relation(1.0, "lower") == 0.0

    def test_upper_from_table_cell(self):
        xi = lookup(1, 0.3, 0.1, "xi_uric_BT")  # 1.8970
        assert bt_relation(xi, "upper") == pytest.approx(1.8970**2 - 1.0, rel=1e-12)

    def test_lower_from_table_cell(self):
        xi = lookup(5, 0.1, 0.05, "xi_lric_BT")  # 0.4224
        assert bt_relation(xi, "lower") == pytest.approx(1.0 - 0.4224**2, rel=1e-12)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            bt_relation(-0.1, "upper")
        with pytest.raises(ValueError):
            bt_relation(1.0, "sideways")


class TestGridConsistency:
    def test_optimized_upper_never_above_closed_form(self):
        for rho, simple_tid, lifted_tid in ((0.1, 1, 3), (0.3, 1, 3), (0.5, 1, 3), (0.7, 2, 4), (0.9, 2, 4)):
            for alpha in ALPHAS:
                assert lookup(lifted_tid, alpha, rho, "xi_uric_u_low") <= lookup(
                    simple_tid, alpha, rho, "xi_uric_u"
                )

    def test_optimized_lower_never_below_closed_form(self):
        for rho in (0.05, 0.1, 0.3, 0.5):
            for alpha in ALPHAS:
                assert lookup(7, alpha, rho, "xi_lric_l_lift") >= lookup(
                    5, alpha, rho, "xi_lric_l"
                )

    def test_reference_for_kind_routing(self):
        assert reference_for_kind("upper-simple", 0.1, 0.7) == 2.8709
        assert reference_for_kind("upper-lifted", 0.9, 0.9) == 2.0522
        assert reference_for_kind("lower-simple", 0.5, 0.3) == -0.056
        assert reference_for_kind("lower-lifted", 0.7, 0.05) == 0.5166
        assert reference_for_kind("lower-lifted", 0.7, 0.7) is None
        assert reference_for_kind("upper-simple", 0.2, 0.1) is None
