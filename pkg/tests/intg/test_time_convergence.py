"""End-to-end temporal and spatial convergence against the manufactured solution."""

import pytest

from projfem.config import resolve_run_config
from projfem.schemes import ElementPair, SchemeName
from projfem.services import Simulator
from projfem.verify.orders import ConvergenceReport

LADDER = [0.2, 0.1, 0.05, 0.025]

# Orders between consecutive k on the 70 x 70 mesh with P2 x P1.
REFERENCE_ORDERS_N70 = {
    "u1_linf_l2": (1.077, 1.326, 1.582),
    "u1_linf_h1": (0.812, 1.146, 1.453),
    "u2_linf_l2": (1.095, 1.352, 1.585),
    "u2_linf_h1": (0.817, 1.148, 1.457),
    "p_l2_l2": (0.877, 1.282, 1.535),
    "p_linf_l2": (0.880, 1.157, 1.444),
}


def _sweep(scheme: SchemeName, n: int, workers: int = 4) -> ConvergenceReport:
    config = resolve_run_config(
        overrides={"scheme": scheme.value, "n": n, "T": 2.0, "nu": 1.0, "k_list": LADDER}
    )
    report, _ = Simulator().convergence(config, config.ladder(), workers=workers)
    return report


@pytest.fixture(scope="module")
def incremental_n32() -> ConvergenceReport:
    return _sweep(SchemeName.INCREMENTAL, 32)


class TestIncrementalTimeConvergence:
    """The incremental scheme on the 32 x 32 mesh."""

    @pytest.mark.parametrize("norm", ["u1_linf_l2", "p_linf_l2"])
    def test_first_order_at_finest_pair(self, incremental_n32, norm: str):
        """Observed orders reach at least 0.9 at the finest k pair."""
        assert incremental_n32.orders[-1][norm] >= 0.9

    @pytest.mark.parametrize("norm", ["u1_linf_l2", "p_linf_l2"])
    def test_orders_increase_along_the_ladder(self, incremental_n32, norm: str):
        """Orders grow monotonically from the coarsest to the finest pair."""
        orders = [o[norm] for o in incremental_n32.orders]
        assert orders == sorted(orders)

    def test_report_shape(self, incremental_n32):
        """Six norms per k and three order columns."""
        assert incremental_n32.ks == LADDER
        assert len(incremental_n32.orders) == 3
        assert all(len(o) == 6 for o in incremental_n32.orders)


class TestCompetitorTimeConvergence:
    """Pressure convergence of the three competitor schemes."""

    @pytest.mark.parametrize("scheme", [SchemeName.ROTATIONAL, SchemeName.CONSISTENT, SchemeName.PENALTY])
    def test_pressure_order(self, scheme: SchemeName):
        """The l-infinity(L2) pressure order at the finest pair is at least 0.8."""
        report = _sweep(scheme, 32)
        assert report.orders[-1]["p_linf_l2"] >= 0.8


class TestSpatialConvergence:
    """Total error of the MINI pair with k tied to h."""

    def test_mini_h1_order(self):
        """With k = h, the velocity H1-seminorm error decreases at order >= 0.8."""
        simulator = Simulator()
        report = ConvergenceReport(scheme="incremental", pair=ElementPair.MINI.label, n=0)
        for n in (8, 16, 32):
            config = resolve_run_config(
                overrides={"n": n, "k": 1.0 / n, "T": 1.0, "pair": "mini"}
            )
            report.add(1.0 / n, simulator.run(config).norms)
        for orders in report.orders:
            assert orders["u1_linf_h1"] >= 0.8
            assert orders["u2_linf_h1"] >= 0.8


class TestDeterminism:
    """Repeated runs are bit-identical."""

    def test_identical_runs(self):
        """Same configuration, same errors, with concurrent workers."""
        config = resolve_run_config(overrides={"n": 4, "T": 0.4, "k_list": [0.2, 0.1]})
        first, _ = Simulator().convergence(config, config.ladder(), workers=2)
        second, _ = Simulator().convergence(config, config.ladder(), workers=1)
        assert first.norms == second.norms


@pytest.mark.slow
class TestFullTableReproduction:
    """The full 70 x 70 sweep of the incremental scheme."""

    def test_orders_match_reference(self):
        """Every order lies within 0.25 of the reference table."""
        report = _sweep(SchemeName.INCREMENTAL, 70)
        for name, expected in REFERENCE_ORDERS_N70.items():
            for orders, reference in zip(report.orders, expected):
                assert orders[name] == pytest.approx(reference, abs=0.25)
