"""Attractor census, region labeling, the exceptional-point band, and the
parallel sweep's determinism."""

import numpy as np
import pytest

from trikerr.closed import boundary_pump
from trikerr.dynamics import AttractorLabel
from trikerr.params import SystemParams
from trikerr.phasediagram import (census_point, classify_region, ep_band,
                                  grid_point, overlay_closed_boundary, sweep)
from trikerr.stability import bogoliubov_matrix, is_exceptional

LADDER = SystemParams.pumped_ladder(0.0, 0.0)  # template; points override

# census settings tuned for test runtime: short integration, few clouds.
# fine for strongly contracting points; the acceptance gate runs full length
FAST = dict(n_ics=10, t_end=40.0, dt=4e-3)


def fp_label(kind, alpha):
    return AttractorLabel(kind=kind,
                          fixed_point=np.asarray(alpha, dtype=complex))


class TestClassifyRegion:
    def test_mapping_table(self):
        p = SystemParams.pumped_ladder(5.0, 3.0)
        lp = fp_label("LP", [0.0, 1.0, 0.0])
        hp = fp_label("HP", [0.0, 2.5, 0.0])  # n2 = 6.25: both factors negative
        lc = AttractorLabel(kind="LC", lc_frequency=1.0, lc_amplitude=0.4)
        assert classify_region(p, [lp, hp, lc]) == "II"
        assert classify_region(p, [lp, hp]) == "III"
        assert classify_region(p, [lp]) == "I"
        assert classify_region(p, [hp]) == "IV"
        assert classify_region(p, []) == "unresolved"
        assert classify_region(p, [lc]) == "unresolved"

    def test_ep_band_label(self):
        # a single attractor whose pumped-mode factor signs differ:
        # n2 < delta2 < 3 n2 at u0 = -1
        p = SystemParams.pumped_ladder(2.0, 1.0)
        mid = fp_label("LP", [0.0, 1.0, 0.0])  # n2 = 1, band is (1, 3)
        assert classify_region(p, [mid]) == "EP_band"
        low = fp_label("LP", [0.0, 0.5, 0.0])  # n2 = 0.25, factors negative
        assert classify_region(p, [low]) == "I"


class TestCensus:
    def test_monostable_high_point(self):
        p = SystemParams.pumped_ladder(-5.0, 3.0)
        attractors, counts, n_div = census_point(p, seed=3, **FAST)
        assert n_div == 0
        assert [a.kind for a in attractors] == ["HP"]
        assert counts.get("HP", 0) == FAST["n_ics"]

    def test_grid_point_overrides_template(self):
        res = grid_point(LADDER, delta2=-5.0, omega2=3.0, seed=3, **FAST)
        assert res.region == "IV"
        assert res.delta2 == -5.0 and res.omega2 == 3.0
        assert res.closed_boundary_side == "above"  # no boundary at d2 <= 0
        # the census ran with the ladder offsets applied to the new detuning
        fp = res.attractors[0].fixed_point
        assert abs(fp[0]) < 1e-6 and abs(fp[2]) < 1e-6

    def test_census_rejects_empty_cloud(self):
        with pytest.raises(ValueError):
            census_point(LADDER, n_ics=0)


class TestSweep:
    def test_parallel_matches_serial(self):
        d2 = [-5.0, 0.0]
        w2 = [0.5, 3.0]
        kw = dict(ics_per_point=10, seed=42, t_end=40.0, dt=4e-3)
        serial = sweep(LADDER, d2, w2, workers=1, **kw)
        parallel = sweep(LADDER, d2, w2, workers=2, **kw)
        assert len(serial) == len(parallel) == 4
        for a, b in zip(serial, parallel):
            assert (a.delta2, a.omega2) == (b.delta2, b.omega2)
            assert a.region == b.region
            assert a.counts == b.counts
            for la, lb in zip(a.attractors, b.attractors):
                assert la.kind == lb.kind
                if la.fixed_point is not None:
                    assert np.abs(la.fixed_point - lb.fixed_point).max() == 0.0

    def test_row_major_order(self):
        res = sweep(LADDER, [-5.0, -4.0], [0.5, 1.0], ics_per_point=10,
                    workers=1, t_end=10.0, dt=4e-3)
        coords = [(r.delta2, r.omega2) for r in res]
        assert coords == [(-5.0, 0.5), (-4.0, 0.5), (-5.0, 1.0), (-4.0, 1.0)]

    def test_input_validation(self):
        with pytest.raises(ValueError):
            sweep(LADDER, [], [1.0])
        with pytest.raises(ValueError):
            sweep(LADDER, [1.0], [1.0], ics_per_point=5)


class TestEpBand:
    def test_weak_drive_band_on_detuning_cut(self):
        p = LADDER.with_omega2(0.5)
        grid = np.linspace(-1.0, 4.0, 51)
        intervals = ep_band(p, delta2_values=grid)
        assert len(intervals) == 1
        lo, hi = intervals[0]
        assert -1.0 < lo < hi < 4.0

        # refinement is grid-independent once the band is bracketed
        finer = ep_band(p, delta2_values=np.linspace(-1.0, 4.0, 101))
        assert finer[0][0] == pytest.approx(lo, abs=1e-6)
        assert finer[0][1] == pytest.approx(hi, abs=1e-6)

        # the refined edges are exceptional points of the fluctuation matrix
        from trikerr.phasediagram import _unique_attractor_n2
        for edge in (lo, hi):
            q = SystemParams.pumped_ladder(edge, 0.5)
            n2, a2 = _unique_attractor_n2(q)
            state = np.array([0.0, a2, 0.0], dtype=complex)
            assert is_exceptional(bogoliubov_matrix(q, state))

    def test_no_band_deep_in_single_region(self):
        p = LADDER.with_omega2(0.5)
        assert ep_band(p, delta2_values=np.linspace(-5.0, -3.0, 21)) == []

    def test_requires_exactly_one_axis(self):
        with pytest.raises(ValueError):
            ep_band(LADDER, delta2_values=[1.0], omega2_values=[1.0])
        with pytest.raises(ValueError):
            ep_band(LADDER)


class TestClosedBoundaryOverlay:
    def test_matches_pointwise_formula(self):
        grid = np.array([-2.0, 0.0, 1.0, 3.0, 5.0])
        out = overlay_closed_boundary(grid, u0=-1.0)
        assert out[0] == 0.0 and out[1] == 0.0
        assert out[3] == pytest.approx(2.0, abs=1e-12)  # exact at delta2 = 3
        for d2, w2 in zip(grid[2:], out[2:]):
            assert w2 == pytest.approx(boundary_pump(d2, -1.0), abs=1e-12)
        with pytest.raises(ValueError):
            overlay_closed_boundary(grid, u0=1.0)
