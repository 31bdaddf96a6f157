import io
import json

import pytest

from vbspool.erlang import asymptotic_utilization, dimension_radio, erlang_b
from vbspool.planner import (
    SweepResult,
    dimension_pool,
    gain_vs_pool_size,
    knee_point,
    sweep_summary,
    sweep_to_csv,
    summary_to_json,
)


class TestDimensionPool:
    def test_single_vbs_has_no_gain(self):
        sweep = dimension_pool(1, 17.8, 1e-2)
        assert sweep.k_radio == 28
        assert sweep.n_min == 28
        assert sweep.pooling_gain == 0.0

    def test_pooling_beats_full_provisioning(self):
        sweep = dimension_pool(10, 17.8, 1e-2)
        assert sweep.n_min < 280
        assert 0.0 < sweep.pooling_gain < 1.0

    def test_full_provisioning_meets_threshold(self):
        for m, a, pth in [(1, 1.0, 0.5), (5, 3.0, 1e-2), (10, 17.8, 1e-2)]:
            sweep = dimension_pool(m, a, pth)
            top = sweep.points[0]
            assert top.n_comp == m * sweep.k_radio
            assert top.p_total == pytest.approx(
                erlang_b(sweep.k_radio, a), rel=1e-12
            )
            assert top.p_total <= pth

    def test_threshold_bracketing(self):
        sweep = dimension_pool(10, 17.8, 1e-2, full_descent=True)
        by_n = {p.n_comp: p for p in sweep.points}
        assert by_n[sweep.n_min].p_total <= 1e-2
        assert by_n[sweep.n_min - 1].p_total > 1e-2

    def test_curve_monotone_in_n(self):
        sweep = dimension_pool(4, 3.0, 1e-2, full_descent=True)
        totals = [p.p_total for p in sweep.points]  # descending N
        assert all(x <= y + 1e-15 for x, y in zip(totals, totals[1:]))

    def test_early_stop_vs_full_descent(self):
        partial = dimension_pool(4, 3.0, 1e-2)
        full = dimension_pool(4, 3.0, 1e-2, full_descent=True)
        assert len(full.points) == 4 * full.k_radio + 1
        assert len(partial.points) <= len(full.points)
        assert partial.n_min == full.n_min
        assert partial.points[-1].p_total > 0.5 or partial.points[-1].n_comp == 0

    def test_normalized_axis(self):
        sweep = dimension_pool(2, 1.0, 0.5)
        for p in sweep.points:
            assert p.normalized_n == p.n_comp / (2 * sweep.k_radio)


class TestKneePoint:
    def test_single_vbs_knee_at_top(self):
        # p_radio is identically 0, so the crossover is at N = K
        sweep = dimension_pool(1, 1.0, 0.5)
        assert knee_point(sweep) == sweep.k_radio

    def test_knee_near_threshold_crossing(self):
        sweep = dimension_pool(10, 17.8, 1e-2)
        knee = knee_point(sweep)
        assert abs(knee - sweep.n_min) <= 5

    def test_crossover_sides(self):
        sweep = dimension_pool(10, 17.8, 1e-2, full_descent=True)
        knee = knee_point(sweep)
        for p in sweep.points:
            if p.n_comp > knee:
                assert p.p_comp <= p.p_radio
        by_n = {p.n_comp: p for p in sweep.points}
        assert by_n[knee].p_comp > by_n[knee].p_radio

    def test_sentinel_when_sweep_stops_above_crossover(self):
        full = dimension_pool(10, 17.8, 1e-2, full_descent=True)
        knee = knee_point(full)
        truncated = SweepResult(
            m_vbs=full.m_vbs,
            k_radio=full.k_radio,
            a=full.a,
            p_threshold=full.p_threshold,
            points=tuple(p for p in full.points if p.n_comp > knee),
            n_min=full.n_min,
            pooling_gain=full.pooling_gain,
            limit_bounds=full.limit_bounds,
        )
        assert knee_point(truncated) == full.m_vbs * full.k_radio

    def test_needs_two_points(self):
        sweep = dimension_pool(2, 1.0, 0.5)
        short = SweepResult(
            m_vbs=sweep.m_vbs,
            k_radio=sweep.k_radio,
            a=sweep.a,
            p_threshold=sweep.p_threshold,
            points=sweep.points[:1],
            n_min=sweep.n_min,
            pooling_gain=sweep.pooling_gain,
            limit_bounds=sweep.limit_bounds,
        )
        with pytest.raises(ValueError):
            knee_point(short)


class TestGainVsPoolSize:
    def test_single_vbs_row(self):
        rows = gain_vs_pool_size([1], 1.0, 0.5)
        assert rows == [(1, 1, 1.0, 0.0)]

    def test_gain_nondecreasing_in_pool_size(self):
        for a, pth in [(8.0, 1e-2), (17.8, 1e-2), (17.8, 3e-2)]:
            rows = gain_vs_pool_size([1, 2, 4, 8, 16], a, pth)
            gains = [r[3] for r in rows]
            assert all(x <= y + 1e-12 for x, y in zip(gains, gains[1:]))

    def test_normalized_n_min_above_asymptote(self):
        k = dimension_radio(17.8, 1e-2)
        floor = asymptotic_utilization(k, 17.8)
        rows = gain_vs_pool_size([2, 8, 32], 17.8, 1e-2)
        assert all(r[2] >= floor for r in rows)

    def test_stricter_qos_increases_gain(self):
        for m in (5, 30):
            strict = dimension_pool(m, 17.8, 1e-2).pooling_gain
            loose = dimension_pool(m, 17.8, 3e-2).pooling_gain
            assert strict >= loose

    def test_heavier_load_reduces_gain(self):
        gains = [
            dimension_pool(10, a, 1e-2).pooling_gain for a in (10.0, 17.8, 25.0)
        ]
        assert all(x >= y - 1e-12 for x, y in zip(gains, gains[1:]))


class TestSerialization:
    def test_csv_round_trip(self):
        sweep = dimension_pool(2, 1.0, 0.5)
        buf = io.StringIO()
        sweep_to_csv(sweep, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0].startswith("# vbspool sweep m=2")
        assert lines[1] == "n,normalized_n,p_radio,p_comp,p_total"
        for line, point in zip(lines[2:], sweep.points):
            n, norm, pr, pc, pt = line.split(",")
            assert int(n) == point.n_comp
            assert float(pr) == pytest.approx(point.p_radio, rel=1e-11)
            assert float(pt) == pytest.approx(point.p_total, rel=1e-11)

    def test_summary_fields(self):
        sweep = dimension_pool(4, 3.0, 1e-2)
        summary = sweep_summary(sweep)
        assert summary["n_min"] == sweep.n_min
        assert summary["knee"] == knee_point(sweep)
        assert summary["limit_lower"] <= summary["limit_upper"]

    def test_json_dump_parses(self):
        sweeps = [dimension_pool(m, 3.0, 1e-2) for m in (2, 4)]
        buf = io.StringIO()
        summary_to_json(sweeps, buf)
        data = json.loads(buf.getvalue())
        assert [d["m"] for d in data] == [2, 4]
