import math
from dataclasses import replace

import numpy as np
from pytest import approx, mark, raises

from channels import apply_channel, kraus_bf, kraus_gad
from errors import ConfigError, NoEntanglementAnywhere
from figures import FIGURES, figure_dataset, figure_panels
from files import read_csv_rows
from measures import concurrence_margin
from optimizer import OptimizerConfig
from states import thermal_xxx
from sweep import (
    BASE_COLUMNS, GridAxis, OrderingReport, SweepConfig, SweepRecord, _crossings_along, evaluate_grid,
    evaluate_point, ordering_report, ordering_sign, run_sweep, sudden_death_temperature, write_crossings_csv,
)

TC_J1 = 0.91023922662


def small_config(**overrides):
    settings = dict(j_axis=GridAxis(-2.0, 2.0, 5), t_axis=GridAxis(0.5, 1.5, 3))
    settings.update(overrides)
    return SweepConfig(**settings)


def t_slice(channel="none", p=0.0, gamma=0.0):
    return SweepConfig(t_axis=GridAxis(1.0, 1.0, 1), channel=channel, p=p, gamma=gamma)


class TestGridAxis:
    def test_values(self):
        assert list(GridAxis(0.0, 1.0, 3).values()) == [0.0, 0.5, 1.0]
        assert list(GridAxis(2.5, 9.0, 1).values()) == [2.5]

    def test_default_includes_zero_coupling(self):
        assert 0.0 in SweepConfig().j_axis.values()
        assert len(SweepConfig().j_axis.values()) * len(SweepConfig().t_axis.values()) == 4779


class TestSweepConfig:
    @mark.parametrize("overrides", [
        {"t_axis": GridAxis(0.0, 3.0, 5)},
        {"j_axis": GridAxis(-1.0, 1.0, 0)},
        {"j_axis": GridAxis(1.0, -1.0, 3)},
        {"channel": "depolarizing"},
        {"channel": "bf", "p": 1.5},
        {"channel": "gad", "p": 0.3, "gamma": 0.5},
        {"measures": ("qd", "entropy")},
        {"measures": ()},
        {"workers": 0},
        {"optimizer": OptimizerConfig(restarts=0)},
    ])
    def test_rejected(self, overrides):
        with raises(ConfigError):
            small_config(**overrides).validate()

    def test_columns(self):
        cfg = small_config(measures=("qd", "concurrence"), oracle=True)
        assert cfg.columns() == BASE_COLUMNS + ("qd", "concurrence", "qd_numeric")


class TestEvaluatePoint:
    def test_noiseless_reference(self):
        record = evaluate_point(4.0, 1.0, None, ("qd", "gqd1", "concurrence"))
        assert record.alpha == 1.0
        assert record.c1 == approx(-0.9305533, abs=1e-7)
        assert record.concurrence == approx(0.89583, abs=1e-7)
        assert record.gqd1 == approx(0.9305533, abs=1e-7)

    def test_bf_reference(self):
        record = evaluate_point(4.0, 1.0, kraus_bf(0.5), ("gqd1",))
        assert (record.c1, record.c2, record.c3) == approx((-0.9305533, -0.2326383, -0.2326383), abs=1e-7)
        assert record.gqd1 == approx(0.2326383, abs=1e-7)
        assert record.qd is None and record.p == 0.5

    def test_oracle_columns(self):
        record = evaluate_point(1.0, 0.8, kraus_gad(0.5, 0.5), ("qd", "gqd1"), oracle=True,
                                optimizer=OptimizerConfig(restarts=2, iterations=60))
        assert abs(record.qd - record.qd_numeric) < 1e-6
        assert record.gqd1 - 1e-9 <= record.gqd1_numeric <= record.gqd1 + 1e-3

    @mark.parametrize("J", [-5.0, 5.0])
    def test_extreme_alpha(self, J):
        record = evaluate_point(J, 1e-3, None, ("qd", "gqd1", "concurrence"))
        values = [record.qd, record.gqd1, record.concurrence, record.c1, record.c2, record.c3]
        assert all(math.isfinite(v) for v in values)
        assert all(0.0 <= v <= 1.0 for v in values[:3])


class TestEvaluateGrid:
    def test_sorted_and_complete(self):
        records = evaluate_grid([1.0, -1.0], [2.0, 0.5, 1.0], None, ("qd",))
        assert [(r.J, r.T) for r in records] == [(-1.0, 0.5), (-1.0, 1.0), (-1.0, 2.0),
                                                (1.0, 0.5), (1.0, 1.0), (1.0, 2.0)]

    def test_progress_callback(self):
        seen = []
        evaluate_grid([0.0, 1.0, 2.0], [1.0, 2.0], None, ("concurrence",), progress=seen.append)
        assert seen == [2, 2, 2]

    def test_ferromagnetic_concurrence_is_zero(self):
        cfg = SweepConfig()
        j_values = [J for J in cfg.j_axis.values() if J < 0]
        records = evaluate_grid(j_values, cfg.t_axis.values(), None, ("concurrence",))
        assert all(r.concurrence == 0.0 for r in records)

    @mark.slow
    def test_workers_do_not_change_output(self):
        args = ([-1.0, 0.0, 1.0, 2.0], [0.5, 1.0], kraus_bf(0.3), ("qd", "gqd1", "concurrence"))
        assert evaluate_grid(*args, workers=2) == evaluate_grid(*args, workers=1)


class TestRunSweep:
    def test_writes_csv(self, tmp_path):
        path = tmp_path / "out" / "sweep.csv"
        records = run_sweep(small_config(output_path=path))
        rows = read_csv_rows(path)
        assert len(rows) == len(records) == 15
        assert list(rows[0]) == list(BASE_COLUMNS) + ["qd", "gqd1", "concurrence"]
        assert rows[0]["J"] == "-2" and rows[0]["T"] == "0.5"
        assert not list(path.parent.glob(".*.tmp"))

    def test_cells_in_range(self, tmp_path):
        path = tmp_path / "bf.csv"
        run_sweep(small_config(channel="bf", p=0.5, output_path=path))
        for row in read_csv_rows(path):
            for name in ("qd", "gqd1", "concurrence"):
                assert 0.0 <= float(row[name]) <= 1.0
            for name in ("c1", "c2", "c3"):
                assert -1.0 <= float(row[name]) <= 1.0

    def test_zero_temperature_rejected_before_writing(self, tmp_path):
        path = tmp_path / "never.csv"
        with raises(ConfigError):
            run_sweep(small_config(t_axis=GridAxis(0.0, 1.0, 3), output_path=path))
        assert not path.exists()

    def test_deterministic_bytes(self, tmp_path):
        cfg = small_config(channel="gad", p=0.5, gamma=0.5, oracle=True,
                           optimizer=OptimizerConfig(restarts=2, iterations=40))
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        run_sweep(replace(cfg, output_path=first))
        run_sweep(replace(cfg, output_path=second))
        assert first.read_bytes() == second.read_bytes()


class TestSuddenDeath:
    def test_noiseless(self):
        assert sudden_death_temperature(1.0) == approx(TC_J1, abs=1e-9)
        assert sudden_death_temperature(2.0) == approx(2 / math.log(3), abs=1e-9)

    @mark.parametrize("J", [0.5, 4.0])
    def test_linear_in_coupling(self, J):
        assert sudden_death_temperature(J) == approx(J / math.log(3), abs=1e-6)

    def test_root_is_a_zero_of_the_margin(self):
        tc = sudden_death_temperature(1.0)
        assert abs(concurrence_margin(thermal_xxx(1.0, tc).rho)) < 1e-10

    @mark.parametrize("channel", [kraus_bf(0.5), kraus_gad(0.5, 0.5)])
    def test_noise_lowers_critical_temperature(self, channel):
        tc = sudden_death_temperature(1.0, channel)
        assert 0 < tc < TC_J1
        assert abs(concurrence_margin(apply_channel(thermal_xxx(1.0, tc).rho, channel))) < 1e-10

    @mark.parametrize("J", [0.0, -1.0])
    def test_ferromagnet(self, J):
        with raises(NoEntanglementAnywhere):
            sudden_death_temperature(J)


class TestOrdering:
    def test_sign_band(self):
        assert ordering_sign(5e-10) == 0
        assert ordering_sign(2e-9) == 1
        assert ordering_sign(-2e-9) == -1

    def test_noiseless_slice_preserved(self):
        report = ordering_report(t_slice())
        assert report.fractions["-"] == 0
        assert report.verdict == "ordering preserved"
        assert report.points == 81

    def test_gad_slice_preserved(self):
        report = ordering_report(t_slice("gad", 0.5, 0.5))
        assert report.fractions["-"] == 0
        assert not report.violated

    def test_bf_slice_single_sign(self):
        # (c, c/4, c/4): the median |c|/4 stays above the discord for every c != 0
        report = ordering_report(t_slice("bf", 0.5))
        assert report.fractions["-"] == 0
        assert report.fractions["+"] > 0.9
        assert not report.crossings

    def test_needs_both_discords(self):
        with raises(ConfigError):
            ordering_report(SweepConfig(measures=("qd", "concurrence")))

    def test_crossings_located(self):
        def record(J, qd, gqd1):
            return SweepRecord(J=J, T=1.0, alpha=J / 4, p=0.0, gamma=0.0, c1=0, c2=0, c3=0, qd=qd, gqd1=gqd1)

        records = [record(0.0, 0.1, 0.3), record(1.0, 0.3, 0.1), record(2.0, 0.3, 0.3), record(3.0, 0.1, 0.2)]
        crossings = _crossings_along(records, "J")
        assert [c.location for c in crossings] == approx([0.5, 7 / 3])
        assert (crossings[1].lower, crossings[1].upper) == (1.0, 3.0)

    def test_crossings_csv(self, tmp_path):
        report = OrderingReport(points=2, fractions={"+": 0.5, "0": 0.0, "-": 0.5}, crossings=(), channel="bf")
        assert report.violated and report.verdict == "ordering violated"
        path = write_crossings_csv(tmp_path / "x.csv", report)
        assert path.read_text() == "axis,fixed,location,lower,upper\n"


class TestFigures:
    def test_registry(self):
        assert sorted(FIGURES) == list(range(1, 9))
        assert [p.filename for p in figure_panels(3)] == ["fig3_vs_T.csv", "fig3_vs_J.csv"]
        assert figure_panels(7)[0].channel_spec().gamma == 0.5

    @mark.parametrize("fig_id", [0, 9, "x"])
    def test_unknown(self, fig_id):
        with raises(ConfigError):
            figure_panels(fig_id)

    def test_comparison_slice(self, tmp_path):
        (path,) = figure_dataset(4, tmp_path)
        rows = read_csv_rows(path)
        assert len(rows) == 81
        assert all(float(r["gqd1"]) >= float(r["qd"]) - 1e-9 for r in rows)

    def test_concurrence_figure(self, tmp_path):
        paths = figure_dataset(3, tmp_path)
        for path in paths:
            for row in read_csv_rows(path):
                if float(row["J"]) < 0:
                    assert float(row["concurrence"]) == 0.0

    def test_noisy_slices(self, tmp_path):
        for fig_id in (6, 8):
            (path,) = figure_dataset(fig_id, tmp_path)
            rows = read_csv_rows(path)
            assert all(float(r["gqd1"]) >= float(r["qd"]) - 1e-9 for r in rows)
            assert {r["p"] for r in rows} == {"0.5"}

    def test_default_surface_noise_free_has_no_nan(self):
        panel = FIGURES[1][0]
        assert panel.rows == 4779
        assert np.all(np.isfinite(panel.j_values))
