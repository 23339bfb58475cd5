from pytest import approx, fixture, mark, raises

from app import parse_arguments
from channels import kraus_gad
from config import DEFAULTS, apply_overrides, build_sweep_config, load_config, save_config
from errors import ConfigError
from files import read_csv_rows
from main import main
from sweep import sudden_death_temperature


@fixture
def ini(tmp_path):
    """A config file pinning a tiny grid so CLI runs stay fast"""
    path = tmp_path / "config.ini"
    path.write_text(
        "[SWEEP]\n"
        "J_MIN = -1\n"
        "J_MAX = 1\n"
        "J_STEPS = 3\n"
        "T_MIN = 0.5\n"
        "T_MAX = 1.0\n"
        "T_STEPS = 2\n"
        "\n"
        "[OPTIMIZER]\n"
        "RESTARTS = 2\n"
        "ITERATIONS = 40\n",
        encoding="utf-8",
    )
    return str(path)


class TestConfig:
    def test_missing_default_file_gives_defaults(self, tmp_path, monkeypatch):
        monkeypatch.setattr("config.DEFAULT_CONFIG_FILE", str(tmp_path / "absent.ini"))
        assert load_config() == DEFAULTS

    def test_missing_explicit_file(self, tmp_path):
        with raises(ConfigError):
            load_config(str(tmp_path / "absent.ini"))

    def test_file_values_are_typed(self, ini):
        settings = load_config(ini)
        assert settings['j_steps'] == 3 and isinstance(settings['j_steps'], int)
        assert settings['t_max'] == 1.0
        assert settings['restarts'] == 2
        assert settings['channel'] == "none"

    def test_bad_value(self, tmp_path):
        path = tmp_path / "bad.ini"
        path.write_text("[SWEEP]\nJ_STEPS = many\n", encoding="utf-8")
        with raises(ConfigError):
            load_config(str(path))

    def test_flags_override_file(self, ini):
        args = parse_arguments(["sweep", "--config", ini, "--j-steps", "5", "--channel", "bf", "--p", "0.2"])
        settings = apply_overrides(load_config(ini), args)
        cfg = build_sweep_config(settings)
        assert cfg.j_axis.steps == 5
        assert cfg.t_axis.steps == 2
        assert cfg.channel_spec().p == 0.2

    def test_roundtrip(self, tmp_path):
        path = str(tmp_path / "saved.ini")
        settings = dict(DEFAULTS, j_steps=7, channel="gad", p=0.5, gamma=0.25)
        save_config(settings, path)
        assert load_config(path) == settings

    def test_gad_mixing_defaults_to_half(self):
        cfg = build_sweep_config(dict(DEFAULTS, channel="gad", gamma=0.5))
        assert cfg.p == 0.5
        assert build_sweep_config(dict(DEFAULTS, channel="bf")).p == 0.0

    def test_gad_rejects_other_mixing(self):
        with raises(ConfigError):
            build_sweep_config(dict(DEFAULTS, channel="gad", p=0.3, gamma=0.5))

    def test_unset_mixing_is_not_saved(self, tmp_path):
        path = tmp_path / "saved.ini"
        save_config(DEFAULTS, str(path))
        lines = path.read_text(encoding="utf-8").splitlines()
        assert not any(line.startswith("p =") for line in lines)
        assert load_config(str(path))["p"] is None

    def test_measure_aliases(self):
        cfg = build_sweep_config(dict(DEFAULTS, measures="conc, gqd"))
        assert cfg.measures == ("gqd1", "concurrence")

    def test_unknown_measure(self):
        with raises(ConfigError):
            build_sweep_config(dict(DEFAULTS, measures="qd,negativity"))


class TestArguments:
    def test_unset_flags_are_none(self):
        args = parse_arguments(["sweep"])
        assert args.j_min is None and args.channel is None and args.measures is None
        assert not args.oracle

    def test_tc_couplings(self):
        assert parse_arguments(["tc", "--j", "1", "2.5"]).j == [1.0, 2.5]

    def test_channel_choices(self):
        with raises(SystemExit):
            parse_arguments(["sweep", "--channel", "phase"])


class TestMain:
    def test_sweep_writes_csv(self, ini, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--config", ini, "--measures", "qd,conc", "--out", str(out)]) == 0
        rows = read_csv_rows(out)
        assert len(rows) == 6
        assert "gqd1" not in rows[0] and "concurrence" in rows[0]

    def test_sweep_oracle_columns(self, ini, tmp_path):
        out = tmp_path / "oracle.csv"
        assert main(["sweep", "--config", ini, "--channel", "bf", "--p", "0.5", "--oracle", "--out", str(out)]) == 0
        for row in read_csv_rows(out):
            assert abs(float(row["qd"]) - float(row["qd_numeric"])) < 1e-6

    def test_invalid_temperature_exits_2(self, ini, tmp_path):
        out = tmp_path / "never.csv"
        assert main(["sweep", "--config", ini, "--t-min", "0", "--out", str(out)]) == 2
        assert not out.exists()

    def test_unwritable_output_exits_1(self, ini, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("", encoding="utf-8")
        assert main(["sweep", "--config", ini, "--out", str(blocker / "sub" / "x.csv")]) == 1

    def test_tc(self, ini):
        assert main(["tc", "--config", ini, "--j", "1", "2"]) == 0

    def test_tc_ferromagnet(self, ini):
        assert main(["tc", "--config", ini, "--j", "-1"]) == 2

    def test_tc_gad_uses_half_mixing(self, ini, monkeypatch):
        rows = []
        monkeypatch.setattr("commands.show_critical_temperatures", rows.extend)
        assert main(["tc", "--config", ini, "--channel", "gad", "--gamma", "0.5", "--j", "1"]) == 0
        ((J, label, tc, reference),) = rows
        assert label == "GAD(gamma=0.5, p=0.5)"
        assert tc == approx(sudden_death_temperature(1.0, kraus_gad(0.5, 0.5)), abs=1e-12)
        assert reference is None

    def test_tc_gad_other_mixing_exits_2(self, ini):
        assert main(["tc", "--config", ini, "--channel", "gad", "--p", "0.3", "--gamma", "0.5", "--j", "1"]) == 2

    def test_sweep_gad_without_p(self, ini, tmp_path):
        out = tmp_path / "gad.csv"
        assert main(["sweep", "--config", ini, "--channel", "gad", "--gamma", "0.5", "--out", str(out)]) == 0
        assert {row["p"] for row in read_csv_rows(out)} == {"0.5"}

    def test_unknown_figure(self, ini):
        assert main(["figure", "9", "--config", ini]) == 2

    def test_figure(self, ini, tmp_path):
        assert main(["figure", "8", "--config", ini, "--out", str(tmp_path)]) == 0
        assert len(read_csv_rows(tmp_path / "fig8_slice.csv")) == 81

    def test_ordering_with_crossings_file(self, ini, tmp_path):
        out = tmp_path / "crossings.csv"
        assert main(["ordering", "--config", ini, "--t-min", "1", "--t-steps", "1", "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8").startswith("axis,fixed,location,lower,upper\n")

    def test_config_write(self, ini):
        assert main(["config", "--config", ini, "--j-steps", "9", "--write"]) == 0
        assert load_config(ini)['j_steps'] == 9

    def test_about(self):
        assert main(["about"]) == 0

    @mark.slow
    def test_verify_quick(self, ini):
        assert main(["verify", "--quick", "--config", ini]) == 0
