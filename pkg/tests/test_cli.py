"""
End-to-end tests of the cavity-entanglement command line.
"""

import pytest
import yaml

from cavity_entanglement import numerics
from cavity_entanglement.cli import main
from cavity_entanglement.config import EngineConfig, NumericsConfig
from cavity_entanglement.errors import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION

QUBIT = "1/sqrt(10),3/sqrt(10)"


def run(capsys, *argv):
    code = main(["--no-color", *argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestSweepCommand:
    """sweep subcommand."""

    def test_csv_output(self, capsys):
        """Header then rows; the first row is t=0 with cc = 0.6 and rr = 0."""
        code, out, _ = run(capsys, "sweep", "--alphas", QUBIT, "--steps", "5", "--t-max", "1")
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "t,cc,rr"
        assert lines[1] == "0,0.6,0"
        assert len(lines) == 6
        assert lines[-1].startswith("1,")

    def test_vacuum_is_zero(self, capsys):
        """The vacuum gives zeros everywhere."""
        code, out, _ = run(capsys, "sweep", "--alphas", "1,0", "--steps", "3")
        assert code == EXIT_OK
        assert [line.split(",")[1:] for line in out.splitlines()[1:]] == [["0", "0"]] * 3

    def test_deterministic(self, capsys):
        """Repeated runs print identical bytes."""
        argv = ("sweep", "--alphas", QUBIT, "--steps", "21", "--partitions", "cc,c1r2,cn")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second
        assert first.splitlines()[0] == "t,cc,c1r2,cn"

    def test_qutrit_lboe(self, capsys):
        """Qutrit cavities start at LBOE 64/38."""
        alphas = "1/sqrt(38),1/sqrt(38),6/sqrt(38)"
        code, out, _ = run(capsys, "sweep", "--alphas", alphas, "--steps", "2", "--partitions", "cc")
        assert code == EXIT_OK
        assert out.splitlines()[1] == "0,1.68421052632"

    def test_not_normalized(self, capsys):
        """Exit 2 with the offending norm on stderr."""
        code, out, err = run(capsys, "sweep", "--alphas", "0.5,0.5")
        assert code == EXIT_VALIDATION
        assert out == ""
        assert "norm = 0.707106781187" in err
        assert "NORMALIZATION_ERROR" in err

    def test_normalize_flag(self, capsys):
        """--normalize rescales and reports the factor."""
        code, out, err = run(capsys, "sweep", "--alphas", "1,2", "--normalize", "--steps", "2")
        assert code == EXIT_OK
        assert "normalized amplitudes by factor 0.4472135955" in err
        assert out.splitlines()[1].startswith("0,0.8,")

    def test_multipartite_on_qutrits(self, capsys):
        """cn with three amplitudes exits 2."""
        alphas = "1/sqrt(38),1/sqrt(38),6/sqrt(38)"
        code, _, err = run(capsys, "sweep", "--alphas", alphas, "--partitions", "cn")
        assert code == EXIT_VALIDATION
        assert "DIMENSION_ERROR" in err

    def test_bad_expression(self, capsys):
        """Unparseable amplitudes exit 2."""
        code, _, err = run(capsys, "sweep", "--alphas", "1/foo(2),1")
        assert code == EXIT_VALIDATION
        assert "unsupported amplitude expression" in err

    def test_file_and_gnuplot(self, capsys, tmp_path):
        """--output writes the CSV and --gnuplot a script that plots it."""
        csv_path = tmp_path / "series.csv"
        script = tmp_path / "plot.gp"
        code, out, _ = run(capsys, "sweep", "--alphas", QUBIT, "--steps", "4",
                           "--output", str(csv_path), "--gnuplot", str(script))
        assert code == EXIT_OK
        assert out == ""
        assert csv_path.read_text().splitlines()[0] == "t,cc,rr"
        text = script.read_text()
        assert f"'{csv_path}' using 1:2" in text
        assert f"'{csv_path}' using 1:3" in text
        assert "set ylabel 'concurrence'" in text

    def test_unwritable_gnuplot_path(self, capsys, tmp_path):
        """A gnuplot path in a missing directory exits 2 instead of raising."""
        script = tmp_path / "missing" / "plot.gp"
        code, _, err = run(capsys, "sweep", "--alphas", QUBIT, "--steps", "4",
                           "--output", str(tmp_path / "series.csv"), "--gnuplot", str(script))
        assert code == EXIT_VALIDATION
        assert "cannot open" in err

    def test_gnuplot_needs_output(self, capsys):
        """--gnuplot without --output is a configuration error."""
        code, _, err = run(capsys, "sweep", "--alphas", QUBIT, "--gnuplot", "plot.gp")
        assert code == EXIT_VALIDATION
        assert "CONFIGURATION_ERROR" in err


class TestEventsCommand:
    """events subcommand."""

    def test_qubit_events(self, capsys):
        """Table rows for ESD and ESB and the dead window."""
        code, out, _ = run(capsys, "events", "--alphas", QUBIT, "--steps", "400")
        assert code == EXIT_OK
        assert "ESD" in out and "ESB" in out
        assert "c1c2" in out and "r1r2" in out
        assert "both dead: [0.40546" in out

    def test_no_sudden_death(self, capsys):
        """alpha > beta prints NoESD."""
        code, out, _ = run(capsys, "events", "--alphas", "2/sqrt(5),1/sqrt(5)", "--steps", "200")
        assert code == EXIT_OK
        assert "NoESD" in out
        assert "both dead" not in out

    def test_simultaneous(self, capsys):
        """beta = 2 alpha is reported as simultaneous."""
        code, out, _ = run(capsys, "events", "--alphas", "1/sqrt(5),2/sqrt(5)", "--steps", "300")
        assert code == EXIT_OK
        assert "simultaneous: ESD and ESB coincide" in out

    def test_simultaneous_without_closed_form(self, capsys):
        """d = 3 with alpha_3 = 8 alpha_0 reports the measured gap, not a coincidence."""
        alphas = "1/sqrt(67),1/sqrt(67),1/sqrt(67),8/sqrt(67)"
        code, out, _ = run(capsys, "events", "--alphas", alphas, "--steps", "60", "--t-max", "1.5")
        assert code == EXIT_OK
        assert "no closed form for this cutoff" in out
        assert "ratio rule holds, measured ESD - ESB = 0.0161" in out
        assert "coincide" not in out
        assert "NoESD" not in out

    def test_early_sudden_death(self, capsys):
        """A death inside the first grid step is still reported."""
        code, out, _ = run(capsys, "events", "--alphas", "0.001,sqrt(0.999999)", "--steps", "300")
        assert code == EXIT_OK
        assert "ESD" in out and "c1c2" in out
        assert "0.0010005" in out
        assert "no crossings found" not in out

    def test_csv_export(self, capsys, tmp_path):
        """--csv writes one row per event."""
        path = tmp_path / "events.csv"
        code, _, _ = run(capsys, "events", "--alphas", QUBIT, "--steps", "300", "--csv", str(path))
        lines = path.read_text().splitlines()
        assert code == EXIT_OK
        assert lines[0] == "event,partition,measure,t_numeric,t_analytic,difference"
        assert [line.split(",")[0] for line in lines[1:]] == ["ESD", "ESB"]


class TestOracleCommand:
    """oracle subcommand."""

    def test_small_run(self, capsys):
        """Rows of t, xi_numeric, xi_markov, abs_dev and a closing max_dev line."""
        code, out, _ = run(capsys, "oracle", "--n-modes", "60", "--bandwidth", "10",
                           "--t-max", "0.2")
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "t,xi_numeric,xi_markov,abs_dev"
        assert lines[1] == "0,1,1,0"
        assert lines[-1].startswith("max_dev=")
        assert len(lines) == 203

    def test_past_revival(self, capsys):
        """t_max beyond 2 pi N / W exits 2."""
        code, _, err = run(capsys, "oracle", "--n-modes", "50", "--t-max", "8")
        assert code == EXIT_VALIDATION
        assert "revival" in err


class TestConfiguration:
    """init-config and --config."""

    def test_init_config(self, capsys, tmp_path):
        """The written file is commented and loads back to the defaults."""
        path = tmp_path / "engine.yaml"
        code, out, _ = run(capsys, "init-config", str(path))
        assert code == EXIT_OK
        assert str(path) in out
        assert path.read_text().startswith("# cavity-entanglement configuration file")
        assert EngineConfig.from_yaml(str(path)) == EngineConfig()

    def test_file_defaults_apply(self, capsys, tmp_path):
        """Sweep defaults from the file are used when flags are absent."""
        path = tmp_path / "engine.yaml"
        path.write_text(yaml.safe_dump({"sweep": {"steps": 3, "partitions": ["c1r1"]},
                                        "output": {"significant_digits": 4}}))
        code, out, _ = run(capsys, "--config", str(path), "sweep", "--alphas", QUBIT)
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "t,c1r1"
        assert len(lines) == 4
        assert lines[2].split(",")[0] == "3"

    def test_flags_override_file(self, capsys, tmp_path):
        """--steps beats the file value."""
        path = tmp_path / "engine.yaml"
        path.write_text(yaml.safe_dump({"sweep": {"steps": 3}}))
        _, out, _ = run(capsys, "--config", str(path), "sweep", "--alphas", QUBIT, "--steps", "6")
        assert len(out.splitlines()) == 7

    def test_malformed_config(self, capsys, tmp_path):
        """Unknown keys exit 2."""
        path = tmp_path / "engine.yaml"
        path.write_text("sweep:\n  bogus: 1\n")
        code, _, err = run(capsys, "--config", str(path), "sweep", "--alphas", QUBIT)
        assert code == EXIT_VALIDATION
        assert "bogus" in err

    def test_version(self, capsys):
        """--version prints the package version and exits."""
        with pytest.raises(SystemExit):
            main(["--version"])
        assert "1.0.0" in capsys.readouterr().out


class TestNumericalFailure:
    """Exit code for solver failures."""

    @pytest.fixture(autouse=True)
    def restore_numerics(self):
        yield
        numerics.configure(NumericsConfig())

    def test_non_convergence_exits_3(self, capsys, tmp_path):
        """A zero sweep budget on a non-diagonal partial transpose exits 3."""
        path = tmp_path / "engine.yaml"
        path.write_text(yaml.safe_dump({"numerics": {"max_sweeps": 0}}))
        code, out, err = run(capsys, "--config", str(path), "sweep",
                             "--alphas", "1/sqrt(38),1/sqrt(38),6/sqrt(38)",
                             "--steps", "3", "--partitions", "cc")
        assert code == EXIT_NUMERICAL
        assert out == ""
        assert "NUMERICAL_ERROR" in err
        assert "did not converge" in err
