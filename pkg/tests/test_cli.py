import json
import subprocess
import sys

import pytest

from nmeascene.cli import run
from nmeascene.synth import GeneratorConfig, generate_log, load_profile

from conftest import GGA_FIX, GSA_FIX, GSV_3SATS, make_sentence


def nmeascene(*args, stdin=None):
    return subprocess.run([sys.executable, "-m", "nmeascene", *args], input=stdin,
                          capture_output=True, text=True)


@pytest.fixture
def a1_log(tmp_path):
    path = tmp_path / "a1.nmea"
    path.write_text(generate_log(GeneratorConfig(load_profile("local_a1"), 60, 7)), newline="")
    return path


class TestPipeline:
    def test_shell_pipeline_matches_files(self, a1_log, tmp_path):
        log = nmeascene("synth", "--profile", "local_a1", "--epochs", "60", "--seed", "7")
        assert log.returncode == 0
        assert log.stdout.replace("\r\n", "\n") == a1_log.read_bytes().decode().replace("\r\n", "\n")
        metrics = nmeascene("metrics", stdin=log.stdout)
        scen = nmeascene("classify", "--mode", "sum", stdin=metrics.stdout)
        rows = scen.stdout.splitlines()
        assert rows[0] == "epoch,scenario" and len(rows) == 61
        labels = [r.split(",")[1] for r in rows[1:]]
        assert labels.count("open_outdoor") >= 54

        m_path, s_path = tmp_path / "m.csv", tmp_path / "s.csv"
        assert run(["metrics", "-i", str(a1_log), "-o", str(m_path)]) == 0
        assert run(["classify", "--mode", "sum", "-i", str(m_path), "-o", str(s_path)]) == 0
        assert m_path.read_text() == metrics.stdout
        assert s_path.read_text() == scen.stdout

    def test_validate_perfect(self, tmp_path, capsys):
        preds = tmp_path / "p.csv"
        preds.write_text("epoch,scenario\n" + "".join(f"{i},indoor\n" for i in range(10)))
        labels = tmp_path / "l.csv"
        labels.write_text("start_epoch,end_epoch,label\n0,10,indoor\n")
        out_json = tmp_path / "r.json"
        assert run(["validate", "-i", str(preds), "--labels", str(labels), "--json", str(out_json)]) == 0
        assert "10 (100.00%)" in capsys.readouterr().out
        assert json.loads(out_json.read_text())["accuracy_pct"] == 100.0

    def test_report_mirrors_site_layout(self, tmp_path, capsys):
        log = tmp_path / "d2.nmea"
        log.write_text(generate_log(GeneratorConfig(load_profile("local_d2"), 3600, 7)), newline="")
        metrics = tmp_path / "d2.csv"
        assert run(["metrics", "-i", str(log), "-o", str(metrics)]) == 0
        assert run(["report", "-i", str(metrics)]) == 0
        out = capsys.readouterr().out
        epochs_line = [l for l in out.splitlines() if l.startswith("Epochs")][0]
        assert epochs_line.split()[1:] == ["433", "(3167)", "of", "3600"]
        assert out.splitlines()[0].startswith("Mean C/N0")
        assert run(["report", "-i", str(metrics), "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["epochs_with"] + data["epochs_without"] == 3600

    def test_classify_window_and_rules(self, a1_log, tmp_path, capsys):
        m = tmp_path / "m.csv"
        run(["metrics", "-i", str(a1_log), "-o", str(m)])
        rules = tmp_path / "rules.cfg"
        rules.write_text("mode = combined\nsum_open = 10000\n")
        assert run(["classify", "-i", str(m), "--rules", str(rules), "--window", "3"]) == 0
        labels = {l.split(",")[1] for l in capsys.readouterr().out.splitlines()[1:]}
        assert "open_outdoor" not in labels


class TestParseCommand:
    def test_diagnostics(self, tmp_path, capsys):
        f = tmp_path / "x.nmea"
        f.write_text("\n".join([
            make_sentence(GGA_FIX), make_sentence(GSA_FIX), make_sentence(GSV_3SATS),
            "$GPGSV,1,1,00*00", make_sentence("GPGSV,1,1,01,07,95,090,41"), make_sentence("GPRMC,,V,,,,,,,,,,N"),
        ]) + "\n")
        assert run(["parse", "-i", str(f)]) == 0
        rows = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
        assert [r.get("type") for r in rows] == ["GGA", "GSA", "GSV", None, "GSV", "Unhandled"]
        assert rows[3]["error"] == "ChecksumMismatch"
        assert rows[4]["diagnostics"][0].startswith("FieldRange")

    def test_lenient(self, tmp_path, capsys):
        f = tmp_path / "x.nmea"
        f.write_text("$GPGSV,1,1,00\n")
        run(["parse", "-i", str(f)])
        assert "ChecksumMismatch" in capsys.readouterr().out
        run(["parse", "--lenient", "-i", str(f)])
        assert '"type": "GSV"' in capsys.readouterr().out


class TestExitCodes:
    def test_missing_input(self, tmp_path, capsys):
        missing = tmp_path / "nope.csv"
        assert run(["classify", "-i", str(missing)]) == 1
        assert str(missing) in capsys.readouterr().err

    def test_usage(self, capsys):
        assert run(["classify", "--window", "2"]) == 2
        assert run(["frobnicate"]) == 2
        assert run([]) == 2
        assert "--mode" in nmeascene("classify", "--help").stdout

    def test_bad_metrics(self, tmp_path):
        f = tmp_path / "m.csv"
        f.write_text("a,b\n1,2\n")
        assert run(["report", "-i", str(f)]) == 1

    def test_bad_profile(self):
        assert run(["synth", "--profile", "local_q1"]) == 1

    def test_missing_output_dir(self, tmp_path):
        assert run(["synth", "--profile", "local_a1", "-o", str(tmp_path / "no" / "x.nmea")]) == 1

    def test_uncovered_prediction(self, tmp_path):
        preds = tmp_path / "p.csv"
        preds.write_text("epoch,scenario\n50,indoor\n")
        labels = tmp_path / "l.csv"
        labels.write_text("0,10,indoor\n")
        assert run(["validate", "-i", str(preds), "--labels", str(labels)]) == 1
