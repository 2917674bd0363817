from pathlib import Path
import subprocess
import sys


from cimrl.cli import EXIT_FATAL, EXIT_OK, EXIT_PARTIAL, main
from cimrl.report import read_csv

EXAMPLE = Path(__file__).resolve().parent.parent / "examples_cfg" / "round_pair.toml"

SMALL = """
reference = 2
[sweep]
f_min = 1e3
f_max = 1e9
n_points = 4
{options}
[[conductor]]
shape = "circle"
center = [0.0, 0.0]
radius = 1e-3
sigma = 5.8e7
n_segments = 24

[[conductor]]
shape = "circle"
center = [1e-2, 0.0]
radius = 1e-3
sigma = 5.8e7
n_segments = 24
"""


def _write(tmp_path, options=""):
    p = tmp_path / "cfg.toml"
    p.write_text(SMALL.format(options=options))
    return p


def test_solve(tmp_path, capsys):
    out = tmp_path / "res.csv"
    assert main(["solve", str(_write(tmp_path)), "--out", str(out)]) == EXIT_OK
    freqs, cols = read_csv(out)
    assert len(freqs) == 4
    assert list(cols) == ["freq_hz", "R_1_1", "L_1_1"]
    assert (tmp_path / "res.diagnostics.csv").exists()
    assert "4 frequencies" in capsys.readouterr().out


def test_solve_reference_override_and_plot(tmp_path):
    out = tmp_path / "res.csv"
    code = main(["solve", str(_write(tmp_path)), "--out", str(out), "--reference", "1",
                 "--threads", "2", "--plot"])
    assert code == EXIT_OK
    assert out.with_suffix(".png").exists()
    assert main(["solve", str(_write(tmp_path)), "--out", str(out), "--reference", "3"]) \
        == EXIT_FATAL


def test_partial_exit_code(tmp_path, capsys):
    cfg = _write(tmp_path, "[options]\nc0_high = 1e6\n")
    assert main(["solve", str(cfg), "--out", str(tmp_path / "p.csv")]) == EXIT_PARTIAL
    assert "skipped" in capsys.readouterr().err


def test_fatal_exit_codes(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "missing.toml"), "--out", "x.csv"]) == EXIT_FATAL
    bad = tmp_path / "bad.toml"
    bad.write_text("[sweep\n")
    assert main(["solve", str(bad), "--out", "x.csv"]) == EXIT_FATAL
    assert main(["solve", str(_write(tmp_path)), "--out", "x.csv", "--threads", "0"]) == EXIT_FATAL
    assert "error" in capsys.readouterr().err


def test_check_oracles(capsys):
    assert main(["check", "dc", "--sigma", "5.6e7", "--area", "4e-7"]) == EXIT_OK
    assert "4.464286e-02" in capsys.readouterr().out
    assert main(["check", "dc", "--sigma", "5.8e7", "--radius", "2e-3"]) == EXIT_OK
    assert "1.372" in capsys.readouterr().out
    assert main(["check", "roundwire", "--radius", "1e-3", "--sigma", "5.8e7",
                 "--freq", "1e6"]) == EXIT_OK
    assert "Z_int" in capsys.readouterr().out
    assert main(["check", "pairL", "--radius", "1e-3", "--spacing", "0.05"]) == EXIT_OK
    assert "1.5648" in capsys.readouterr().out
    assert main(["check", "pairL", "--radius", "1e-3", "--spacing", "3e-3"]) == EXIT_FATAL
    assert main(["check", "dc", "--sigma", "5.8e7"]) == EXIT_FATAL


def test_shapes(capsys):
    assert main(["shapes"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in ("circle", "polygon", "rect", "arc_strip"):
        assert name in out


def test_console_script(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "cimrl.cli", "shapes"], capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0 and "arc_strip" in proc.stdout


def test_example_config_runs(tmp_path):
    out = tmp_path / "pair.csv"
    assert main(["solve", str(EXAMPLE), "--out", str(out)]) == EXIT_OK
    freqs, cols = read_csv(out)
    assert len(freqs) == 31
    r = cols["R_1_1"]
    assert all(b >= a for a, b in zip(r, r[1:]))
