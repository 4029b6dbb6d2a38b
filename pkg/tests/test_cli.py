import json
import shutil
import subprocess

import pytest

from qresurge.cli import CliError, decode_scalar, encode_scalar, load_sequence, main
from qresurge.precision import PrecisionContext


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def read(path):
    return json.loads(path.read_text())


def test_gen_figure_eight_np(workdir):
    assert main(["gen", "4_1", "np", "--nmax", "3", "--out", "f.json"]) == 0
    s = load_sequence(workdir / "f.json")
    assert all(abs(complex(c) - w) < 1e-60 for c, w in zip(s.coeffs, [1, 1, 5, 13]))
    assert s.meta["object"] == "4_1"


def test_gen_verlinde_and_s3(workdir):
    assert main(["gen", "verlinde:2", "np", "--nmax", "2", "--out", "v.json"]) == 0
    assert read(workdir / "v.json")["coeffs"] == ["1/1", "4/1", "10/1"]
    assert main(["gen", "s3", "np", "--nmax", "2", "--out", "s.json", "--bits", "64"]) == 0
    s = load_sequence(workdir / "s.json")
    assert abs(complex(s[1]) - 2 ** -0.5) < 1e-15 and abs(complex(s[2]) - 0.5) < 1e-15


def test_sequence_round_trip(workdir):
    assert main(["gen", "3_1", "p", "--nmax", "6", "--out", "p.json"]) == 0
    s = load_sequence(workdir / "p.json")
    assert s.exact and s[0] == -1
    ctx = PrecisionContext(128)
    z = ctx.mp.mpc("0.1", "-2.5")
    back = decode_scalar(encode_scalar(z, 40), ctx, "x")
    assert abs(back - z) < 1e-35


def test_replay_from_output_is_byte_identical(workdir):
    assert main(["gen", "4_1", "np", "--nmax", "40", "--bits", "128", "--out", "a.json"]) == 0
    first = (workdir / "a.json").read_bytes()
    assert main(["gen", "--config", "a.json"]) == 0
    assert (workdir / "a.json").read_bytes() == first


def test_fit_replay_keeps_its_input(workdir):
    main(["gen", "4_1", "np", "--nmax", "200", "--out", "f.json"])
    assert main(["fit", "f.json", "--out", "fit.json"]) == 0
    first = (workdir / "fit.json").read_bytes()
    assert main(["fit", "--config", "fit.json"]) == 0
    assert (workdir / "fit.json").read_bytes() == first
    report = read(workdir / "fit.json")
    assert abs(report["fits"][0]["abs_lambda"] - 0.7239261118795) < 1e-6


def test_key_value_config_and_precedence(workdir):
    (workdir / "run.cfg").write_text("# generation\nnmax = 2\nout = c.json\n")
    assert main(["gen", "4_1", "np", "--config", "run.cfg"]) == 0
    assert len(read(workdir / "c.json")["coeffs"]) == 3
    assert main(["gen", "4_1", "np", "--config", "run.cfg", "--nmax", "4"]) == 0
    assert len(read(workdir / "c.json")["coeffs"]) == 5
    (workdir / "bad.cfg").write_text("nmax 2\n")
    assert main(["gen", "4_1", "np", "--config", "bad.cfg"]) == 2


def test_scan_writes_report_and_csv(workdir):
    main(["gen", "sp:1,0,1^1", "np", "--nmax", "300", "--bits", "64", "--out", "t.json"])
    assert main(["scan", "t.json", "--grid", "1024", "--out", "scan.json"]) == 0
    assert read(workdir / "scan.json")["peaks"]
    lines = (workdir / "scan.csv").read_text().splitlines()
    assert lines[0] == "t,modulus" and len(lines) == 1025


def test_candidates_and_gevrey(workdir):
    assert main(["candidates", "3_1", "--out", "c.json"]) == 0
    assert read(workdir / "c.json")["meta"]["heuristic"] is True
    main(["gen", "3_1", "p", "--nmax", "60", "--out", "p.json"])
    assert main(["gevrey", "p.json", "--out", "g.json"]) == 0
    assert "r" in read(workdir / "g.json")


def test_error_exits(workdir, capsys):
    assert main(["gen", "7_3", "np"]) == 2
    assert "unknown object" in capsys.readouterr().err
    assert main(["fit", "missing.json"]) == 2
    assert main(["gen", "4_1", "np", "--bits", "10"]) == 2
    (workdir / "broken.json").write_text('{"meta": {},\n "coeffs": [1/2]}')
    assert main(["fit", "broken.json"]) == 2
    assert "broken.json:2" in capsys.readouterr().err
    main(["gen", "s3", "np", "--nmax", "5", "--out", "f.json"])
    assert main(["gevrey", "f.json"]) == 2


def test_decode_rejects_garbage():
    ctx = PrecisionContext(64)
    for bad in ("1/x", ["1.0"], 3.5):
        with pytest.raises(CliError):
            decode_scalar(bad, ctx, "here")


def test_check_subset_exit_code(workdir):
    assert main(["check", "--only", "1,2"]) == 0


def test_console_script_is_installed():
    exe = shutil.which("qresurge")
    if exe is None:
        pytest.skip("console script not on PATH")
    out = subprocess.run([exe, "--help"], capture_output=True, text=True, check=True)
    assert "scan" in out.stdout
