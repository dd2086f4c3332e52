import io
import json
import shutil
import subprocess

import pytest

from arrtool.cli import SUBCOMMANDS, run

from conftest import FIXTURES

BRAID = str(FIXTURES / "braid.json")
BRAID_A = str(FIXTURES / "braid_a.json")
MASSEY = ["massey", "-i", BRAID, "--a", BRAID_A, "--window", "4", "--classes", "(w1-w4)*q2, (w2-w3)*q1, (w2-w3)*q1"]


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_betti():
    assert call(["betti", "-i", BRAID]) == (0, "1 5 6\n", "")


def test_flats_empty():
    code, out, _ = call(["flats", "-i", str(FIXTURES / "empty.json")])
    assert code == 0
    assert out.splitlines()[0] == "rank 0 {} mu=1"
    data = json.loads(call(["flats", "-i", str(FIXTURES / "empty.json"), "--format", "json"])[1])
    assert len(data["flats"]) == 1 and data["flats"][0]["rank"] == 0


def test_massey():
    code, out, _ = call(MASSEY)
    assert code == 0
    assert "verdict NONZERO" in out
    assert "representative 2/r*w2^w3 * q1^2 q2^1" in out
    data = json.loads(call(MASSEY + ["--format", "json"])[1])
    assert data["verdict"] == "NONZERO" and data["indeterminacy_dim"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["flats", "-i", BRAID, "--projective"],
        ["dense", "-i", BRAID],
        ["esv", "-i", BRAID, "--weights", "1,1,1,1,1"],
        ["os-basis", "-i", BRAID, "--degree", "2"],
        ["aomoto", "-i", BRAID, "--weights", "0 r r 0 -2*r"],
        ["profile", "-i", BRAID, "--a", BRAID_A, "--window", "1"],
        ["laurent-h", "-i", BRAID, "--a", BRAID_A, "--window", "1", "--degree", "1"],
        ["holonomy", "-i", BRAID],
        ["bar-pages", "-i", BRAID, "--smax", "2"],
        ["itint", "-i", BRAID, "--a", BRAID_A, "--r", "1"],
    ],
)
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_deterministic(argv, fmt):
    first = call(argv + ["--format", fmt])
    assert first[0] == 0, first[2]
    assert call(argv + ["--format", fmt]) == first
    if fmt == "json":
        json.loads(first[1])


def test_specific_outputs():
    assert call(["os-basis", "-i", BRAID, "--degree", "2"])[1] == "A^2 (6): w1^w3 w1^w4 w1^w5 w2^w3 w2^w4 w2^w5\n"
    assert call(["holonomy", "-i", BRAID])[1].splitlines()[-1] == "dims 5 4 10"
    out = call(["profile", "-i", BRAID, "--a", BRAID_A, "--window", "1"])[1]
    assert "(0,0) h1=5 h2=6" in out and "(1,1) h1=0 h2=2" in out
    out = call(["itint", "-i", BRAID, "--loop", str(FIXTURES / "braid_meridian5.json"), "--a", str(FIXTURES / "braid_b.json")])[1]
    assert "monodromy 0.1353352832+0.0000000000i 7.3890560989+0.0000000000i" in out


def test_exit_codes(tmp_path):
    assert call(["nosuch"])[0] == 2
    assert call(["betti"])[0] == 2
    assert call(["betti", "-i", BRAID, "--bogus"])[0] == 2
    assert call(["esv", "-i", BRAID])[0] == 2
    assert call(["massey", "-i", BRAID, "--a", BRAID_A, "--classes", "w1"])[0] == 2
    assert call(["betti", "-i", str(tmp_path / "missing.json")])[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"ambient_dim": 2, "forms": [{"coeffs": ["0", "0"], "const": "1"}]}')
    assert call(["betti", "-i", str(bad)])[0] == 1
    assert call(["esv", "-i", BRAID, "--weights", "1,2"])[0] == 1
    assert call(["itint", "-i", BRAID, "--a", BRAID_A])[0] == 1
    # window too small for the Massey target
    assert call(MASSEY[:-4] + ["--window", "1", "--classes", MASSEY[-1]])[0] == 1


def test_every_subcommand_has_help():
    for name in SUBCOMMANDS:
        assert call([name, "--help"])[0] == 0


@pytest.mark.skipif(shutil.which("arrtool") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["arrtool", "betti", "-i", BRAID], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "1 5 6\n"
