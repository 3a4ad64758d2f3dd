import csv
import io
import json

import pytest

from qeuler.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("0..3") == [0, 1, 2, 3]
    assert parse_range("1,4") == [1, 4]
    assert parse_range("5") == [5]


def test_euler_table(capsys):
    code, out, _ = run(capsys, "euler", "--n", "0..3", "--q", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    values = {r["n"]: r["value"] for r in doc["results"]}
    assert values[0] == "1/1"
    assert values[1] == "-2/5"
    assert doc["verdict"] == "PASS"
    assert doc["schema_version"] == 1


def test_euler_polynomial_rows(capsys):
    code, out, _ = run(capsys, "euler", "--n", "1", "--q", "2", "--x", "1", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {"n": "1", "W": "1", "q": "2/1", "x": "1/1", "value": "1/5"} in rows


def test_classical(capsys):
    code, out, _ = run(capsys, "classical", "--n", "0..3", "--x", "0")
    assert code == 0
    assert "1/4" in out and "-1/2" in out


def test_symmetry_pass(capsys):
    code, out, _ = run(
        capsys, "symmetry", "--weights", "1,3", "--m-max", "4", "--x", "0",
        "--q-count", "8", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "PASS"
    cell = doc["results"][0]
    assert cell["config"]["weights"] == [1, 3]
    assert cell["verdicts"] == {
        "routes_agree": "PASS", "theorem2_invariance": "PASS", "theorem3_invariance": "PASS"
    }


@pytest.mark.parametrize(
    "argv",
    [
        ["symmetry", "--weights", "2,4"],
        ["symmetry", "--weights", "1,3", "--x", "-1"],
        ["euler", "--q", "1"],
        ["euler", "--n", "a..b"],
        ["padic", "--primes", "4"],
        ["padic", "--primes", "2"],
        ["padic", "--n-max", "9", "--primes", "7"],
        ["shift", "--n-shift", "0"],
        ["symmetry", "--weights", "3,5,7", "--m-max", "6", "--budget", "10"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0


def test_padic_profiles(capsys):
    code, out, _ = run(capsys, "padic", "--primes", "3,5", "--m", "0..2", "--a", "0,1",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["results"]) == 2 * 3 * 2
    assert all(r["nondecreasing"] and r["floor_ok"] for r in doc["results"])


def test_shift(capsys):
    code, out, _ = run(capsys, "shift", "--m", "0..3", "--n-shift", "1..4", "--q-count", "2")
    assert code == 0
    assert out.rstrip().endswith("verdict: PASS")


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--weights", "1,3", "--m-max", "1", "--x", "0,1",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [c["config"]["mode"] for c in doc["results"]] == ["certified", "certified"]


def test_out_path_and_determinism(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"]
    base = ["symmetry", "--weights", "1,3", "--weights", "3,5", "--m-max", "2",
            "--x", "0,1", "--q-count", "3", "--seed", "5", "--format", "json"]
    assert main(base + ["--out", str(paths[0])]) == 0
    assert main(base + ["--out", str(paths[1])]) == 0
    assert main(base + ["--out", str(paths[2]), "--workers", "2"]) == 0
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]
    assert capsys.readouterr().out == ""


def test_failure_exit_code(monkeypatch, capsys):
    import qeuler.cli as cli

    def fake_cell(args):
        from qeuler.symmetry import WeightVector, verify_invariance

        def broken(m, l, prefix, q_eff):
            return -1

        return verify_invariance(WeightVector(args[0]), args[1], args[2], args[3],
                                 t_hat_fn=broken).to_json()

    monkeypatch.setattr(cli, "_symmetry_cell", fake_cell)
    code, out, _ = run(capsys, "symmetry", "--weights", "1,3", "--m-max", "1",
                       "--q-count", "2", "--format", "json")
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] == "FAIL"
    wit = doc["witnesses"][0]
    assert wit["weights"] == [1, 3] and "sigma_a" in wit and "value_b" in wit


def test_workers_env(monkeypatch, capsys):
    monkeypatch.setenv("QEULER_WORKERS", "2")
    code, _, _ = run(capsys, "padic", "--primes", "3", "--m", "1", "--a", "0,1")
    assert code == 0
