import csv
import io
import json
import subprocess
import sys

import pytest

from thetagroups import cli
from thetagroups.abelian import FinAbGroup
from thetagroups.adelic import NSForm, principal_form
from thetagroups.skew import standard_form, zero_form


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        p = tmp_path / name
        p.write_text(json.dumps(data) if not isinstance(data, str) else data)
        return str(p)

    return {
        "hyp2": write("hyp2.json", standard_form((2,)).to_json()),
        "std24": write("std24.json", standard_form((2, 4)).to_json()),
        "zero": write("zero.json", zero_form(FinAbGroup((2, 2))).to_json()),
        "bad": write("bad.json", '{"divisors": [2, 2],\n "gram": [[0, '),
        "ns1": write("ns1.json", principal_form(1).to_json()),
        "ns2": write("ns2.json", principal_form(1).scale(2).to_json()),
        "ns_excl": write("ns3.json", NSForm([[0, 1], [-1, 0]], excluded_prime=2).to_json()),
    }


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


class TestDecompose:
    def test_hyperbolic(self, capsys, files):
        code, rep = run_json(capsys, "decompose", files["hyp2"])
        assert code == 0 and rep["passed"]
        assert rep["summary"]["type"] == [2]

    def test_zero_form_reports_radical(self, capsys, files):
        code, out, _ = run(capsys, "decompose", files["zero"])
        assert code == 0
        assert "degenerate; radical = whole group" in out

    def test_standard_2_4(self, capsys, files):
        code, rep = run_json(capsys, "decompose", files["std24"])
        assert code == 0 and rep["summary"]["type"] == [2, 4]
        assert len(rep["rows"]) == 2

    def test_malformed_json_has_location(self, capsys, files):
        code, _, err = run(capsys, "decompose", files["bad"])
        assert code == 2
        assert "line 2" in err and "column" in err


class TestIrreps:
    @pytest.mark.parametrize("type_, n, rows, dim", [("2", 1, 1, 2), ("2,4", 2, 16, 2), ("6", 0, 36, 1)])
    def test_tables(self, capsys, type_, n, rows, dim):
        code, rep = run_json(capsys, "irreps", "--type", type_, "--weight", n)
        assert code == 0
        assert len(rep["rows"]) == rows and {r["dim"] for r in rep["rows"]} == {dim}

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "irreps", "--type", "2", "--weight", 2, "--format", "csv")
        table = out.split("\n\n")[0]
        rows = list(csv.DictReader(io.StringIO(table)))
        assert code == 0 and len(rows) == 4

    def test_size_cap_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("THETA_SIZE_CAP", "10")
        code, _, err = run(capsys, "irreps", "--type", "2,4", "--weight", 1)
        assert code == 2 and "size cap" in err

    def test_size_cap_flag_wins(self, capsys, monkeypatch):
        monkeypatch.setenv("THETA_SIZE_CAP", "10")
        code, _, _ = run(capsys, "irreps", "--type", "2", "--weight", 1, "--size-cap", 100)
        assert code == 0


class TestPairing:
    def test_half_points(self, capsys, files):
        code, out, _ = run(capsys, "pairing", "--ns", files["ns1"], "--x", "1/2,0", "--y", "0,1/2")
        assert code == 0 and "1/4 (levels 2,4)" in out

    def test_integral_points(self, capsys, files):
        code, rep = run_json(capsys, "pairing", "--ns", files["ns1"], "--x", "1,0", "--y", "0,1")
        assert rep["summary"]["result"] == "0"

    def test_doubled_form(self, capsys, files):
        code, rep = run_json(capsys, "pairing", "--ns", files["ns2"], "--x", "1/2,0", "--y", "0,1/2")
        assert rep["summary"]["value"] == "1/2"

    def test_excluded_level(self, capsys, files):
        code, _, err = run(capsys, "pairing", "--ns", files["ns_excl"], "--x", "1/2,0", "--y", "0,1")
        assert code == 2 and "divisible by 2" in err


class TestOtherCommands:
    def test_verify_gprime(self, capsys):
        code, rep = run_json(capsys, "verify", "--suite", "gprime")
        assert code == 0 and len(rep["checks"]) == 3

    def test_verify_unknown_suite(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["verify", "--suite", "nope"])
        assert info.value.code == 2

    def test_verify_failure_exit_code(self, capsys, monkeypatch):
        from thetagroups import suites

        monkeypatch.setitem(suites.SUITES, "gprime", lambda rng, limits: [suites.Check("x", False, "boom", 1)])
        code, out, _ = run(capsys, "verify", "--suite", "gprime")
        assert code == 1 and "FAIL" in out and "counterexample" in out

    def test_induce(self, capsys):
        code, rep = run_json(capsys, "induce", "--type", "4", "--weight", 2, "--y", "1", "--emit-rep")
        assert code == 0 and rep["summary"]["dimension"] == 2
        assert "representation" in rep["summary"]

    def test_descend(self, capsys):
        code, rep = run_json(capsys, "descend", "--type", "4", "--subgroup", "2,0")
        assert code == 0
        assert rep["summary"]["quotient type"] == [2]

    def test_descend_obstruction(self, capsys):
        code, _, err = run(capsys, "descend", "--type", "2", "--subgroup", "1,0;0,1")
        assert code == 2 and "isotropic" in err

    def test_seed_makes_reports_reproducible(self, capsys):
        outs = [run(capsys, "verify", "--suite", "weil", "--seed", 7, "--format", "csv")[1] for _ in range(2)]
        assert outs[0] == outs[1]

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "thetagroups", "irreps", "--type", "2", "--weight", "1"],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and "status: OK" in proc.stdout
