import json
import subprocess
import sys

import pytest

from k3lattice.cli import run_cli
from k3lattice.jsonio import FormatError, charge_from_json, format_rational, lattice_from_json, loads, parse_rational


def run(*args):
    code, out, err = run_cli([str(a) for a in args])
    return code, json.loads(out), err


@pytest.fixture
def write_json(tmp_path):
    def _write(obj, name="in.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return _write


A2 = {"name": "A2", "gram": [[2, -1], [-1, 2]]}
MUKAI14 = {"gram": [[0, 0, -1], [0, 14, 0], [-1, 0, 0]]}
OMEGA14 = {"lattice": MUKAI14, "re": [1, 0, "-7"], "im": ["0", 1, "0/5"]}


class TestFormats:
    def test_rejects_floats(self):
        with pytest.raises(FormatError):
            loads('{"gram": [[2.0]]}')
        with pytest.raises(FormatError):
            loads('{"gram": [[1e3]]}')
        with pytest.raises(FormatError):
            loads('{"gram": [[NaN]]}')

    def test_rejects_bools(self):
        with pytest.raises(FormatError):
            lattice_from_json({"gram": [[True]]})

    def test_rejects_ragged(self):
        with pytest.raises(FormatError):
            lattice_from_json({"gram": [[1, 0]]})

    def test_rationals(self):
        assert parse_rational("-6/4") == parse_rational(" -3 / 2 ")
        assert format_rational(parse_rational("-6/4")) == "-3/2"
        assert format_rational(parse_rational("4/2")) == "2"
        for bad in ["0.5", "1e3", "1/0", "x", 1.5, None]:
            with pytest.raises(FormatError):
                parse_rational(bad)

    def test_charge(self):
        omega = charge_from_json(OMEGA14)
        assert omega.re == (1, 0, -7) and omega.im == (0, 1, 0)


class TestHassett:
    def test_check(self):
        code, out, _ = run("hassett", "check", "--d", 14)
        assert code == 0
        assert out == {"d": 14, "star": True, "star_star": True, "admissible": True}

    def test_check_failing(self):
        code, out, _ = run("hassett", "check", "--d", 30)
        assert code == 0 and out["witness"] == 5 and out["admissible"] is False

    def test_check_nonpositive(self):
        code, out, _ = run("hassett", "check", "--d", 0)
        assert code == 1 and "error" in out

    def test_list(self):
        code, out, _ = run("hassett", "list", "--max", 100)
        assert (code, out) == (0, [14, 26, 38, 42, 62, 74, 78, 86, 98])


class TestLattice:
    def test_info(self, write_json):
        code, out, err = run("lattice", "info", "--in", write_json(A2))
        assert code == 0
        assert out["det"] == 3 and out["signature"] == [2, 0, 0] and out["even"]
        assert "rank 2" in err

    def test_info_roundtrip(self, write_json):
        _, first, _ = run("lattice", "info", "--in", write_json(A2))
        _, second, _ = run("lattice", "info", "--in", write_json(first, "again.json"))
        assert first == second

    def test_disc_group(self, write_json):
        code, out, _ = run("lattice", "disc-group", "--in", write_json({"gram": [[14]]}))
        assert code == 0 and out["invariant_factors"] == [14]

    def test_disc_group_degenerate(self, write_json):
        code, out, _ = run("lattice", "disc-group", "--in", write_json({"gram": [[0]]}))
        assert code == 1 and "degenerate" in out["error"]["message"]

    def test_malformed(self, write_json):
        code, out, _ = run("lattice", "info", "--in", write_json("{not json"))
        assert code == 1 and out["error"]["type"] == "FormatError"

    def test_missing_file(self):
        code, out, _ = run("lattice", "info", "--in", "/nonexistent/x.json")
        assert code == 1 and "error" in out


class TestSublattice:
    def test_complement(self, write_json):
        sub = {"ambient": {"gram": [[0, 1], [1, 0]]}, "basis": [[1, 1]]}
        code, out, _ = run("sublattice", "complement", "--in", write_json(sub))
        assert code == 0 and out["gram"] == [[-2]]

    def test_complement_twice_is_saturation(self, write_json):
        sub = {"ambient": {"gram": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]}, "basis": [[2, 2, 0, 0]]}
        _, once, _ = run("sublattice", "complement", "--in", write_json(sub))
        _, twice, _ = run("sublattice", "complement", "--in", write_json(once, "b.json"))
        _, sat, _ = run("sublattice", "saturate", "--in", write_json(sub, "c.json"))
        assert twice["basis"] == sat["basis"] == [[1, 1, 0, 0]]
        assert sat["index"] == 2

    def test_saturate_idempotent(self, write_json):
        sub = {"ambient": {"gram": [[0, 1], [1, 0]]}, "basis": [[2, 0], [0, 1]]}
        _, first, _ = run("sublattice", "saturate", "--in", write_json(sub))
        _, second, _ = run("sublattice", "saturate", "--in", write_json(first, "b.json"))
        assert first["basis"] == second["basis"] == [[1, 0], [0, 1]]
        assert second["index"] == 1

    def test_dependent_basis(self, write_json):
        sub = {"ambient": {"gram": [[0, 1], [1, 0]]}, "basis": [[1, 1], [2, 2]]}
        code, _, _ = run("sublattice", "saturate", "--in", write_json(sub))
        assert code == 1


class TestMukai:
    def test_a2(self):
        code, out, _ = run("mukai", "a2")
        assert code == 0
        assert out["gram"] == [[2, -1], [-1, 2]]
        assert out["fano_norm"] == 2
        c = out["complement_invariants"]
        assert (c["rank"], c["signature"], c["abs_det"]) == (22, [2, 20, 0], 3)

    def test_a2_feeds_complement(self, write_json):
        _, a2, _ = run("mukai", "a2")
        code, perp, _ = run("sublattice", "complement", "--in", write_json(a2))
        assert code == 0 and perp["invariants"]["rank"] == 22

    def test_lk(self):
        k = [0] * 24
        k[4], k[5] = 1, 7
        code, out, _ = run("mukai", "lk", "--kappa", ",".join(map(str, k)))
        assert code == 0 and out["invariants"]["abs_det"] == 42 and out["picard_number"] == 1
        code, out2, _ = run("mukai", "lk", "--kappa", json.dumps(k))
        assert out2 == out

    def test_lk_not_perp(self):
        k = [0] * 24
        k[0] = k[1] = 1
        code, out, _ = run("mukai", "lk", "--kappa", json.dumps(k))
        assert code == 1 and "A2-perp" in out["error"]["message"]

    def test_find_u_definite(self, write_json):
        code, out, _ = run("mukai", "find-u", "--in", write_json(A2), "--bound", 10)
        assert (code, out) == (0, {"verdict": "No", "reason": "definite"})

    def test_find_u_yes(self, write_json):
        code, out, _ = run("mukai", "find-u", "--in", write_json({"gram": [[0, 1, 0], [1, 0, 0], [0, 0, 14]]}))
        assert code == 0 and out == {"verdict": "Yes", "e": [1, 0, 0], "f": [0, 1, 0]}

    def test_find_u_unknown(self, write_json):
        code, out, _ = run("mukai", "find-u", "--in", write_json({"gram": [[1, 0], [0, -1]]}), "--bound", 3)
        assert (code, out) == (2, {"verdict": "Unknown"})


class TestCharge:
    def test_gamma(self, write_json):
        code, out, _ = run("charge", "gamma", "--in", write_json(OMEGA14), "--c", "1")
        assert code == 0
        assert out["members"] == [[0, 0, -1], [0, 0, 0], [0, 0, 1]]
        assert out["complete"] is True and out["c_bound"] == "1"

    def test_gamma_roundtrip(self, write_json):
        _, first, _ = run("charge", "gamma", "--in", write_json(OMEGA14), "--c", "3/2")
        _, second, _ = run("charge", "gamma", "--in", write_json(first, "g.json"), "--c", first["c_bound"])
        assert first == second

    def test_n_bound_from_gamma(self, write_json):
        _, gamma, _ = run("charge", "gamma", "--in", write_json(OMEGA14))
        code, out, _ = run("charge", "n-bound", "--in", write_json(gamma, "g.json"), "--functional", "1,0,0")
        assert code == 0 and out["N"] == 1

    def test_n_bound_from_charge(self, write_json):
        omega2 = {"lattice": {"gram": [[0, 0, -1], [0, 2, 0], [-1, 0, 0]]}, "re": [1, 0, -1], "im": [0, 1, 0]}
        code, out, _ = run("charge", "n-bound", "--in", write_json(omega2), "--functional", "[1,0,0]")
        assert code == 0 and out["N"] == 2

    def test_p0(self, write_json):
        code, out, _ = run("charge", "p0", "--in", write_json(OMEGA14))
        assert code == 0 and out["verdict"] == "InP0"
        omega2 = {"lattice": {"gram": [[0, 0, -1], [0, 2, 0], [-1, 0, 0]]}, "re": [1, 0, -1], "im": [0, 1, 0]}
        code, out, _ = run("charge", "p0", "--in", write_json(omega2, "b.json"))
        assert code == 0 and out["verdict"] == "Excluded" and out["delta"] == [1, 0, 1]

    def test_p0_roundtrip(self, write_json):
        _, first, _ = run("charge", "p0", "--in", write_json(OMEGA14))
        _, second, _ = run("charge", "p0", "--in", write_json(first, "b.json"))
        assert first == second

    def test_bad_rational(self, write_json):
        bad = dict(OMEGA14, re=[1, 0, "-7.0"])
        code, out, _ = run("charge", "gamma", "--in", write_json(bad))
        assert code == 1 and out["error"]["type"] == "FormatError"

    def test_signature_violation(self, write_json):
        bad = {"lattice": {"gram": [[2, -1], [-1, 2]]}, "re": [1, 0], "im": [1, 0]}
        code, out, _ = run("charge", "gamma", "--in", write_json(bad))
        assert code == 1


class TestGroup:
    def test_coinv(self, write_json):
        action = {
            "lattice": {"gram": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]},
            "generators": [[[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]],
        }
        code, out, _ = run("group", "coinv", "--in", write_json(action))
        assert code == 0
        assert out["invariant"]["gram"] == [[0, 2], [2, 0]]
        assert out["coinvariant"]["gram"] == [[0, 2], [2, 0]]
        assert out["picard_bound"] == 2
        _, again, _ = run("group", "coinv", "--in", write_json(out, "b.json"))
        assert again == out

    def test_coinv_unfixed_class(self, write_json):
        action = {"lattice": {"gram": [[0, 1], [1, 0]]}, "generators": [[[-1, 0], [0, -1]]]}
        code, out, _ = run("group", "coinv", "--in", write_json(action), "--classes", "[[1,0]]")
        assert code == 1 and "not fixed" in out["error"]["message"]

    def test_invalid_action(self, write_json):
        action = {"lattice": {"gram": [[0, 1], [1, 0]]}, "generators": [[[2, 0], [0, 1]]]}
        code, out, _ = run("group", "coinv", "--in", write_json(action))
        assert code == 1


def test_usage_error_exit_code():
    code, out, _ = run("nonsense")
    assert code == 1 and out["error"]["type"] == "UsageError"


def test_module_entry_point(tmp_path):
    p = tmp_path / "a2.json"
    p.write_text(json.dumps(A2))
    proc = subprocess.run(
        [sys.executable, "-m", "k3lattice", "mukai", "find-u", "--in", str(p), "--bound", "10"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"verdict": "No", "reason": "definite"}
    assert "hyperbolic plane" in proc.stderr
