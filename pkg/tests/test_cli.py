import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hyperzero.cli import format_complex, parse_complex, run
from hyperzero.constructions import (build_random_hypergraph, samotij_Z_closed_form,
                                     star_Z_closed_form)
from hyperzero.hypergraph import dump, load


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def edge3(tmp_path):
    path = tmp_path / "edge3.hg"
    path.write_text("hypergraph 3\ne 0 1 2\n")
    return path


@pytest.fixture
def random30(tmp_path):
    path = tmp_path / "g.hg"
    dump(build_random_hypergraph(3, 4, 30, 36, 1), str(path))
    return path


class TestComplexLiterals:
    @pytest.mark.parametrize("text,value", [
        ("-0.1", -0.1), ("-0.1+0.2i", -0.1 + 0.2j), ("0.3i", 0.3j), ("1", 1), ("2-1e-3i", 2 - 1e-3j),
        ("-i", -1j),
    ])
    def test_parse(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("text", ["", "abc", "1 + 2i", "1+2j+3"])
    def test_reject(self, text):
        with pytest.raises(ValueError):
            parse_complex(text)

    def test_format_round_trips(self):
        for z in (0.1 + 0.2j, -1 / 3, 7.0, 1e-300 - 2.5j):
            assert parse_complex(format_complex(z)) == z
        assert format_complex(7.0) == "7"
        assert format_complex(1 / 3, 5) == "0.33333"


class TestEval:
    def test_example(self, capsys, edge3):
        assert call(capsys, "eval", "--in", edge3, "--lambda", "1") == (0, "7\n", "")

    def test_exact(self, capsys, edge3):
        code, out, _ = call(capsys, "eval", "--in", edge3, "--lambda", "1/3", "--exact")
        assert code == 0 and Fraction(out.strip()) == Fraction(7, 3)

    def test_negative_complex_literal(self, capsys, edge3):
        code, out, _ = call(capsys, "eval", "--in", edge3, "--lambda", "-0.1+0.2i")
        lam = -0.1 + 0.2j
        assert code == 0 and parse_complex(out.strip()) == pytest.approx(1 + 3 * lam + 3 * lam ** 2)

    @pytest.mark.parametrize("ev", ["dc", "brute", "coeffs"])
    def test_evaluators_agree(self, capsys, edge3, ev):
        code, out, _ = call(capsys, "eval", "--in", edge3, "--lambda", "0.5", "--evaluator", ev)
        assert code == 0 and float(out) == pytest.approx(1 + 1.5 + 0.75)

    def test_closed_form_family(self, capsys):
        code, out, _ = call(capsys, "eval", "--family", "star", "--k", 3, "--delta", 2,
                            "--lambda", "1", "--evaluator", "closed_form")
        assert code == 0 and out.strip() == "25"

    def test_json(self, capsys, edge3):
        code, out, _ = call(capsys, "eval", "--in", edge3, "--lambda", "0.3i", "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["lambda"] == [0, 0.3]


class TestOtherCommands:
    def test_coeffs(self, capsys, edge3):
        code, out, _ = call(capsys, "coeffs", "--in", edge3)
        assert code == 0 and json.loads(out) == {"n": 3, "coeffs": [1, 3, 3]}

    def test_logcoeffs(self, capsys, edge3):
        code, out, _ = call(capsys, "logcoeffs", "--in", edge3, "--r", 2, "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["coeffs"] == ["3", "-3/2"]

    def test_logcoeffs_backends_agree(self, capsys, random30):
        outs = [call(capsys, "logcoeffs", "--in", random30, "--r", 4, "--backend", b,
                     "--format", "json")[1] for b in ("global", "local")]
        assert json.loads(outs[0])["coeffs"] == json.loads(outs[1])["coeffs"]

    def test_approx_matches_eval(self, capsys, random30):
        code, out, _ = call(capsys, "approx", "--in", random30, "--lambda", "-0.07",
                            "--eps", "1e-3", "--format", "json")
        data = json.loads(out)
        assert code == 0 and {"value", "r_used", "error_bound"} <= set(data)
        _, ev, _ = call(capsys, "eval", "--in", random30, "--lambda", "-0.07")
        approx = complex(*data["value"])
        assert abs(approx / float(ev) - 1) <= 1e-3

    def test_bounds_table(self, capsys):
        code, out, _ = call(capsys, "bounds", "--delta", 3)
        assert code == 0
        for text in ("4/27", "27/256", "0.125"):
            assert text in out
        assert "applicable" not in out

    def test_bounds_for_graph(self, capsys, edge3):
        code, out, _ = call(capsys, "bounds", "--in", edge3, "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["applicable"]["hypertree_thm4"] is True
        assert data["applicable"]["shearer"] is False

    def test_verify_general(self, capsys):
        code, out, _ = call(capsys, "verify", "general", "--delta", 3, "--format", "json")
        assert code == 0 and json.loads(out)["verdict"] is True
        code, out, _ = call(capsys, "verify", "general", "--delta", 3, "--R", "0.12",
                            "--s", "1/4", "--format", "json")
        assert code == 0 and json.loads(out)["verdict"] is False

    def test_verify_tree(self, capsys):
        code, out, _ = call(capsys, "verify", "tree", "--delta", 8, "--k", 4, "--refined",
                            "--format", "json")
        assert code == 0 and json.loads(out)["verdict"] is True

    def test_verify_identity(self, capsys, edge3):
        code, out, _ = call(capsys, "verify", "identity", "--in", edge3, "--lambda", "0.2-0.1i",
                            "--set", "0,1", "--format", "json")
        assert code == 0 and json.loads(out)["holds"] is True
        code, _, err = call(capsys, "verify", "identity", "--in", edge3, "--lambda", "0.2")
        assert code == 1 and "--vertex" in err

    def test_probe(self, capsys):
        code, out, _ = call(capsys, "probe", "samotij", "--k", 3, "--s", 3, "--format", "json")
        assert code == 0 and json.loads(out)["verdict"] is True
        code, out, _ = call(capsys, "probe", "star", "--k", 4, "--threshold", "--max", 1000,
                            "--format", "json")
        assert code == 0 and json.loads(out)["delta0"] == 3

    def test_scan_csv(self, capsys, edge3):
        code, out, _ = call(capsys, "scan", "--in", edge3, "--radius", 0.1, "--resolution", 4)
        lines = out.strip().split("\n")
        assert code == 0 and lines[0] == "re,im,abs_z,arg_z" and len(lines) == 17

    def test_root(self, capsys, tmp_path):
        path = tmp_path / "p3.hg"
        path.write_text("hypergraph 3\ne 0 1\ne 1 2\n")
        golden = (-3 + 5 ** 0.5) / 2
        code, out, _ = call(capsys, "root", "--in", path, "--format", "json")
        assert code == 0 and json.loads(out)["root"][0] == pytest.approx(golden, rel=1e-13)
        code, out, _ = call(capsys, "root", "--in", path, "--mode", "negative", "--hi", 1,
                            "--format", "json")
        assert code == 0 and json.loads(out)["root"] == pytest.approx(golden, abs=1e-12)


class TestConstructRoundTrip:
    @pytest.mark.parametrize("args,closed", [
        (["--family", "star", "--k", 3, "--delta", 4], lambda z: star_Z_closed_form(3, 4, z)),
        (["--family", "samotij", "--k", 3, "--s", 2], lambda z: samotij_Z_closed_form(3, 2, z)),
    ])
    def test_construct_then_eval(self, capsys, tmp_path, args, closed):
        path = tmp_path / "c.hg"
        assert call(capsys, "construct", *args, "--out", path)[0] == 0
        load(str(path))
        for lam in ("0.25", "-0.1+0.2i"):
            code, out, _ = call(capsys, "eval", "--in", path, "--lambda", lam)
            assert code == 0
            assert parse_complex(out.strip()) == pytest.approx(closed(parse_complex(lam)),
                                                               rel=1e-13)

    def test_random_needs_seed(self, capsys):
        code, _, err = call(capsys, "construct", "--family", "random_hypergraph", "--k", 3,
                            "--delta", 3, "--n", 10, "--m", 5)
        assert code == 1 and "seed" in err


class TestErrors:
    def test_missing_file(self, capsys, tmp_path):
        code, _, err = call(capsys, "eval", "--in", tmp_path / "nope.hg", "--lambda", "1")
        assert code == 1 and err.startswith("hyperzero: error")

    def test_bad_lambda(self, capsys, edge3):
        code, _, _ = call(capsys, "eval", "--in", edge3, "--lambda", "two")
        assert code == 1

    def test_malformed_hg_names_line(self, capsys, tmp_path):
        path = tmp_path / "bad.hg"
        path.write_text("hypergraph 3\ne 0 1\ne 0 9\n")
        code, _, err = call(capsys, "eval", "--in", path, "--lambda", "1")
        assert code == 1 and "line 3" in err

    def test_malformed_json_names_field(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 3, "edges": [[0, 1], [2]]}')
        code, _, err = call(capsys, "coeffs", "--in", path)
        assert code == 1 and "edges[1]" in err

    def test_budget_refusal(self, capsys, random30):
        code, _, err = call(capsys, "coeffs", "--in", random30, "--budget", 10)
        assert code == 2 and "budget" in err

    def test_budget_refusal_from_env(self, capsys, random30, monkeypatch):
        monkeypatch.setenv("HYPERZERO_MEMO_BUDGET", "10")
        assert call(capsys, "eval", "--in", random30, "--lambda", "0.1")[0] == 2


class TestDeterminism:
    def test_repeated_runs_are_byte_identical(self, capsys, tmp_path, random30):
        files = []
        for i in range(2):
            out = tmp_path / f"scan{i}.csv"
            assert call(capsys, "scan", "--in", random30, "--radius", 0.08, "--resolution", 8,
                        "--out", out)[0] == 0
            files.append(out.read_bytes())
        assert files[0] == files[1]

    def test_threads_do_not_change_output(self, capsys, tmp_path):
        outs = []
        for t in (1, 2):
            out = tmp_path / f"t{t}.csv"
            assert call(capsys, "scan", "--family", "regular_tree", "--delta", 3, "--depth", 4,
                        "--radius", 0.15, "--resolution", 16, "--threads", t, "--out", out)[0] == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_seeded_construct(self, capsys):
        args = ["construct", "--family", "random_hypertree", "--k", 3, "--delta", 3, "--n", 20,
                "--seed", 4]
        assert call(capsys, *args)[1] == call(capsys, *args)[1]


def test_module_entry_point(edge3):
    out = subprocess.run([sys.executable, "-m", "hyperzero", "eval", "--in", str(edge3),
                          "--lambda", "1"], capture_output=True, text=True, check=True)
    assert out.stdout == "7\n"


@pytest.mark.parametrize("extra,needle", [
    (["--family", "star", "--k", "3", "--delta", "2"], "not both"),
    ([], "input is required"),
])
def test_exactly_one_input_source(capsys, edge3, extra, needle):
    argv = ["eval", "--lambda", "1"] + (["--in", str(edge3)] if extra else []) + extra
    code, _, err = call(capsys, *argv)
    assert code == 1 and needle in err
