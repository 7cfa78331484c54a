"""Command-line interface: exit codes, text and JSON output, file
loading, env-var budgets, and byte-level determinism."""

import json

import pytest

from goedel.cli import (
    EXIT_FAIL,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    RunConfig,
    run_command,
)


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def test_run_config_validation():
    assert RunConfig().depth_budget == 3
    assert RunConfig().max_universe == 3
    with pytest.raises(ValueError):
        RunConfig(clone_budget=0)
    with pytest.raises(ValueError):
        RunConfig(max_universe=-1)
    with pytest.raises(ValueError):
        RunConfig(output_format="yaml")


def test_check_tautology_holds(capsys):
    code, out, _ = run(capsys, "check", "--taut", "D p | ~p")
    assert code == EXIT_OK
    assert "tautology: holds" in out
    assert "seed: 0" in out


def test_check_tautology_fails_with_witness(capsys):
    code, payload, _ = run_json(capsys, "check", "--taut", "p | !p")
    assert code == EXIT_FAIL
    assert payload["command"] == "check"
    assert payload["seed"] == 0
    verdict = payload["verdict"]
    assert verdict["holds"] is False and verdict["exhaustive"] is True
    assert verdict["witness"]["relations"]["p"]["()"] == "1/2"


def test_check_entailment_from_theory_file(capsys, tmp_path):
    thy = tmp_path / "T.thy"
    thy.write_text("# double negation premise\n!!p\n")
    code, payload, _ = run_json(capsys, "check", "--entail", str(thy), "p")
    assert code == EXIT_FAIL
    assert payload["theory"] == ["!!p"]
    assert payload["verdict"]["witness"]["relations"]["p"]["()"] == "1/2"

    code2, out, _ = run(capsys, "check", "--entail", "p -> q\np", "q")
    assert code2 == EXIT_OK
    assert "entailment: holds" in out


def test_check_formula_file_and_bad_file(capsys, tmp_path):
    goal = tmp_path / "goal.fml"
    goal.write_text("# the excluded-middle variant\nD p | ~p\n")
    code, out, _ = run(capsys, "check", "--taut", str(goal))
    assert code == EXIT_OK

    two = tmp_path / "two.fml"
    two.write_text("p\nq\n")
    code2, _, err = run(capsys, "check", "--taut", str(two))
    assert code2 == EXIT_USAGE
    assert "expected exactly one formula" in err


def test_check_first_order_is_bounded(capsys):
    code, out, _ = run(capsys, "check", "--taut", "forall x. P(x) | ~P(x)")
    assert code == EXIT_INCONCLUSIVE
    assert "bounded, inconclusive" in out
    code2, payload, _ = run_json(capsys, "check", "--entail", "forall x. P(x)", "P(c)")
    assert code2 == EXIT_INCONCLUSIVE
    assert payload["verdict"]["holds"] is True


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "check")[0] == EXIT_USAGE  # needs --taut or --entail
    assert run(capsys, "check", "--taut", "p &")[0] == EXIT_USAGE
    assert run(capsys, "check", "--taut", "p", "--seed", "NaN")[0] == EXIT_USAGE
    assert run(capsys, "lemmas", "--suite", "bogus")[0] == EXIT_USAGE
    assert run(capsys, "check", "--taut", "p", "--clone-budget", "0")[0] == EXIT_USAGE
    _, _, err = run(capsys, "check", "--taut", "p &")
    assert err.startswith("error:")


def test_help_exits_ok(capsys):
    assert run(capsys, "--help")[0] == EXIT_OK


def test_interpolate_success(capsys):
    code, out, _ = run(capsys, "interpolate", "p & q", "p | r")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "interpolant: p"
    code2, payload, _ = run_json(capsys, "interpolate", "p & q", "p | r")
    assert code2 == EXIT_OK
    assert payload["interpolant"] == "p"
    certs = payload["certificates"]
    assert certs["phi_entails_interpolant"]["holds"] is True
    assert certs["interpolant_entails_psi"]["holds"] is True


def test_interpolate_failed_entailment(capsys):
    code, payload, _ = run_json(capsys, "interpolate", "p", "q")
    assert code == EXIT_FAIL
    assert payload["interpolant"] is None
    assert payload["reason"] == "entailment fails"
    assert payload["verdict"]["witness"]["relations"]["p"]["()"] == "1"


def test_interpolate_g_only_gap(capsys):
    code, payload, _ = run_json(capsys, "interpolate", "~p", "~D p", "--g-only")
    assert code == EXIT_FAIL
    assert payload["interpolant"] is None
    assert payload["reason"] == "no separator over the common language"
    code2, _, _ = run(capsys, "interpolate", "~p", "~D p")
    assert code2 == EXIT_OK


def test_separate(capsys):
    code, payload, _ = run_json(capsys, "separate", "p", "~p")
    assert code == EXIT_OK
    assert payload["separable"] is True
    assert payload["separator"] == "p"
    code2, payload2, _ = run_json(capsys, "separate", "p", "q")
    assert code2 == EXIT_FAIL
    assert payload2["separable"] is False


def test_countermodel_command(capsys):
    code, payload, _ = run_json(capsys, "countermodel", "!!p", "p")
    assert code == EXIT_OK
    assert payload["countermodel"]["relations"]["p"]["()"] == "1/2"
    assert payload["trace"]["assignment"] == {"p": "1/2"}
    code2, payload2, _ = run_json(capsys, "countermodel", "p", "D p")
    assert code2 == EXIT_FAIL
    assert payload2["countermodel"] is None


def test_amalgamate_command(capsys, tmp_path):
    doc = {
        "b0": {"elements": ["0", "1"]},
        "b1": {"elements": ["0", "a", "1"]},
        "b2": {"elements": ["0", "b", "1"]},
        "f1": {"map": {"0": "0", "1": "1"}},
        "f2": {"map": {"0": "0", "1": "1"}},
    }
    src = tmp_path / "span.json"
    src.write_text(json.dumps(doc))
    dot = tmp_path / "amalgam.dot"
    code, payload, _ = run_json(capsys, "amalgamate", str(src), "--dot", str(dot))
    assert code == EXIT_OK
    assert payload["amalgam"]["elements"] == ["0", "a", "b", "1"]
    assert payload["g1"]["map"] == {"0": "0", "a": "a", "1": "1"}
    assert dot.read_text().startswith("digraph")

    code2, out, _ = run(capsys, "amalgamate", str(src))
    assert code2 == EXIT_OK
    assert out.splitlines()[0] == "amalgam: 0 < a < b < 1"

    del doc["f2"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert run(capsys, "amalgamate", str(bad))[0] == EXIT_USAGE
    assert run(capsys, "amalgamate", "not json")[0] == EXIT_USAGE


def test_embed_command(capsys):
    code, out, _ = run(capsys, "embed", '{"elements": ["0", "m", "1"]}')
    assert code == EXIT_OK
    assert out.splitlines()[:3] == ["0 -> 0", "m -> 1/2", "1 -> 1"]
    code2, payload, _ = run_json(capsys, "embed", '{"elements": ["0", "m", "1"]}')
    assert code2 == EXIT_OK
    assert payload["embedding"] == {"0": "0", "m": "1/2", "1": "1"}
    assert run(capsys, "embed", '{"elements": []}')[0] == EXIT_USAGE


def test_lindenbaum_command(capsys):
    code, payload, _ = run_json(
        capsys, "lindenbaum", "p\nq", "--assign", "p=1/2", "--assign", "q=1"
    )
    assert code == EXIT_OK
    classes = payload["classes"]
    assert [c["value"] for c in classes] == ["0", "1/2", "1"]
    assert classes[1]["members"] == ["p"]
    assert "top" in classes[2]["members"]

    code2, out, _ = run(
        capsys, "lindenbaum", "p\nq", "--assign", "p=1/2", "--assign", "q=1"
    )
    assert "value 1/2: p" in out
    assert run(capsys, "lindenbaum", "p", "--assign", "p=oops")[0] == EXIT_USAGE


def test_lindenbaum_from_valuation_file(capsys, tmp_path):
    doc = {
        "universe": ["a"],
        "relations": {"p": {"()": "1/3"}},
        "constants": {},
    }
    path = tmp_path / "v.json"
    path.write_text(json.dumps(doc))
    code, payload, _ = run_json(capsys, "lindenbaum", "p | p", "--valuation", str(path))
    assert code == EXIT_OK
    assert [c["value"] for c in payload["classes"]] == ["0", "1/3", "1"]


def test_lemmas_command(capsys):
    code, out, _ = run(capsys, "lemmas", "--suite", "property", "--cases", "12", "--seed", "7")
    assert code == EXIT_OK
    assert "item 1: 12 cases, ok" in out
    assert out.rstrip().endswith("result: ok")
    code2, payload, _ = run_json(capsys, "lemmas", "--suite", "eqd", "--cases", "4")
    assert code2 == EXIT_OK
    assert payload["ok"] is True
    assert payload["command"] == "lemmas"


def test_goedel_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("GOEDEL_BUDGET", "2")
    code, _, err = run(capsys, "separate", "a3", "~a3")
    assert code == EXIT_INCONCLUSIVE
    assert err.startswith("inconclusive:")
    monkeypatch.setenv("GOEDEL_BUDGET", "zero")
    assert run(capsys, "check", "--taut", "p")[0] == EXIT_USAGE
    monkeypatch.setenv("GOEDEL_BUDGET", "-4")
    assert run(capsys, "check", "--taut", "p")[0] == EXIT_USAGE


def test_clone_budget_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("GOEDEL_BUDGET", "2")
    code, out, _ = run(capsys, "separate", "a4", "~a4", "--clone-budget", "1000")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "separator: a4"


def test_output_is_byte_deterministic(capsys):
    argv = ("countermodel", "!!p", "p", "--format", "json", "--seed", "5")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert (code1, out1) == (code2, out2)
    assert json.loads(out1)["seed"] == 5

    argv_text = ("embed", '{"elements": ["0", "x", "1"]}')
    assert run(capsys, *argv_text) == run(capsys, *argv_text)


def test_json_outputs_reparse_and_carry_seed(capsys):
    for argv in (
        ("check", "--taut", "D p | ~p"),
        ("interpolate", "p & q", "p | r"),
        ("separate", "p", "~p"),
        ("countermodel", "!!p", "p"),
        ("embed", '{"elements": ["0", "1"]}'),
        ("lindenbaum", "p", "--assign", "p=1"),
    ):
        _, payload, _ = run_json(capsys, *argv)
        assert payload["seed"] == 0
        assert "command" in payload
