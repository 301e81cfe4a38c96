import json

import pytest

from ordalg.cli import run_cli
from ordalg.fixtures import FIXTURES_TEXT


@pytest.fixture()
def corpus(tmp_path):
    f = tmp_path / "corpus.ord"
    f.write_text(FIXTURES_TEXT, encoding="utf-8")
    return str(f)


@pytest.fixture()
def fig1_file(tmp_path):
    f = tmp_path / "fig1.ord"
    text = FIXTURES_TEXT.split("poset fig2")[0]
    f.write_text(text, encoding="utf-8")
    return str(f)


def test_check_stone_fig1_fails(fig1_file, capsys):
    code = run_cli(["check", fig1_file, "--class=stone", "--name", "fig1"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAILS" in out and "x=a" in out and "{c,d,1}" in out


def test_check_stone_fig2_holds(corpus, capsys):
    assert run_cli(["check", corpus, "--class=stone", "--name", "fig2"]) == 0
    assert "HOLDS" in capsys.readouterr().out


def test_check_json_schema(corpus, capsys):
    code = run_cli(["check", corpus, "--class=rpc", "--name", "fig1", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["schema"] == 1 and payload["command"] == "check"
    assert payload["results"][0]["holds"] is True


def test_check_distributive(corpus, capsys):
    code = run_cli(["check", corpus, "--class=distributive", "--name", "fig5"])
    out = capsys.readouterr().out
    assert code == 1 and "x=a" in out and "y=c" in out and "z=b" in out


def test_check_unknown_name(corpus, capsys):
    assert run_cli(["check", corpus, "--class=pc", "--name", "nope"]) == 2


def test_parse_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.ord"
    f.write_text("poset p\n  elements: x y\n  order: x<y y<x\n", encoding="utf-8")
    assert run_cli(["check", str(f), "--class=pc"]) == 2
    assert "error" in capsys.readouterr().err


def test_usage_error():
    assert run_cli(["check"]) == 2
    assert run_cli(["no-such-command"]) == 2


def test_assign_canonical(fig1_file, capsys):
    code = run_cli(["assign", fig1_file, "--profile=pc", "--verify"])
    out = capsys.readouterr().out
    assert code == 0
    assert "algebra fig1_pc on fig1" in out
    assert "binary ⊓" in out and "unary *" in out
    assert out.count("HOLDS") == 3


def test_assign_enumerate(fig1_file, capsys):
    code = run_cli(["assign", fig1_file, "--profile=pc", "--enumerate", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0 and len(payload["algebras"]) == 3


def test_assign_choice_flag(fig1_file, capsys):
    code = run_cli(
        ["assign", fig1_file, "--profile=pc", "--choice", "meet {c,d}=a", "--json"]
    )
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    table = payload["algebras"][0]["operations"][0]["table"]
    assert table[3][4] == 1  # c⊓d = a


def test_assign_not_in_class(corpus, capsys):
    code = run_cli(["assign", corpus, "--profile=rpc", "--name", "fig5"])
    assert code == 2
    assert "not relatively_pc" in capsys.readouterr().err


def test_audit_fig1(fig1_file, capsys):
    code = run_cli(["audit", fig1_file, "--profile=pc"])
    out = capsys.readouterr().out
    assert code == 0 and "OK" in out and "3/3" in out


def test_con_props_terms(corpus, capsys):
    code = run_cli(
        ["con", corpus, "--name", "fig1_rpc", "--props", "--terms", "--unit", "1"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "2 congruences" in out
    assert "permutable=True" in out and "weakly_regular=True" in out
    assert "maltsev(*): HOLDS" in out


def test_decompose_cli(corpus, capsys):
    code = run_cli(["decompose", corpus, "--name", "fig4_spc"])
    out = capsys.readouterr().out
    assert code == 0 and "decomposes as 2 x 2" in out


def test_product_cli(corpus, tmp_path, capsys):
    code = run_cli(["product", corpus, corpus, "--name1", "fig4_spc", "--name2", "fig4_spc", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0 and len(payload["algebra"]["labels"]) == 16


def test_search_cli(capsys):
    code = run_cli(["search", "--n=2..3", "--where", "pseudocomplemented"])
    out = capsys.readouterr().out
    assert code == 0 and "poset hit0" in out and "hit(s)" in out


def test_fixtures_cli(capsys):
    assert run_cli(["fixtures"]) == 0
    assert capsys.readouterr().out == FIXTURES_TEXT


def test_fixtures_json(capsys):
    assert run_cli(["fixtures", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload["posets"]) == {"fig1", "fig2", "fig3", "fig4", "fig5"}
