"""Expression parsing, round trips, subcommands and exit codes."""

import json

import pytest

from skeintorus import parse_expression, ParseError, QTElem
from skeintorus.cli import main


def test_parse_sum_of_sigmas(g2c, t2c):
    value = parse_expression("sigma(beta[1]) + sigma(alpha[a0])", g2c, table=t2c)
    expect = t2c.image(g2c.curve_by_name("beta[1]")) + t2c.image(g2c.curve_by_name("alpha[a0]"))
    assert value == expect


def test_parse_commutator(g2c, t2c):
    value = parse_expression("commA(sigma(alpha[a0]), sigma(beta[1]))", g2c, table=t2c)
    a = t2c.image(g2c.curve_by_name("alpha[a0]"))
    b = t2c.image(g2c.curve_by_name("beta[1]"))
    assert value == (a * b).mul_a_power(1) - (b * a).mul_a_power(-1)


def test_parse_twist_prefixes(g2c, t2c):
    from skeintorus import twist_image
    value = parse_expression("sigma(t[a0] beta[1])", g2c, table=t2c)
    assert value == twist_image(t2c.image(g2c.curve_by_name("beta[1]")), "a0", 1, t2c)
    value = parse_expression("sigma(t-[a0] t[a0] beta[1])", g2c, table=t2c)
    assert value == t2c.image(g2c.curve_by_name("beta[1]"))


def test_parse_errors_are_positioned(g2c):
    with pytest.raises(ParseError) as err:
        parse_expression("sigma(beta[7])", g2c)
    assert "unknown curve" in str(err.value)
    with pytest.raises(ParseError):
        parse_expression("sigma(t[zz] beta[1])", g2c)
    with pytest.raises(ParseError):
        parse_expression("sigma(alpha[a0]", g2c)
    with pytest.raises(ParseError):
        parse_expression("Q[a0] ÷ 2", g2c)


def test_round_trip_catalogue(g2c, t2c):
    for name in sorted(t2c.catalogue):
        img = t2c.image(t2c.catalogue[name])
        assert parse_expression(str(img), g2c, table=t2c) == img


def test_round_trip_zero_and_scalars(g2c, t2c):
    zero = QTElem.zero(g2c)
    assert parse_expression(str(zero), g2c, table=t2c) == zero
    x = parse_expression("A^-3 * Q[a0]^2 - 5", g2c, table=t2c)
    assert parse_expression(str(x), g2c, table=t2c) == x


def test_cli_sigma_pants(capsys):
    rc = main(["sigma", "--genus", "2", "--closed", "--expr", "sigma(alpha[a0])"])
    out = capsys.readouterr().out.strip()
    assert rc == 0
    assert out == "(-1)*A^2*Q[a0]^2 + (-1)*A^-2*Q[a0]^-2"


def test_cli_sigma_json(capsys):
    rc = main(["sigma", "--genus", "2", "--closed", "--expr",
               "sigma(tau[c1])", "--json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    exps = [d["exponents"].get("c1", 0) for d in payload]
    assert sorted(exps) == [-2, 0, 2]


def test_cli_sigma_bad_edge(capsys):
    rc = main(["sigma", "--genus", "2", "--expr", "sigma(t[a9] beta[1])"])
    assert rc == 2
    assert "unknown edge" in capsys.readouterr().err


def test_cli_sigma_bad_genus(capsys):
    rc = main(["sigma", "--genus", "0", "--expr", "sigma(alpha[a0])"])
    assert rc == 2


def test_cli_identities_pass_and_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = main(["identities", "--genus", "2", "--closed", "--suite", "S1,S6",
               "--json", str(out)])
    assert rc == 0
    payload = json.loads(out.read_text())
    assert [r["suite"] for r in payload] == ["S1", "S6"]
    assert all(i["pass"] for r in payload for i in r["identities"])
    capsys.readouterr()


def test_cli_identities_suite_genus_mismatch(capsys):
    rc = main(["identities", "--genus", "1", "--suite", "S10"])
    assert rc == 2
    capsys.readouterr()


def test_cli_identities_mutated_fails(capsys, monkeypatch):
    monkeypatch.setenv("SKEIN_TORUS_THREADS", "2")
    rc = main(["identities", "--genus", "2", "--closed", "--suite", "S1,S2", "--mutate"])
    assert rc == 1
    capsys.readouterr()


def test_cli_identities_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"genus": 2, "closed": True, "suite": "S1"}))
    rc = main(["identities", "--config", str(cfg)])
    assert rc == 0
    capsys.readouterr()


def test_cli_identities_all_supported(capsys):
    rc = main(["identities", "--genus", "2", "--closed", "--suite", "all"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert [r["suite"] for r in payload] == ["S1", "S2", "S3", "S6", "S7", "S8", "S9", "S11"]


def test_cli_rep_all_checks(capsys):
    rc = main(["rep", "--p", "3", "--genus", "2", "--closed",
               "--x", "a0=2,a1=5,c1=3",
               "--checks", "shadows,irreducible,unicity"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 27
    ids = [c.get("id") or c.get("suite") for c in payload["checks"]]
    assert ids == ["cshadow", "commutant_dimension", "unicity_gauge_orbits"]
    # shadow scalars come out as cyclotomic coefficient vectors
    assert payload["shadows"]["alpha[a0]"] == "[4097/64, 0]"


def test_cli_rep_default_run(capsys):
    rc = main(["rep", "--p", "3", "--genus", "2", "--closed",
               "--x", "a0=2,a1=5,c1=3", "--checks", "irreducible"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 27
    assert payload["checks"][0] == {"id": "commutant_dimension", "value": 1, "pass": True}


def test_cli_rep_genericity_failure(capsys):
    rc = main(["rep", "--p", "3", "--genus", "2", "--closed",
               "--x", "a0=1,a1=5,c1=3", "--checks", "irreducible"])
    assert rc == 2
    assert "genericity" in capsys.readouterr().err


def test_cli_rep_config_file(tmp_path, capsys):
    cfg = tmp_path / "rep.json"
    cfg.write_text(json.dumps({"p": 3, "genus": 1, "closed": False,
                               "x": {"a0": "2"}, "y": {"a0": "4"},
                               "boundary": "1", "checks": "shadows"}))
    rc = main(["rep", "--config", str(cfg)])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 3
    assert payload["shadows"]["alpha[a0]"]
