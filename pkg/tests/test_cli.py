import json
from fractions import Fraction as F

import pytest

from euclidmin import ParseError, ValidationError
from euclidmin.cli import (certificate_from_json, certificate_to_json,
                           emit_report, main, parse_config, run_command)


def make_cfg(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


QI = {"field": {"poly": [1, 0, 1]}, "S": {"primes": []},
      "ideal": {"gens": [[1, 0]]}}
Z16 = {"field": {"poly": [-1, 1]}, "S": {"primes": [2, 3]},
       "ideal": {"gens": [[1]]}}


def test_parse_config_examples():
    cfg = parse_config(json.dumps(QI))
    assert cfg.field.degree == 2 and cfg.sconfig.size == 1
    cfg = parse_config(json.dumps(Z16))
    assert cfg.field.degree == 1 and cfg.sconfig.size == 3
    assert cfg.gap == F(1, 100) and cfg.denom_bound == 20 and cfg.workers == 1


def test_parse_config_errors():
    with pytest.raises(ParseError):
        parse_config("{not json")
    with pytest.raises(ValidationError) as err:
        parse_config(json.dumps({"field": {"poly": [-4, 0, 1]},
                                 "S": {"primes": []},
                                 "ideal": {"gens": [[1, 0]]}}))
    assert "field.poly" in str(err.value)
    with pytest.raises(ValidationError) as err:
        parse_config(json.dumps({"field": {"poly": [-1, 1]},
                                 "S": {"primes": [2, 2]},
                                 "ideal": {"gens": [[1]]}}))
    assert "S.primes[1]" in str(err.value)


def test_run_command_m_and_snorm():
    raw = dict(Z16)
    raw["params"] = {"xi": ["1/5"], "x": ["1/5"]}
    cfg = parse_config(json.dumps(raw))
    doc = run_command(cfg, "m")
    assert doc["result"]["value"] == "1/5"
    doc = run_command(cfg, "snorm")
    assert doc["result"]["s_norm"] == "1/5"
    # 1/2 is an S-integer for S = {inf, 2, 3}, so its minimum vanishes
    raw["params"] = {"xi": ["1/2"]}
    cfg = parse_config(json.dumps(raw))
    assert run_command(cfg, "m")["result"]["value"] == "0/1"


def test_report_round_trip_and_determinism(tmp_path):
    cfg = parse_config(json.dumps(Z16))
    doc = run_command(cfg, "info")
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    b1 = emit_report(dict(doc), str(p1))
    b2 = emit_report(dict(doc), str(p2))
    assert b1 == b2
    parsed = json.loads(p1.read_text())
    clean = {k: v for k, v in parsed.items() if k != "content_hash"}
    assert clean == doc


def test_certificate_serialization_round_trip(field_q, s_q_23):
    from euclidmin import covering_verify

    Z = field_q.maximal_order()
    cert = covering_verify(Z, s_q_23, F(21, 100), budget=60000)
    data = certificate_to_json(cert)
    again = certificate_from_json(json.loads(json.dumps(data)))
    assert again == cert


def test_cli_end_to_end(tmp_path, capsys):
    cfg_path = make_cfg(tmp_path, "qi.json", QI)
    out = tmp_path / "decide.json"
    code = main(["--config", cfg_path, "--command", "decide",
                 "--output", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["result"]["verdict"] == "euclidean"
    # replay the certificate
    vout = tmp_path / "verify.json"
    code = main(["--config", cfg_path, "--command", "verify-cert",
                 "--cert", str(out), "--output", str(vout)])
    assert code == 0
    assert json.loads(vout.read_text())["result"]["replay"] == "pass"
    # tampering any single bound must be caught
    doc["evidence"]["entries"][0]["bound"] = "1/100"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code = main(["--config", cfg_path, "--command", "verify-cert",
                 "--cert", str(bad), "--output", str(vout)])
    assert code == 3


def test_cli_cover_undecided_exit(tmp_path):
    cfg_path = make_cfg(tmp_path, "z16.json", Z16)
    out = tmp_path / "cover.json"
    code = main(["--config", cfg_path, "--command", "cover",
                 "--t", "19/100", "--budget", "200", "--output", str(out)])
    assert code == 2
    assert json.loads(out.read_text())["result"]["covered"] is False


def test_cli_error_exit(tmp_path):
    bad = make_cfg(tmp_path, "bad.json",
                   {"field": {"poly": [-4, 0, 1]}, "S": {"primes": []},
                    "ideal": {"gens": [[1, 0]]}})
    out = tmp_path / "err.json"
    code = main(["--config", bad, "--command", "info", "--output", str(out)])
    assert code == 1
    assert json.loads(out.read_text())["error"]["type"] == "ValidationError"


def test_cli_payload_byte_identical(tmp_path):
    cfg_path = make_cfg(tmp_path, "z16.json", Z16)
    outs = []
    for name in ("r1.json", "r2.json"):
        out = tmp_path / name
        assert main(["--config", cfg_path, "--command", "cover",
                     "--t", "21/100", "--output", str(out)]) == 0
        outs.append(json.loads(out.read_text()))
    h1, h2 = (d["content_hash"] for d in outs)
    assert h1 == h2
    p1 = {k: v for k, v in outs[0].items() if k != "timing"}
    p2 = {k: v for k, v in outs[1].items() if k != "timing"}
    assert json.dumps(p1, sort_keys=True) == json.dumps(p2, sort_keys=True)
