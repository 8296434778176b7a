from __future__ import annotations

import io
import json
from fractions import Fraction

import pytest

from fiberbound import ConfigError, fiber, parse_config
from fiberbound.cli import (
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VERIFY,
    main,
    report_json,
    specs_from_json,
)
from fiberbound.bogomolov import global_report


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


# -- config parsing ------------------------------------------------------------


def test_parse_basic_config():
    cfg = parse_config("II a=1\nVII a=1/3 b=1/3 c=1/3\n")
    assert cfg.specs == (fiber("II", 1), fiber("VII", "1/3", "1/3", "1/3"))


def test_parse_skips_comments_and_blanks():
    cfg = parse_config("# heading\n\nIII a=2  # trailing note\n\n")
    assert cfg.specs == (fiber("III", 2),)


def test_parse_accepts_decimals_exactly():
    cfg = parse_config("IV a=0.5 b=2\n")
    assert cfg.specs[0].lengths == (Fraction(1, 2), Fraction(2))


def test_parse_is_case_tolerant_on_type():
    assert parse_config("vii a=1 b=1 c=1\n").specs[0] == fiber("VII", 1, 1, 1)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ConfigError, match="line 3"):
        parse_config("# fine\nII a=1\nVIII a=1\n")
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("II a=0\n")
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("II a=1\nII b=1\n")
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("VII a=1 b=1\n")
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("II a=1 a=2\n")
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("II a\n")
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("II a=one\n")


# -- report subcommand -----------------------------------------------------------


def test_report_text_output(tmp_path):
    cfg = tmp_path / "fibers.cfg"
    cfg.write_text("II a=1\nIII a=1\n")
    code, text = run(["report", str(cfg)])
    assert code == EXIT_OK
    assert "omega_a^2            = 13/30" in text
    assert "sqrt(4/135)" in text


def test_report_is_deterministic(tmp_path):
    cfg = tmp_path / "fibers.cfg"
    cfg.write_text("VII a=1 b=2 c=3\nV a=1 b=1\n")
    first = run(["report", str(cfg)])
    second = run(["report", str(cfg)])
    assert first == second
    third = run(["report", str(cfg), "--json"])
    assert third == run(["report", str(cfg), "--json"])


def test_report_json_round_trips(tmp_path):
    cfg = tmp_path / "fibers.cfg"
    cfg.write_text("II a=3/2\nVII a=1 b=2 c=3\n")
    code, text = run(["report", str(cfg), "--json"])
    assert code == EXIT_OK
    payload = json.loads(text)
    specs = specs_from_json(payload)
    assert specs == (fiber("II", "3/2"), fiber("VII", 1, 2, 3))
    # and the payload agrees with a direct in-process report
    direct = report_json(global_report(specs))
    assert payload == direct


def test_report_json_equality_case(tmp_path):
    cfg = tmp_path / "eq.cfg"
    cfg.write_text("VII a=1 b=1 c=1\n")
    _, text = run(["report", str(cfg), "--json"])
    payload = json.loads(text)
    assert payload["summary"]["bound_radicand"] == {"num": 2, "den": 45}
    assert payload["summary"]["floor_radicand"] == {"num": 2, "den": 45}


def test_report_verify_green(tmp_path):
    cfg = tmp_path / "fibers.cfg"
    cfg.write_text("VI a=1 b=2 c=3\n")
    code, text = run(["report", str(cfg), "--verify-green"])
    assert code == EXIT_OK


def test_report_oracle_within_tolerance(tmp_path):
    cfg = tmp_path / "fibers.cfg"
    cfg.write_text("III a=1\nVII a=1 b=1 c=1\n")
    code, text = run(["report", str(cfg), "--oracle", "100"])
    assert code == EXIT_OK
    assert "oracle max deviation" in text


def test_report_oracle_failure_exits_3(tmp_path, monkeypatch):
    import fiberbound.cli as cli_module

    cfg = tmp_path / "fibers.cfg"
    cfg.write_text("II a=1\n")
    monkeypatch.setattr(cli_module, "e_from_oracle", lambda spec, n: 123.0)
    code, text = run(["report", str(cfg), "--oracle", "100"])
    assert code == EXIT_VERIFY
    assert "FAILED" in text


def test_report_missing_file_exits_2():
    code, text = run(["report", "/no/such/file.cfg"])
    assert code == EXIT_PARSE
    assert "cannot read" in text


def test_report_bad_config_exits_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("II a=zero\n")
    code, text = run(["report", str(cfg)])
    assert code == EXIT_PARSE
    assert "line 1" in text


def test_report_warns_on_smooth_only(tmp_path):
    cfg = tmp_path / "smooth.cfg"
    cfg.write_text("I\n")
    code, text = run(["report", str(cfg)])
    assert code == EXIT_OK
    assert "warning" in text


# -- scan subcommand ----------------------------------------------------------


def test_scan_vii(tmp_path):
    code, text = run(["scan", "--type", "VII", "--resolution", "12"])
    assert code == EXIT_OK
    assert "minimum contribution/delta = 2/135" in text
    assert "(1/3, 1/3, 1/3)" in text
    assert "attained" in text


def test_scan_iv_reports_open_infimum():
    code, text = run(["scan", "--type", "IV", "--resolution", "10"])
    assert code == EXIT_OK
    assert "not attained" in text
    assert "1/30" in text


def test_scan_rejects_type_i():
    code, text = run(["scan", "--type", "I", "--resolution", "10"])
    assert code == EXIT_PARSE
    assert "error" in text


def test_scan_rejects_low_resolution():
    code, _ = run(["scan", "--type", "VII", "--resolution", "5"])
    assert code == EXIT_PARSE


# -- check-ineq subcommand -------------------------------------------------------


def test_check_ineq_equality():
    code, text = run(["check-ineq", "2", "2", "2"])
    assert code == EXIT_OK
    assert "equality holds" in text


def test_check_ineq_strict():
    code, text = run(["check-ineq", "1", "2", "3"])
    assert code == EXIT_OK
    assert "strict inequality holds" in text


def test_check_ineq_rejects_nonpositive():
    code, text = run(["check-ineq", "0", "1", "1"])
    assert code == EXIT_PARSE


def test_check_ineq_rejects_garbage():
    code, _ = run(["check-ineq", "x", "1", "1"])
    assert code == EXIT_PARSE


# -- argument plumbing -------------------------------------------------------------


def test_no_subcommand_is_a_usage_error(capsys):
    code, _ = run([])
    assert code == EXIT_PARSE


def test_unknown_subcommand_is_a_usage_error(capsys):
    code, _ = run(["frobnicate"])
    assert code == EXIT_PARSE
