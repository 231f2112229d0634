import io
import json
import subprocess
import sys

import pytest

from ziphasse.cli_report import (
    ParseError,
    ValidationError,
    main,
    parse_config,
    render_json,
    render_text,
    run,
)


UNITARY3 = {"q": 3, "group": {"builder": "unitary", "n": 3}, "parabolic_type": [1]}
GL2_BOREL = {"q": 3, "group": {"builder": "gl", "n": 2}, "parabolic_type": []}
HB3 = {"q": 2,
       "group": {"builder": "weil_restriction", "copies": 3,
                 "inner": {"builder": "gl", "n": 2}},
       "parabolic_type": []}
PGL3_FULL = {"q": 3,
             "group": {"builder": "simple", "series": "A", "rank": 2,
                       "isogeny": "adjoint"},
             "parabolic_type": [1, 2]}


def run_cli(args, stdin_text):
    old = sys.stdin
    sys.stdin = io.StringIO(stdin_text)
    try:
        import contextlib
        out = io.StringIO()
        err = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(args)
        return code, out.getvalue(), err.getvalue()
    finally:
        sys.stdin = old


class TestParseConfig:
    def test_valid(self):
        cfg = parse_config(json.dumps(UNITARY3))
        assert cfg.q == 3
        assert cfg.parabolic_type == (0,)
        assert cfg.cocharacter is None

    def test_cocharacter_form(self):
        cfg = parse_config(json.dumps(
            {"q": 5, "group": {"builder": "gl", "n": 3}, "cocharacter": [1, 1, 0]}))
        assert cfg.cocharacter == (1, 1, 0)

    def test_neither_input(self):
        with pytest.raises(ValidationError):
            parse_config(json.dumps({"q": 3, "group": {"builder": "gl", "n": 3}}))

    def test_both_inputs(self):
        doc = dict(UNITARY3)
        doc["cocharacter"] = [1, 0, 0]
        with pytest.raises(ValidationError):
            parse_config(json.dumps(doc))

    def test_q_bound(self):
        doc = dict(UNITARY3)
        doc["q"] = 1
        with pytest.raises(ValidationError):
            parse_config(json.dumps(doc))

    def test_unknown_keys_rejected(self):
        doc = dict(UNITARY3)
        doc["frobnicate"] = True
        with pytest.raises(ValidationError):
            parse_config(json.dumps(doc))
        bad_group = {"q": 3, "group": {"builder": "gl", "n": 3, "m": 1},
                     "parabolic_type": []}
        with pytest.raises(ValidationError):
            parse_config(json.dumps(bad_group))

    def test_malformed_json_reports_position(self):
        with pytest.raises(ParseError) as info:
            parse_config("{\n  \"q\": 3,,\n}")
        assert "line" in str(info.value) and "column" in str(info.value)

    def test_one_based_indices(self):
        doc = dict(UNITARY3)
        doc["parabolic_type"] = [0]
        with pytest.raises(ValidationError):
            parse_config(json.dumps(doc))


class TestRun:
    def test_hasse_unitary3(self):
        report = run("hasse", parse_config(json.dumps(UNITARY3)))
        d = report.data
        assert d["invariant_factors"] == ["1", "4", "8"]
        assert d["hasse_number"] == "8"
        assert d["J"] == [1] and d["J0"] == []
        assert not report.obstructed

    def test_orbits_gl2(self):
        report = run("orbits", parse_config(json.dumps(GL2_BOREL)))
        d = report.data
        assert len(d["orbits"]) == 2
        assert len(d["codim1"]) == 1
        assert d["pic_rank"] == 1

    def test_picard_adjoint(self):
        report = run("picard", parse_config(json.dumps(PGL3_FULL)))
        assert report.data["picard"] == ["3"]
        assert not report.obstructed  # picard alone is fine

    def test_pgl_obstruction(self):
        report = run("hasse", parse_config(json.dumps(PGL3_FULL)))
        assert report.obstructed
        assert report.data["warnings"][0]["code"] == "PicObstruction"
        assert report.data["pic_L0_trivial"] is False

    def test_all_sections_present(self):
        report = run("all", parse_config(json.dumps(HB3)))
        d = report.data
        for key in ("zeta", "det_zeta", "invariant_factors", "hasse_number",
                    "orbits", "codim1", "positivity", "picard", "warnings"):
            assert key in d
        assert d["hasse_number"] == "7"

    def test_invalid_node(self):
        doc = {"q": 3, "group": {"builder": "gl", "n": 3}, "parabolic_type": [5]}
        with pytest.raises(ValidationError):
            run("hasse", parse_config(json.dumps(doc)))


class TestDeterminism:
    @pytest.mark.parametrize("doc", [UNITARY3, GL2_BOREL, HB3])
    def test_byte_identical_json(self, doc):
        text = json.dumps(doc)
        first = render_json(run("all", parse_config(text)))
        second = render_json(run("all", parse_config(text)))
        assert first.encode() == second.encode()

    def test_round_trip_lossless(self):
        rendered = render_json(run("all", parse_config(json.dumps(UNITARY3))))
        doc = json.loads(rendered)
        assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == rendered

    def test_text_carries_same_numbers(self):
        report = run("all", parse_config(json.dumps(UNITARY3)))
        text = render_text(report)
        d = report.data
        assert d["hasse_number"] in text
        assert d["det_zeta"] in text
        for f in d["invariant_factors"]:
            assert f in text


class TestMainEntry:
    def test_exit_zero(self):
        code, out, err = run_cli(["hasse"], json.dumps(UNITARY3))
        assert code == 0
        assert json.loads(out)["hasse_number"] == "8"

    def test_exit_two_on_bad_input(self):
        code, out, err = run_cli(["hasse"], "{nope")
        assert code == 2
        assert "ParseError" in err

    def test_exit_two_on_validation(self):
        code, out, err = run_cli(["hasse"], json.dumps({"q": 1}))
        assert code == 2

    def test_exit_three_on_obstruction_with_partial_report(self):
        code, out, err = run_cli(["all"], json.dumps(PGL3_FULL))
        assert code == 3
        doc = json.loads(out)
        assert doc["picard"] == ["3"]
        assert doc["warnings"][0]["code"] == "PicObstruction"
        assert "PicObstruction" in err

    def test_weyl_cap_flag(self):
        code, out, err = run_cli(["orbits", "--weyl-cap", "2"], json.dumps(UNITARY3))
        assert code == 3
        assert json.loads(out)["warnings"][0]["code"] == "WeylGroupTooLarge"

    def test_text_format(self):
        code, out, err = run_cli(["hasse", "--format", "text"], json.dumps(UNITARY3))
        assert code == 0
        assert "hasse:" in out

    def test_file_input(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(UNITARY3))
        code, out, err = run_cli(["hasse", "--input", str(path)], "")
        assert code == 0

    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ziphasse", "hasse"],
            input=json.dumps(UNITARY3), capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["hasse_number"] == "8"
