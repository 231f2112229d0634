"""Batch command-line surface: parse a datum config, run pipelines, report.

Input is a JSON document describing one datum; output is a flat,
deterministic report in JSON (integers that may grow with q^d are serialized
as decimal strings) or a plain-text rendering of the same numbers.  Node
indices are 1-based on the wire and 0-based internally.

Exit codes: 0 success, 2 input error, 3 computation obstruction (a partial
report is still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import positivity, root_datum, weyl, zip_core


class ParseError(ValueError):
    """Malformed input document."""


class ValidationError(ValueError):
    """Well-formed document with invalid content."""


COMMANDS = ("hasse", "orbits", "positivity", "picard", "all")

_TOP_KEYS = {"q", "group", "cocharacter", "parabolic_type", "options"}
_OPTION_KEYS = {"weyl_cap", "format"}
_GROUP_KEYS = {
    "gl": {"n"},
    "unitary": {"n"},
    "gsp": {"dim"},
    "simple": {"series", "rank", "isogeny"},
    "product": {"factors"},
    "weil_restriction": {"copies", "inner"},
}


@dataclass
class DatumConfig:
    q: int
    group: dict
    cocharacter: Optional[tuple]
    parabolic_type: Optional[tuple]  # 0-based
    weyl_cap: int
    fmt: Optional[str]


def _require_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError("%s must be an integer, got %r" % (what, value))
    return value


def _validate_group(spec) -> dict:
    if not isinstance(spec, dict):
        raise ValidationError("group must be an object")
    builder = spec.get("builder")
    if builder not in _GROUP_KEYS:
        raise ValidationError("unknown builder %r" % (builder,))
    allowed = _GROUP_KEYS[builder] | {"builder"}
    unknown = set(spec) - allowed
    if unknown:
        raise ValidationError("unknown group keys %s" % (sorted(unknown),))
    out = {"builder": builder}
    if builder in ("gl", "unitary"):
        out["n"] = _require_int(spec.get("n"), "n")
    elif builder == "gsp":
        out["dim"] = _require_int(spec.get("dim"), "dim")
    elif builder == "simple":
        out["series"] = spec.get("series")
        out["rank"] = _require_int(spec.get("rank"), "rank")
        out["isogeny"] = spec.get("isogeny", "simply_connected")
        if not isinstance(out["series"], str):
            raise ValidationError("series must be a string")
        if out["isogeny"] not in ("simply_connected", "adjoint"):
            raise ValidationError("isogeny must be simply_connected or adjoint")
    elif builder == "product":
        factors = spec.get("factors")
        if not isinstance(factors, list) or not factors:
            raise ValidationError("factors must be a non-empty list")
        out["factors"] = [_validate_group(f) for f in factors]
    elif builder == "weil_restriction":
        out["copies"] = _require_int(spec.get("copies"), "copies")
        out["inner"] = _validate_group(spec.get("inner"))
    return out


def parse_config(text: str) -> DatumConfig:
    """Parse and validate one JSON config document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg))
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ValidationError("unknown keys %s" % (sorted(unknown),))

    q = _require_int(doc.get("q"), "q")
    if q < 2:
        raise ValidationError("q must be >= 2")
    if "group" not in doc:
        raise ValidationError("missing group")
    group = _validate_group(doc["group"])

    has_cochar = "cocharacter" in doc
    has_parab = "parabolic_type" in doc
    if has_cochar == has_parab:
        raise ValidationError(
            "exactly one of cocharacter or parabolic_type is required")
    cochar = None
    parab = None
    if has_cochar:
        raw = doc["cocharacter"]
        if not isinstance(raw, list):
            raise ValidationError("cocharacter must be a list of integers")
        cochar = tuple(_require_int(x, "cocharacter entry") for x in raw)
    else:
        raw = doc["parabolic_type"]
        if not isinstance(raw, list):
            raise ValidationError("parabolic_type must be a list of indices")
        nodes = [_require_int(x, "parabolic_type entry") for x in raw]
        if any(x < 1 for x in nodes):
            raise ValidationError("parabolic_type indices are 1-based")
        if len(set(nodes)) != len(nodes):
            raise ValidationError("parabolic_type has repeated indices")
        parab = tuple(sorted(x - 1 for x in nodes))

    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ValidationError("options must be an object")
    unknown = set(options) - _OPTION_KEYS
    if unknown:
        raise ValidationError("unknown option keys %s" % (sorted(unknown),))
    cap = options.get("weyl_cap", weyl.DEFAULT_CAP)
    cap = _require_int(cap, "weyl_cap")
    fmt = options.get("format")
    if fmt is not None and fmt not in ("json", "text"):
        raise ValidationError("format must be json or text")
    return DatumConfig(q=q, group=group, cocharacter=cochar,
                       parabolic_type=parab, weyl_cap=cap, fmt=fmt)


@dataclass
class Report:
    data: dict
    warnings: list
    obstructed: bool


def _nodes_out(nodes) -> list:
    return [i + 1 for i in sorted(nodes)]


def _frac_str(x: Fraction) -> str:
    return str(x)


def _positivity_section(zd) -> list:
    """Reports for the canonical ample character -sum(omega_i, i outside J)."""
    rd = zd.rd
    weights = root_datum.fundamental_weights(rd, zd.J)
    lam = tuple(-sum(w[a] for w in weights.values()) for a in range(rd.rank)) \
        if weights else tuple(Fraction(0) for _ in range(rd.rank))
    entry = {"character": [_frac_str(x) for x in lam]}
    tag = rd.builder_tag
    is_weil = tag[0] == "weil_restriction"
    rational = {zd.frob.root_perm[j] for j in zd.J} == set(zd.J)
    if rational:
        rep = positivity.hasse_divisor_coeffs(zd, lam)
        entry.update({
            "kind": "divisor_coefficients",
            "borel_coefficients": [_frac_str(c) for c in rep.borel_coefficients],
            "negative_count": rep.negative_count,
            "verdict": rep.verdict,
            "antiample_certified": rep.antiample_certified,
            "zeta_inverse_image": [_frac_str(x) for x in rep.zeta_inverse_image],
        })
    elif is_weil:
        entry.update({
            "kind": "weil_pullback",
            "certified": positivity.weil_pullback_check(zd, lam),
            "verdict": positivity.NOT_APPLICABLE,
        })
    else:
        entry.update({"kind": "uncovered", "verdict": positivity.NOT_APPLICABLE})
    return [entry]


def run(command: str, cfg: DatumConfig) -> Report:
    """Run the requested pipelines and assemble a flat report."""
    if command not in COMMANDS:
        raise ValidationError("unknown command %r" % (command,))
    try:
        rd, frob = root_datum.build_group(cfg.group, cfg.q)
        zd = zip_core.build_zip_datum(
            rd, frob,
            cocharacter=cfg.cocharacter,
            parabolic=cfg.parabolic_type if cfg.cocharacter is None else None)
    except (root_datum.UnsupportedSeriesError, root_datum.InvalidRankError,
            root_datum.InvalidQError, zip_core.NonNormalizedCocharacterError,
            ValueError) as exc:
        raise ValidationError(str(exc))

    data = {"q": cfg.q, "group": cfg.group}
    if cfg.cocharacter is not None:
        data["cocharacter"] = list(cfg.cocharacter)
    else:
        data["parabolic_type"] = _nodes_out(cfg.parabolic_type)
    data["J"] = _nodes_out(zd.J)
    data["K"] = _nodes_out(zd.K)
    data["J0"] = _nodes_out(zd.J0)
    warnings = []
    obstructed = False

    if command in ("hasse", "all"):
        try:
            report = zip_core.s0_characters(zd)
        except zip_core.PicObstructionError as exc:
            report = exc.report
            warnings.append({"code": "PicObstruction", "detail": str(exc)})
            obstructed = True
        data["zeta"] = [list(report.zeta.row(i)) for i in range(report.zeta.rows)]
        data["det_zeta"] = str(report.det_zeta)
        data["invariant_factors"] = [str(f) for f in report.invariant_factors]
        data["hasse_number"] = str(report.hasse_number)
        data["s0_order"] = str(report.s0_order)
        data["pic_L0_trivial"] = report.pic_L0_trivial

    if command in ("orbits", "all"):
        try:
            W = weyl.enumerate_weyl(rd, cap=cfg.weyl_cap)
        except weyl.WeylGroupTooLargeError as exc:
            warnings.append({"code": "WeylGroupTooLarge", "detail": str(exc)})
            obstructed = True
        else:
            census = zip_core.orbit_census(zd, W)
            data["orbits"] = [
                {"word": [i + 1 for i in o.word], "length": o.length,
                 "dim": o.dim, "codim": o.codim}
                for o in census.orbits
            ]
            data["codim1"] = [
                {"node": s + 1, "orbit": pos}
                for s, pos in census.codim1_indices
            ]
            data["eta_length"] = census.eta_length
            data["pic_rank"] = zip_core.pic_rank(zd)

    if command in ("positivity", "all"):
        data["positivity"] = _positivity_section(zd)

    if command in ("picard", "all"):
        data["picard"] = [str(f) for f in root_datum.picard_torsion(rd)]

    data["warnings"] = warnings
    return Report(data=data, warnings=warnings, obstructed=obstructed)


def render_json(report: Report) -> str:
    return json.dumps(report.data, sort_keys=True, indent=2) + "\n"


def render_text(report: Report) -> str:
    d = report.data
    lines = []
    group = json.dumps(d["group"], sort_keys=True)
    lines.append("datum: q=%d group=%s" % (d["q"], group))
    lines.append("types: J=%s K=%s J0=%s" % (d["J"], d["K"], d["J0"]))
    if "hasse_number" in d:
        lines.append("hasse: invariant_factors=%s hasse_number=%s s0_order=%s "
                     "det_zeta=%s pic_L0_trivial=%s"
                     % (d["invariant_factors"], d["hasse_number"],
                        d["s0_order"], d["det_zeta"], d["pic_L0_trivial"]))
        lines.append("zeta: %s" % (d["zeta"],))
    if "orbits" in d:
        lines.append("orbits: count=%d eta_length=%d codim1=%d pic_rank=%d"
                     % (len(d["orbits"]), d["eta_length"], len(d["codim1"]),
                        d["pic_rank"]))
        for o in d["orbits"]:
            lines.append("  orbit word=%s length=%d dim=%d codim=%d"
                         % (o["word"], o["length"], o["dim"], o["codim"]))
    if "positivity" in d:
        for entry in d["positivity"]:
            lines.append("positivity: %s" % (json.dumps(entry, sort_keys=True),))
    if "picard" in d:
        lines.append("picard: torsion=%s" % (d["picard"],))
    for w in d.get("warnings", []):
        lines.append("warning: %s: %s" % (w["code"], w["detail"]))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ziphasse",
        description="Hasse-invariant combinatorics of zip data")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", default="-",
                        help="config path or - for stdin (default)")
    parser.add_argument("--format", choices=("json", "text"), default=None)
    parser.add_argument("--weyl-cap", type=int, default=None)
    args = parser.parse_args(argv)

    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, "r", encoding="utf-8") as handle:
                text = handle.read()
    except OSError as exc:
        print("ziphasse: %s" % (exc,), file=sys.stderr)
        return 2

    try:
        cfg = parse_config(text)
        if args.weyl_cap is not None:
            cfg.weyl_cap = args.weyl_cap
        report = run(args.command, cfg)
    except (ParseError, ValidationError) as exc:
        print("ziphasse: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2

    fmt = args.format or cfg.fmt or "json"
    if fmt == "json":
        sys.stdout.write(render_json(report))
    else:
        sys.stdout.write(render_text(report))
    for w in report.warnings:
        print("ziphasse: %s: %s" % (w["code"], w["detail"]), file=sys.stderr)
    return 3 if report.obstructed else 0
