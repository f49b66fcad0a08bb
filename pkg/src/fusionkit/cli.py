"""Command-line interface: ``fusionkit <command> BUNDLE [options]``.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
usage or input errors.  Output depends only on the input file and flags.
"""
from __future__ import annotations

import argparse
import difflib
import json
import sys

from . import __version__
from .characters import irreducible_characters, verify_characters
from .clifford import all_extensions
from .errors import FusionKitError, ParseError
from .fusion_data import load_bundle, validate, validate_smatrix, verify_bundle
from .multiplicity import (counting_checks, crossed_s_matrix, fixed_point_checks,
                           formula_multiplicities, restriction_multiplicities,
                           twisted_orthogonality, verify_main_theorem, verify_modular_formula)
from .reports import VerificationReport
from .scalars import default_precision, format_scalar

GAUGE_CONVENTION = ("gauge: v = e_E r for the first grade-1 relative-center basis element r "
                    "with e_E r != 0, scaled so its first nonzero coordinate is 1; "
                    "v^N = lambda e_E and m = v / lambda^(1/N) with the principal root, so m^N = e_E")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# tables

_BOX = {"h": "─", "v": "│", "tl": "┌", "tm": "┬", "tr": "┐", "ml": "├", "mm": "┼", "mr": "┤",
        "bl": "└", "bm": "┴", "br": "┘"}
_ASCII = {"h": "-", "v": "|", "tl": "+", "tm": "+", "tr": "+", "ml": "+", "mm": "+", "mr": "+",
          "bl": "+", "bm": "+", "br": "+"}


def render_table(header: list[str], rows: list[list[str]], ascii_only: bool = False) -> str:
    g = _ASCII if ascii_only else _BOX
    widths = [max(len(str(r[c])) for r in [header] + rows) for c in range(len(header))]

    def rule(left, mid, right):
        return left + mid.join(g["h"] * (w + 2) for w in widths) + right

    def line(cells):
        return g["v"] + g["v"].join(f" {str(c):<{w}} " for c, w in zip(cells, widths)) + g["v"]

    out = [rule(g["tl"], g["tm"], g["tr"]), line(header), rule(g["ml"], g["mm"], g["mr"])]
    out += [line(r) for r in rows]
    out.append(rule(g["bl"], g["bm"], g["br"]))
    return "\n".join(out)


def _table_text(title: str, rows: list[str], cols: list[str], entries, ascii_only: bool) -> str:
    body = [[r] + [str(x) for x in row] for r, row in zip(rows, entries)]
    return f"{title}\n" + render_table([""] + cols, body, ascii_only)


# ---------------------------------------------------------------------------
# helpers

def _ring(bundle, which: str):
    if which == "Z":
        if bundle.Z is None:
            raise UsageError(f"bundle {bundle.name!r} has no ring_Z")
        return bundle.Z
    return bundle.D


def _need_center(bundle):
    if bundle.Z is None:
        raise UsageError(f"bundle {bundle.name!r} has no ring_Z; this command needs a center bundle")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=1, ensure_ascii=False, sort_keys=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _report_payload(reports: list, command: str, bundle) -> dict:
    return {"command": command, "bundle": bundle.name,
            "status": "pass" if all(r.passed for r in reports) else "fail",
            "reports": [r.to_dict() for r in reports]}


def _report_text(reports: list) -> str:
    lines = []
    for r in reports:
        lines.extend(r.lines())
    ok = all(r.passed for r in reports)
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines)


def _validation_reports(bundle) -> list:
    reps = [validate(bundle.D)]
    if bundle.Z is not None:
        reps.append(validate(bundle.Z))
        reps.append(verify_bundle(bundle))
        if bundle.smatrix is not None:
            reps.append(validate_smatrix(bundle))
    return reps


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args, bundle) -> int:
    reps = _validation_reports(bundle)
    _emit(args, _report_payload(reps, "validate", bundle), _report_text(reps))
    return 0 if all(r.passed for r in reps) else 1


def _characters_payload(ring) -> tuple[dict, list]:
    chars = irreducible_characters(ring)
    labels = [ring.labels[i] for i in ring.grade_indices(0)]
    items = [{"name": ch.name, "dim": format_scalar(ch.dim), "codegree": format_scalar(ch.codegree),
              "values": {lab: format_scalar(ch.values[lab]) for lab in labels}} for ch in chars]
    return {"ring": ring.name, "labels": labels, "characters": items}, chars


def cmd_chartable(args, bundle) -> int:
    ring = _ring(bundle, args.ring)
    payload, _ = _characters_payload(ring)
    header = ["", "dim", "codegree"] + payload["labels"]
    rows = [[c["name"], c["dim"], c["codegree"]] + [c["values"][lab] for lab in payload["labels"]]
            for c in payload["characters"]]
    text = f"character table of {ring.name} (grade 0)\n" + render_table(header, rows, args.ascii)
    _emit(args, {"command": "chartable", **payload}, text)
    return 0


def cmd_codegrees(args, bundle) -> int:
    ring = _ring(bundle, args.ring)
    payload, _ = _characters_payload(ring)
    rep = verify_characters(ring)
    items = [{"name": c["name"], "dim": c["dim"], "codegree": c["codegree"],
              "totally_positive": rep.get(f"codegree-{c['name']}-totally-positive").passed}
             for c in payload["characters"]]
    rows = [[c["name"], c["dim"], c["codegree"], "yes" if c["totally_positive"] else "NO"]
            for c in items]
    text = (f"formal codegrees of {ring.name}\n"
            + render_table(["", "dim", "codegree", "totally positive"], rows, args.ascii))
    _emit(args, {"command": "codegrees", "ring": ring.name, "codegrees": items}, text)
    return 0 if rep.passed else 1


def cmd_twisted(args, bundle) -> int:
    _need_center(bundle)
    D = bundle.D
    exts = all_extensions(bundle)
    blocks = [f"twisted characters of {bundle.name} (N = {bundle.N})", GAUGE_CONVENTION]
    items = []
    for x in exts:
        per_grade = {}
        for a in range(bundle.N):
            labs = [D.labels[i] for i in D.grade_indices(a)]
            per_grade[str(a)] = {lab: format_scalar(x.twisted_values[a][lab]) for lab in labs}
        m = {D.labels[i]: format_scalar(c) for i, c in enumerate(x.m.coeffs) if c != 0}
        items.append({"irrep": x.base.name, "dim": format_scalar(x.base.dim),
                      "lambda": format_scalar(x.lam), "gauge": format_scalar(x.gauge),
                      "values": per_grade, "m": m})
        blocks.append("")
        blocks.append(f"{x.base.name}: dim {items[-1]['dim']}, lambda = {items[-1]['lambda']}, "
                      f"m = " + " + ".join(f"({v})*{k}" for k, v in m.items()))
        for a in range(bundle.N):
            labs = list(per_grade[str(a)])
            if labs:
                blocks.append(f"grade {a}")
                blocks.append(render_table(labs, [[per_grade[str(a)][l] for l in labs]], args.ascii))
    if not exts:
        blocks.append("no Phi-fixed irreducibles")
    payload = {"command": "twisted", "bundle": bundle.name, "grading_order": bundle.N,
               "gauge_convention": GAUGE_CONVENTION, "extensions": items}
    _emit(args, payload, "\n".join(blocks))
    return 0


def cmd_mult(args, bundle) -> int:
    _need_center(bundle)
    restr = restriction_multiplicities(bundle)
    payload = {"command": "mult", "bundle": bundle.name, "restriction": restr.to_dict()}
    text = [_table_text("restriction multiplicities (rows: Z grade 1, cols: D grade 1)",
                        restr.rows, restr.cols, restr.entries, args.ascii)]
    code = 0
    if args.verify:
        form = formula_multiplicities(bundle)
        payload["formula"] = form.to_dict()
        payload["match"] = form == restr
        text.append(_table_text("character formula multiplicities", form.rows, form.cols,
                                form.entries, args.ascii))
        if form == restr:
            text.append("tables agree")
        else:
            code = 1
            a = _table_text("restriction", restr.rows, restr.cols, restr.entries, True).splitlines()
            b = _table_text("formula", form.rows, form.cols, form.entries, True).splitlines()
            diff = list(difflib.unified_diff(a, b, "restriction", "formula", lineterm=""))
            payload["diff"] = diff
            text.append("tables differ:\n" + "\n".join(diff))
    _emit(args, payload, "\n".join(text))
    return code


def cmd_crossed_s(args, bundle) -> int:
    _need_center(bundle)
    cs = crossed_s_matrix(bundle)
    text = _table_text("crossed S-matrix (rows: Phi-fixed Z grade 0, cols: Z grade 1)",
                       cs.rows, cs.cols, [[format_scalar(x) for x in r] for r in cs.entries], args.ascii)
    _emit(args, {"command": "crossed-s", "bundle": bundle.name, **cs.to_dict()}, text)
    return 0


def _oracle_reports(bundle) -> list:
    from .oracle import OracleConfig, compare_characters, oracle_multiplicities, oracle_orthogonality

    config = OracleConfig()
    reps = [compare_characters(bundle.D, irreducible_characters(bundle.D), config)]
    if bundle.Z is not None:
        reps.append(compare_characters(bundle.Z, irreducible_characters(bundle.Z), config))
        rep = VerificationReport(f"oracle multiplicities on {bundle.name}")
        table = restriction_multiplicities(bundle)
        rep.add("oracle-equals-restriction", oracle_multiplicities(bundle) == table.entries, "", "oracle")
        reps.append(rep)
        reps.append(oracle_orthogonality(all_extensions(bundle), config))
    return reps


def _guarded(title: str, fn) -> VerificationReport:
    try:
        return fn()
    except FusionKitError as exc:
        rep = VerificationReport(title)
        rep.add("runs", False, f"{type(exc).__name__}: {exc}")
        return rep


def cmd_report(args, bundle) -> int:
    reps = _validation_reports(bundle)
    valid = all(r.passed for r in reps)
    name = bundle.name
    if valid:
        reps.append(_guarded(f"characters of {bundle.D.name}", lambda: verify_characters(bundle.D)))
        if bundle.Z is not None:
            reps.append(_guarded(f"characters of {bundle.Z.name}", lambda: verify_characters(bundle.Z)))
            reps.append(_guarded(f"fixed-point routes on {name}", lambda: fixed_point_checks(bundle)))
            reps.append(_guarded(f"fixed-point counts on {name}", lambda: counting_checks(bundle)))
            reps.append(_guarded(f"twisted orthogonality on {name}", lambda: twisted_orthogonality(bundle)))
        if args.with_oracle:
            reps.extend(_oracle_reports(bundle))
    if bundle.Z is not None:
        reps.append(_guarded(f"main theorem on {name}", lambda: verify_main_theorem(bundle)))
        if valid and bundle.smatrix is not None:
            reps.append(_guarded(f"modular formula on {name}", lambda: verify_modular_formula(bundle)))
    payload = _report_payload(reps, "report", bundle)
    payload["precision"] = default_precision()
    _emit(args, payload, _report_text(reps))
    return 0 if all(r.passed for r in reps) else 1


COMMANDS = {
    "validate": (cmd_validate, "check ring axioms and center-bundle structure"),
    "chartable": (cmd_chartable, "grade-0 character table with dims and codegrees"),
    "codegrees": (cmd_codegrees, "formal codegrees and their total positivity"),
    "twisted": (cmd_twisted, "twisted characters of every Phi-fixed irreducible"),
    "mult": (cmd_mult, "restriction multiplicity table"),
    "crossed-s": (cmd_crossed_s, "crossed S-matrix of a modular bundle"),
    "report": (cmd_report, "run every verification and summarize"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionkit",
        description="Character tables, twisted characters and multiplicity tables of graded based rings.",
        epilog="Exit status: 0 all checks pass, 1 a check fails, 2 usage or input error.")
    parser.add_argument("--version", action="version", version=f"fusionkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("bundle", help="bundle JSON file or bundled dataset name")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--ascii", action="store_true", help="plain ASCII tables")
        if name in ("chartable", "codegrees"):
            p.add_argument("--ring", choices=["D", "Z"], default="D", help="which ring (default D)")
        if name == "mult":
            p.add_argument("--verify", action="store_true",
                           help="also compute the character formula and compare")
        if name == "report":
            p.add_argument("--with-oracle", action="store_true",
                           help="cross-check against the numeric oracle")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else 2
    try:
        default_precision()
        bundle = load_bundle(args.bundle)
        return COMMANDS[args.command][0](args, bundle)
    except (ParseError, UsageError) as exc:
        print(f"fusionkit: error: {exc}", file=sys.stderr)
        return 2
    except FusionKitError as exc:
        print(f"fusionkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


__all__ = ["main", "build_parser", "render_table", "GAUGE_CONVENTION", "COMMANDS"]
