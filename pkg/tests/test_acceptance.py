"""Acceptance criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or
directly with ``python3 tests/test_acceptance.py``.
"""
import json
import os
import subprocess
import sys

import pytest

from fusionkit import datasets
from fusionkit.characters import (character_inner, codegrees, irreducible_characters)
from fusionkit.clifford import (all_extensions, fixed_counts, fixed_point_routes, phi_fixed_irreps,
                                regauge, roots_of_unity)
from fusionkit.errors import ConsistencyFailure, ValidationError
from fusionkit.fusion_data import bundle_from_json, load_bundle, require_verified, verify_bundle
from fusionkit.multiplicity import (crossed_s_matrix, formula_multiplicities, formula_values,
                                    restriction_multiplicities, sqrt_global_dimension,
                                    trace_identity_failures, verify_modular_formula)
from fusionkit.oracle import compare_characters, oracle_multiplicities
from fusionkit.scalars import E, CycloNumber, is_totally_positive, nth_root_gauge

SQRT2 = E(8) + E(8) ** 7
NAMES = datasets.names()

_bundles = {}


def bundle(name):
    if name not in _bundles:
        _bundles[name] = load_bundle(name)
    return _bundles[name]


def centered():
    return [n for n in NAMES if bundle(n).has_center]


def ising_obj():
    return json.loads(datasets.path("ising").read_text())


# ---------------------------------------------------------------------------
# criteria: each returns (passed, detail)

def criterion_1():
    D = bundle("rep_s3").D
    chars = irreducible_characters(D)
    fs = codegrees(D)
    exact = all(isinstance(f, CycloNumber) for f in fs)
    ok_f = exact and sorted(f.as_fraction() for f in fs) == [2, 3, 6]
    ortho = all(character_inner(a, b) == (a.codegree * a.dim if a is b else 0)
                for a in chars for b in chars)
    oracle = compare_characters(D, chars).passed
    return ok_f and ortho and oracle, f"codegrees {sorted(str(f) for f in fs)}, orthogonality {ortho}, oracle {oracle}"


def criterion_2():
    exts = all_extensions(bundle("ising_graded"))
    if len(exts) != 1:
        return False, f"{len(exts)} twisted characters"
    tw = exts[0].twisted_character
    total = sum((v * v.conjugate() for v in tw.values()), CycloNumber.rational(0))
    want = exts[0].base.codegree * exts[0].base.dim
    return total == 2 and want == 2, f"sum |chi~|^2 = {total}, f dim = {want}"


def criterion_3():
    """Literal reading: |Z_a| = |Phi^a-fixed chars of Z_0| = |Phi^a-fixed irreps of D_0|."""
    bad = []
    for name in centered():
        b = bundle(name)
        for a in range(b.N):
            c = fixed_counts(b, a)
            if not (c.z_basis == c.z_fixed_characters == c.d_fixed_irreps):
                bad.append(f"{name} a={a}: {c.z_basis}/{c.z_fixed_characters}/{c.d_fixed_irreps}")
    return not bad, "; ".join(bad[:4]) + (" ..." if len(bad) > 4 else "")


def criterion_3_z_side():
    """The counting identity on the center side, plus the D-side relative-center count."""
    bad = []
    for name in centered():
        b = bundle(name)
        for a in range(b.N):
            c = fixed_counts(b, a)
            if not (c.z_basis == c.z_fixed_objects == c.z_fixed_characters == c.z_surviving
                    and c.d_fixed_irreps == c.d_relcenter_dim):
                bad.append(f"{name} a={a}")
    return not bad, "; ".join(bad)


def criterion_4():
    routes = all(fixed_point_routes(bundle(n), a).agree()
                 for n in centered() for a in range(bundle(n).N))
    obj = ising_obj()
    obj["zeta"][4] = [0, 0, 2]
    corrupted = bundle_from_json(obj)
    zeta_caught = not verify_bundle(corrupted).get("zeta-homomorphism").passed
    try:
        require_verified(corrupted)
        zeta_caught = False
    except ValidationError:
        pass
    obj = ising_obj()
    obj["phi"] = {"1": "1", "e": "f", "f": "e", "m": "m"}
    swap_caught = not verify_bundle(bundle_from_json(obj)).get("crossed-relation").passed
    obj = ising_obj()
    obj["phi"] = {k: k for k in ("1", "e", "m", "f")}
    try:
        phi_fixed_irreps(bundle_from_json(obj))
        id_caught = False
    except ConsistencyFailure:
        id_caught = True
    ok = routes and zeta_caught and swap_caught and id_caught
    return ok, (f"routes agree {routes}, corrupted zeta {zeta_caught}, Phi=e<->f {swap_caught}, "
                f"Phi=id {id_caught}")


def _delta_in_flux(table):
    rows_ok = all(sorted(r) == [0] * (len(r) - 1) + [1] for r in table.entries)
    return rows_ok and all(sum(c) == len(table.cols) for c in zip(*table.entries))


def criterion_5():
    bad = []
    for name in centered():
        b = bundle(name)
        form, restr = formula_multiplicities(b), restriction_multiplicities(b)
        orc = oracle_multiplicities(b)
        exact = all(isinstance(v, CycloNumber) for r in formula_values(b) for v in r)
        nonneg = all(isinstance(v, int) and v >= 0 for r in form.entries for v in r)
        if not (form == restr and form.entries == orc and exact and nonneg):
            bad.append(name)
    delta = all(_delta_in_flux(restriction_multiplicities(bundle(n))) for n in ("vec_z2", "vec_z3"))
    return not bad and delta, f"mismatch on {bad}" if bad else f"{len(centered())} bundles, delta {delta}"


def criterion_6():
    bad = []
    for name in centered():
        b = bundle(name)
        base = json.dumps(formula_multiplicities(b).to_dict())
        for w in roots_of_unity(b.N):
            exts = [regauge(x, w) for x in all_extensions(b)]
            if json.dumps(formula_multiplicities(b, exts).to_dict()) != base:
                bad.append(f"{name} w={w}")
    return not bad, "; ".join(bad)


def criterion_7():
    bad = {}
    for name in centered():
        b = bundle(name)
        fails = trace_identity_failures(b, restriction_multiplicities(b), all_extensions(b))
        if fails:
            bad[name] = fails
    return not bad, str(bad) if bad else ""


def criterion_8():
    b = bundle("ising_graded")
    cs = crossed_s_matrix(b)
    shape = len(cs.entries) == 2 and all(len(r) == 2 for r in cs.entries)
    row1 = cs.rows.index("1")
    first = all(x == SQRT2 for x in cs.entries[row1])
    sqrt_d = sqrt_global_dimension(b)
    rep = verify_modular_formula(b)
    ok = (shape and first and sqrt_d == 2 and rep.get("codegree-times-dim").passed
          and rep.get("modular-formula").passed)
    return ok, f"S~ rows {cs.rows}, sqrt(dim Z) = {sqrt_d}, report {'PASS' if rep.passed else 'FAIL'}"


def criterion_9():
    r = nth_root_gauge(2, 2)
    exact = isinstance(r, CycloNumber) and r == E(8) + E(8) ** 7
    bad = []
    for name in NAMES:
        b = bundle(name)
        for ring in (b.D, b.Z):
            if ring is not None:
                bad += [f"{ring.name}:{f}" for f in codegrees(ring) if not is_totally_positive(f)]
    return exact and not bad, f"root {r}, non-positive codegrees {bad}"


def criterion_10():
    env = dict(os.environ)
    procs = []
    for name in NAMES:
        for seed in ("0", "1"):
            env_k = dict(env, PYTHONHASHSEED=seed)
            procs.append((name, subprocess.Popen([sys.executable, "-m", "fusionkit", "report", name],
                                                 stdout=subprocess.PIPE, env=env_k)))
    outs = {}
    for name, p in procs:
        out, _ = p.communicate()
        outs.setdefault(name, []).append((p.returncode, out))
    bad = [n for n, runs in outs.items() if runs[0] != runs[1] or not runs[0][1]]
    return not bad, f"differs on {bad}" if bad else f"{len(outs)} bundles, two runs each"


CRITERIA = [
    ("1", "character theory on rep_s3", criterion_1),
    ("2", "twisted orthogonality on ising_graded", criterion_2),
    ("3", "counting, literal (|Z_a| = fixed chars of Z = fixed irreps of D)", criterion_3),
    ("3z", "counting, center side and relative-center side", criterion_3_z_side),
    ("4", "fixed-point routes agree, fault fixtures caught", criterion_4),
    ("5", "formula = restriction = oracle, delta pattern, integrality", criterion_5),
    ("6", "gauge invariance", criterion_6),
    ("7", "trace identity", criterion_7),
    ("8", "crossed S-matrix on ising_graded", criterion_8),
    ("9", "exact sqrt(2) gauge root, totally positive codegrees", criterion_9),
    ("10", "report determinism", criterion_10),
]


def line(key, title, fn):
    try:
        ok, detail = fn()
    except Exception as exc:          # a crash is a failure of that criterion only
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return ok, f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {title}" + (f" ({detail})" if detail else "")


@pytest.mark.parametrize("key,title,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(key, title, fn, capsys):
    ok, text = line(key, title, fn)
    with capsys.disabled():
        print("\n" + text)
    assert ok, text


if __name__ == "__main__":
    results = [line(*c) for c in CRITERIA]
    for _, text in results:
        print(text)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
