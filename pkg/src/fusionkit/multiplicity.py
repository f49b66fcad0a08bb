"""Multiplicity tables m_{A,M} and the identities that compute them from characters.

Ground truth is the zeta matrix: m_{A,M} is the coefficient of M in zeta(A)
for A a grade-1 simple of Z and M a grade-1 simple of D.  The twisted
character formula

    m_{A,M} = sum over Phi-fixed E of conj(rho~_E(A)) chi~_E(M) / f_E

and its modular variant through the crossed S-matrix are checked against it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import linalg
from .characters import (commutative_characters, irreducible_characters, rho_table,
                         smatrix_characters)
from .clifford import (all_extensions, extend_central_character, fixed_point_routes,
                       fixed_counts, gauge_ratio, regauge, rho_phi_fixed, roots_of_unity,
                       twisted_alpha, twisted_inner)
from .errors import ConsistencyFailure, FusionKitError, NonIntegralEntry
from .fusion_data import CenterBundle, assume_verified, require_verified, verify_bundle
from .reports import VerificationReport
from .scalars import as_scalar, format_scalar, is_exact, nth_root_gauge

NUMERIC_INTEGER_TOL = mpmath.mpf(10) ** -12


def _conj(x):
    return x.conjugate() if hasattr(x, "is_numeric") else x


def _inv(x):
    return as_scalar(x).inverse() if is_exact(x) else 1 / x


@dataclass
class MultiplicityTable:
    rows: list[str]      # grade-1 simples of Z
    cols: list[str]      # grade-1 simples of D
    entries: list[list[int]]

    def __eq__(self, other):
        return (isinstance(other, MultiplicityTable) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def to_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.entries}


@dataclass
class CrossedSMatrix:
    rows: list[str]      # Phi-fixed grade-0 simples of Z
    cols: list[str]      # grade-1 simples of Z
    entries: list[list]

    def to_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[format_scalar(x) for x in r] for r in self.entries]}


def _grade1(bundle: CenterBundle) -> int:
    return 1 % bundle.N


def restriction_multiplicities(bundle: CenterBundle) -> MultiplicityTable:
    require_verified(bundle)
    Z, D = bundle.Z, bundle.D
    a = _grade1(bundle)
    zi, di = Z.grade_indices(a), D.grade_indices(a)
    return MultiplicityTable([Z.labels[i] for i in zi], [D.labels[j] for j in di],
                             [[bundle.zeta[i][j] for j in di] for i in zi])


def as_integer(x) -> int:
    """Accept x as an integer: exactly on the exact backend, within 1e-12 otherwise."""
    if is_exact(x):
        x = as_scalar(x)
        if not x.is_integer():
            raise NonIntegralEntry(f"entry {x} is not an integer")
        return int(x.as_fraction())
    n = int(mpmath.nint(x.value.real))
    if abs(x.value - n) > NUMERIC_INTEGER_TOL:
        raise NonIntegralEntry(f"entry {x} is not within 1e-12 of an integer")
    return n


def formula_values(bundle: CenterBundle, extensions=None, **kw) -> list[list]:
    """Raw scalars sum_E conj(rho~_E(A)) chi~_E(M) / f_E before integrality checks."""
    exts = all_extensions(bundle, **kw) if extensions is None else extensions
    Z, D = bundle.Z, bundle.D
    a = _grade1(bundle)
    out = []
    for i in Z.grade_indices(a):
        row = []
        for j in D.grade_indices(a):
            total = Fraction(0)
            for x in exts:
                total = total + (_conj(x.rho_tilde[a][Z.labels[i]]) * x.twisted_values[a][D.labels[j]]
                                 * _inv(x.base.codegree))
            row.append(total)
        out.append(row)
    return out


def formula_multiplicities(bundle: CenterBundle, extensions=None, **kw) -> MultiplicityTable:
    require_verified(bundle)
    exts = all_extensions(bundle, **kw) if extensions is None else extensions
    if not exts and bundle.Z.grade_indices(_grade1(bundle)):
        raise ConsistencyFailure("no Phi-fixed irreducibles, yet grade 1 of Z is nonempty")
    vals = formula_values(bundle, exts, **kw)
    entries = [[as_integer(v) for v in row] for row in vals]
    for row in entries:
        if any(v < 0 for v in row):
            raise NonIntegralEntry("formula produced a negative multiplicity")
    Z, D = bundle.Z, bundle.D
    a = _grade1(bundle)
    return MultiplicityTable([Z.labels[i] for i in Z.grade_indices(a)],
                             [D.labels[j] for j in D.grade_indices(a)], entries)


def trace_identity_failures(bundle: CenterBundle, table: MultiplicityTable, extensions) -> list[str]:
    """Pairs (A, E) violating sum_M m_{A,M} chi~_E(M) = dim E rho~_E(A)."""
    a = _grade1(bundle)
    bad = []
    for x in extensions:
        for r, A in enumerate(table.rows):
            lhs = sum((table.entries[r][c] * x.twisted_values[a][M] for c, M in enumerate(table.cols)),
                      Fraction(0))
            if not linalg.is_zero(lhs - x.base.dim * x.rho_tilde[a][A]):
                bad.append(f"({A},{x.base.name})")
    return bad


def clspan_failures(bundle: CenterBundle, table: MultiplicityTable, extensions) -> list[str]:
    """Rows not equal to sum_E <m_A, chi~_E>/(f_E dim E) chi~_E."""
    a = _grade1(bundle)
    bad = []
    for r, A in enumerate(table.rows):
        row = table.entries[r]
        recon = [Fraction(0)] * len(table.cols)
        for x in extensions:
            coef = sum((row[c] * _conj(x.twisted_values[a][M]) for c, M in enumerate(table.cols)),
                       Fraction(0)) * _inv(x.base.codegree * x.base.dim)
            recon = [s + coef * x.twisted_values[a][M] for s, M in zip(recon, table.cols)]
        if not all(linalg.is_zero(s - v) for s, v in zip(recon, row)):
            bad.append(A)
    return bad


def class_functional_failures(bundle: CenterBundle, table: MultiplicityTable) -> list[str]:
    """Rows whose functional lambda(b_M) = m_{A,M} is not a C-class functional."""
    D = bundle.D
    col_index = {D.index(M): c for c, M in enumerate(table.cols)}
    bad = []
    for r, A in enumerate(table.rows):
        row = table.entries[r]

        def lam(v):
            return sum(v.coeffs[i] * row[c] for i, c in col_index.items())
        ok = True
        for c0 in D.grade_indices(0):
            for x in col_index:
                cb, xb = D.basis_element(c0), D.basis_element(x)
                if lam(cb * xb) != lam(xb * cb):
                    ok = False
        if not ok:
            bad.append(A)
    return bad


def gauge_invariance_failures(bundle: CenterBundle, extensions, **kw) -> list[str]:
    base = formula_values(bundle, extensions, **kw)
    bad = []
    for w in roots_of_unity(bundle.N):
        moved = formula_values(bundle, [regauge(x, w) for x in extensions], **kw)
        if [[format_scalar(v) for v in r] for r in moved] != [[format_scalar(v) for v in r] for r in base]:
            bad.append(format_scalar(w))
    return bad


def _record(rep: VerificationReport, check_id: str, tag: str, fn):
    """Run fn() -> (ok, detail); exceptions become failures."""
    try:
        ok, detail = fn()
    except FusionKitError as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    rep.add(check_id, ok, detail, tag)
    return ok


def verify_main_theorem(bundle: CenterBundle, **kw) -> VerificationReport:
    rep = VerificationReport(f"twisted multiplicity formula on {bundle.name}")
    axioms = verify_bundle(bundle)
    rep.add("bundle-axioms", axioms.passed,
            "; ".join(f"{c.check_id}: {c.detail}" if c.detail else c.check_id for c in axioms.failures()),
            "center bundle")
    with assume_verified(bundle):
        _main_theorem_checks(bundle, rep, **kw)
    return rep


def _main_theorem_checks(bundle: CenterBundle, rep: VerificationReport, **kw):
    state: dict = {}

    def tables():
        state["exts"] = all_extensions(bundle, **kw)
        state["restr"] = restriction_multiplicities(bundle)
        state["formula"] = formula_multiplicities(bundle, state["exts"], **kw)
        same = state["restr"] == state["formula"]
        return same, "" if same else f"formula {state['formula'].entries} vs zeta {state['restr'].entries}"
    if not _record(rep, "formula-equals-restriction", "twisted multiplicity formula", tables):
        if "exts" not in state:
            return
    exts = state["exts"]
    restr = state.get("restr") or restriction_multiplicities(bundle)

    def integral():
        ok = all(v >= 0 for r in restr.entries for v in r)
        vals = formula_values(bundle, exts, **kw)
        for r in vals:
            for v in r:
                as_integer(v)
        return ok, ""
    _record(rep, "integrality", "twisted multiplicity formula", integral)

    def trace():
        bad = trace_identity_failures(bundle, restr, exts)
        return not bad, f"fails at {bad}" if bad else ""
    _record(rep, "trace-identity", "trace identity", trace)

    def clspan():
        bad = clspan_failures(bundle, restr, exts)
        return not bad, f"rows {bad}" if bad else ""
    _record(rep, "class-span-reconstruction", "class functional span", clspan)

    def clfun():
        bad = class_functional_failures(bundle, restr)
        return not bad, f"rows {bad}" if bad else ""
    _record(rep, "class-functional-rows", "class functionals", clfun)

    def gauge():
        bad = gauge_invariance_failures(bundle, exts, **kw)
        return not bad, f"changes under {bad}" if bad else ""
    _record(rep, "gauge-invariance", "gauge", gauge)

    def pairing():
        table = rho_table(bundle, **kw)
        bad = []
        for x in exts:
            intrinsic = extend_central_character(bundle, table[x.base.index], **kw)
            try:
                gauge_ratio(x.rho_tilde, intrinsic.values, bundle.N)
            except FusionKitError as exc:
                bad.append(f"{x.base.name}: {exc}")
        return not bad, "; ".join(bad)
    _record(rep, "extension-pairing", "extended central characters", pairing)


def crossed_s_matrix(bundle: CenterBundle, extensions=None, **kw) -> CrossedSMatrix:
    require_verified(bundle)
    Z, S = bundle.Z, bundle.smatrix
    if S is None:
        raise ConsistencyFailure(f"bundle {bundle.name!r} has no S-matrix")
    exts = all_extensions(bundle, **kw) if extensions is None else extensions
    match = smatrix_characters(bundle, **kw)
    by_row = {match.irrep_to_row[x.base.index]: x for x in exts}
    g0 = Z.grade_indices(0)
    phi = bundle.phi_power(1 % bundle.N)
    a = _grade1(bundle)
    cols = [Z.labels[i] for i in Z.grade_indices(a)]
    zc = commutative_characters(Z, **kw)
    rows, entries = [], []
    for r, i in enumerate(g0):
        if phi[i] != i:
            continue
        A = Z.labels[i]
        k = match.row_to_char[A]
        if not rho_phi_fixed(bundle, zc[k].value_list(), 1 % bundle.N):
            raise ConsistencyFailure(f"object {A} is Phi-fixed but its character is not")
        if A in by_row:
            values = by_row[A].rho_tilde[a]
        else:
            values = extend_central_character(bundle, k, **kw).values[a]
        dim = S.dims[r]
        rows.append(A)
        entries.append([dim * values[M] for M in cols])
    return CrossedSMatrix(rows, cols, entries)


def sqrt_global_dimension(bundle: CenterBundle):
    return nth_root_gauge(bundle.smatrix.global_dimension(), 2)


def verify_modular_formula(bundle: CenterBundle, extensions=None, **kw) -> VerificationReport:
    rep = VerificationReport(f"crossed S-matrix formula on {bundle.name}")
    if bundle.smatrix is None:
        rep.add("has-smatrix", False, "bundle has no S-matrix", "crossed S-matrix")
        return rep
    state: dict = {}

    def build():
        state["exts"] = all_extensions(bundle, **kw) if extensions is None else extensions
        state["St"] = crossed_s_matrix(bundle, state["exts"], **kw)
        St = state["St"]
        square = len(St.rows) == len(St.cols)
        return square, f"{len(St.rows)}x{len(St.cols)}"
    if not _record(rep, "crossed-s-square", "crossed S-matrix", build):
        if "St" not in state:
            return rep
    exts, St = state["exts"], state["St"]
    sq = sqrt_global_dimension(bundle)
    match = smatrix_characters(bundle, **kw)
    Z, S = bundle.Z, bundle.smatrix
    g0 = Z.grade_indices(0)

    def codegree_dims():
        bad = []
        for E in irreducible_characters(bundle.D, **kw):
            A = match.irrep_to_row[E.index]
            dimA = S.dims[g0.index(Z.index(A))]
            if not linalg.is_zero(E.codegree * dimA - sq):
                bad.append(f"{E.name}: f*dim({A}) = {format_scalar(E.codegree * dimA)}")
        return not bad, f"sqrt(dim Z) = {format_scalar(sq)}" + (f"; {bad}" if bad else "")
    _record(rep, "codegree-times-dim", "global dimension", codegree_dims)

    def formula():
        restr = restriction_multiplicities(bundle)
        a = _grade1(bundle)
        row_of = {A: r for r, A in enumerate(St.rows)}
        bad = []
        for r, A in enumerate(restr.rows):
            for c, M in enumerate(restr.cols):
                total = Fraction(0)
                for x in exts:
                    AE = match.irrep_to_row[x.base.index]
                    total = total + St.entries[row_of[AE]][St.cols.index(A)] * _conj(
                        x.twisted_values[a][M])
                total = total * _inv(sq)
                if not linalg.is_zero(total - restr.entries[r][c]):
                    bad.append(f"({A},{M})")
        return not bad, f"fails at {bad}" if bad else ""
    _record(rep, "modular-formula", "crossed S-matrix formula", formula)
    return rep


def counting_checks(bundle: CenterBundle, **kw) -> VerificationReport:
    """Per-grade counts of fixed points compared in several ways."""
    rep = VerificationReport(f"fixed-point counts on {bundle.name}")
    for a in range(bundle.N):
        c = fixed_counts(bundle, a, **kw)
        rep.add(f"grade-{a}-z-side", c.z_basis == c.z_fixed_objects == c.z_fixed_characters == c.z_surviving,
                f"|Z_a| = {c.z_basis}, fixed objects {c.z_fixed_objects}, fixed characters "
                f"{c.z_fixed_characters}, surviving idempotents {c.z_surviving}", "counting")
        rep.add(f"grade-{a}-d-side", c.d_fixed_irreps == c.d_relcenter_dim,
                f"fixed irreducibles of D {c.d_fixed_irreps}, relative center dim {c.d_relcenter_dim}",
                "counting")
    return rep


def fixed_point_checks(bundle: CenterBundle, **kw) -> VerificationReport:
    rep = VerificationReport(f"fixed-point routes on {bundle.name}")
    for a in range(bundle.N):
        def run(a=a):
            r = fixed_point_routes(bundle, a, **kw)
            return r.agree(), (f"character {r.by_character}, partial action {r.by_partial_action}, "
                               f"Z idempotent {r.by_z_idempotent}, D idempotent {r.by_d_idempotent}")
        _record(rep, f"grade-{a}-routes-agree", "fixed points", run)
    return rep


def twisted_orthogonality(bundle: CenterBundle, extensions=None, **kw) -> VerificationReport:
    rep = VerificationReport(f"twisted orthogonality on {bundle.name}")
    exts = all_extensions(bundle, **kw) if extensions is None else extensions
    for x in exts:
        for y in exts:
            val = twisted_inner(x, y)
            want = x.base.codegree * x.base.dim if x is y else 0
            rep.add(f"<{x.base.name},{y.base.name}>", linalg.is_zero(val - want),
                    f"{format_scalar(val)}", "twisted orthogonality")
    for x in exts:
        al = twisted_alpha(x)
        D = bundle.D
        rc = D.relative_center(-1)
        inside = linalg.rank([r.coeffs for r in rc] + [al.coeffs], len(D)) == len(rc)
        rep.add(f"alpha-{x.base.name}-in-relative-center", inside and not al.is_zero(), "", "twisted alpha")
    if exts:
        spans = linalg.rank([twisted_alpha(x).coeffs for x in exts], len(bundle.D))
        rep.add("alpha-span", spans == len(bundle.D.relative_center(-1)),
                f"{spans} vs {len(bundle.D.relative_center(-1))}", "twisted alpha")
    return rep


__all__ = [
    "MultiplicityTable", "CrossedSMatrix", "restriction_multiplicities", "formula_multiplicities",
    "formula_values", "verify_main_theorem", "crossed_s_matrix", "verify_modular_formula",
    "counting_checks", "fixed_point_checks", "twisted_orthogonality", "sqrt_global_dimension",
    "as_integer", "trace_identity_failures", "clspan_failures", "class_functional_failures",
    "gauge_invariance_failures",
]
