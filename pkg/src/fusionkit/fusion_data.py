"""Graded based rings, center bundles, their file format and axiom checks."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import ParseError, RingMismatch, ValidationError
from .reports import ValidationReport
from .scalars import CycloNumber, as_scalar, format_scalar, parse_scalar

ZERO = Fraction(0)
ONE = Fraction(1)


def _conj(x):
    return x.conjugate() if hasattr(x, "conjugate") and not isinstance(x, (int, Fraction)) else x


class GradedBasedRing:
    """A Z/N-graded based ring given by sparse nonnegative structure constants."""

    def __init__(self, labels: Sequence[str], grades: Sequence[int], dual: Mapping[str, str],
                 unit: Iterable[str], constants: Iterable[tuple], N: int = 1, name: str = ""):
        self.name = name
        self.N = int(N)
        if self.N < 1:
            raise ParseError("grading order must be positive")
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ParseError("duplicate basis labels")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self.grades = tuple(int(g) % self.N for g in grades)
        if len(self.grades) != len(self.labels):
            raise ParseError("every basis element needs a grade")
        try:
            self.dual = tuple(self._index[dual[lab]] for lab in self.labels)
        except KeyError as exc:
            raise ParseError(f"dual map missing or unknown label {exc}") from None
        self.unit = tuple(sorted(self.index(u) for u in unit))
        if not self.unit:
            raise ParseError("unit must contain at least one label")
        table: dict[tuple[int, int], dict[int, int]] = {}
        for quad in constants:
            if len(quad) != 4:
                raise ParseError(f"structure constant {quad!r} is not a quadruple")
            i, j, k = (self.index(q) for q in quad[:3])
            n = quad[3]
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise ParseError(f"structure constant {quad!r} must be a nonnegative integer")
            if n:
                row = table.setdefault((i, j), {})
                row[k] = row.get(k, 0) + n
        self.table = table

    # basics ---------------------------------------------------------------
    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"GradedBasedRing({self.name!r}, N={self.N}, basis={list(self.labels)})"

    def index(self, label) -> int:
        if isinstance(label, int) and not isinstance(label, bool):
            if 0 <= label < len(self.labels):
                return label
            raise ParseError(f"basis index {label} out of range")
        try:
            return self._index[label]
        except KeyError:
            raise ParseError(f"unknown basis label {label!r}") from None

    def N_(self, i: int, j: int, k: int) -> int:
        return self.table.get((i, j), {}).get(k, 0)

    def grade_indices(self, a: int) -> list[int]:
        a %= self.N
        return [i for i, g in enumerate(self.grades) if g == a]

    @cached_property
    def constants(self) -> list[tuple[str, str, str, int]]:
        out = []
        for (i, j), row in sorted(self.table.items()):
            for k, n in sorted(row.items()):
                out.append((self.labels[i], self.labels[j], self.labels[k], n))
        return out

    # elements -------------------------------------------------------------
    def zero(self) -> "RingElement":
        return RingElement(self, [ZERO] * len(self))

    def basis_element(self, i) -> "RingElement":
        i = self.index(i)
        v = [ZERO] * len(self)
        v[i] = ONE
        return RingElement(self, v)

    def element(self, coeffs: Mapping | Sequence) -> "RingElement":
        if isinstance(coeffs, Mapping):
            v = [ZERO] * len(self)
            for lab, c in coeffs.items():
                v[self.index(lab)] = v[self.index(lab)] + c
            return RingElement(self, v)
        return RingElement(self, list(coeffs))

    @cached_property
    def one(self) -> "RingElement":
        v = [ZERO] * len(self)
        for u in self.unit:
            v[u] = ONE
        return RingElement(self, v)

    def basis(self) -> list["RingElement"]:
        return [self.basis_element(i) for i in range(len(self))]

    def mul_vectors(self, u: Sequence, v: Sequence) -> list:
        out: list = [ZERO] * len(self)
        for i, x in enumerate(u):
            if linalg.is_zero(x):
                continue
            for j, y in enumerate(v):
                if linalg.is_zero(y):
                    continue
                row = self.table.get((i, j))
                if row:
                    xy = x * y
                    for k, n in row.items():
                        out[k] = out[k] + (xy if n == 1 else xy * n)
        return out

    def left_matrix(self, u: Sequence, indices: Sequence[int] | None = None) -> list[list]:
        """Matrix of y -> u*y on the span of ``indices`` (columns) into the same span."""
        idx = list(range(len(self))) if indices is None else list(indices)
        cols = []
        for j in idx:
            e = [ZERO] * len(self)
            e[j] = ONE
            prod = self.mul_vectors(u, e)
            cols.append([prod[k] for k in idx])
        return linalg.transpose(cols) if cols else []

    def star_vector(self, u: Sequence) -> list:
        out: list = [ZERO] * len(self)
        for i, x in enumerate(u):
            out[self.dual[i]] = _conj(x)
        return out

    def is_commutative(self, indices: Sequence[int] | None = None) -> bool:
        idx = list(range(len(self))) if indices is None else list(indices)
        return all(self.table.get((i, j), {}) == self.table.get((j, i), {}) for i in idx for j in idx)

    # forms -----------------------------------------------------------------
    def tau_vector(self, u: Sequence):
        return sum((u[i] for i in self.unit), ZERO)

    # subrings --------------------------------------------------------------
    @cached_property
    def grade0(self) -> "GradedBasedRing":
        """The grade-0 component as an ungraded based ring."""
        idx = self.grade_indices(0)
        labs = [self.labels[i] for i in idx]
        keep = set(idx)
        constants = [c for c in self.constants
                     if self._index[c[0]] in keep and self._index[c[1]] in keep]
        return GradedBasedRing(labs, [0] * len(labs),
                               {self.labels[i]: self.labels[self.dual[i]] for i in idx},
                               [self.labels[u] for u in self.unit], constants, 1,
                               f"{self.name}[0]")

    def relative_center(self, a: int) -> list["RingElement"]:
        """Rational basis of the grade-a elements commuting with every grade-0 element."""
        key = a % self.N
        cache = self.__dict__.setdefault("_relcenter", {})
        if key not in cache:
            cache[key] = self._relative_center(key)
        return cache[key]

    def _relative_center(self, a: int) -> list["RingElement"]:
        cols = self.grade_indices(a)
        rows = []
        for c in self.grade_indices(0):
            for k in range(len(self)):
                row = [Fraction(self.N_(c, m, k) - self.N_(m, c, k)) for m in cols]
                if any(row):
                    rows.append(row)
        out = []
        for vec in linalg.nullspace(rows, len(cols)):
            v = [ZERO] * len(self)
            for m, x in zip(cols, vec):
                v[m] = x
            out.append(RingElement(self, v))
        return out

    def center(self) -> list["RingElement"]:
        return self.relative_center(0)


@dataclass(eq=False)
class RingElement:
    ring: GradedBasedRing
    coeffs: list

    def __post_init__(self):
        if len(self.coeffs) != len(self.ring):
            raise ValueError("coefficient vector has the wrong length")

    def _check(self, other: "RingElement"):
        if not isinstance(other, RingElement) or other.ring is not self.ring:
            raise RingMismatch("elements belong to different rings")

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return RingElement(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, RingElement):
            self._check(other)
            return RingElement(self.ring, self.ring.mul_vectors(self.coeffs, other.coeffs))
        return RingElement(self.ring, [a * other for a in self.coeffs])

    def __rmul__(self, scalar):
        return RingElement(self.ring, [scalar * a for a in self.coeffs])

    def __truediv__(self, scalar):
        inv = as_scalar(scalar).inverse() if not getattr(scalar, "is_numeric", False) else 1 / scalar
        return self * inv

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of ring elements are undefined")
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def star(self) -> "RingElement":
        return RingElement(self.ring, self.ring.star_vector(self.coeffs))

    def is_zero(self) -> bool:
        return all(linalg.is_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, RingElement) or other.ring is not self.ring:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def coeff(self, label):
        return self.coeffs[self.ring.index(label)]

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if not linalg.is_zero(c)]

    def grades(self) -> set[int]:
        return {self.ring.grades[i] for i in self.support()}

    def as_dict(self) -> dict:
        return {self.ring.labels[i]: self.coeffs[i] for i in self.support()}

    def __repr__(self):
        terms = [f"({format_scalar(c)})*{self.ring.labels[i]}" for i, c in self.as_dict().items()
                 for i in [self.ring.index(i)]]
        return " + ".join(terms) if terms else "0"


def tau(x: RingElement):
    return x.ring.tau_vector(x.coeffs)


def frob_form(x: RingElement, y: RingElement):
    x._check(y)
    return tau(x * y)


def herm_form(x: RingElement, y: RingElement):
    x._check(y)
    return tau(x * y.star())


def relative_center(ring: GradedBasedRing, a: int) -> list[RingElement]:
    return ring.relative_center(a)


# ---------------------------------------------------------------------------
# validation

def validate(ring: GradedBasedRing) -> ValidationReport:
    rep = ValidationReport(f"validate {ring.name or 'ring'}")
    n = len(ring)
    bad = [(ring.labels[i], ring.labels[j], ring.labels[k]) for (i, j), row in ring.table.items()
           for k in row if ring.grades[k] != (ring.grades[i] + ring.grades[j]) % ring.N]
    rep.add("grading-additivity", not bad, f"violations: {bad[:3]}" if bad else "", "graded based ring")

    dual_ok = all(ring.dual[ring.dual[i]] == i for i in range(n))
    rep.add("dual-involution", dual_ok, "", "graded based ring")
    rep.add("unit-grade", all(ring.grades[u] == 0 for u in ring.unit), "", "graded based ring")

    unit_fail = []
    for b in range(n):
        e = ring.basis_element(b).coeffs
        if ring.mul_vectors(ring.one.coeffs, e) != e or ring.mul_vectors(e, ring.one.coeffs) != e:
            unit_fail.append(ring.labels[b])
    rep.add("unit-law", not unit_fail, f"fails on {unit_fail}" if unit_fail else "", "graded based ring")

    assoc_fail = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                ei, ej, ek = (ring.basis_element(t).coeffs for t in (i, j, k))
                if ring.mul_vectors(ring.mul_vectors(ei, ej), ek) != ring.mul_vectors(ei, ring.mul_vectors(ej, ek)):
                    assoc_fail = (ring.labels[i], ring.labels[j], ring.labels[k])
                    break
            if assoc_fail:
                break
        if assoc_fail:
            break
    rep.add("associativity", assoc_fail is None, f"fails at {assoc_fail}" if assoc_fail else "",
            "graded based ring")

    d = ring.dual
    dual_fail = None
    if dual_ok:
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if ring.N_(i, j, k) != ring.N_(d[j], d[i], d[k]):
                        dual_fail = (ring.labels[i], ring.labels[j], ring.labels[k])
                        break
                if dual_fail:
                    break
            if dual_fail:
                break
        units_ok = set(d[u] for u in ring.unit) == set(ring.unit)
        # tau(b_i b_j) = delta_{j, i*}: the dual is the unique partner pairing to the unit
        tau_fail = next(((ring.labels[i], ring.labels[j]) for i in range(n) for j in range(n)
                         if sum(ring.N_(i, j, u) for u in ring.unit) != (1 if j == d[i] else 0)), None)
        grades_ok = all(ring.grades[d[i]] == (-ring.grades[i]) % ring.N for i in range(n))
    else:
        dual_fail, units_ok, grades_ok = ("dual is not an involution",), False, False
        tau_fail = None
    detail = []
    if dual_fail:
        detail.append(f"N_ij^k != N_j*i*^k* at {dual_fail}")
    if not units_ok:
        detail.append("dual does not preserve unit summands")
    if not grades_ok:
        detail.append("grade(i*) != -grade(i)")
    if tau_fail:
        detail.append(f"tau(b_i b_j) != delta(j, i*) at {tau_fail}")
    rep.add("duality-compatibility", not detail, "; ".join(detail), "graded based ring")

    gram_fail = None
    for i in range(n):
        for j in range(n):
            val = herm_form(ring.basis_element(i), ring.basis_element(j))
            if val != (1 if i == j else 0):
                gram_fail = (ring.labels[i], ring.labels[j], val)
                break
        if gram_fail:
            break
    rep.add("orthonormality", gram_fail is None, f"<{gram_fail[0]},{gram_fail[1]}> = {gram_fail[2]}"
            if gram_fail else "", "Hermitian form")

    pairing_fail = []
    for a in range(ring.N):
        rows_, cols_ = ring.grade_indices(a), ring.grade_indices(-a)
        if len(rows_) != len(cols_):
            pairing_fail.append(a)
            continue
        if not rows_:
            continue
        gram = [[Fraction(sum(ring.N_(i, j, u) for u in ring.unit)) for j in cols_] for i in rows_]
        if linalg.rank(gram) != len(rows_):
            pairing_fail.append(a)
    rep.add("perfect-pairing", not pairing_fail, f"degenerate at grades {pairing_fail}"
            if pairing_fail else "", "Frobenius subalgebras")
    return rep


def require_valid(ring: GradedBasedRing) -> None:
    """Raise ValidationError unless ``ring`` passes every axiom (cached)."""
    status = ring.__dict__.get("_valid")
    if status is None:
        status = validate(ring)
        ring.__dict__["_valid"] = status
    if not status.passed:
        names = ", ".join(c.check_id for c in status.failures())
        raise ValidationError(f"ring {ring.name!r} fails: {names}")


def relative_center_pairing_ok(ring: GradedBasedRing, a: int) -> bool:
    """The Frobenius form on relcenter(a) x relcenter(-a) is nondegenerate."""
    r, s = ring.relative_center(a), ring.relative_center(-a)
    if len(r) != len(s):
        return False
    if not r:
        return True
    gram = [[frob_form(x, y) for y in s] for x in r]
    return linalg.rank(gram) == len(r)


def null_socle_ok(ring: GradedBasedRing, a: int) -> bool:
    """No nonzero x in relcenter(a) kills every y in relcenter(-a): x*y = 0 for all y."""
    r, s = ring.relative_center(a), ring.relative_center(-a)
    if not r:
        return True
    # columns: coordinates of x*y over all (y, k)
    rows = []
    for y in s:
        for k in range(len(ring)):
            rows.append([(x * y).coeffs[k] for x in r])
    return linalg.rank(rows, len(r)) == len(r)


# ---------------------------------------------------------------------------
# bundles

@dataclass(eq=False)
class SMatrixData:
    entries: list[list]
    dims: list

    def global_dimension(self):
        return sum((d * d.conjugate() for d in self.dims), CycloNumber.rational(0))


@dataclass(eq=False)
class CenterBundle:
    name: str
    D: GradedBasedRing
    Z: GradedBasedRing | None = None
    zeta: list[list[int]] | None = None
    phi: tuple[int, ...] | None = None
    smatrix: SMatrixData | None = None
    notes: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def N(self) -> int:
        return self.D.N

    @property
    def has_center(self) -> bool:
        return self.Z is not None

    def zeta_apply(self, z) -> RingElement:
        """Image in D of a Z-element (given as RingElement or coefficient vector)."""
        coeffs = z.coeffs if isinstance(z, RingElement) else z
        out: list = [ZERO] * len(self.D)
        for i, c in enumerate(coeffs):
            if linalg.is_zero(c):
                continue
            for j, n in enumerate(self.zeta[i]):
                if n:
                    out[j] = out[j] + c * n
        return RingElement(self.D, out)

    def phi_power(self, k: int) -> tuple[int, ...]:
        """Phi^k as a permutation of the grade-0 indices of Z (other indices fixed)."""
        perm = tuple(range(len(self.Z)))
        for _ in range(k):
            perm = tuple(self.phi[p] for p in perm)
        return perm


def _element_grades(ring: GradedBasedRing, coeffs) -> set[int]:
    return {ring.grades[i] for i, c in enumerate(coeffs) if c}


def verify_bundle(bundle: CenterBundle) -> ValidationReport:
    rep = ValidationReport(f"verify bundle {bundle.name}")
    D, Z = bundle.D, bundle.Z
    if Z is None:
        rep.add("has-center", False, "bundle has no ring_Z", "center bundle")
        return rep
    rep.add("same-grading-order", D.N == Z.N, f"D: {D.N}, Z: {Z.N}", "center bundle")
    shape_ok = (bundle.zeta is not None and len(bundle.zeta) == len(Z)
                and all(len(r) == len(D) for r in bundle.zeta)
                and all(isinstance(x, int) and x >= 0 for r in bundle.zeta for x in r))
    rep.add("zeta-shape", shape_ok, "zeta must be |Z| rows of nonnegative integers over D", "forgetful map")
    if not shape_ok or D.N != Z.N:
        return rep

    zeta = bundle.zeta
    rep.add("zeta-nonzero", all(any(r) for r in zeta), "", "forgetful map")
    grade_fail = [Z.labels[i] for i, r in enumerate(zeta)
                  if not _element_grades(D, r) <= {Z.grades[i]}]
    rep.add("zeta-grading", not grade_fail, f"fails on {grade_fail}" if grade_fail else "", "forgetful map")
    rep.add("zeta-unit", bundle.zeta_apply(Z.one) == D.one, "", "forgetful map")

    hom_fail = None
    for i in range(len(Z)):
        for j in range(len(Z)):
            lhs = bundle.zeta_apply(Z.basis_element(i) * Z.basis_element(j))
            rhs = bundle.zeta_apply(Z.basis_element(i)) * bundle.zeta_apply(Z.basis_element(j))
            if lhs != rhs:
                hom_fail = (Z.labels[i], Z.labels[j])
                break
        if hom_fail:
            break
    rep.add("zeta-homomorphism", hom_fail is None, f"fails at {hom_fail}" if hom_fail else "",
            "forgetful map")
    dual_fail = [Z.labels[i] for i in range(len(Z))
                 if bundle.zeta_apply(Z.basis_element(Z.dual[i])) != bundle.zeta_apply(Z.basis_element(i)).star()]
    rep.add("zeta-duality", not dual_fail, f"fails on {dual_fail}" if dual_fail else "", "forgetful map")

    # phi
    g0 = Z.grade_indices(0)
    phi = bundle.phi
    perm_ok = (phi is not None and len(phi) == len(Z) and sorted(phi[i] for i in g0) == g0
               and all(phi[i] == i for i in range(len(Z)) if i not in set(g0)))
    rep.add("phi-permutation", perm_ok, "", "automorphism of the center")
    if perm_ok:
        auto = all(Z.N_(i, j, k) == Z.N_(phi[i], phi[j], phi[k]) for i in g0 for j in g0 for k in g0)
        auto = auto and set(phi[u] for u in Z.unit) == set(Z.unit)
        auto = auto and all(phi[Z.dual[i]] == Z.dual[phi[i]] for i in g0)
        rep.add("phi-automorphism", auto, "", "automorphism of the center")
        # with N = 1 only Phi^0 ever acts, so phi is not constrained
        rep.add("phi-order", D.N == 1 or bundle.phi_power(D.N) == tuple(range(len(Z))),
                "Phi^N must be the identity", "automorphism of the center")
        cross_fail = None
        for a in range(D.N):
            pa = bundle.phi_power(a)
            for c in g0:
                for m in Z.grade_indices(a):
                    cm = Z.basis_element(c) * Z.basis_element(m)
                    mc = Z.basis_element(m) * Z.basis_element(c)
                    pcm = Z.basis_element(pa[c]) * Z.basis_element(m)
                    if cm != mc or cm != pcm:
                        cross_fail = (Z.labels[c], Z.labels[m])
                        break
                if cross_fail:
                    break
            if cross_fail:
                break
        rep.add("crossed-relation", cross_fail is None, f"fails at {cross_fail}" if cross_fail else "",
                "crossed relation")
    else:
        rep.add("phi-automorphism", False, "phi is not a permutation of grade 0", "automorphism of the center")

    # images of each grade lie in and span the relative center of D
    img_fail = []
    for a in range(D.N):
        rc = D.relative_center(a)
        cols = [zeta[i] for i in Z.grade_indices(a)]
        rank_img = linalg.rank([[Fraction(x) for x in r] for r in cols], len(D)) if cols else 0
        central = all(_in_relative_center(D, r) for r in cols)
        if rank_img != len(rc) or not central:
            img_fail.append(f"grade {a}: rank {rank_img} vs relcenter {len(rc)}"
                            + ("" if central else ", image not central"))
    rep.add("zeta-onto-relative-center", not img_fail, "; ".join(img_fail), "surjectivity onto relative center")
    return rep


def _in_relative_center(D: GradedBasedRing, vec) -> bool:
    m = RingElement(D, [Fraction(x) for x in vec])
    return all(D.basis_element(c) * m == m * D.basis_element(c) for c in D.grade_indices(0))


def require_verified(bundle: CenterBundle) -> None:
    require_valid(bundle.D)
    if bundle.Z is None:
        raise ValidationError(f"bundle {bundle.name!r} has no ring_Z")
    require_valid(bundle.Z)
    status = bundle._cache.get("verified")
    if status is None:
        status = verify_bundle(bundle)
        bundle._cache["verified"] = status
    if not status.passed:
        names = ", ".join(c.check_id for c in status.failures())
        raise ValidationError(f"bundle {bundle.name!r} fails: {names}")


def validate_smatrix(bundle: CenterBundle) -> ValidationReport:
    rep = ValidationReport(f"validate S-matrix {bundle.name}")
    S = bundle.smatrix
    g0 = bundle.Z.grade_indices(0)
    n = len(g0)
    shape = S is not None and len(S.entries) == n and all(len(r) == n for r in S.entries) and len(S.dims) == n
    rep.add("smatrix-shape", shape, f"expected {n}x{n}", "S-matrix")
    if not shape:
        return rep
    sym = all(S.entries[i][j] == S.entries[j][i] for i in range(n) for j in range(n))
    rep.add("smatrix-symmetric", sym, "", "S-matrix")
    u = g0.index(bundle.Z.unit[0]) if len(bundle.Z.unit) == 1 else None
    rep.add("smatrix-unit-row", u is not None and list(S.entries[u]) == list(S.dims), "", "S-matrix")
    dimz = S.global_dimension()
    ok = True
    for i in range(n):
        for j in range(n):
            v = sum((S.entries[i][k] * S.entries[j][k].conjugate() for k in range(n)), CycloNumber.rational(0))
            if v != (dimz if i == j else 0):
                ok = False
    rep.add("smatrix-unitarity", ok, f"S conj(S)^T = {dimz} I", "S-matrix")
    return rep


# ---------------------------------------------------------------------------
# file format

def _ring_from_json(obj, N: int, name: str) -> GradedBasedRing:
    if not isinstance(obj, dict):
        raise ParseError("ring must be an object")
    try:
        basis = obj["basis"]
        labels = [b["label"] for b in basis]
        grades = [b.get("grade", 0) for b in basis]
        return GradedBasedRing(labels, grades, obj["dual"], obj["unit"],
                               [tuple(q) for q in obj["constants"]], N, name)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed ring {name!r}: {exc}") from None


def _ring_to_json(ring: GradedBasedRing) -> dict:
    return {
        "basis": [{"label": lab, "grade": g} for lab, g in zip(ring.labels, ring.grades)],
        "unit": [ring.labels[u] for u in ring.unit],
        "dual": {lab: ring.labels[ring.dual[i]] for i, lab in enumerate(ring.labels)},
        "constants": [list(c) for c in ring.constants],
    }


def bundle_from_json(obj: dict) -> CenterBundle:
    if not isinstance(obj, dict):
        raise ParseError("bundle file must contain a JSON object")
    name = obj.get("name", "")
    N = obj.get("grading_order", 1)
    if not isinstance(N, int) or N < 1:
        raise ParseError("grading_order must be a positive integer")
    if "ring_D" not in obj:
        raise ParseError("bundle needs ring_D")
    D = _ring_from_json(obj["ring_D"], N, f"{name}:D")
    Z = zeta = phi = S = None
    if "ring_Z" in obj:
        Z = _ring_from_json(obj["ring_Z"], N, f"{name}:Z")
        zeta = obj.get("zeta")
        if zeta is None:
            raise ParseError("ring_Z requires zeta")
        if not isinstance(zeta, list) or not all(isinstance(r, list) for r in zeta):
            raise ParseError("zeta must be a list of rows")
        raw_phi = obj.get("phi")
        if raw_phi is None:
            phi = tuple(range(len(Z)))
        else:
            perm = list(range(len(Z)))
            for src, dst in raw_phi.items():
                perm[Z.index(src)] = Z.index(dst)
            phi = tuple(perm)
        if "smatrix" in obj:
            sm = obj["smatrix"]
            try:
                S = SMatrixData([[parse_scalar(x) for x in row] for row in sm["entries"]],
                                [parse_scalar(x) for x in sm["dims"]])
            except (KeyError, TypeError) as exc:
                raise ParseError(f"malformed smatrix: {exc}") from None
    return CenterBundle(name, D, Z, zeta, phi, S, obj.get("notes", ""))


def bundle_to_json(bundle: CenterBundle) -> dict:
    out: dict = {"name": bundle.name}
    if bundle.notes:
        out["notes"] = bundle.notes
    out["grading_order"] = bundle.N
    out["ring_D"] = _ring_to_json(bundle.D)
    if bundle.Z is not None:
        Z = bundle.Z
        out["ring_Z"] = _ring_to_json(Z)
        out["zeta"] = [list(r) for r in bundle.zeta]
        out["phi"] = {Z.labels[i]: Z.labels[bundle.phi[i]] for i in Z.grade_indices(0)}
        if bundle.smatrix is not None:
            out["smatrix"] = {"entries": [[format_scalar(x) for x in r] for r in bundle.smatrix.entries],
                              "dims": [format_scalar(d) for d in bundle.smatrix.dims]}
    return out


def load_bundle(source) -> CenterBundle:
    """Load a bundle from a path, a bundled dataset name, or an already-parsed dict."""
    if isinstance(source, dict):
        return bundle_from_json(source)
    from .datasets import resolve

    path = resolve(source)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return bundle_from_json(obj)


def dumps_bundle(bundle: CenterBundle) -> str:
    return json.dumps(bundle_to_json(bundle), indent=1, ensure_ascii=False) + "\n"


class assume_verified:
    """Context manager letting downstream code run on a bundle whose checks fail.

    Used by diagnostic reports so that a corrupted bundle still gets every
    downstream identity itemized instead of stopping at the first error.
    """

    def __init__(self, bundle: CenterBundle):
        self.bundle = bundle

    def __enter__(self):
        self.noop = False
        try:
            require_verified(self.bundle)
            self.noop = True    # genuinely valid: keep whatever gets cached
            return self.bundle
        except ValidationError:
            pass
        self.saved = dict(self.bundle._cache)
        report = ValidationReport("assumed")
        report.add("assumed", True)
        self.bundle._cache["verified"] = report
        for ring in (self.bundle.D, self.bundle.Z):
            if ring is not None:
                ring.__dict__.setdefault("_valid_saved", ring.__dict__.get("_valid"))
                ring.__dict__["_valid"] = report
        return self.bundle

    def __exit__(self, *exc):
        if self.noop:
            return
        self.bundle._cache.clear()
        self.bundle._cache.update(self.saved)
        for ring in (self.bundle.D, self.bundle.Z):
            if ring is not None:
                saved = ring.__dict__.pop("_valid_saved", None)
                if saved is None:
                    ring.__dict__.pop("_valid", None)
                else:
                    ring.__dict__["_valid"] = saved
        return False
