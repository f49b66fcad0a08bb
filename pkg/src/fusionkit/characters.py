"""Irreducible characters, formal codegrees and central idempotents of based rings.

All functions act on the grade-0 component of the ring they are given.
Commutative algebras are split by a generic element: its characteristic
polynomial is squarefree, the roots are recognized in a cyclotomic field, and
each root's left eigenvector of the multiplication matrix is a character.  A
noncommutative algebra is handled through its center: central characters give
the primitive central idempotents e, and then dim E = sqrt(tr_reg(e)) and
ch_E(x) = tr_reg(e x) / dim E.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (InjectivityFailure, NonIntegerDimension, NotCommutative,
                     SemisimplicityFailure, UnmatchedRow)
from .fusion_data import CenterBundle, GradedBasedRing, RingElement
from .scalars import (CycloNumber, as_scalar, exact_roots, is_exact, is_squarefree,
                      is_totally_positive, numeric_roots, scalar_key)

DEFAULT_BOUND = 120


@dataclass(eq=False)
class IrreducibleCharacter:
    ring: GradedBasedRing
    values: dict            # grade-0 label -> scalar
    dim: object
    codegree: object
    central_values: list    # central character on ring.center() basis
    index: int = 0
    exact: bool = True

    def __call__(self, x):
        """ch_E of a grade-0 element (RingElement or full coefficient vector)."""
        coeffs = x.coeffs if isinstance(x, RingElement) else x
        total = Fraction(0)
        for i in self.ring.grade_indices(0):
            c = coeffs[i]
            if not linalg.is_zero(c):
                total = total + c * self.values[self.ring.labels[i]]
        return total

    def central(self, z):
        """Central character: the scalar by which a central element acts on E."""
        return self(z) / self.dim

    def value_list(self) -> list:
        return [self.values[self.ring.labels[i]] for i in self.ring.grade_indices(0)]

    @property
    def name(self) -> str:
        return f"E{self.index}"


@dataclass(eq=False)
class CentralIdempotent:
    element: RingElement
    character: IrreducibleCharacter = field(repr=False, default=None)


# ---------------------------------------------------------------------------
# splitting a commutative algebra given by multiplication matrices

def _split(mats: Sequence[list], unit: Sequence, seed: int, bound: int) -> list[list]:
    """All algebra homomorphisms to the scalars, as value vectors on the basis.

    ``mats[i]`` is the matrix of left multiplication by basis element i in the
    same basis; ``unit`` are the coordinates of the identity.
    """
    n = len(mats)
    rng = random.Random(seed)
    for attempt in range(64):
        coeffs = [rng.randint(-3 - attempt, 3 + attempt) for _ in range(n)]
        x = [[sum((c * m[r][s] for c, m in zip(coeffs, mats)), Fraction(0)) for s in range(n)]
             for r in range(n)]
        poly = linalg.charpoly(x)
        if is_squarefree(poly):
            break
    else:
        raise SemisimplicityFailure("no generic element with squarefree characteristic polynomial")

    roots, failed = exact_roots(poly, bound)
    numeric = []
    for f in failed:
        numeric.extend(numeric_roots(f))
    xt = linalg.transpose(x)
    out = []
    for theta in list(roots) + numeric:
        shifted = [[xt[r][s] - (theta if r == s else 0) for s in range(n)] for r in range(n)]
        kernel = linalg.nullspace(shifted, n)
        if len(kernel) != 1:
            raise SemisimplicityFailure("eigenspace of a generic element is not one-dimensional")
        v = kernel[0]
        scale = sum((a * b for a, b in zip(v, unit)), Fraction(0))
        if linalg.is_zero(scale):
            raise SemisimplicityFailure("eigenvector vanishes on the unit")
        inv = 1 / scale
        out.append([a * inv for a in v])
    return out


def _check_multiplicative(rho, mats) -> bool:
    n = len(mats)
    for i in range(n):
        for j in range(n):
            lhs = rho[i] * rho[j]
            rhs = sum((mats[i][k][j] * rho[k] for k in range(n)), Fraction(0))
            if not linalg.is_zero(lhs - rhs):
                return False
    return True


def _trace_form_check(ring: GradedBasedRing, idx: list[int]) -> None:
    mats = {i: ring.left_matrix(ring.basis_element(i).coeffs, idx) for i in idx}
    gram = [[linalg.trace(linalg.matmul(mats[i], mats[j])) for j in idx] for i in idx]
    if linalg.rank(gram) != len(idx):
        raise SemisimplicityFailure(f"regular trace form of {ring.name or 'ring'} is degenerate")


def _hermitian(u: Sequence, v: Sequence):
    return sum((a * _conj(b) for a, b in zip(u, v)), Fraction(0))


def _conj(x):
    return x.conjugate() if hasattr(x, "is_numeric") else x


def _sort_key(ch: IrreducibleCharacter):
    d = scalar_key(ch.dim)
    vals = tuple((-re, -im) for re, im in (scalar_key(v) for v in ch.value_list()))
    return (d, vals)


def _finish(ring: GradedBasedRing, chars: list[IrreducibleCharacter]) -> list[IrreducibleCharacter]:
    chars.sort(key=_sort_key)
    for k, ch in enumerate(chars):
        ch.index = k
    return chars


def _codegree(values: list, dim):
    f = _hermitian(values, values) / dim
    if is_exact(f):
        f = as_scalar(f)
        if not f.is_real() or not is_totally_positive(f):
            raise SemisimplicityFailure(f"formal codegree {f} is not totally positive")
    return f


# ---------------------------------------------------------------------------
# public API

def commutative_characters(ring: GradedBasedRing, seed: int = 0, bound: int = DEFAULT_BOUND):
    """The one-dimensional characters of a commutative grade-0 component."""
    idx = ring.grade_indices(0)
    if not ring.is_commutative(idx):
        raise NotCommutative(f"{ring.name or 'ring'} is not commutative in grade 0")
    cache = ring.__dict__.setdefault("_comm_chars", {})
    if (seed, bound) in cache:
        return cache[(seed, bound)]
    _trace_form_check(ring, idx)
    mats = [ring.left_matrix(ring.basis_element(i).coeffs, idx) for i in idx]
    unit = [Fraction(int(i in ring.unit)) for i in idx]
    chars = []
    for rho in _split(mats, unit, seed, bound):
        if not _check_multiplicative(rho, mats):
            raise SemisimplicityFailure("eigenvector is not multiplicative")
        dim = CycloNumber.rational(1)
        values = {ring.labels[i]: as_scalar(v) if is_exact(v) else v for i, v in zip(idx, rho)}
        exact = all(is_exact(v) for v in rho)
        chars.append(IrreducibleCharacter(ring, values, dim, _codegree(list(values.values()), dim),
                                          list(values.values()), 0, exact))
    _finish(ring, chars)
    cache[(seed, bound)] = chars
    return chars


def _center_matrices(ring: GradedBasedRing, basis: list[RingElement]):
    """Multiplication matrices of the center in the coordinates of ``basis``."""
    idx = ring.grade_indices(0)
    cols = [[z.coeffs[i] for i in idx] for z in basis]
    reduce = linalg.transpose(cols)  # |idx| x r
    mats = []
    for zi in basis:
        m = []
        for zj in basis:
            prod = zi * zj
            coords = linalg.solve(reduce, [prod.coeffs[i] for i in idx])
            m.append(coords)
        mats.append(linalg.transpose(m))
    unit = linalg.solve(reduce, [ring.one.coeffs[i] for i in idx])
    return mats, unit


def _regular_trace(ring: GradedBasedRing, x: RingElement):
    idx = ring.grade_indices(0)
    return linalg.trace(ring.left_matrix(x.coeffs, idx))


def _integer_sqrt(value):
    """Positive integer square root of a scalar known to be a perfect square."""
    if is_exact(value):
        v = as_scalar(value)
        if not v.is_rational():
            raise NonIntegerDimension(f"tr_reg(e) = {v} is not rational")
        q = v.as_fraction()
        if q.denominator != 1 or q <= 0:
            raise NonIntegerDimension(f"tr_reg(e) = {q} is not a positive integer")
        r = int(q.numerator ** 0.5 + 0.5)
        while r * r > q:
            r -= 1
        while (r + 1) * (r + 1) <= q:
            r += 1
        if r * r != q:
            raise NonIntegerDimension(f"tr_reg(e) = {q} is not a perfect square")
        return CycloNumber.rational(r)
    n = round(float(value.value.real))
    r = round(n ** 0.5)
    if n <= 0 or r * r != n or not (value - n).is_zero():
        raise NonIntegerDimension(f"tr_reg(e) = {value} is not a positive perfect square")
    return CycloNumber.rational(r)


def irreducible_characters(ring: GradedBasedRing, seed: int = 0, bound: int = DEFAULT_BOUND):
    """All irreducible characters of the grade-0 component (split semisimple case)."""
    idx = ring.grade_indices(0)
    if ring.is_commutative(idx):
        return commutative_characters(ring, seed, bound)
    cache = ring.__dict__.setdefault("_irr_chars", {})
    if (seed, bound) in cache:
        return cache[(seed, bound)]
    _trace_form_check(ring, idx)
    basis = ring.center()
    mats, unit = _center_matrices(ring, basis)
    central = _split(mats, unit, seed, bound)
    for w in central:
        if not _check_multiplicative(w, mats):
            raise SemisimplicityFailure("central eigenvector is not multiplicative")
    # idempotents: e_E = sum_i c_i z_i with w_F(e_E) = delta
    W = [list(w) for w in central]
    inv = linalg.inverse(W)
    chars = []
    for e_idx, w in enumerate(central):
        coords = [inv[i][e_idx] for i in range(len(basis))]
        e = ring.zero()
        for c, z in zip(coords, basis):
            e = e + c * z
        dim = _integer_sqrt(_regular_trace(ring, e))
        values = {}
        for i in idx:
            v = _regular_trace(ring, e * ring.basis_element(i)) / dim
            values[ring.labels[i]] = as_scalar(v) if is_exact(v) else v
        vals = list(values.values())
        exact = all(is_exact(v) for v in vals)
        ch = IrreducibleCharacter(ring, values, dim, _codegree(vals, dim),
                                  [as_scalar(c) if is_exact(c) else c for c in w], 0, exact)
        chars.append(ch)
    _finish(ring, chars)
    cache[(seed, bound)] = chars
    return chars


def character_inner(ch1: IrreducibleCharacter, ch2: IrreducibleCharacter):
    """Hermitian pairing sum_b ch1(b) conj(ch2(b)) over the grade-0 basis."""
    return _hermitian(ch1.value_list(), ch2.value_list())


def alpha(ch: IrreducibleCharacter) -> RingElement:
    """alpha_E = sum_i ch_E(b_i) b_i* in grade 0."""
    ring = ch.ring
    v = [Fraction(0)] * len(ring)
    for i in ring.grade_indices(0):
        v[ring.dual[i]] = v[ring.dual[i]] + ch.values[ring.labels[i]]
    return RingElement(ring, v)


def idempotent(ch: IrreducibleCharacter) -> RingElement:
    cache = ch.__dict__.setdefault("_idem", [])
    if not cache:
        inv = 1 / ch.codegree if not is_exact(ch.codegree) else as_scalar(ch.codegree).inverse()
        cache.append(alpha(ch) * inv)
    return cache[0]


def central_idempotents(ring: GradedBasedRing, seed: int = 0, bound: int = DEFAULT_BOUND):
    return [CentralIdempotent(idempotent(ch), ch) for ch in irreducible_characters(ring, seed, bound)]


def codegrees(ring: GradedBasedRing, **kw) -> list:
    return [ch.codegree for ch in irreducible_characters(ring, **kw)]


# ---------------------------------------------------------------------------
# center bundles

def embed_rho(bundle: CenterBundle, E: IrreducibleCharacter) -> dict:
    """rho_E on the grade-0 basis of Z: the central character of E at zeta(z)."""
    Z = bundle.Z
    return {Z.labels[i]: E.central(bundle.zeta_apply(Z.basis_element(i)))
            for i in Z.grade_indices(0)}


def rho_vector(bundle: CenterBundle, rho: dict) -> list:
    return [rho[bundle.Z.labels[i]] for i in bundle.Z.grade_indices(0)]


def match_character(values: Sequence, chars: Sequence[IrreducibleCharacter]) -> int | None:
    """Index of the character whose value list equals ``values`` (exact or tolerant)."""
    for k, ch in enumerate(chars):
        if all(linalg.is_zero(a - b) for a, b in zip(values, ch.value_list())):
            return k
    return None


def rho_table(bundle: CenterBundle, seed: int = 0, bound: int = DEFAULT_BOUND) -> list[int]:
    """For each irreducible E of D grade 0, the index of rho_E among Z's characters."""
    cache = bundle._cache.setdefault("rho_table", {})
    if (seed, bound) in cache:
        return cache[(seed, bound)]
    ZC = commutative_characters(bundle.Z, seed, bound)
    out = []
    for E in irreducible_characters(bundle.D, seed, bound):
        k = match_character(rho_vector(bundle, embed_rho(bundle, E)), ZC)
        if k is None:
            raise InjectivityFailure(f"rho_{E.name} is not a character of the center")
        out.append(k)
    if len(set(out)) != len(out):
        raise InjectivityFailure("E -> rho_E is not injective")
    cache[(seed, bound)] = out
    return out


@dataclass
class SMatrixMatch:
    row_to_char: dict      # Z grade-0 label -> index into commutative_characters(Z)
    char_to_row: dict      # index -> label
    irrep_to_row: dict     # index of E in irreducible_characters(D) -> label A_E


def smatrix_characters(bundle: CenterBundle, seed: int = 0, bound: int = DEFAULT_BOUND) -> SMatrixMatch:
    S = bundle.smatrix
    Z = bundle.Z
    ZC = commutative_characters(Z, seed, bound)
    g0 = Z.grade_indices(0)
    row_to_char = {}
    for r, i in enumerate(g0):
        dim = S.dims[r]
        if linalg.is_zero(dim):
            raise UnmatchedRow(f"row {Z.labels[i]} has zero dimension")
        functional = [S.entries[r][c] / dim for c in range(len(g0))]
        k = match_character(functional, ZC)
        if k is None:
            raise UnmatchedRow(f"S-matrix row {Z.labels[i]} is not a character of the center")
        row_to_char[Z.labels[i]] = k
    if sorted(row_to_char.values()) != list(range(len(ZC))):
        raise UnmatchedRow("S-matrix rows do not biject onto the characters of the center")
    char_to_row = {k: lab for lab, k in row_to_char.items()}
    irrep_to_row = {e: char_to_row[k] for e, k in enumerate(rho_table(bundle, seed, bound))}
    return SMatrixMatch(row_to_char, char_to_row, irrep_to_row)


def verify_characters(ring: GradedBasedRing, **kw):
    """Orthogonality <ch_E, ch_E'> = delta f_E dim E, completeness and positivity."""
    from .reports import VerificationReport

    rep = VerificationReport(f"characters of {ring.name or 'ring'}")
    try:
        chars = irreducible_characters(ring, **kw)
    except (SemisimplicityFailure, NonIntegerDimension) as exc:
        rep.add("characters-exist", False, str(exc), "semisimplicity")
        return rep
    total = sum(as_scalar(ch.dim) ** 2 if is_exact(ch.dim) else ch.dim ** 2 for ch in chars)
    rep.add("dimension-count", linalg.is_zero(total - len(ring.grade_indices(0))),
            f"sum dim^2 = {total}", "semisimplicity")
    for ch in chars:
        for other in chars:
            val = character_inner(ch, other)
            want = ch.codegree * ch.dim if ch is other else 0
            rep.add(f"<{ch.name},{other.name}>", linalg.is_zero(val - want), "", "orthogonality")
    for ch in chars:
        ok = True
        if is_exact(ch.codegree):
            f = as_scalar(ch.codegree)
            ok = f.is_real() and is_totally_positive(f)
        rep.add(f"codegree-{ch.name}-totally-positive", ok, "", "codegrees")
    return rep


__all__ = [
    "IrreducibleCharacter", "CentralIdempotent", "commutative_characters", "irreducible_characters",
    "central_idempotents", "idempotent", "alpha", "codegrees", "character_inner", "embed_rho",
    "rho_table", "smatrix_characters", "match_character", "SMatrixMatch", "verify_characters"
]
