"""Graded Clifford theory: partial action, Phi-fixed irreducibles, extensions.

For a Phi-fixed irreducible E of grade 0 of D the space e_E * Z_{K(C)}(K(C_1))
is one-dimensional.  A generator m normalized by m^N = e_E identifies every
e_E K(C_a) e_E with e_E K(C), and the extension E~ lets m act trivially, so

    chi~_E(x) = ch_E(e_E * x * m^(N - a))      for x of grade a.

The paired extended central character is rho~_E(z) = chi~_E(zeta(z)) / dim E.
The same construction inside the commutative ring Z gives rho~ intrinsically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .characters import (DEFAULT_BOUND, IrreducibleCharacter, commutative_characters,
                         embed_rho, idempotent, irreducible_characters, rho_table, rho_vector)
from .errors import ConsistencyFailure, GaugeFailure, NotPhiFixed
from .fusion_data import CenterBundle, GradedBasedRing, RingElement, require_verified
from .scalars import CycloNumber, E as root_of_unity, as_scalar, is_exact, nth_root_gauge

ONE = CycloNumber.rational(1)


def _inv(x):
    return as_scalar(x).inverse() if is_exact(x) else 1 / x


def _scaled_first(v: RingElement) -> RingElement:
    """v scaled so that its first nonzero coordinate is 1."""
    lead = next(c for c in v.coeffs if not linalg.is_zero(c))
    return v * _inv(lead)


def _ratio(x: RingElement, y: RingElement):
    """The scalar c with x = c*y, or None when x is not a multiple of y."""
    k = next((i for i, c in enumerate(y.coeffs) if not linalg.is_zero(c)), None)
    if k is None:
        return None
    c = x.coeffs[k] * _inv(y.coeffs[k])
    return c if (x - y * c).is_zero() else None


def _span_dim(elements: list[RingElement]) -> int:
    if not elements:
        return 0
    return linalg.rank([e.coeffs for e in elements], len(elements[0].coeffs))


# ---------------------------------------------------------------------------
# partial action and fixed points

def partial_action(bundle: CenterBundle | GradedBasedRing, a: int, E: IrreducibleCharacter,
                   **kw) -> IrreducibleCharacter | None:
    """The irreducible ^(a)E = K(C_a) (x) E, or None when it vanishes."""
    D = bundle.D if isinstance(bundle, CenterBundle) else bundle
    e = idempotent(E)
    grade = [D.basis_element(i) for i in D.grade_indices(a)]
    for F in irreducible_characters(D, **kw):
        f = idempotent(F)
        if any(not (f * b * e).is_zero() for b in grade):
            return F
    return None


def bimodule_dims(D: GradedBasedRing, a: int, E: IrreducibleCharacter) -> tuple[int, int]:
    """(dim e_E K(C_a) e_E, dim e_E K(C_0) e_E)."""
    e = idempotent(E)
    sa = [e * D.basis_element(i) * e for i in D.grade_indices(a)]
    s0 = [e * D.basis_element(i) * e for i in D.grade_indices(0)]
    return _span_dim(sa), _span_dim(s0)


def relcenter_component(D: GradedBasedRing, a: int, E: IrreducibleCharacter) -> list[RingElement]:
    """Nonzero elements e_E * r for r in the grade-a relative-center basis."""
    e = idempotent(E)
    return [e * r for r in D.relative_center(a) if not (e * r).is_zero()]


def is_fixed_by_partial_action(D: GradedBasedRing, a: int, E: IrreducibleCharacter) -> bool:
    """^(a)E = E, via the free-of-rank-one bimodule test plus the relative center."""
    da, d0 = bimodule_dims(D, a, E)
    return da == d0 and bool(relcenter_component(D, a, E))


def rho_phi_fixed(bundle: CenterBundle, rho: list, a: int) -> bool:
    """rho o Phi^a == rho for a value vector on the grade-0 basis of Z."""
    Z = bundle.Z
    g0 = Z.grade_indices(0)
    perm = bundle.phi_power(a % bundle.N)
    pos = {i: k for k, i in enumerate(g0)}
    return all(linalg.is_zero(rho[pos[perm[i]]] - rho[pos[i]]) for i in g0)


def z_idempotent_survives(bundle: CenterBundle, rho_index: int, a: int, **kw) -> bool:
    """e_rho * K(Z_C(C_a)) != 0."""
    Z = bundle.Z
    e = idempotent(commutative_characters(Z, **kw)[rho_index])
    return any(not (e * Z.basis_element(i)).is_zero() for i in Z.grade_indices(a))


@dataclass
class FixedPointRoutes:
    a: int
    by_character: list[bool]       # rho_E o Phi^a = rho_E
    by_partial_action: list[bool]  # ^(a)E = E
    by_z_idempotent: list[bool]    # e_{rho_E} K(Z_C(C_a)) != 0
    by_d_idempotent: list[bool]    # e_E Z_{K(C)}(K(C_a)) != 0

    def agree(self) -> bool:
        return (self.by_character == self.by_partial_action == self.by_z_idempotent
                == self.by_d_idempotent)


def fixed_point_routes(bundle: CenterBundle, a: int, **kw) -> FixedPointRoutes:
    require_verified(bundle)
    D = bundle.D
    irreps = irreducible_characters(D, **kw)
    table = rho_table(bundle, **kw)
    a %= bundle.N
    by_char, by_pa, by_z, by_d = [], [], [], []
    for E, k in zip(irreps, table):
        by_char.append(rho_phi_fixed(bundle, rho_vector(bundle, embed_rho(bundle, E)), a))
        target = partial_action(D, a, E, **kw)
        by_pa.append(target is E and is_fixed_by_partial_action(D, a, E))
        by_z.append(z_idempotent_survives(bundle, k, a, **kw))
        by_d.append(bool(relcenter_component(D, a, E)))
    return FixedPointRoutes(a, by_char, by_pa, by_z, by_d)


def phi_fixed_irreps(bundle: CenterBundle, **kw) -> list[IrreducibleCharacter]:
    """Irreducibles of grade 0 of D with rho_E o Phi = rho_E, cross-checked three ways."""
    routes = fixed_point_routes(bundle, 1 % bundle.N, **kw)
    if not routes.agree():
        raise ConsistencyFailure(
            f"fixed-point routes disagree: character {routes.by_character}, partial action "
            f"{routes.by_partial_action}, Z idempotent {routes.by_z_idempotent}, "
            f"D idempotent {routes.by_d_idempotent}")
    irreps = irreducible_characters(bundle.D, **kw)
    return [E for E, ok in zip(irreps, routes.by_character) if ok]


# ---------------------------------------------------------------------------
# extensions

@dataclass(eq=False)
class TwistedExtension:
    base: IrreducibleCharacter
    generator: RingElement          # v, first coordinate scaled to 1
    lam: object                     # v^N = lam * e_E
    gauge: object                   # principal N-th root of lam
    m: RingElement                  # m = omega * v / gauge, m^N = e_E
    twisted_values: dict            # grade -> {D label: value}
    rho_tilde: dict                 # grade -> {Z label: value}
    omega: object = field(default=ONE)

    @property
    def twisted_character(self) -> dict:
        return self.twisted_values[1 % self.base.ring.N]

    def chi(self, x: RingElement):
        """chi~_E on an arbitrary element of D (linear extension)."""
        D = self.base.ring
        total = Fraction(0)
        for i, c in enumerate(x.coeffs):
            if not linalg.is_zero(c):
                total = total + c * self.twisted_values[D.grades[i]][D.labels[i]]
        return total


def _power(m: RingElement, k: int, unit: RingElement) -> RingElement:
    out = unit
    for _ in range(k):
        out = out * m
    return out


def _normalize_generator(v: RingElement, e: RingElement, N: int):
    lam = _ratio(_power(v, N, e), e)
    if lam is None or linalg.is_zero(lam):
        raise GaugeFailure("v^N is not a nonzero multiple of the idempotent")
    c = nth_root_gauge(lam, N)
    return lam, c, v * _inv(c)


def extend_irrep(bundle: CenterBundle, E: IrreducibleCharacter, **kw) -> TwistedExtension:
    """Twisted extension of a Phi-fixed irreducible in the principal gauge."""
    require_verified(bundle)
    D, N = bundle.D, bundle.N
    cache = bundle._cache.setdefault("extensions", {})
    key = (E.index, tuple(sorted(kw.items())))
    if key in cache:
        return cache[key]
    if E not in phi_fixed_irreps(bundle, **kw):
        raise NotPhiFixed(f"{E.name} is not Phi-fixed")
    e = idempotent(E)
    comp = relcenter_component(D, 1, E)
    if not comp:
        raise GaugeFailure(f"e_{E.name} kills the grade-1 relative center")
    v = _scaled_first(comp[0])
    lam, c, m = _normalize_generator(v, e, N)
    twisted = {}
    for a in range(N):
        tail = _power(m, (N - a) % N, e)
        twisted[a] = {D.labels[i]: E(e * D.basis_element(i) * tail) for i in D.grade_indices(a)}
    ext = TwistedExtension(E, v, lam, c, m, twisted, {})
    ext.rho_tilde = _derived_rho_tilde(bundle, ext)
    cache[key] = ext
    return ext


def _derived_rho_tilde(bundle: CenterBundle, ext: TwistedExtension) -> dict:
    Z = bundle.Z
    inv_dim = _inv(ext.base.dim)
    return {a: {Z.labels[i]: ext.chi(bundle.zeta_apply(Z.basis_element(i))) * inv_dim
                for i in Z.grade_indices(a)} for a in range(bundle.N)}


def regauge(ext: TwistedExtension, omega) -> TwistedExtension:
    """The extension for m -> omega*m (omega^N = 1): grade-a values scale by omega^-a."""
    N = ext.base.ring.N
    omega = as_scalar(omega)
    if omega ** N != 1:
        raise GaugeFailure(f"{omega} is not an N-th root of unity")
    inv = omega.inverse()
    scale = {a: inv ** a for a in range(N)}
    tw = {a: {k: v * scale[a] for k, v in vals.items()} for a, vals in ext.twisted_values.items()}
    rt = {a: {k: v * scale[a] for k, v in vals.items()} for a, vals in ext.rho_tilde.items()}
    return TwistedExtension(ext.base, ext.generator, ext.lam, ext.gauge, ext.m * omega, tw, rt,
                            ext.omega * omega)


@dataclass(eq=False)
class CentralExtension:
    rho_index: int
    generator: RingElement
    lam: object
    gauge: object
    m: RingElement
    values: dict   # grade -> {Z label: value}


def extend_central_character(bundle: CenterBundle, rho_index: int, **kw) -> CentralExtension:
    """Extension of a Phi-fixed character of grade 0 of Z, built inside Z."""
    require_verified(bundle)
    Z, N = bundle.Z, bundle.N
    chars = commutative_characters(Z, **kw)
    rho = chars[rho_index]
    if not rho_phi_fixed(bundle, rho.value_list(), 1 % N):
        raise NotPhiFixed(f"character {rho_index} of the center is not Phi-fixed")
    e = idempotent(rho)
    comp = [e * Z.basis_element(i) for i in Z.grade_indices(1)]
    comp = [c for c in comp if not c.is_zero()]
    if not comp:
        raise GaugeFailure(f"e_rho kills grade 1 of Z for character {rho_index}")
    v = _scaled_first(comp[0])
    lam, c, m = _normalize_generator(v, e, N)
    values = {}
    for a in range(N):
        ma = _power(m, a, e)
        row = {}
        for i in Z.grade_indices(a):
            r = _ratio(e * Z.basis_element(i), ma)
            if r is None:
                if not (e * Z.basis_element(i)).is_zero():
                    raise GaugeFailure(f"e_rho {Z.labels[i]} is not a multiple of m^{a}")
                r = CycloNumber.rational(0)
            row[Z.labels[i]] = r
        values[a] = row
    return CentralExtension(rho_index, v, lam, c, m, values)


def gauge_ratio(derived: dict, intrinsic: dict, N: int):
    """The N-th root of unity w with derived[a] = w^a * intrinsic[a] for all a.

    Raises GaugeFailure when the two tables are not related this way.
    """
    w = None
    grade1 = 1 % N
    for lab, x in intrinsic[grade1].items():
        y = derived[grade1][lab]
        if linalg.is_zero(x):
            if not linalg.is_zero(y):
                raise GaugeFailure(f"value at {lab} vanishes on one side only")
            continue
        r = y * _inv(x)
        if w is None:
            w = r
        elif not linalg.is_zero(r - w):
            raise GaugeFailure("ratio of extended central characters is not constant")
    if w is None:
        w = ONE
    if not linalg.is_zero(w ** N - 1):
        raise GaugeFailure(f"ratio {w} is not an N-th root of unity")
    for a in range(N):
        wa = w ** a
        for lab, x in intrinsic[a].items():
            if not linalg.is_zero(derived[a][lab] - wa * x):
                raise GaugeFailure(f"grade-{a} values differ from w^{a} times the intrinsic values")
    return w


def roots_of_unity(N: int) -> list:
    return [root_of_unity(N) ** k for k in range(N)]


def twisted_alpha(ext: TwistedExtension) -> RingElement:
    """alpha~_E = sum over grade-1 basis M of chi~_E(M) M*, an element of grade -1."""
    D = ext.base.ring
    v = [Fraction(0)] * len(D)
    for lab, val in ext.twisted_character.items():
        i = D.index(lab)
        v[D.dual[i]] = v[D.dual[i]] + val
    return RingElement(D, v)


def twisted_inner(ext1: TwistedExtension, ext2: TwistedExtension):
    """sum over grade-1 basis M of chi~_1(M) conj(chi~_2(M))."""
    total = Fraction(0)
    for lab, x in ext1.twisted_character.items():
        y = ext2.twisted_character[lab]
        total = total + x * (y.conjugate() if hasattr(y, "is_numeric") else y)
    return total


def all_extensions(bundle: CenterBundle, **kw) -> list[TwistedExtension]:
    return [extend_irrep(bundle, E, **kw) for E in phi_fixed_irreps(bundle, **kw)]


@dataclass
class FixedCounts:
    a: int
    z_basis: int               # |grade-a basis of Z|
    z_fixed_objects: int       # |Phi^a-fixed grade-0 basis of Z|
    z_fixed_characters: int    # |Phi^a-fixed characters of grade 0 of Z|
    z_surviving: int           # |{rho : e_rho K(Z_C(C_a)) != 0}|
    d_fixed_irreps: int        # |{E : rho_E o Phi^a = rho_E}|
    d_relcenter_dim: int       # dim Z_{K(C)}(K(C_a))


def fixed_counts(bundle: CenterBundle, a: int, **kw) -> FixedCounts:
    require_verified(bundle)
    Z, D = bundle.Z, bundle.D
    a %= bundle.N
    perm = bundle.phi_power(a)
    zc = commutative_characters(Z, **kw)
    routes = fixed_point_routes(bundle, a, **kw)
    return FixedCounts(
        a,
        len(Z.grade_indices(a)),
        sum(1 for i in Z.grade_indices(0) if perm[i] == i),
        sum(1 for ch in zc if rho_phi_fixed(bundle, ch.value_list(), a)),
        sum(1 for k in range(len(zc)) if z_idempotent_survives(bundle, k, a, **kw)),
        sum(routes.by_character),
        len(D.relative_center(a)),
    )


__all__ = [
    "partial_action", "phi_fixed_irreps", "fixed_point_routes", "extend_irrep",
    "extend_central_character", "regauge", "gauge_ratio", "twisted_alpha", "twisted_inner",
    "TwistedExtension", "CentralExtension", "fixed_counts", "FixedCounts", "all_extensions",
    "roots_of_unity", "bimodule_dims", "is_fixed_by_partial_action", "relcenter_component",
    "DEFAULT_BOUND",
]
