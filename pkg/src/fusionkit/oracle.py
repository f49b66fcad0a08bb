"""Independent numeric recomputation used to cross-check the exact pipeline.

Only the raw structure constants of the input and the scalars module are
shared with the main code.  Characters come from a numeric eigen-solve: a
generic central element z (the Higman image sum_i b_i* x b_i of a random x)
acts on each irreducible by a distinct scalar, the Lagrange projectors onto
its eigenspaces in the regular representation give dim E^2 = tr P and
ch_E(b) = tr(L_b P) / dim E.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import mpmath

from .errors import DegenerateEigenproblem
from .reports import VerificationReport
from .scalars import default_precision, to_big


@dataclass
class OracleConfig:
    precision: int = field(default_factory=default_precision)
    tolerance: object = None
    seed: int = 0

    def __post_init__(self):
        floor = mpmath.ldexp(1, -(self.precision // 2))
        if self.tolerance is None:
            self.tolerance = max(mpmath.ldexp(1, -128), floor)
        elif self.tolerance < floor:
            raise ValueError("tolerance must be at least 2^(-precision/2)")


@dataclass
class OracleCharacter:
    values: dict      # label -> mpc
    dim: int
    codegree: object  # mpf


def _grade0(ring) -> list[int]:
    return [i for i, g in enumerate(ring.grades) if g == 0]


def _left(ring, idx, coeffs):
    """Matrix (mpmath) of y -> x*y on span(idx) for x with mp coefficients by index."""
    pos = {k: r for r, k in enumerate(idx)}
    n = len(idx)
    M = mpmath.zeros(n, n)
    for i, c in coeffs.items():
        if c == 0:
            continue
        for s, j in enumerate(idx):
            for k, mult in ring.table.get((i, j), {}).items():
                M[pos[k], s] += c * mult
    return M


def _product(ring, u: dict, v: dict) -> dict:
    out: dict = {}
    for i, x in u.items():
        for j, y in v.items():
            for k, n in ring.table.get((i, j), {}).items():
                out[k] = out.get(k, 0) + x * y * n
    return out


def _higman(ring, idx, x: dict) -> dict:
    z: dict = {}
    for i in idx:
        term = _product(ring, _product(ring, {ring.dual[i]: 1}, x), {i: 1})
        for k, c in term.items():
            z[k] = z.get(k, 0) + c
    return z


def _cluster(eigs, tol):
    groups: list[list] = []
    for ev in eigs:
        for g in groups:
            if abs(g[0] - ev) < tol:
                g.append(ev)
                break
        else:
            groups.append([ev])
    return groups


def _attempt(ring, idx, prec, rng, tol):
    with mpmath.workprec(prec):
        x = {i: mpmath.mpf(rng.randint(1, 97)) / 7 for i in idx}
        z = _higman(ring, idx, x)
        Lz = _left(ring, idx, z)
        if len(idx) == 1:
            eigs = [Lz[0, 0]]
        else:
            eigs = mpmath.eig(Lz, left=False, right=False)
        cluster_tol = mpmath.ldexp(1, -(prec // 4))
        groups = _cluster(list(eigs), cluster_tol)
        centers = [mpmath.fsum(g) / len(g) for g in groups]
        for a in range(len(centers)):
            for b in range(a):
                if abs(centers[a] - centers[b]) < mpmath.sqrt(cluster_tol):
                    raise DegenerateEigenproblem("eigenvalue clusters too close")
        n = len(idx)
        I = mpmath.eye(n)
        chars = []
        for a, mu in enumerate(centers):
            P = mpmath.eye(n)
            for b, nu in enumerate(centers):
                if b != a:
                    P = P * (Lz - nu * I) / (mu - nu)
            tr = sum(P[k, k] for k in range(n))
            d2 = int(mpmath.nint(tr.real))
            d = int(round(d2 ** 0.5))
            if d < 1 or d * d != d2 or abs(tr - d2) > tol or len(groups[a]) != d2:
                raise DegenerateEigenproblem("projector trace is not a perfect square")
            values = {}
            for i in idx:
                Lb = _left(ring, idx, {i: 1})
                prod = Lb * P
                values[ring.labels[i]] = sum(prod[k, k] for k in range(n)) / d
            codeg = mpmath.fsum(abs(v) ** 2 for v in values.values()) / d
            chars.append(OracleCharacter(values, d, codeg))
        return chars


def oracle_characters(ring, config: OracleConfig | None = None) -> list[OracleCharacter]:
    """Characters of grade 0 of ``ring`` by dense numeric eigen-decomposition."""
    config = config or OracleConfig()
    idx = _grade0(ring)
    rng = random.Random(config.seed)
    prec = config.precision
    for _ in range(3):
        try:
            return _attempt(ring, idx, prec, rng, config.tolerance)
        except DegenerateEigenproblem:
            prec *= 2
    raise DegenerateEigenproblem("numeric eigenproblem degenerate after 2 retries")


def oracle_multiplicities(bundle) -> list[list[int]]:
    """m_{A,M} = tau(zeta(A) M*) for grade-1 A of Z and M of D, with integer arithmetic."""
    D, Z = bundle.D, bundle.Z
    a = 1 % D.N
    rows = []
    for i, g in enumerate(Z.grades):
        if g != a:
            continue
        image = {j: n for j, n in enumerate(bundle.zeta[i]) if n}
        row = []
        for j, h in enumerate(D.grades):
            if h != a:
                continue
            prod = _product(D, image, {D.dual[j]: 1})
            row.append(sum(prod.get(u, 0) for u in D.unit))
        rows.append(row)
    return rows


def oracle_orthogonality(extensions, config: OracleConfig | None = None) -> VerificationReport:
    """Numeric twisted inner products: off-diagonal ~ 0, diagonal ~ f_E dim E."""
    config = config or OracleConfig()
    rep = VerificationReport("oracle twisted orthogonality")
    with mpmath.workprec(config.precision):
        vals = []
        for x in extensions:
            tw = x.twisted_character
            vals.append({k: to_big(v, config.precision).value for k, v in tw.items()})
        for p, x in enumerate(extensions):
            want = to_big(x.base.codegree * x.base.dim, config.precision).value
            for q, y in enumerate(extensions):
                s = mpmath.fsum(vals[p][k] * mpmath.conj(vals[q][k]) for k in vals[p])
                target = want if p == q else 0
                ok = abs(s - target) < config.tolerance
                rep.add(f"<{x.base.name},{y.base.name}>", ok, mpmath.nstr(s, 15), "oracle")
    return rep


def match_numeric(exact_values: list, numeric_values: list, tol) -> bool:
    return all(abs(to_big(a).value - b) < tol for a, b in zip(exact_values, numeric_values))


def compare_characters(ring, exact_chars, config: OracleConfig | None = None) -> VerificationReport:
    """Every exact character matches exactly one oracle character (values, dim, codegree)."""
    config = config or OracleConfig()
    rep = VerificationReport(f"oracle characters on {ring.name}")
    ours = oracle_characters(ring, config)
    rep.add("count", len(ours) == len(exact_chars), f"{len(ours)} vs {len(exact_chars)}", "oracle")
    labels = [ring.labels[i] for i in _grade0(ring)]
    used = set()
    for ch in exact_chars:
        hit = None
        for k, oc in enumerate(ours):
            if k in used:
                continue
            if match_numeric([ch.values[l] for l in labels], [oc.values[l] for l in labels],
                             config.tolerance):
                hit = k
                break
        ok = hit is not None
        if ok:
            used.add(hit)
            oc = ours[hit]
            ok = oc.dim == int(ch.dim.as_fraction()) and abs(to_big(ch.codegree).value - oc.codegree) < config.tolerance
        rep.add(f"character-{ch.name}", ok, "", "oracle")
    return rep
