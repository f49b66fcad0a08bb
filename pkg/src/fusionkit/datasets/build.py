"""Regenerate the bundled JSON fixtures: ``python -m fusionkit.datasets.build``.

Drinfeld doubles D(G) are built from group data alone.  A simple object
(a, pi) is a conjugacy class representative a with an irreducible character
pi of its centralizer, and its character on commuting pairs is

    chi(g, h) = (1/|C(a)|) * sum over x with x a x^-1 = g of pi(x^-1 h x).

Fusion coefficients are inner products of tensor products of these functions,
the S-matrix is S_AB = sum over commuting (g, h) of conj(chi_A(g,h) chi_B(h,g)),
and the two forgetful maps (to Vec_G by flux, to Rep G by restriction) are read
off the same functions.
"""
from __future__ import annotations

import itertools
import json
from fractions import Fraction

from ..scalars import CycloNumber, E, format_scalar
from . import HERE

ZERO = CycloNumber.rational(0)


class Group:
    def __init__(self, elements, mul, identity, name):
        self.elements = list(elements)
        self.mul = mul
        self.identity = identity
        self.name = name

    def inv(self, g):
        return next(h for h in self.elements if self.mul(g, h) == self.identity)

    def conj(self, x, g):
        return self.mul(self.mul(x, g), self.inv(x))

    def centralizer(self, a):
        return [x for x in self.elements if self.mul(x, a) == self.mul(a, x)]

    def classes(self):
        seen, out = set(), []
        for g in self.elements:
            if g in seen:
                continue
            cls = sorted({self.conj(x, g) for x in self.elements}, key=self.elements.index)
            seen.update(cls)
            out.append(cls)
        return out

    def order(self, g):
        k, x = 1, g
        while x != self.identity:
            x, k = self.mul(x, g), k + 1
        return k


def cyclic(n: int) -> Group:
    return Group(range(n), lambda a, b: (a + b) % n, 0, f"Z{n}")


def s3() -> Group:
    perms = list(itertools.permutations(range(3)))
    return Group(perms, lambda p, q: tuple(p[q[i]] for i in range(3)), (0, 1, 2), "S3")


def _is_cyclic(G: Group, H):
    for g in H:
        if G.order(g) == len(H):
            return g
    return None


def irreducible_characters(G: Group, H) -> list[dict]:
    """Character tables of the subgroups needed here (cyclic groups and S3)."""
    gen = _is_cyclic(G, H)
    if gen is not None:
        n = len(H)
        powers = {}
        x = G.identity
        for j in range(n):
            powers[x] = j
            x = G.mul(x, gen)
        return [{h: E(n) ** ((j * k) % n) for h, j in powers.items()} for k in range(n)]
    if len(H) == 6:
        def fixed(p):
            return sum(1 for i in range(3) if p[i] == i)

        def sign(p):
            return 1 if fixed(p) != 1 else -1
        return [
            {h: CycloNumber.rational(1) for h in H},
            {h: CycloNumber.rational(sign(h)) for h in H},
            {h: CycloNumber.rational(fixed(h) - 1) for h in H},
        ]
    raise ValueError("unsupported centralizer")


def double_simples(G: Group):
    """List of (class, rep, centralizer, character) in a fixed order."""
    out = []
    for cls in G.classes():
        a = cls[0]
        C = G.centralizer(a)
        for pi in irreducible_characters(G, C):
            out.append((cls, a, C, pi))
    return out


def double_character(G: Group, simple):
    cls, a, C, pi = simple

    def chi(g, h):
        total = ZERO
        for x in G.elements:
            if G.conj(x, a) == g:
                total = total + pi[G.mul(G.mul(G.inv(x), h), x)]
        return total * Fraction(1, len(C))
    return chi


def commuting_pairs(G: Group):
    return [(g, h) for g in G.elements for h in G.elements if G.mul(g, h) == G.mul(h, g)]


def double_data(G: Group, labels):
    simples = double_simples(G)
    chars = [double_character(G, s) for s in simples]
    pairs = commuting_pairs(G)
    vals = [{p: c(*p) for p in pairs} for c in chars]
    order = Fraction(1, len(G.elements))

    def inner(f1, f2):
        return sum((f1[p] * f2[p].conjugate() for p in pairs), ZERO) * order

    def tensor(f1, f2):
        out = {}
        for g, h in pairs:
            total = ZERO
            for g1 in G.elements:
                g2 = G.mul(G.inv(g1), g)
                if G.mul(g1, h) == G.mul(h, g1):
                    total = total + f1[(g1, h)] * f2[(g2, h)]
            out[(g, h)] = total
        return out

    n = len(simples)
    constants = []
    for i in range(n):
        for j in range(n):
            t = tensor(vals[i], vals[j])
            for k in range(n):
                c = inner(t, vals[k])
                if c:
                    constants.append([labels[i], labels[j], labels[k], int(c.as_fraction())])
    dual = {}
    for i in range(n):
        conj = {(g, h): vals[i][(G.inv(g), h)].conjugate() for g, h in pairs}
        # dual object: chi*(g,h) = conj chi(g^-1, h)
        j = next(k for k in range(n) if all(vals[k][p] == conj[p] for p in pairs))
        dual[labels[i]] = labels[j]
    S = [[sum(((vals[i][(g, h)] * vals[j][(h, g)]).conjugate() for g, h in pairs), ZERO)
          for j in range(n)] for i in range(n)]
    dims = [sum((vals[i][(g, G.identity)] for g in G.elements), ZERO) for i in range(n)]
    flux = [[int(vals[i][(g, G.identity)].as_fraction()) for g in G.elements] for i in range(n)]
    restriction = []
    irreps = irreducible_characters(G, G.elements)
    for i in range(n):
        res = {h: sum((vals[i][(g, h)] for g in G.elements
                       if G.mul(g, h) == G.mul(h, g)), ZERO) for h in G.elements}
        row = []
        for pi in irreps:
            m = sum((res[h] * pi[h].conjugate() for h in G.elements), ZERO) * order
            row.append(int(m.as_fraction()))
        restriction.append(row)
    ring = {
        "basis": [{"label": lab, "grade": 0} for lab in labels],
        "unit": [labels[0]],
        "dual": dual,
        "constants": constants,
    }
    return ring, S, dims, flux, restriction


def group_ring(G: Group, labels, grades=None):
    idx = {g: i for i, g in enumerate(G.elements)}
    grades = grades or [0] * len(labels)
    return {
        "basis": [{"label": lab, "grade": gr} for lab, gr in zip(labels, grades)],
        "unit": [labels[idx[G.identity]]],
        "dual": {labels[idx[g]]: labels[idx[G.inv(g)]] for g in G.elements},
        "constants": [[labels[idx[g]], labels[idx[h]], labels[idx[G.mul(g, h)]], 1]
                      for g in G.elements for h in G.elements],
    }


def rep_ring_s3():
    labels = ["1", "s", "v"]
    table = {("1", x): {x: 1} for x in labels}
    table.update({(x, "1"): {x: 1} for x in labels})
    table[("s", "s")] = {"1": 1}
    table[("s", "v")] = {"v": 1}
    table[("v", "s")] = {"v": 1}
    table[("v", "v")] = {"1": 1, "s": 1, "v": 1}
    return {
        "basis": [{"label": x, "grade": 0} for x in labels],
        "unit": ["1"],
        "dual": {x: x for x in labels},
        "constants": [[i, j, k, n] for (i, j), row in sorted(table.items()) for k, n in sorted(row.items())],
    }


def _smatrix(S, dims):
    return {"entries": [[format_scalar(x) for x in row] for row in S],
            "dims": [format_scalar(d) for d in dims]}


def _double_bundle(G, D_ring, labels, name, zeta, notes):
    ring_Z, S, dims, _, _ = double_data(G, labels)
    return {
        "name": name,
        "notes": notes,
        "grading_order": 1,
        "ring_D": D_ring,
        "ring_Z": ring_Z,
        "zeta": zeta,
        "phi": {lab: lab for lab in labels},
        "smatrix": _smatrix(S, dims),
    }


TORIC = ["1", "e", "m", "f"]  # (flux, charge) = (0,0), (0,1), (1,0), (1,1)


def vec_z2():
    G = cyclic(2)
    _, _, _, flux, _ = double_data(G, TORIC)
    return _double_bundle(G, group_ring(G, ["1", "g"]), TORIC, "vec_z2", flux,
                          "C = Vec_Z2 with Z = its Drinfeld center D(Z2) (toric code); "
                          "zeta forgets the half-braiding and records the flux: 1,e -> 1 and m,f -> g.")


def z3_labels():
    # simples come out ordered by flux class, then charge
    return [f"({a},{b})" for a in range(3) for b in range(3)]


def vec_z3():
    G = cyclic(3)
    labels = z3_labels()
    _, _, _, flux, _ = double_data(G, labels)
    return _double_bundle(G, group_ring(G, ["1", "g", "g2"]), labels, "vec_z3", flux,
                          "C = Vec_Z3 with Z = D(Z3); label (a,b) is flux g^a and charge w^b; "
                          "zeta(a,b) = g^a; S_(a,b),(c,d) = w^-(ad+bc).")


S3_DOUBLE = ["A", "B", "C", "D", "E", "F", "G", "H"]
S3_ELEMENTS = ["()", "(23)", "(12)", "(123)", "(132)", "(13)"]


def _s3_labels(G):
    names = {(0, 1, 2): "()", (0, 2, 1): "(23)", (1, 0, 2): "(12)", (2, 1, 0): "(13)",
             (1, 2, 0): "(123)", (2, 0, 1): "(132)"}
    return [names[g] for g in G.elements]


def rep_s3():
    G = s3()
    _, _, _, _, restriction = double_data(G, S3_DOUBLE)
    return _double_bundle(G, rep_ring_s3(), S3_DOUBLE, "rep_s3", restriction,
                          "C = Rep(S3) = {1, s (sign), v (2-dim)} with Z = D(S3), simples A..H = "
                          "(e,1),(e,sign),(e,std),((12),+),((12),-),((123),1),((123),w),((123),w2); "
                          "zeta restricts a D(S3)-module to S3.")


def vec_s3():
    G = s3()
    _, _, _, flux, _ = double_data(G, S3_DOUBLE)
    return _double_bundle(G, group_ring(G, _s3_labels(G)), S3_DOUBLE, "vec_s3", flux,
                          "C = Vec_S3 (noncommutative group ring) with Z = D(S3); "
                          "zeta(A) = sum over g of the flux-g multiplicity of A.")


def fibonacci():
    return {
        "name": "fibonacci",
        "notes": "Fibonacci fusion ring {1, t} with t*t = 1 + t; ring only.",
        "grading_order": 1,
        "ring_D": {
            "basis": [{"label": "1", "grade": 0}, {"label": "t", "grade": 0}],
            "unit": ["1"],
            "dual": {"1": "1", "t": "t"},
            "constants": [["1", "1", "1", 1], ["1", "t", "t", 1], ["t", "1", "t", 1],
                          ["t", "t", "1", 1], ["t", "t", "t", 1]],
        },
    }


def _toric_grade0():
    ring, S, dims, flux, _ = double_data(cyclic(2), TORIC)
    return ring, S, dims, flux


def ising_graded():
    ring0, S, dims, flux = _toric_grade0()
    basis = ring0["basis"] + [{"label": "X1", "grade": 1}, {"label": "X2", "grade": 1}]
    dual = dict(ring0["dual"], X1="X1", X2="X2")
    constants = list(ring0["constants"])
    swap = {"X1": "X2", "X2": "X1"}
    for c in TORIC:
        for x in ("X1", "X2"):
            y = swap[x] if c in ("e", "m") else x
            constants += [[c, x, y, 1], [x, c, y, 1]]
    for x in ("X1", "X2"):
        for y in ("X1", "X2"):
            out = ("1", "f") if x == y else ("e", "m")
            constants += [[x, y, o, 1] for o in out]
    D = {
        "basis": [{"label": "1", "grade": 0}, {"label": "eps", "grade": 0}, {"label": "sigma", "grade": 1}],
        "unit": ["1"],
        "dual": {"1": "1", "eps": "eps", "sigma": "sigma"},
        "constants": [["1", "1", "1", 1], ["1", "eps", "eps", 1], ["eps", "1", "eps", 1],
                      ["eps", "eps", "1", 1], ["1", "sigma", "sigma", 1], ["sigma", "1", "sigma", 1],
                      ["eps", "sigma", "sigma", 1], ["sigma", "eps", "sigma", 1],
                      ["sigma", "sigma", "1", 1], ["sigma", "sigma", "eps", 1]],
    }
    zeta = [[f[0], f[1], 0] for f in flux] + [[0, 0, 1], [0, 0, 1]]
    return {
        "name": "ising_graded",
        "notes": "Ising category as a Z2-graded extension of C = Vec_Z2 = {1, eps}, sigma*sigma = 1 + eps. "
                 "Z_C(D) has grade 0 = D(Z2) (toric code {1,e,m,f}) and grade 1 = {X1, X2}; "
                 "Phi swaps e and m, e and m swap X1 and X2, X_i X_i = 1 + f, X1 X2 = e + m; "
                 "zeta: e -> 1, m,f -> eps, X_i -> sigma.",
        "grading_order": 2,
        "ring_D": D,
        "ring_Z": {"basis": basis, "unit": ["1"], "dual": dual, "constants": constants},
        "zeta": zeta,
        "phi": {"1": "1", "e": "m", "m": "e", "f": "f"},
        "smatrix": _smatrix(S, dims),
    }


def ty_z3_graded():
    labels = z3_labels()
    ring0, S, dims, flux, _ = double_data(cyclic(3), labels)
    xs = [f"X{i}" for i in range(3)]
    basis = ring0["basis"] + [{"label": x, "grade": 1} for x in xs]
    dual = dict(ring0["dual"], **{f"X{i}": f"X{(-i) % 3}" for i in range(3)})
    constants = list(ring0["constants"])
    for a in range(3):
        for b in range(3):
            c = f"({a},{b})"
            for i in range(3):
                y = f"X{(i + a + b) % 3}"
                constants += [[c, xs[i], y, 1], [xs[i], c, y, 1]]
    for i in range(3):
        for j in range(3):
            constants += [[xs[i], xs[j], f"({a},{b})", 1]
                          for a in range(3) for b in range(3) if (a + b - i - j) % 3 == 0]
    D = {
        "basis": [{"label": lab, "grade": 0} for lab in ("1", "g", "g2")] + [{"label": "sigma", "grade": 1}],
        "unit": ["1"],
        "dual": {"1": "1", "g": "g2", "g2": "g", "sigma": "sigma"},
        "constants": [[x, y, ["1", "g", "g2"][(i + j) % 3], 1]
                      for i, x in enumerate(("1", "g", "g2")) for j, y in enumerate(("1", "g", "g2"))]
        + [[x, "sigma", "sigma", 1] for x in ("1", "g", "g2")]
        + [["sigma", x, "sigma", 1] for x in ("1", "g", "g2")]
        + [["sigma", "sigma", x, 1] for x in ("1", "g", "g2")],
    }
    zeta = [[f[0], f[1], f[2], 0] for f in flux] + [[0, 0, 0, 1]] * 3
    return {
        "name": "ty_z3_graded",
        "notes": "Tambara-Yamagami TY(Z3) as a Z2-graded extension of C = Vec_Z3, sigma*sigma = 1 + g + g2. "
                 "Z_C(D) has grade 0 = D(Z3) with Phi (a,b) -> (b,a) and grade 1 = {X0, X1, X2} with "
                 "(a,b) X_i = X_(i+a+b), X_i X_j = sum of (a,b) with a+b = i+j, X_i* = X_-i; "
                 "zeta(a,b) = g^a, zeta(X_i) = sigma.",
        "grading_order": 2,
        "ring_D": D,
        "ring_Z": {"basis": basis, "unit": ["(0,0)"], "dual": dual, "constants": constants},
        "zeta": zeta,
        "phi": {f"({a},{b})": f"({b},{a})" for a in range(3) for b in range(3)},
        "smatrix": _smatrix(S, dims),
    }


def vec_z3_graded():
    G = cyclic(3)
    labels = ["1", "g", "g2"]
    D = group_ring(G, labels, [0, 1, 2])
    Z = group_ring(G, ["Y0", "Y1", "Y2"], [0, 1, 2])
    return {
        "name": "vec_z3_graded",
        "notes": "Vec_Z3 graded by the group itself over C = Vec; Z_C(D) is isomorphic to D "
                 "(Y_a -> g^a), Phi trivial.",
        "grading_order": 3,
        "ring_D": D,
        "ring_Z": Z,
        "zeta": [[int(i == j) for j in range(3)] for i in range(3)],
        "phi": {"Y0": "Y0"},
        "smatrix": {"entries": [["1"]], "dims": ["1"]},
    }


BUILDERS = {
    "vec_z2": vec_z2,
    "vec_z3": vec_z3,
    "rep_s3": rep_s3,
    "vec_s3": vec_s3,
    "fibonacci": fibonacci,
    "ising_graded": ising_graded,
    "ty_z3_graded": ty_z3_graded,
    "vec_z3_graded": vec_z3_graded,
}


def render(name: str) -> str:
    return json.dumps(BUILDERS[name](), indent=1, ensure_ascii=False) + "\n"


def main():
    for name in BUILDERS:
        (HERE / f"{name}.json").write_text(render(name), encoding="utf-8")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main()
