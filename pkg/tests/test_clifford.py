import json

import pytest

from fusionkit import datasets
from fusionkit.characters import (commutative_characters, idempotent, irreducible_characters,
                                  rho_table)
from fusionkit.clifford import (all_extensions, extend_central_character, extend_irrep,
                                fixed_counts, fixed_point_routes, gauge_ratio, partial_action,
                                phi_fixed_irreps, regauge, roots_of_unity, twisted_alpha,
                                twisted_inner)
from fusionkit.errors import ConsistencyFailure, GaugeFailure, NotPhiFixed
from fusionkit.fusion_data import bundle_from_json, load_bundle
from fusionkit.scalars import E

SQRT2 = E(8) + E(8) ** 7
CENTERED = [n for n in datasets.names() if load_bundle(n).has_center]


def test_ising_extension(bundle):
    b = bundle("ising")
    (ext,) = all_extensions(b)
    assert ext.base.index == 0              # the trivial character of {1, eps}
    assert ext.lam == 2
    assert ext.m.as_dict() == {"sigma": SQRT2 / 2}
    assert ext.twisted_character == {"sigma": SQRT2}
    assert ext.rho_tilde[1] == {"X1": SQRT2, "X2": SQRT2}
    e = ext.base
    assert twisted_inner(ext, ext) == e.codegree * e.dim == 2
    assert twisted_alpha(ext).as_dict() == {"sigma": SQRT2}


def test_ising_non_fixed_irrep(bundle):
    b = bundle("ising")
    sign = irreducible_characters(b.D)[1]
    assert sign not in phi_fixed_irreps(b)
    with pytest.raises(NotPhiFixed):
        extend_irrep(b, sign)
    # sigma * eps = sigma, so sigma kills e_- = (1 - eps)/2
    assert partial_action(b, 1, sign) is None
    triv = irreducible_characters(b.D)[0]
    assert partial_action(b, 1, triv) is triv


@pytest.mark.parametrize("name", CENTERED)
def test_extensions_satisfy_gauge(name, bundle):
    b = bundle(name)
    for ext in all_extensions(b):
        power = ext.m
        for _ in range(b.N - 1):
            power = power * ext.m
        assert power == idempotent(ext.base)
        assert ext.gauge ** b.N == ext.lam
        assert ext.generator * ext.gauge.inverse() == ext.m


@pytest.mark.parametrize("name", CENTERED)
def test_routes_agree_every_grade(name, bundle):
    b = bundle(name)
    for a in range(b.N):
        assert fixed_point_routes(b, a).agree()


@pytest.mark.parametrize("name", CENTERED)
def test_regauge_covariance(name, bundle):
    b = bundle(name)
    for ext in all_extensions(b):
        for w in roots_of_unity(b.N):
            g = regauge(ext, w)
            for a in range(b.N):
                for lab, v in ext.twisted_values[a].items():
                    assert g.twisted_values[a][lab] == v * w.inverse() ** a
            assert gauge_ratio(g.rho_tilde, ext.rho_tilde, b.N) == w.inverse()


def test_regauge_rejects_non_root(bundle):
    (ext,) = all_extensions(bundle("ising"))
    with pytest.raises(GaugeFailure):
        regauge(ext, E(3))


@pytest.mark.parametrize("name", CENTERED)
def test_intrinsic_and_derived_extensions_agree_up_to_root(name, bundle):
    b = bundle(name)
    table = rho_table(b)
    for ext in all_extensions(b):
        cext = extend_central_character(b, table[ext.base.index])
        w = gauge_ratio(ext.rho_tilde, cext.values, b.N)
        assert w ** b.N == 1


def test_central_extension_rejects_non_fixed(bundle):
    b = bundle("ising")
    Z = b.Z
    for k, rho in enumerate(commutative_characters(Z)):
        fixed = rho.values["e"] == rho.values["m"]
        if not fixed:
            with pytest.raises(NotPhiFixed):
                extend_central_character(b, k)


@pytest.mark.parametrize("name", CENTERED)
def test_counts_on_z_side_and_d_side(name, bundle):
    b = bundle(name)
    for a in range(b.N):
        c = fixed_counts(b, a)
        assert c.z_basis == c.z_fixed_objects == c.z_fixed_characters == c.z_surviving
        assert c.d_fixed_irreps == c.d_relcenter_dim


def test_ising_counts(bundle):
    b = bundle("ising")
    c0, c1 = fixed_counts(b, 0), fixed_counts(b, 1)
    assert (c0.z_basis, c0.d_fixed_irreps) == (4, 2)
    assert (c1.z_basis, c1.d_fixed_irreps) == (2, 1)


def test_trivial_phi_makes_routes_disagree():
    obj = json.loads(datasets.path("ising").read_text())
    obj["phi"] = {k: k for k in ("1", "e", "m", "f")}
    b = bundle_from_json(obj)
    with pytest.raises(ConsistencyFailure):
        phi_fixed_irreps(b)
