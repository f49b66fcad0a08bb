import json

import pytest

from fusionkit import datasets
from fusionkit.clifford import all_extensions, regauge, roots_of_unity
from fusionkit.errors import ConsistencyFailure, NonIntegralEntry, ValidationError
from fusionkit.fusion_data import bundle_from_json, load_bundle
from fusionkit.multiplicity import (as_integer, clspan_failures, counting_checks, crossed_s_matrix,
                                    fixed_point_checks, formula_multiplicities,
                                    restriction_multiplicities, sqrt_global_dimension,
                                    trace_identity_failures, twisted_orthogonality,
                                    verify_main_theorem, verify_modular_formula)
from fusionkit.scalars import BigComplex, E

SQRT2 = E(8) + E(8) ** 7
CENTERED = [n for n in datasets.names() if load_bundle(n).has_center]
MODULAR = [n for n in CENTERED if load_bundle(n).smatrix is not None]

# frozen from the independent oracle (tau(zeta(A) M*), integer arithmetic)
TABLES = {
    "ising_graded": [[1], [1]],
    "ty_z3_graded": [[1], [1], [1]],
    "vec_z3_graded": [[1]],
    "vec_z2": [[1, 0], [1, 0], [0, 1], [0, 1]],
    "rep_s3": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 0], [0, 0, 1],
               [0, 0, 1]],
}


def ising_obj():
    return json.loads(datasets.path("ising").read_text())


@pytest.mark.parametrize("name", sorted(TABLES))
def test_frozen_tables(name, bundle):
    b = bundle(name)
    assert restriction_multiplicities(b).entries == TABLES[name]
    assert formula_multiplicities(b).entries == TABLES[name]


@pytest.mark.parametrize("name", CENTERED)
def test_main_theorem_report(name, bundle):
    rep = verify_main_theorem(bundle(name))
    assert rep.passed, rep.lines()


@pytest.mark.parametrize("name", ["vec_z2", "vec_z3"])
def test_kronecker_delta_in_flux(name, bundle):
    b = bundle(name)
    t = restriction_multiplicities(b)
    for row in t.entries:
        assert sorted(row) == [0] * (len(row) - 1) + [1]
    assert [sum(col) for col in zip(*t.entries)] == [len(t.cols)] * len(t.cols)


@pytest.mark.parametrize("name", CENTERED)
def test_gauge_invariance(name, bundle):
    b = bundle(name)
    base = formula_multiplicities(b)
    for w in roots_of_unity(b.N):
        exts = [regauge(x, w) for x in all_extensions(b)]
        assert formula_multiplicities(b, exts) == base


@pytest.mark.parametrize("name", CENTERED)
def test_trace_identity_and_clspan(name, bundle):
    b = bundle(name)
    t = restriction_multiplicities(b)
    exts = all_extensions(b)
    assert trace_identity_failures(b, t, exts) == []
    assert clspan_failures(b, t, exts) == []


@pytest.mark.parametrize("name", CENTERED)
def test_auxiliary_reports(name, bundle):
    b = bundle(name)
    for rep in (counting_checks(b), fixed_point_checks(b), twisted_orthogonality(b)):
        assert rep.passed, rep.lines()


def test_ising_crossed_s(bundle):
    b = bundle("ising")
    cs = crossed_s_matrix(b)
    assert cs.rows == ["1", "f"]
    assert cs.cols == ["X1", "X2"]
    assert cs.entries == [[SQRT2, SQRT2], [SQRT2, -SQRT2]]
    assert sqrt_global_dimension(b) == 2


@pytest.mark.parametrize("name", MODULAR)
def test_modular_formula(name, bundle):
    rep = verify_modular_formula(bundle(name))
    assert rep.passed, rep.lines()


def test_crossed_s_needs_smatrix():
    obj = ising_obj()
    del obj["smatrix"]
    with pytest.raises(ConsistencyFailure):
        crossed_s_matrix(bundle_from_json(obj))


def test_as_integer():
    assert as_integer(E(3) + E(3) ** 2 + 3) == 2
    assert as_integer(BigComplex(3.0000000000000001)) == 3
    with pytest.raises(NonIntegralEntry):
        as_integer(SQRT2)
    with pytest.raises(NonIntegralEntry):
        as_integer(BigComplex(2.5))


def test_corrupted_zeta_is_itemized():
    obj = ising_obj()
    obj["zeta"][4] = [0, 0, 2]
    b = bundle_from_json(obj)
    with pytest.raises(ValidationError):
        restriction_multiplicities(b)
    rep = verify_main_theorem(b)
    assert not rep.passed
    assert not rep.get("bundle-axioms").passed
    assert not rep.get("extension-pairing").passed


def test_trivial_phi_fails_main_theorem():
    obj = ising_obj()
    obj["phi"] = {k: k for k in ("1", "e", "m", "f")}
    rep = verify_main_theorem(bundle_from_json(obj))
    assert not rep.passed
