
import pytest

from fusionkit import datasets
from fusionkit.characters import (alpha, central_idempotents, character_inner,
                                  commutative_characters, codegrees, idempotent,
                                  irreducible_characters, rho_table, smatrix_characters,
                                  verify_characters)
from fusionkit.errors import NotCommutative
from fusionkit.fusion_data import load_bundle
from fusionkit.scalars import E, is_totally_positive

SQRT5 = E(5) - E(5) ** 2 - E(5) ** 3 + E(5) ** 4


def rings():
    out = []
    for name in datasets.names():
        b = load_bundle(name)
        out.append(pytest.param(b.D, id=f"{name}-D"))
        if b.has_center:
            out.append(pytest.param(b.Z, id=f"{name}-Z"))
    return out


def rational(xs):
    return sorted(x.as_fraction() for x in xs)


def values(ch):
    return [ch.values[lab] for lab in sorted(ch.values)]


def test_rep_s3_characters(bundle):
    D = bundle("rep_s3").D
    chars = irreducible_characters(D)
    got = sorted(tuple(ch.values[l].as_fraction() for l in ("1", "s", "v")) for ch in chars)
    assert got == sorted([(1, 1, 2), (1, -1, 0), (1, 1, -1)])
    assert rational(codegrees(D)) == [2, 3, 6]


def test_fibonacci_characters(bundle):
    D = bundle("fibonacci").D
    t = [lab for lab in D.labels if lab != "1"][0]
    vals = sorted(str(ch.values[t]) for ch in commutative_characters(D))
    want = sorted(str((1 + s) / 2) for s in (SQRT5, -SQRT5))
    assert vals == want
    for ch in irreducible_characters(D):
        assert ch.codegree == (5 + SQRT5 * (1 if ch.values[t] == (1 + SQRT5) / 2 else -1)) / 2


def test_vec_z2_codegrees(bundle):
    assert codegrees(bundle("vec_z2").D) == [2, 2]


def test_vec_s3_is_noncommutative(bundle):
    D = bundle("vec_s3").D
    with pytest.raises(NotCommutative):
        commutative_characters(D)
    chars = irreducible_characters(D)
    assert sorted(int(ch.dim.as_fraction()) for ch in chars) == [1, 1, 2]
    assert rational(codegrees(D)) == [3, 6, 6]


@pytest.mark.parametrize("ring", rings())
def test_orthogonality_and_positivity(ring):
    rep = verify_characters(ring)
    assert rep.passed, rep.lines()
    for ch in irreducible_characters(ring):
        assert is_totally_positive(ch.codegree)
        assert character_inner(ch, ch) == ch.codegree * ch.dim
        unit_value = sum(ch.values[ring.labels[u]] for u in ring.unit)
        assert unit_value == ch.dim


@pytest.mark.parametrize("ring", rings())
def test_central_idempotents(ring):
    idems = [c.element for c in central_idempotents(ring)]
    total = idems[0]
    for e in idems[1:]:
        total = total + e
    assert total == ring.one
    for a, e in enumerate(idems):
        assert e * e == e
        assert e.star() == e
        for b, f in enumerate(idems):
            if a != b:
                assert (e * f).is_zero()


def test_alpha_is_codegree_times_idempotent(bundle):
    D = bundle("rep_s3").D
    for ch in irreducible_characters(D):
        assert alpha(ch) == idempotent(ch) * ch.codegree


def test_commutative_path_agrees_with_general_path(bundle):
    D = bundle("rep_s3").D
    a = sorted(map(str, (values(c) for c in commutative_characters(D))))
    b = sorted(map(str, (values(c) for c in irreducible_characters(D))))
    assert a == b


def test_ising_embedding_and_smatrix_match(bundle):
    b = bundle("ising")
    assert len(set(rho_table(b))) == len(irreducible_characters(b.D))
    match = smatrix_characters(b)
    assert match.irrep_to_row == {0: "1", 1: "e"}


def test_rep_s3_smatrix_match(bundle):
    match = smatrix_characters(bundle("rep_s3"))
    assert match.irrep_to_row == {0: "A", 1: "F", 2: "D"}


def test_deterministic_order(bundle):
    D = bundle("ty_z3_graded").D
    a = [values(c) for c in irreducible_characters(D)]
    D2 = bundle("ty_z3_graded").D
    assert [values(c) for c in irreducible_characters(D2, seed=5)] == a
