import mpmath
import pytest

from fusionkit import datasets, oracle
from fusionkit.characters import irreducible_characters
from fusionkit.clifford import all_extensions
from fusionkit.errors import DegenerateEigenproblem
from fusionkit.fusion_data import load_bundle
from fusionkit.multiplicity import formula_multiplicities
from fusionkit.oracle import (OracleConfig, compare_characters, oracle_characters,
                              oracle_multiplicities, oracle_orthogonality)

NAMES = datasets.names()
CENTERED = [n for n in NAMES if load_bundle(n).has_center]


@pytest.mark.parametrize("name", NAMES)
def test_oracle_matches_exact_characters(name, bundle):
    b = bundle(name)
    for ring in (b.D, b.Z):
        if ring is not None:
            rep = compare_characters(ring, irreducible_characters(ring))
            assert rep.passed, rep.lines()


@pytest.mark.parametrize("name", CENTERED)
def test_oracle_multiplicities(name, bundle):
    b = bundle(name)
    assert oracle_multiplicities(b) == formula_multiplicities(b).entries


@pytest.mark.parametrize("name", CENTERED)
def test_oracle_twisted_orthogonality(name, bundle):
    rep = oracle_orthogonality(all_extensions(bundle(name)))
    assert rep.passed, rep.lines()


def test_rep_s3_numeric_codegrees(bundle):
    chars = oracle_characters(bundle("rep_s3").D)
    got = sorted(float(c.codegree) for c in chars)
    assert got == pytest.approx([2.0, 3.0, 6.0], abs=1e-30)


def test_tolerance_floor():
    cfg = OracleConfig(precision=128)
    assert cfg.tolerance == mpmath.ldexp(1, -64)
    assert OracleConfig().tolerance == mpmath.ldexp(1, -128)
    with pytest.raises(ValueError):
        OracleConfig(precision=128, tolerance=mpmath.ldexp(1, -100))


def test_retries_double_precision(monkeypatch, bundle):
    seen = []

    def always_degenerate(ring, idx, prec, rng, tol):
        seen.append(prec)
        raise DegenerateEigenproblem("forced")

    monkeypatch.setattr(oracle, "_attempt", always_degenerate)
    with pytest.raises(DegenerateEigenproblem):
        oracle_characters(bundle("ising").D, OracleConfig(precision=128))
    assert seen == [128, 256, 512]
