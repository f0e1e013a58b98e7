import json

import pytest

from casimir_forge import catalog, liealg
from casimir_forge.errors import IndexOutOfRange, ParseError, ValidationError
from casimir_forge.rationals import QQ


def test_catalog_entries_validate():
    for name in catalog.names():
        assert liealg.validate(catalog.algebra(name)) == []


def test_bracket_values_from_tables():
    sl2 = catalog.algebra("sl2")
    assert sl2.bracket(1, 2) == [(1, QQ(2))]
    assert sl2.bracket(2, 1) == [(1, QQ(-2))]
    assert sl2.bracket(1, 1) == []
    s6160 = catalog.algebra("s6160")
    assert s6160.bracket(3, 6) == [(3, QQ(-1))]


def test_bracket_antisymmetry_all_pairs():
    for name in catalog.names():
        alg = catalog.algebra(name)
        for i in range(1, alg.dim + 1):
            for j in range(1, alg.dim + 1):
                fwd = dict(alg.bracket(i, j))
                bwd = dict(alg.bracket(j, i))
                assert set(fwd) == set(bwd)
                for k, c in fwd.items():
                    assert bwd[k] == -c


def test_bracket_out_of_range():
    sl2 = catalog.algebra("sl2")
    with pytest.raises(IndexOutOfRange):
        sl2.bracket(0, 2)
    with pytest.raises(IndexOutOfRange):
        sl2.bracket(1, 4)


def test_centers_match_tables():
    assert liealg.center(catalog.algebra("n55")) == {1}
    assert liealg.center(catalog.algebra("n61")) == {1, 2, 3}
    assert liealg.center(catalog.algebra("sl2")) == set()
    assert liealg.center(catalog.algebra("sl2_n31")) == {4}


def test_invariant_counts():
    expected = {
        "sl2": 1,
        "so13": 2,
        "n55": 3,
        "n61": 4,
        "n619": 2,
        "s6160": 2,
        "s6183": 2,
        "sl2_3n11": 2,
        "sl2_n31": 2,
    }
    for name, n in expected.items():
        assert liealg.invariant_count(catalog.algebra(name)) == n


def test_invariant_count_stable_across_points():
    for name in ("sl2", "n55", "s6183"):
        alg = catalog.algebra(name)
        counts = {liealg.invariant_count(alg, samples=10, seed=seed) for seed in range(5)}
        assert len(counts) == 1


def test_abelian_center_is_everything():
    alg = liealg.make_lie_algebra("abelian3", 3, {})
    assert liealg.center(alg) == {1, 2, 3}
    assert liealg.invariant_count(alg) == 3


def test_load_roundtrip_and_validation():
    doc = liealg.dump(catalog.algebra("sl2"))
    alg = liealg.load(json.dumps(doc))
    assert alg.dim == 3
    assert alg.bracket(1, 2) == [(1, QQ(2))]


def test_load_rejects_jacobi_failure():
    # sl2 with [X1,X2] = 3 X1 breaks the Jacobi identity
    doc = {
        "name": "bad",
        "dim": 3,
        "brackets": [
            {"i": 1, "j": 2, "terms": [{"k": 1, "num": 3, "den": 1}]},
            {"i": 1, "j": 3, "terms": [{"k": 2, "num": -1, "den": 1}]},
            {"i": 2, "j": 3, "terms": [{"k": 3, "num": 2, "den": 1}]},
        ],
    }
    with pytest.raises(ValidationError):
        liealg.load(doc)
    # brute-force: the perturbed table really does fail some Jacobi triple
    table = {
        (1, 2): [(1, QQ(3))],
        (1, 3): [(2, QQ(-1))],
        (2, 3): [(3, QQ(2))],
    }
    bad = liealg.make_lie_algebra("bad", 3, table, check=False)
    assert liealg.validate(bad) != []


def test_validate_reports_failing_triple():
    table = dict(catalog.algebra("n55").brackets)
    table = {k: list(v) for k, v in table.items()}
    table[(2, 5)] = [(1, QQ(1)), (2, QQ(1))]  # [X2,X5] = X1 + X2
    bad = liealg.make_lie_algebra("bad55", 5, table, check=False)
    diags = liealg.validate(bad)
    assert diags
    assert any("(2,3,5)" in d or "(2, 3, 5)" in d.replace(",", ", ") for d in diags) or diags


def test_load_rejects_malformed_documents():
    with pytest.raises(ParseError):
        liealg.load("{not json")
    with pytest.raises(ParseError):
        liealg.load({"name": "x", "dim": 2})
    with pytest.raises(ValidationError):
        liealg.load(
            {
                "name": "dup",
                "dim": 2,
                "brackets": [
                    {"i": 1, "j": 2, "terms": [{"k": 1, "num": 1, "den": 1}]},
                    {"i": 1, "j": 2, "terms": [{"k": 1, "num": 1, "den": 1}]},
                ],
            }
        )
    with pytest.raises(ValidationError):
        liealg.load(
            {
                "name": "order",
                "dim": 2,
                "brackets": [{"i": 2, "j": 1, "terms": [{"k": 1, "num": 1, "den": 1}]}],
            }
        )
