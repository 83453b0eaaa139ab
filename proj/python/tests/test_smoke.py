import json

import pytest

import cartan


@pytest.fixture(scope="module")
def w1():
    return cartan.Algebra("W", 1, 5)


def test_dimensions():
    for fam, n, p, dim in [("W", 1, 5, 5), ("W", 2, 5, 50), ("S", 2, 5, 23), ("K", 3, 5, 125)]:
        L = cartan.Algebra(fam, n, p)
        assert L.dim == dim == cartan.expected_dimension(fam, n, p)


def test_witt_brackets(w1):
    assert [w1.basis(k) for k in range(5)] == ["(1)d1", "(x1)d1", "(x1^2)d1", "(x1^3)d1", "(x1^4)d1"]
    # [d, x d] = d
    assert w1.bracket(0, 1) == {0: 1}
    assert w1.bracket(1, 0) == {0: 4}
    assert w1.graded_dims() == {-1: 1, 0: 1, 1: 1, 2: 1, 3: 1}
    with pytest.raises(IndexError):
        w1.bracket(0, 5)


def test_bad_parameters():
    with pytest.raises(ValueError):
        cartan.Algebra("W", 1, 4)
    with pytest.raises(ValueError):
        cartan.Algebra("X", 1, 5)


def test_verify_structure(w1):
    results = cartan.verify(w1, "structure")
    assert results and all(r["passed"] for r in results)


def test_contact_unit_printed_form_fails():
    K = cartan.Algebra("K", 3, 5)
    by_name = {r["name"]: r for r in cartan.verify(K, "contact")}
    assert by_name["contact_unit"]["passed"]
    assert not by_name["contact_unit_printed"]["passed"]


def test_export_round_trip():
    L = cartan.Algebra("W", 2, 5)
    text = cartan.export_json(L)
    assert text == cartan.export_json(L)
    assert json.loads(text)["dim"] == 50
    assert cartan.check_table(text)["passed"]


def test_rectify(w1):
    # chi(d) = 1, chi(x^2 d) = 1: one step clears d
    out = cartan.rectify(w1, {0: 1, 2: 1})
    assert out["certified"]
    assert out["result"][0] == 0
    assert out["result"][2] == 1
    assert [s["target"] for s in out["steps"]] == ["d_1"]


def test_flatten_witness():
    L = cartan.Algebra("S", 2, 5)
    chi = dict(enumerate(cartan.flattener_witness(L)))
    out = cartan.flatten(L, chi)
    assert out["ok"]
    neg = [k for k in range(L.dim) if L.degree(k) < 0]
    assert all(out["result"][k] == 0 for k in neg)


def test_injectivity():
    L = cartan.Algebra("W", 2, 5)
    assert cartan.injectivity(L)["rank"] == 3
    assert cartan.injectivity(L, corrected=True)["injective"]


def test_invariants(w1):
    assert cartan.invariants(w1, 4) == ["1"]
