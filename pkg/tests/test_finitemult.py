import json
import random
from fractions import Fraction
from importlib import resources

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from ktype_mult.errors import BadClassData
from ktype_mult.finitemult import (
    ClassDatum,
    Cyclotomic,
    FiniteGroupData,
    cyclotomic_poly,
    from_table,
    load,
    m_geom_average,
    m_geom_classes,
)
from ktype_mult.selftest import FINITE_FIXTURES, random_class_data

import finite_fixtures

W = Cyclotomic.root(1, 3)


def both(data):
    a, c = m_geom_average(data), m_geom_classes(data)
    assert a == c
    return a


# --- examples -------------------------------------------------------------------------

def test_regular_rep_of_s2():
    assert both(from_table([1, 1], [2, 0], [1, 1])) == 1


def test_standard_rep_of_s3_on_s2():
    assert both(from_table([1, 1], [2, 0], [1, 1])) == 1
    assert both(from_table([1, 1], [2, 0], [1, -1])) == 1


def test_nontrivial_character_of_z3():
    assert both(from_table([1, 1, 1], [1, W, W * W], [1, 1, 1])) == 0
    assert both(from_table([1, 1, 1], [1, W, W * W], [1, W, W * W])) == 1
    assert both(from_table([1, 1, 1], [1, W, W * W], [1, W * W, W])) == 0


def test_complex_values_in_gaussian_form():
    i = Cyclotomic.of([0, 1])
    data = from_table([1, 1, 1, 1], [2, 0, -2, 0], [1, i, -1, -i])
    assert both(data) == 1


# --- cyclotomic arithmetic --------------------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    x = sympy.Symbol("x")
    for n in range(1, 25):
        assert cyclotomic_poly(n) == tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()))


def test_cyclotomic_identities():
    assert 1 + W + W * W == 0
    assert W * W * W == 1
    assert W.conj() == W * W
    i = Cyclotomic.root(1, 4)
    assert i * i == -1
    assert Cyclotomic.root(3, 12) == i
    assert Cyclotomic.root(4, 12) == W
    assert (W - W.conj()) * (W - W.conj()) == -3
    assert Cyclotomic.of({"zeta": 6, "coeffs": [0, 1]}) * Cyclotomic.of({"zeta": 6, "coeffs": [0, 1]}) == W
    assert str(Cyclotomic.of([Fraction(1, 2), -3])) == "1/2-3i"
    assert Cyclotomic.of(Fraction(5, 3)).is_rational()
    with pytest.raises(TypeError):
        Cyclotomic.of(0.5)


def _elements(order):
    return st.lists(st.fractions(max_denominator=5, min_value=-5, max_value=5), min_size=order, max_size=order).map(
        lambda c: Cyclotomic(order, tuple(c)))


@given(st.sampled_from([1, 3, 4, 5, 8, 12]).flatmap(lambda n: st.tuples(_elements(n), _elements(n), _elements(n))))
def test_cyclotomic_field_axioms(abc):
    a, b, c = abc
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a * b).conj() == a.conj() * b.conj()
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-6
    assert abs(complex(a.conj()) - complex(a).conjugate()) < 1e-9


# --- validation -------------------------------------------------------------------------

def test_bad_class_data():
    ok = from_table([1, 3, 2], [1, 1, 1], [1, 1, 1])
    ok.validate()
    with pytest.raises(BadClassData):
        m_geom_average(FiniteGroupData(3, (ClassDatum(1, 3, Cyclotomic.of(1), Cyclotomic.of(1)),)))
    with pytest.raises(BadClassData):
        m_geom_classes(FiniteGroupData(4, (ClassDatum(1, 4, Cyclotomic.of(1), Cyclotomic.of(1)),
                                           ClassDatum(3, 1, Cyclotomic.of(1), Cyclotomic.of(1)))))
    with pytest.raises(BadClassData):
        FiniteGroupData.from_dict({"order_H": 2, "classes": [{"size": 1}]})
    with pytest.raises(BadClassData):
        m_geom_average(FiniteGroupData(0, ()))


def test_round_trip(tmp_path):
    data = from_table([1, 1, 1], [1, W, W * W], [1, Cyclotomic.of([0, 1]), 1])
    p = tmp_path / "d.json"
    p.write_text(json.dumps(data.to_dict()))
    back = load(p)
    assert [(c.size, c.centralizer) for c in back.classes] == [(c.size, c.centralizer) for c in data.classes]
    assert all(x.theta == y.theta and x.chi == y.chi for x, y in zip(back.classes, data.classes))


# --- properties ------------------------------------------------------------------------

def test_two_forms_agree_on_random_data():
    rng = random.Random(7)
    for _ in range(300):
        d = random_class_data(rng)
        assert m_geom_average(d) == m_geom_classes(d)


@given(st.lists(st.sampled_from([2, 3, 4, 6]), max_size=5), st.data())
def test_two_forms_agree_hypothesis(picks, data):
    order = 12
    sizes = [1]
    for d in picks:
        if sum(sizes) + d <= order:
            sizes.append(d)
    sizes += [1] * (order - sum(sizes))
    vals = st.lists(st.integers(-6, 6), min_size=12, max_size=12).map(lambda c: Cyclotomic(12, tuple(c)))
    theta = [data.draw(vals) for _ in sizes]
    chi = [data.draw(vals) for _ in sizes]
    d = from_table(sizes, theta, chi)
    assert m_geom_average(d) == m_geom_classes(d)


# --- fixtures against brute force -----------------------------------------------------------

def test_bundled_fixtures_match_brute_force():
    live = finite_fixtures.fixtures()
    assert set(live) == set(FINITE_FIXTURES)
    data_dir = resources.files("ktype_mult") / "data"
    for name, (doc, dim) in live.items():
        stored = json.loads((data_dir / f"{name}.json").read_text())
        assert stored["hom_dim"] == dim
        assert both(FiniteGroupData.from_dict(doc)) == dim
        assert both(FiniteGroupData.from_dict(stored)) == dim


def test_fixture_dimensions():
    data_dir = resources.files("ktype_mult") / "data"
    dims = {n: json.loads((data_dir / f"{n}.json").read_text())["hom_dim"] for n in FINITE_FIXTURES}
    assert dims["s3_s2"] == 1
    assert [dims[f"d4_s4_std_chi{i}"] for i in range(4)] == [0, 0, 1, 0]
    assert [dims[f"c4_plane_chi{i}"] for i in range(4)] == [0, 1, 0, 1]
