from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktype_mult import corpus, geommult
from ktype_mult.compactrep import CompactGroup, IrrepLabel, o, so, su, u
from ktype_mult.errors import EmbeddingMismatch, NonIntegral
from ktype_mult.geommult import (
    SupportIndex,
    coefficient,
    enumerate_support,
    geom_multiplicity,
    geom_multiplicity_complex,
    so_from_o,
)
from ktype_mult.glstd import GL1Char, PrincipalSeries, StandardModule, VirtualRep

TRIV, SGN = GL1Char(0), GL1Char(1)


def triples(variant, n):
    return [(s.n1, s.n2, s.k) for s in enumerate_support(n, variant)]


def test_enumerate_support_examples():
    assert triples("SO", 4) == [(4, 0, 0), (2, 1, 0), (0, 2, 0), (2, 0, 1), (0, 1, 1), (0, 0, 2)]
    assert triples("SO", 2) == [(2, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert triples("O", 2) == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 1)]


@pytest.mark.parametrize("n", range(1, 7))
def test_enumerate_support_complete(n):
    so_set = set(triples("SO", n))
    assert so_set == {(a, b, c) for a in range(n + 1) for b in range(n + 1) for c in range(n + 1) if a + 2 * b + 2 * c == n}
    o_set = set(triples("O", n))
    assert o_set == {(a, b, c) for a in range(n + 1) for b in range(n + 1) for c in range(n + 1) if a + b + 2 * c == n}
    for s in enumerate_support(n, "SO"):
        assert s.element().n_minus % 2 == 0 and s.element().size == n


def test_coefficients():
    assert coefficient("SO", 2, 0) == Fraction(1, 2)
    assert coefficient("SO", 4, 2) == Fraction(1, 4)
    assert coefficient("O", 2, 0) == Fraction(1, 4)
    assert coefficient("O", 5, 1) == Fraction(1, 16)
    assert SupportIndex("O", 1, 2, 1).coefficient() == Fraction(1, 16)


def test_examples():
    assert geom_multiplicity(PrincipalSeries(TRIV, TRIV), o(2)).value == 1
    assert geom_multiplicity(PrincipalSeries(SGN, TRIV), o(2)).value == 0
    assert geom_multiplicity(StandardModule((TRIV, TRIV, TRIV)), so(3)).value == 1


def test_per_term_breakdown_sums():
    res = geom_multiplicity(StandardModule((TRIV, PrincipalSeries(TRIV, SGN))), o(3, 1))
    assert sum(v for _, v in res.per_term) == res.value
    assert [idx for idx, _ in res.per_term] == enumerate_support(3, "O")


def test_complex_examples():
    assert geom_multiplicity_complex(CompactGroup("SU", 2), (0,), su(2, 2)) == 1
    assert geom_multiplicity_complex(CompactGroup("SU", 2), (3,), su(2, 2)) == 0
    assert geom_multiplicity_complex(CompactGroup("U", 2), (1, 0), u(2, 1, 0)) == 1
    with pytest.raises(EmbeddingMismatch):
        geom_multiplicity_complex(CompactGroup("U", 2), (1,), u(2, 1, 0))


def test_so_from_o_examples():
    ps = PrincipalSeries(TRIV, TRIV)
    # twist-fixed: the two extensions add up
    assert so_from_o(ps, so(2, 0)) == geom_multiplicity(ps, o(2)).value + geom_multiplicity(ps, o(2, sign="-")).value
    # a non-fixed SO(2) weight inherits the single O(2) value
    for j in (1, 2, 3):
        assert so_from_o(ps, so(2, j)) == so_from_o(ps, so(2, -j)) == geom_multiplicity(ps, o(2, j)).value
    for n in (2, 3, 4):
        for mod in corpus.standard_modules(n)[:40]:
            assert so_from_o(mod, so(n)) == geom_multiplicity(mod, so(n)).value


@pytest.mark.parametrize("n", [2, 3])
def test_so_variant_matches_o_variant_on_corpus(n):
    for mod in corpus.standard_modules(n):
        for lab in corpus.so_types(n):
            assert geom_multiplicity(mod, lab).value == so_from_o(mod, lab)


def test_label_checks():
    with pytest.raises(EmbeddingMismatch):
        geom_multiplicity(PrincipalSeries(TRIV, TRIV), o(3))
    with pytest.raises(EmbeddingMismatch):
        geom_multiplicity(PrincipalSeries(TRIV, TRIV), o(2), variant="SO")
    with pytest.raises(EmbeddingMismatch):
        geom_multiplicity(PrincipalSeries(TRIV, TRIV), u(2, 0, 0))


def test_non_integral_is_reported(monkeypatch):
    monkeypatch.setattr(geommult, "term_value", lambda pi, omega, idx: Fraction(1, 3))
    with pytest.raises(NonIntegral):
        geom_multiplicity(PrincipalSeries(TRIV, TRIV), o(2))
    # virtual inputs are not held to integrality
    virt = VirtualRep.of(StandardModule((PrincipalSeries(TRIV, TRIV),)), -1)
    assert geom_multiplicity(virt, o(2)).value == Fraction(4, 3)


MODS3 = corpus.standard_modules(3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(MODS3), st.integers(-3, 3)), min_size=1, max_size=4),
       st.sampled_from(corpus.o_types(3)))
def test_linear_in_virtual_coefficients(terms, lab):
    v = VirtualRep(tuple(terms))
    expected = sum(c * geom_multiplicity(m, lab).value for m, c in terms)
    if not v.terms:
        assert expected == 0
        return
    assert geom_multiplicity(v, lab).value == expected


def test_genuine_results_are_nonnegative_integers():
    for n in (2, 3, 4):
        for mod in corpus.standard_modules(n, 3):
            for lab in corpus.o_types(n, 2):
                v = geom_multiplicity(mod, lab).value
                assert v.denominator == 1 and v >= 0


def test_complex_matches_weight_multiplicity_beyond_rank_two():
    from ktype_mult.compactrep import all_labels
    from ktype_mult.oracle import weight_multiplicity
    for g in (CompactGroup("SU", 3), CompactGroup("U", 3)):
        for lab in all_labels(g, 2):
            for tau in [(0,) * g.torus_rank, (1,) + (0,) * (g.torus_rank - 1), (1, -1) + (0,) * (g.torus_rank - 2), (2, 1) + (0,) * (g.torus_rank - 2)]:
                assert geom_multiplicity_complex(g, tau, lab) == weight_multiplicity(lab, tau)


def test_finite_dim_matches_restriction():
    from ktype_mult.oracle import finite_dim_o2_types
    for fd in corpus.finite_dims(6, (-1, 0, 1, 2)):
        types = finite_dim_o2_types(fd)
        for lab in corpus.o_types(2, 8):
            assert geom_multiplicity(fd, lab).value == types.get(lab, 0)


def test_complex_case_up_to_dimension_50():
    from ktype_mult.oracle import weight_multiplicity
    for tau, lab in corpus.su2_cases(6, 50):
        assert geom_multiplicity_complex(lab.group, tau, lab) == weight_multiplicity(lab, tau)
    g = CompactGroup("U", 2)
    for t1 in range(-6, 7):
        for t2 in range(-6, 7):
            for span in range(0, 50, 7):
                for l2 in range(-8, 4):
                    lab = IrrepLabel(g, (l2 + span, l2))
                    assert geom_multiplicity_complex(g, (t1, t2), lab) == weight_multiplicity(lab, (t1, t2))
