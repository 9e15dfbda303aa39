import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktype_mult import corpus
from ktype_mult.compactrep import CompactGroup, Eigenvalues, IrrepLabel, dimension, o, o_character_on_element, so, su, u
from ktype_mult.errors import EmbeddingMismatch
from ktype_mult.exactalg import LaurentPoly, bar, constant_term
from ktype_mult.geommult import geom_multiplicity
from ktype_mult.glstd import FiniteDim, GL1Char, PrincipalSeries, StandardModule, VirtualRep
from ktype_mult.oracle import (
    branch_o_to_oo,
    finite_dim_o2_types,
    multiplicity,
    multiplicity_so,
    principal_o2_multiplicity,
    weight_multiplicity,
)

TRIV, SGN = GL1Char(0), GL1Char(1)


def as_dict(branching):
    return {(str(a), str(b)): c for (a, b), c in branching}


# --- branching ------------------------------------------------------------------------

def test_branch_examples():
    assert as_dict(branch_o_to_oo(o(2), (1, 1))) == {("O1[]+", "O1[]+"): 1}
    assert as_dict(branch_o_to_oo(o(2, 1), (1, 1))) == {("O1[]+", "O1[]-"): 1, ("O1[]-", "O1[]+"): 1}
    assert as_dict(branch_o_to_oo(o(3, 1), (2, 1))) == {("O2[0]+", "O1[]-"): 1, ("O2[1]", "O1[]+"): 1}
    assert as_dict(branch_o_to_oo(o(2, sign="-"), (1, 1))) == {("O1[]-", "O1[]-"): 1}
    with pytest.raises(EmbeddingMismatch):
        branch_o_to_oo(o(3, 1), (2, 2))
    with pytest.raises(EmbeddingMismatch):
        branch_o_to_oo(so(3, 1), (2, 1))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_branching_preserves_dimension(n):
    for lab in corpus.o_types(n, 3):
        for n1 in range(1, n):
            got = sum(c * dimension(a) * dimension(b) for (a, b), c in branch_o_to_oo(lab, (n1, n - n1)))
            assert got == dimension(lab)


def _haar(m: int, offset: int, nvars: int):
    """(n_plus, n_minus, pairs, density, weight) per component of O(m), Weyl integration."""
    one = LaurentPoly.constant(1, nvars)
    if m == 1:
        return [(1, 0, (), one, Fraction(1, 2)), (0, 1, (), one, Fraction(1, 2))]
    z = LaurentPoly.var(offset, nvars)
    zi = LaurentPoly.var(offset, nvars, -1)
    if m == 2:
        return [(0, 0, (offset,), one, Fraction(1, 2)), (1, 1, (), one, Fraction(1, 2))]
    if m == 3:
        # SO(3) density (1 - z)(1 - 1/z)/2; on -SO(3) the rotation angle shifts by pi
        return [(1, 0, (offset,), (one - z) * (one - zi) * Fraction(1, 2), Fraction(1, 2)),
                (0, 1, (offset,), (one + z) * (one + zi) * Fraction(1, 2), Fraction(1, 2))]
    raise ValueError(m)


def haar_branching(omega: IrrepLabel, a: IrrepLabel, b: IrrepLabel) -> Fraction:
    n1, n2 = a.group.n, b.group.n
    k1 = 1 if n1 > 1 else 0
    nv = k1 + (1 if n2 > 1 else 0)
    total = Fraction(0)
    for p1, m1, r1, d1, w1 in _haar(n1, 0, nv):
        for p2, m2, r2, d2, w2 in _haar(n2, k1, nv):
            e1 = Eigenvalues(p1, m1, r1, nv)
            e2 = Eigenvalues(p2, m2, r2, nv)
            whole = Eigenvalues(p1 + p2, m1 + m2, r1 + r2, nv)
            f = o_character_on_element(omega, whole) * bar(o_character_on_element(a, e1) * o_character_on_element(b, e2))
            total += w1 * w2 * constant_term(f * d1 * d2)
    return total


@pytest.mark.parametrize("n1,n2", [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1), (2, 3), (3, 2)])
def test_branching_matches_haar_integration(n1, n2):
    n = n1 + n2
    for omega in corpus.o_types(n, 3):
        got = dict(branch_o_to_oo(omega, (n1, n2)))
        for a in corpus.o_types(n1, 4):
            for b in corpus.o_types(n2, 4):
                assert haar_branching(omega, a, b) == got.get((a, b), 0), (omega, a, b)


def test_haar_integration_is_orthonormal():
    for m in (1, 2, 3):
        labs = corpus.o_types(m, 3)
        for a, b in itertools.product(labs, repeat=2):
            tot = Fraction(0)
            nv = 1 if m > 1 else 0
            for p, q, r, d, w in _haar(m, 0, nv):
                e = Eigenvalues(p, q, r, nv)
                tot += w * constant_term(o_character_on_element(a, e) * bar(o_character_on_element(b, e)) * d)
            assert tot == (1 if a == b else 0)


# --- base cases -----------------------------------------------------------------------

@pytest.mark.parametrize("m", range(7))
@pytest.mark.parametrize("b", [-1, 0, 1, 2])
def test_finite_dim_o2_dimension(m, b):
    types = finite_dim_o2_types(FiniteDim(m + b, b))
    assert sum(c * dimension(lab) for lab, c in types.items()) == m + 1
    assert all(c == 1 for c in types.values())


def test_finite_dim_o2_examples():
    assert finite_dim_o2_types(FiniteDim(0, 0)) == {o(2): 1}
    assert finite_dim_o2_types(FiniteDim(1, 1)) == {o(2, sign="-"): 1}
    assert finite_dim_o2_types(FiniteDim(2, 0)) == {o(2, 2): 1, o(2): 1}
    assert finite_dim_o2_types(FiniteDim(1, 0)) == {o(2, 1): 1}


def test_principal_series_base_matches_recursion():
    for c1, c2 in itertools.product(corpus.SIGNS, repeat=2):
        ps = PrincipalSeries(c1, c2)
        for lab in corpus.o_types(2, 6):
            assert principal_o2_multiplicity(ps, lab) == multiplicity(StandardModule((c1, c2)), lab)


def test_principal_series_examples():
    assert multiplicity(PrincipalSeries(TRIV, TRIV), o(2)) == 1
    assert multiplicity(PrincipalSeries(TRIV, TRIV), o(2, sign="-")) == 0
    assert multiplicity(PrincipalSeries(SGN, SGN), o(2, sign="-")) == 1
    assert multiplicity(PrincipalSeries(TRIV, SGN), o(2, 1)) == 1
    assert multiplicity(PrincipalSeries(TRIV, SGN), o(2, 2)) == 0
    assert multiplicity(StandardModule((TRIV, TRIV, TRIV)), o(3)) == 1
    assert multiplicity_so(StandardModule((TRIV, TRIV, TRIV)), so(3)) == 1


def test_genuine_discrete_virtuals_are_nonnegative():
    for dv in corpus.discrete_virtuals(5):
        vals = [multiplicity(dv, lab) for lab in corpus.o_types(2, 8)]
        if dv.is_genuine():
            assert min(vals) >= 0
        else:
            assert min(vals) < 0


def test_induction_is_associative():
    blocks = [TRIV, SGN, PrincipalSeries(TRIV, SGN), FiniteDim(1, 0), FiniteDim(2, 1)]
    for a, b, c in itertools.product(blocks, repeat=3):
        flat = StandardModule((a, b, c))
        left = StandardModule((StandardModule((a, b)), c))
        right = StandardModule((a, StandardModule((b, c))))
        n = flat.n
        if n > 5:
            continue
        for lab in corpus.o_types(n, 2):
            v = multiplicity(flat, lab)
            assert v == multiplicity(left, lab) == multiplicity(right, lab)


MODS3 = corpus.standard_modules(3)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(MODS3), st.integers(-3, 3)), min_size=1, max_size=4),
       st.sampled_from(corpus.o_types(3)))
def test_multiplicity_is_linear(terms, lab):
    v = VirtualRep(tuple(terms))
    assert multiplicity(v, lab) == sum(c * multiplicity(m, lab) for m, c in terms)


def test_multiplicity_label_checks():
    with pytest.raises(EmbeddingMismatch):
        multiplicity(PrincipalSeries(TRIV, TRIV), so(2))
    with pytest.raises(EmbeddingMismatch):
        multiplicity(PrincipalSeries(TRIV, TRIV), o(3))
    with pytest.raises(EmbeddingMismatch):
        multiplicity_so(PrincipalSeries(TRIV, TRIV), o(2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_oracle_agrees_with_geometric_side(n):
    for mod in corpus.standard_modules(n, 2):
        for lab in corpus.o_types(n, 2):
            assert multiplicity(mod, lab) == geom_multiplicity(mod, lab).value


def test_restriction_total_dimension_for_principal_series():
    # Ind from O(1)^n of a character has every O(n)-type omega with multiplicity
    # at most dim omega; the trivial-character case has the trivial type once
    for n in (2, 3, 4):
        mod = StandardModule((TRIV,) * n)
        for lab in corpus.o_types(n, 3):
            assert 0 <= multiplicity(mod, lab) <= dimension(lab)
        assert multiplicity(mod, IrrepLabel(CompactGroup("O", n), (0,) * (n // 2), "+")) == 1


# --- complex case -----------------------------------------------------------------------

def test_weight_multiplicity_examples():
    assert weight_multiplicity(su(2, 2), (0,)) == 1
    assert weight_multiplicity(su(2, 2), (2,)) == 1
    assert weight_multiplicity(su(2, 2), (1,)) == 0
    assert weight_multiplicity(u(2, 1, 0), (1, 0)) == 1
    assert weight_multiplicity(u(2, 1, 0), (1, 1)) == 0
    assert weight_multiplicity(su(3, 1, 1), (0, 0)) == 0
    assert weight_multiplicity(su(3, 2, 1), (0, 0)) == 2
