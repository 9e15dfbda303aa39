"""Actual K-type multiplicities, computed without any character germs.

For a standard module Ind_P(tau_1 x tau_2) the Iwasawa decomposition gives
pi|_{O(n)} = Ind_{O(n') x O(n'')}^{O(n)}(tau_1|_{O(n')} x tau_2|_{O(n'')}),
so by Frobenius reciprocity

    m(pi, omega) = sum over (s', s'') of
        [omega|_{O(n') x O(n'')} : s' x s''] * m(tau_1, s') * m(tau_2, s'').

The recursion bottoms out in two classical base cases.

(GL_1, O_1): sgn^eps restricted to O(1) = {+-1} is itself.

(GL_2, O_2): O(2) irreps are triv, det, and rho_j (j >= 1, the 2-dim
representation induced from the SO(2) character of weight j).
  * Sym^m(std) x det^b restricted to SO(2) has weights m, m-2, ..., -m.  The
    pairs +-j assemble into rho_j.  For m even the zero weight spans a line
    on which the reflection diag(1, -1) acts by the trace of that element,
    (-1)^b, giving triv or det.
  * principal(chi_1, chi_2) restricted to O(2) is Ind_{O(1) x O(1)}^{O(2)}
    (sgn^eps1 x sgn^eps2): functions on the circle O(2)/(O(1) x O(1)) with
    the given parities.  By Frobenius reciprocity rho_j occurs once exactly
    when j = eps1 + eps2 (mod 2), since diag(+-1, +-1) acts on its weight
    vectors e_j, e_-j by permutation/sign with characters of matching parity.
    The one-dimensional types occur only when eps1 = eps2: triv for (0, 0),
    det for (1, 1), each once (det restricted to O(1) x O(1) is sgn x sgn).

Branching O(n) -> O(n') x O(n'') is obtained by solving the character
identity exactly on generic elements of all four component pairs.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .compactrep import (
    CompactGroup,
    Eigenvalues,
    IrrepLabel,
    decompose,
    o_character_on_element,
    o_irreps_from_so,
    restrict_torus_character,
    weyl_character,
)
from .errors import EmbeddingMismatch, NonIntegral
from .glstd import (
    DiscreteVirtual,
    FiniteDim,
    GL1Char,
    PrincipalSeries,
    StandardModule,
    VirtualRep,
)


# --- O(n) -> O(n') x O(n'') ----------------------------------------------------

def component_elements(m: int) -> list[tuple[int, int, int]]:
    """(n_plus, n_minus, pairs) of generic elements of each component of O(m)."""
    if m == 1:
        return [(1, 0, 0), (0, 1, 0)]
    identity = (m % 2, 0, m // 2)
    other = ((m + 1) % 2, 1, (m - 1) // 2)
    return [identity, other]


def _candidates(omega: IrrepLabel, split: tuple[int, int]) -> list[tuple[IrrepLabel, IrrepLabel]]:
    g1, g2 = CompactGroup("SO", split[0]), CompactGroup("SO", split[1])
    so_label = IrrepLabel(CompactGroup("SO", omega.group.n), omega.weight)
    p = restrict_torus_character(so_label, (g1, g2))
    seen: dict = {}
    for a, b in decompose(p, (g1, g2), genuine=True):
        for la in o_irreps_from_so(a):
            for lb in o_irreps_from_so(b):
                seen.setdefault((la, lb), None)
    return sorted(seen)


def _solve(rows: list[list[Fraction]], rhs: list[Fraction], nunk: int) -> list[Fraction]:
    """Exact least-structure Gauss-Jordan solve; the system must be consistent with a unique solution."""
    aug = [r[:] + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nunk):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        lead = aug[r][c]
        aug[r] = [x / lead for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in aug[r:]):
        raise ArithmeticError("branching character identity is inconsistent")
    if len(pivots) != nunk:
        raise ArithmeticError("branching character identity is underdetermined")
    return [aug[i][-1] for i in range(nunk)]


@lru_cache(maxsize=None)
def branch_o_to_oo(omega: IrrepLabel, split: tuple[int, int]) -> tuple[tuple[tuple[IrrepLabel, IrrepLabel], int], ...]:
    """Restriction of an O(n)-irrep to O(n') x O(n''), as ((s', s''), multiplicity) pairs."""
    n1, n2 = split
    if omega.group.family != "O":
        raise EmbeddingMismatch("branch_o_to_oo expects an O(n) label")
    if n1 < 1 or n2 < 1 or n1 + n2 != omega.group.n:
        raise EmbeddingMismatch(f"cannot split O({omega.group.n}) as {split}")
    cands = _candidates(omega, split)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for p1, m1, k1 in component_elements(n1):
        for p2, m2, k2 in component_elements(n2):
            nv = k1 + k2
            e1 = Eigenvalues(p1, m1, tuple(range(k1)), nv)
            e2 = Eigenvalues(p2, m2, tuple(range(k1, nv)), nv)
            whole = Eigenvalues(p1 + p2, m1 + m2, tuple(range(nv)), nv)
            target = o_character_on_element(omega, whole)
            cols = [o_character_on_element(a, e1) * o_character_on_element(b, e2) for a, b in cands]
            monos = set(target.terms)
            for c in cols:
                monos.update(c.terms)
            for mono in sorted(monos):
                rows.append([c.coefficient(mono) for c in cols])
                rhs.append(target.coefficient(mono))
    sol = _solve(rows, rhs, len(cands))
    out = []
    for cand, v in zip(cands, sol):
        if v.denominator != 1 or v < 0:
            raise NonIntegral(f"branching {omega} -> {cand[0]} x {cand[1]} gave {v}")
        if v:
            out.append((cand, int(v)))
    return tuple(out)


# --- base cases -------------------------------------------------------------------

def _o1_sign(label: IrrepLabel) -> int:
    return 1 if label.o_sign == "-" else 0


def finite_dim_o2_types(fd: FiniteDim) -> dict[IrrepLabel, int]:
    """Decomposition of Sym^{a-b}(std) x det^b restricted to O(2)."""
    g = CompactGroup("O", 2)
    out: dict[IrrepLabel, int] = {}
    rot = {}
    for p, q in fd.weights():
        rot[p - q] = rot.get(p - q, 0) + 1
    for w, c in rot.items():
        if w > 0:
            lab = IrrepLabel(g, (w,))
            out[lab] = out.get(lab, 0) + c
    if 0 in rot:
        # the zero-weight line: the reflection acts by its trace
        sign = "+" if fd.trace_split(1, -1) == 1 else "-"
        out[IrrepLabel(g, (0,), sign)] = rot[0]
    return out


def principal_o2_multiplicity(ps: PrincipalSeries, label: IrrepLabel) -> int:
    e1, e2 = ps.chi1.eps, ps.chi2.eps
    j = label.weight[0]
    if j:
        return int((j - e1 - e2) % 2 == 0)
    if e1 != e2:
        return 0
    return int(label.o_sign == ("+" if e1 == 0 else "-"))


def _base(block, label: IrrepLabel) -> int:
    if isinstance(block, GL1Char):
        return int(block.eps == _o1_sign(label))
    if isinstance(block, FiniteDim):
        return finite_dim_o2_types(block).get(label, 0)
    if isinstance(block, PrincipalSeries):
        return principal_o2_multiplicity(block, label)
    if isinstance(block, DiscreteVirtual):
        return _base(block.principal, label) - _base(block.fd, label)
    raise TypeError(f"no base case for {block!r}")


# --- recursion ------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _mult_blocks(blocks: tuple, label: IrrepLabel) -> int:
    head = blocks[0]
    if len(blocks) == 1:
        if isinstance(head, StandardModule):
            return _mult_blocks(head.blocks, label)
        return _base(head, label)
    n1 = head.size
    n2 = label.group.n - n1
    total = 0
    for (s1, s2), c in branch_o_to_oo(label, (n1, n2)):
        a = _mult_blocks((head,), s1)
        if a:
            total += c * a * _mult_blocks(blocks[1:], s2)
    return total


def multiplicity(pi, omega_plus: IrrepLabel) -> int:
    """dim Hom_{O(n)}(pi, omega) for a standard module or virtual combination."""
    if omega_plus.group.family != "O":
        raise EmbeddingMismatch("multiplicity expects an O(n) label")
    if isinstance(pi, VirtualRep):
        return sum(c * multiplicity(m, omega_plus) for m, c in pi.terms)
    blocks = pi.blocks if isinstance(pi, StandardModule) else (pi,)
    n = sum(b.size for b in blocks)
    if n != omega_plus.group.n:
        raise EmbeddingMismatch(f"{omega_plus.group} type for a representation of GL({n})")
    return _mult_blocks(blocks, omega_plus)


def multiplicity_so(pi, omega: IrrepLabel) -> int:
    """SO(n)-multiplicity from the O(n) ones.

    A twist-fixed SO-type lies in exactly the two O-types differing by det;
    otherwise omega and its twist make up one O-type, whose restriction
    contains each once.
    """
    if omega.group.family != "SO":
        raise EmbeddingMismatch("multiplicity_so expects an SO(n) label")
    return sum(multiplicity(pi, lab) for lab in o_irreps_from_so(omega))


def weight_multiplicity(omega: IrrepLabel, mu) -> int:
    """Coefficient of z^mu in the character of omega."""
    return int(weyl_character(omega).coefficient(tuple(mu)))
