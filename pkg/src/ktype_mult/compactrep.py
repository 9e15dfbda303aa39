"""Characters of SO(n), O(n), U(n) and SU(n) as exact Laurent polynomials.

Torus conventions
-----------------
SO(n), O(n)
    ``k = n // 2`` coordinates ``z_1..z_k``, one per 2x2 rotation block; the
    eigenvalues are ``z_j, 1/z_j`` plus an extra ``1`` when ``n`` is odd.
U(n)
    ``n`` coordinates, the diagonal entries.
SU(n)
    ``n - 1`` coordinates, the first ``n - 1`` diagonal entries; the last one
    is ``(z_1 ... z_{n-1})^{-1}``.

Labels
------
SO(2k+1): ``l_1 >= ... >= l_k >= 0``.  SO(2k): ``l_1 >= ... >= l_{k-1} >= |l_k|``.
U(n): any weakly decreasing integer vector.  SU(n): ``n - 1`` weakly decreasing
nonnegative integers (the U(n) weight normalised by ``l_n = 0``).

O(n) labels carry the SO-weight of the epsilon-orbit with ``l_k >= 0`` and, when
the orbit is a single weight, a sign ``'+'`` or ``'-'``.  ``'+'`` is the O(n)-irrep
occurring in the tensor algebra of the vector representation without
determinant twists (Weyl's partition with at most ``n/2`` rows); ``'-'`` is
``'+'`` tensored with ``det``.  When the orbit has two weights (``n`` even and
``l_k > 0``) there is one O(n)-irrep restricting to their sum and no sign.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import EmbeddingMismatch, NotDecomposable, UnsupportedRank
from .exactalg import LaurentPoly, exact_div

FAMILIES = ("SO", "O", "U", "SU")
MAX_O_RANK = int(os.environ.get("KTYPE_MULT_MAX_O_RANK", "8"))


@dataclass(frozen=True, order=True)
class CompactGroup:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown compact family {self.family!r}")
        if self.n < (2 if self.family == "SU" else 1):
            raise ValueError(f"{self.family}({self.n}) is not supported")

    @property
    def torus_rank(self) -> int:
        if self.family in ("SO", "O"):
            return self.n // 2
        if self.family == "U":
            return self.n
        return self.n - 1

    @property
    def identity_component(self) -> "CompactGroup":
        return CompactGroup("SO", self.n) if self.family == "O" else self

    def __str__(self) -> str:
        return f"{self.family}({self.n})"


def _check_dominant(group: CompactGroup, w: tuple[int, ...]) -> bool:
    fam, k = group.family, group.torus_rank
    if len(w) != k:
        return False
    if k == 0:
        return True
    if fam == "SO" and group.n % 2 == 0:
        return _so_even_dominant(w)
    if any(w[i] < w[i + 1] for i in range(k - 1)):
        return False
    if fam == "U":
        return True
    return w[-1] >= 0


def _so_even_dominant(w: tuple[int, ...]) -> bool:
    k = len(w)
    if k <= 1:
        return True
    return all(w[i] >= w[i + 1] for i in range(k - 2)) and w[k - 2] >= abs(w[k - 1])


@dataclass(frozen=True, order=True)
class IrrepLabel:
    group: CompactGroup
    weight: tuple[int, ...]
    o_sign: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(int(x) for x in self.weight))
        if not _check_dominant(self.group, self.weight):
            raise ValueError(f"{self.weight} is not a dominant weight of {self.group}")
        if self.group.family == "O":
            if self.self_dual:
                if self.o_sign not in ("+", "-"):
                    raise ValueError(f"O({self.group.n}) label {self.weight} needs o_sign '+' or '-'")
            elif self.o_sign is not None:
                raise ValueError(f"O({self.group.n}) label {self.weight} carries no sign")
        elif self.o_sign is not None:
            raise ValueError("o_sign is only meaningful for O(n) labels")

    @property
    def self_dual(self) -> bool:
        """Fixed by the epsilon twist (only meaningful for SO/O labels)."""
        n = self.group.n
        return n % 2 == 1 or n == 1 or not self.weight or self.weight[-1] == 0

    def __str__(self) -> str:
        w = ",".join(map(str, self.weight))
        return f"{self.group.family}{self.group.n}[{w}]{self.o_sign or ''}"

    def descriptor(self) -> str:
        w = ",".join(map(str, self.weight))
        return f"{self.group.family}:[{w}]{self.o_sign or ''}"


def so(n: int, *weight: int) -> IrrepLabel:
    w = tuple(weight) + (0,) * (n // 2 - len(weight))
    return IrrepLabel(CompactGroup("SO", n), w)


def o(n: int, *weight: int, sign: str | None = "+") -> IrrepLabel:
    w = tuple(weight) + (0,) * (n // 2 - len(weight))
    g = CompactGroup("O", n)
    self_dual = n % 2 == 1 or not w or w[-1] == 0
    return IrrepLabel(g, w, sign if self_dual else None)


def u(n: int, *weight: int) -> IrrepLabel:
    return IrrepLabel(CompactGroup("U", n), tuple(weight) + (0,) * (n - len(weight)))


def su(n: int, *weight: int) -> IrrepLabel:
    return IrrepLabel(CompactGroup("SU", n), tuple(weight) + (0,) * (n - 1 - len(weight)))


# --- Weyl groups -------------------------------------------------------------

@lru_cache(maxsize=None)
def weyl_group(group: CompactGroup) -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    """Elements as (perm, signs, det) acting by ``(w mu)_i = signs[i] * mu[perm[i]]``."""
    fam = group.family
    if fam == "SU":
        raise ValueError("SU(n) characters are computed through U(n)")
    k = group.torus_rank
    out = []
    for perm in itertools.permutations(range(k)):
        psign = _perm_sign(perm)
        if fam == "U":
            out.append((perm, (1,) * k, psign))
            continue
        for signs in itertools.product((1, -1), repeat=k):
            nneg = signs.count(-1)
            if group.n % 2 == 0 and nneg % 2:
                continue
            out.append((perm, signs, psign * (-1) ** nneg))
    return tuple(out)


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def weyl_order(group: CompactGroup) -> int:
    if group.family == "SU":
        return len(weyl_group(CompactGroup("U", group.n)))
    return len(weyl_group(group.identity_component))


def apply_weyl(w, mu: Sequence[int]) -> tuple[int, ...]:
    perm, signs, _ = w
    return tuple(s * mu[p] for p, s in zip(perm, signs))


def _alternant(group: CompactGroup, mu: Sequence[int]) -> LaurentPoly:
    terms: dict[tuple[int, ...], int] = {}
    for w in weyl_group(group):
        e = apply_weyl(w, mu)
        terms[e] = terms.get(e, 0) + w[2]
    return LaurentPoly(terms, len(mu))


def _doubled_rho(group: CompactGroup) -> tuple[int, ...]:
    k = group.torus_rank
    if group.family == "U":
        return tuple(2 * (k - 1 - i) for i in range(k))
    if group.n % 2:
        return tuple(2 * (k - i) - 1 for i in range(k))
    return tuple(2 * (k - 1 - i) for i in range(k))


# --- characters ----------------------------------------------------------------

@lru_cache(maxsize=None)
def weyl_character(label: IrrepLabel) -> LaurentPoly:
    """Character restricted to the maximal torus of the identity component."""
    g = label.group
    if g.family == "O":
        sol = IrrepLabel(CompactGroup("SO", g.n), label.weight)
        chi = weyl_character(sol)
        if not label.self_dual:
            chi = chi + weyl_character(epsilon_twist(sol))
        return chi
    if g.family == "SU":
        chi_u = weyl_character(IrrepLabel(CompactGroup("U", g.n), label.weight + (0,)))
        k = g.n - 1
        assign = [tuple(int(i == j) for j in range(k)) for i in range(k)] + [(-1,) * k]
        return chi_u.specialize(assign, k)
    k = g.torus_rank
    if k == 0:
        return LaurentPoly.constant(1, 0)
    # Alternant quotient at doubled exponents keeps SO(2k+1) half-integral rho integral.
    rho2 = _doubled_rho(g)
    num = _alternant(g, [2 * l + r for l, r in zip(label.weight, rho2)])
    den = _alternant(g, rho2)
    q = exact_div(num, den)
    if any(x % 2 for e in q.terms for x in e):
        raise ArithmeticError(f"odd exponent in character of {label}")
    return q.map_exponents(lambda e: [x // 2 for x in e])


def dimension(label: IrrepLabel) -> int:
    chi = weyl_character(label)
    d = chi.specialize([1] * chi.nvars, 0).constant_term()
    assert d.denominator == 1 and d > 0
    return int(d)


def weyl_dimension_formula(label: IrrepLabel) -> Fraction:
    """Product formula over positive roots (independent of the alternant route)."""
    g = label.group
    fam = g.family
    if fam == "SU":
        return weyl_dimension_formula(IrrepLabel(CompactGroup("U", g.n), label.weight + (0,)))
    k = g.torus_rank
    lam = label.weight
    if fam in ("SO", "O"):
        rho = [Fraction(r, 2) for r in _doubled_rho(CompactGroup("SO", g.n))]
        lr = [l + r for l, r in zip(lam, rho)]
        out = Fraction(1)
        for i in range(k):
            for j in range(i + 1, k):
                out *= (lr[i] - lr[j]) / (rho[i] - rho[j])
                out *= (lr[i] + lr[j]) / (rho[i] + rho[j])
            if g.n % 2:
                out *= lr[i] / rho[i]
        if fam == "O" and not label.self_dual:
            out *= 2
        return out
    out = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            out *= Fraction(lam[i] - lam[j] + j - i, j - i)
    return out


def embed_factor(p: LaurentPoly, offset: int, nvars: int) -> LaurentPoly:
    """Place a polynomial in a block of variables of a larger torus."""
    pad_after = nvars - offset - p.nvars
    return p.map_exponents(lambda e: (0,) * offset + tuple(e) + (0,) * pad_after, nvars)


@lru_cache(maxsize=None)
def product_character(labels: tuple[IrrepLabel, ...]) -> LaurentPoly:
    nv = sum(l.group.torus_rank for l in labels)
    out = LaurentPoly.constant(1, nv)
    off = 0
    for l in labels:
        chi = weyl_character(l)
        out = out * embed_factor(chi, off, nv)
        off += chi.nvars
    return out


def decompose(p: LaurentPoly, group, genuine: bool = False) -> dict:
    """Multiplicities of identity-component irreps in a Weyl-invariant polynomial.

    ``group`` is a CompactGroup or a tuple of them (a product, torus
    coordinates concatenated); for a product the keys are label tuples.
    O(n) factors are treated through SO(n).  Virtual inputs may produce
    negative multiplicities unless ``genuine`` is set.
    """
    single = isinstance(group, CompactGroup)
    groups = (group,) if single else tuple(group)
    groups = tuple(g.identity_component for g in groups)
    ranks = [g.torus_rank for g in groups]
    if sum(ranks) != p.nvars:
        raise EmbeddingMismatch(f"{p.nvars} variables for torus of rank {sum(ranks)}")
    out: dict = {}
    rem = p
    while rem:
        e, c = rem.leading()
        labels = []
        off = 0
        for g, r in zip(groups, ranks):
            w = e[off:off + r]
            off += r
            if not _check_dominant(g, w):
                raise NotDecomposable(f"leading weight {e} is not dominant for {groups}")
            labels.append(IrrepLabel(g, w))
        labels = tuple(labels)
        if c.denominator != 1:
            raise NotDecomposable(f"non-integral multiplicity {c} at {labels}")
        if genuine and c < 0:
            raise NotDecomposable(f"negative multiplicity {c} at {labels}")
        key = labels[0] if single else labels
        out[key] = out.get(key, 0) + int(c)
        rem = rem - product_character(labels) * c
    return out


def restrict_torus_character(label: IrrepLabel, target: Sequence[CompactGroup]) -> LaurentPoly:
    """Restrict an SO/O character to a block-diagonal product SO(n_1) x ... .

    Source torus coordinates are handed to the factors in order; coordinates
    left over (pairs of +1 eigenvalues from odd-sized factors) are pinned to 1.
    """
    if label.group.family not in ("SO", "O"):
        raise EmbeddingMismatch("restriction is implemented for orthogonal groups")
    if sum(g.n for g in target) != label.group.n or any(g.family not in ("SO", "O") for g in target):
        raise EmbeddingMismatch(f"{[str(g) for g in target]} does not block-embed in {label.group}")
    chi = weyl_character(label)
    r = sum(g.torus_rank for g in target)
    k = chi.nvars
    assign = [tuple(int(i == j) for j in range(r)) for i in range(r)] + [1] * (k - r)
    return chi.specialize(assign, r)


# --- the epsilon twist and O(n) labels -----------------------------------------

def epsilon_twist(label: IrrepLabel) -> IrrepLabel:
    """Conjugation by diag(-1, 1, ..., 1) on SO(n) labels."""
    if label.group.family != "SO":
        raise ValueError("epsilon_twist acts on SO(n) labels")
    if label.group.n % 2 or not label.weight:
        return label
    return IrrepLabel(label.group, label.weight[:-1] + (-label.weight[-1],))


def o_irreps_from_so(label: IrrepLabel) -> list[IrrepLabel]:
    """O(n)-irreps whose restriction to SO(n) contains ``label``."""
    g = CompactGroup("O", label.group.n)
    w = label.weight
    if w and w[-1] < 0:
        w = w[:-1] + (-w[-1],)
    if epsilon_twist(label) == label:
        return [IrrepLabel(g, w, "+"), IrrepLabel(g, w, "-")]
    return [IrrepLabel(g, w)]


def so_constituents(label: IrrepLabel) -> list[IrrepLabel]:
    """SO(n)-irreps in the restriction of an O(n) label (one or two)."""
    sol = IrrepLabel(CompactGroup("SO", label.group.n), label.weight)
    tw = epsilon_twist(sol)
    return [sol] if tw == sol else [sol, tw]


def tensor_sign(label: IrrepLabel) -> IrrepLabel:
    """label (x) sgn."""
    if label.o_sign is None:
        return label
    return IrrepLabel(label.group, label.weight, "-" if label.o_sign == "+" else "+")


def o_label_partition(label: IrrepLabel) -> tuple[int, ...]:
    """Weyl's partition for an O(n) label (first two columns total at most n)."""
    n = label.group.n
    mu = tuple(x for x in label.weight if x)
    if label.o_sign == "-":
        return mu + (1,) * (n - 2 * len(mu))
    return mu


@dataclass(frozen=True)
class Eigenvalues:
    """Eigenvalue multiset {+1 x n_plus, -1 x n_minus, z_j^{+-1} for j in pairs}.

    ``pairs`` holds variable indices into a torus with ``nvars`` coordinates,
    so sub-multisets keep their global variable names.
    """

    n_plus: int
    n_minus: int
    pairs: tuple[int, ...] = ()
    nvars: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if self.nvars is None:
            object.__setattr__(self, "nvars", len(self.pairs))
        if self.n_plus < 0 or self.n_minus < 0 or any(not 0 <= j < self.nvars for j in self.pairs):
            raise ValueError(f"bad eigenvalue data {self}")
        if len(set(self.pairs)) != len(self.pairs):
            raise ValueError("rotation pairs must use distinct variables")

    @property
    def size(self) -> int:
        return self.n_plus + self.n_minus + 2 * len(self.pairs)

    def monomials(self) -> list[tuple[int, tuple[int, ...]]]:
        """Eigenvalues as (sign, exponent vector)."""
        zero = (0,) * self.nvars
        out = [(1, zero)] * self.n_plus + [(-1, zero)] * self.n_minus
        for j in self.pairs:
            e = tuple(int(i == j) for i in range(self.nvars))
            out.append((1, e))
            out.append((1, tuple(-x for x in e)))
        return out

    def det(self) -> int:
        return -1 if self.n_minus % 2 else 1


@lru_cache(maxsize=None)
def complete_homogeneous(elem: Eigenvalues, top: int) -> tuple[LaurentPoly, ...]:
    """h_0 .. h_top of the eigenvalue multiset."""
    nv = elem.nvars
    h = [LaurentPoly.constant(1, nv)] + [LaurentPoly.zero(nv)] * top
    for sign, e in elem.monomials():
        lam = LaurentPoly.monomial(e, sign)
        g = [h[0]]
        for r in range(1, top + 1):
            g.append(h[r] + lam * g[r - 1])
        h = g
    return tuple(h)


def _det(matrix: list[list[LaurentPoly]], nvars: int) -> LaurentPoly:
    size = len(matrix)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: tuple[int, ...]) -> LaurentPoly:
        if row == size:
            return LaurentPoly.constant(1, nvars)
        total = LaurentPoly.zero(nvars)
        for idx, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            term = entry * minor(row + 1, cols[:idx] + cols[idx + 1:])
            total = total - term if idx % 2 else total + term
        return total

    return minor(0, tuple(range(size)))


@lru_cache(maxsize=None)
def universal_orthogonal_character(partition: tuple[int, ...], elem: Eigenvalues) -> LaurentPoly:
    """det(h_{l_i - i + j} - h_{l_i - i - j}) evaluated on the eigenvalue multiset.

    For partitions whose first two columns total at most the matrix size this
    is the irreducible O(n)-character at any element of O(n), including the
    non-identity component.
    """
    ell = len(partition)
    nv = elem.nvars
    if ell == 0:
        return LaurentPoly.constant(1, nv)
    top = partition[0] + ell
    h = complete_homogeneous(elem, top)

    def hh(r: int) -> LaurentPoly:
        return h[r] if r >= 0 else LaurentPoly.zero(nv)

    m = [[hh(partition[i] - (i + 1) + (j + 1)) - hh(partition[i] - (i + 1) - (j + 1))
          for j in range(ell)] for i in range(ell)]
    return _det(m, nv)


def o_character_on_element(label: IrrepLabel, elem: Eigenvalues, max_rank: int | None = None) -> LaurentPoly:
    """Character of an O(n)-irrep at an element given by its eigenvalues.

    Evaluates the universal orthogonal character of the '+' partition and
    applies ``det`` for '-' labels.  The result is a Laurent polynomial in the
    rotation variables of ``elem``.
    """
    n = label.group.n
    bound = MAX_O_RANK if max_rank is None else max_rank
    if n > bound:
        raise UnsupportedRank(f"O({n}) exceeds the configured bound {bound}")
    if label.group.family != "O":
        raise ValueError("o_character_on_element expects an O(n) label")
    if elem.size != n:
        raise EmbeddingMismatch(f"element of size {elem.size} in O({n})")
    mu = tuple(x for x in label.weight if x)
    chi = universal_orthogonal_character(mu, elem)
    if label.o_sign == "-" and elem.n_minus % 2:
        chi = -chi
    return chi


def so_character_on_element(label: IrrepLabel, elem: Eigenvalues) -> LaurentPoly:
    """SO(n) character at an element of SO(n) (even number of -1 eigenvalues)."""
    n = label.group.n
    if elem.size != n:
        raise EmbeddingMismatch(f"element of size {elem.size} in SO({n})")
    if elem.n_minus % 2:
        raise EmbeddingMismatch("element has determinant -1")
    chi = weyl_character(label)
    nv = elem.nvars
    assign: list = []
    for j in elem.pairs:
        assign.append(tuple(int(i == j) for i in range(nv)))
    assign += [-1] * (elem.n_minus // 2)
    assign += [1] * (chi.nvars - len(assign))
    return chi.specialize(assign, nv)


def all_labels(group: CompactGroup, max_first: int) -> list[IrrepLabel]:
    """Every label with first weight entry at most ``max_first``, in a fixed order."""
    k = group.torus_rank
    fam = group.family
    out: list[IrrepLabel] = []
    if fam in ("SO", "O"):
        for w in itertools.product(range(max_first, -1, -1), repeat=k):
            if any(w[i] < w[i + 1] for i in range(k - 1)):
                continue
            ws = [w]
            if fam == "SO" and group.n % 2 == 0 and k and w[-1] > 0:
                ws.append(w[:-1] + (-w[-1],))
            for ww in ws:
                if fam == "SO":
                    out.append(IrrepLabel(group, ww))
                else:
                    lab = IrrepLabel(group, ww, "+" if (group.n % 2 or not ww or ww[-1] == 0) else None)
                    out.append(lab)
                    if lab.o_sign:
                        out.append(tensor_sign(lab))
        return out
    if fam == "U":
        for w in itertools.product(range(max_first, -max_first - 1, -1), repeat=k):
            if all(w[i] >= w[i + 1] for i in range(k - 1)):
                out.append(IrrepLabel(group, w))
        return out
    for w in itertools.product(range(max_first, -1, -1), repeat=k):
        if all(w[i] >= w[i + 1] for i in range(k - 1)):
            out.append(IrrepLabel(group, w))
    return out


def positive_root_density(group: CompactGroup) -> LaurentPoly:
    """Delta = prod over all roots of (1 - e^alpha), the Weyl integration density."""
    fam = group.family
    k = group.torus_rank
    roots: list[tuple[int, ...]] = []

    def vec(pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
        v = [0] * k
        for i, x in pairs:
            v[i] += x
        return tuple(v)

    if fam in ("SO", "O"):
        for i in range(k):
            for j in range(i + 1, k):
                for a in (1, -1):
                    for b in (1, -1):
                        roots.append(vec([(i, a), (j, b)]))
            if group.n % 2:
                roots += [vec([(i, 1)]), vec([(i, -1)])]
    elif fam == "U":
        for i in range(k):
            for j in range(k):
                if i != j:
                    roots.append(vec([(i, 1), (j, -1)]))
    else:
        # SU(n): e_i - e_j with e_n = -(e_1 + ... + e_{n-1})
        n = group.n
        basis = [tuple(int(a == b) for b in range(k)) for a in range(k)] + [(-1,) * k]
        for i in range(n):
            for j in range(n):
                if i != j:
                    roots.append(tuple(x - y for x, y in zip(basis[i], basis[j])))
    out = LaurentPoly.constant(1, k)
    for r in roots:
        out = out * (LaurentPoly.constant(1, k) - LaurentPoly.monomial(r))
    return out
