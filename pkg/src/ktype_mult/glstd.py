"""Standard modules of GL_n(R) and their regular germs at support elements.

The quantity carried through parabolic induction is

    Phi_pi(x) = D^G(x)^{1/2} * c_pi(x),

which for GL_n satisfies Phi_{Ind tau}(x) = sum over y in X_M(x) of
Phi_tau(y), with Phi_tau(y) the product of the block values.  Keeping Phi
(rather than c) avoids square roots: every |.|^{1/2} factor that appears is
an AbsFactor, and those cancel exactly once multiplied against
D^{SO_n}(x) / D^G(x)^{1/2}.

Every eigenvalue of a support element has modulus one, so |lambda_i
lambda_j|^{1/2} and the modulus character delta_P^{1/2} are identically 1
there and never appear.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import ClassVar, Iterable, Sequence, Union

from .compactrep import Eigenvalues
from .errors import BadAssignment, ResidualAbsFactor
from .exactalg import AbsFactor, AbsProduct, LaurentPoly, abs_cancel, exact_div

Summand = tuple[AbsProduct, LaurentPoly]


@dataclass(frozen=True, order=True)
class GL1Char:
    """x -> sgn(x)^eps |x|^s."""

    eps: int
    s: Fraction = Fraction(0)
    size: ClassVar[int] = 1

    def __post_init__(self):
        if self.eps not in (0, 1):
            raise ValueError("eps must be 0 or 1")
        object.__setattr__(self, "s", Fraction(self.s))

    def at_sign(self, x: int) -> int:
        # |+-1|^s = 1, so s never enters
        return -1 if (x == -1 and self.eps) else 1

    def __str__(self) -> str:
        return f"chi({self.eps},{self.s})"


@dataclass(frozen=True, order=True)
class FiniteDim:
    """Sym^{a-b}(std) (x) det^b."""

    a: int
    b: int
    size: ClassVar[int] = 2
    kind: ClassVar[str] = "finite_dim"

    def __post_init__(self):
        if self.a < self.b:
            raise ValueError("finite_dim needs a >= b")

    @property
    def m(self) -> int:
        return self.a - self.b

    def weights(self) -> list[tuple[int, int]]:
        """Torus weights (p, q): diag(x, y) acts by x^p y^q."""
        return [(self.a - j, self.b + j) for j in range(self.m + 1)]

    def trace_split(self, x: int, y: int) -> int:
        """Trace at diag(x, y) with x, y = +-1, summed over the weights."""
        # x, y = +-1, so only exponent parities matter (b may be negative)
        return sum(x ** (p % 2) * y ** (q % 2) for p, q in self.weights())

    def rotation_character(self, j: int, nvars: int) -> LaurentPoly:
        z = LaurentPoly.var(j, nvars)
        zi = LaurentPoly.var(j, nvars, -1)
        num = LaurentPoly.var(j, nvars, self.m + 1) - LaurentPoly.var(j, nvars, -self.m - 1)
        return exact_div(num, z - zi)

    def __str__(self) -> str:
        return f"fd({self.a},{self.b})"


@dataclass(frozen=True, order=True)
class PrincipalSeries:
    chi1: GL1Char
    chi2: GL1Char
    size: ClassVar[int] = 2
    kind: ClassVar[str] = "principal"

    def __str__(self) -> str:
        return f"ps({self.chi1.eps},{self.chi2.eps})"


@dataclass(frozen=True, order=True)
class DiscreteVirtual:
    """Discrete series as the class [principal(chi1, chi2)] - [fd]."""

    chi1: GL1Char
    chi2: GL1Char
    fd: FiniteDim
    size: ClassVar[int] = 2
    kind: ClassVar[str] = "discrete_virtual"

    @property
    def principal(self) -> PrincipalSeries:
        return PrincipalSeries(self.chi1, self.chi2)

    def is_genuine(self) -> bool:
        """True when the fd quotient's O(2)-types sit inside the principal series'
        (the eps data of an actual reducible principal series)."""
        e1, e2 = self.chi1.eps, self.chi2.eps
        if (e1 + e2 - self.fd.m) % 2:
            return False
        if self.fd.m % 2 == 0:
            return e1 == e2 == self.fd.b % 2
        return True

    def __str__(self) -> str:
        return f"ds({self.chi1.eps},{self.chi2.eps};{self.fd})"


GL2Block = Union[FiniteDim, PrincipalSeries, DiscreteVirtual]


@dataclass(frozen=True, order=True)
class StandardModule:
    """Normalized induction from the block upper-triangular parabolic.

    Blocks are GL1Char, GL2 blocks, or nested StandardModules (induction in
    stages).
    """

    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        for b in self.blocks:
            if not isinstance(b, (GL1Char, FiniteDim, PrincipalSeries, DiscreteVirtual, StandardModule)):
                raise TypeError(f"unsupported block {b!r}")
        if not self.blocks:
            raise ValueError("a standard module needs at least one block")

    @property
    def n(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def size(self) -> int:
        return self.n

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(b.size for b in self.blocks)

    def flatten(self) -> "StandardModule":
        out = []
        for b in self.blocks:
            out.extend(b.flatten().blocks if isinstance(b, StandardModule) else [b])
        return StandardModule(tuple(out))

    def is_genuine(self) -> bool:
        return all(b.is_genuine() for b in self.flatten().blocks if isinstance(b, DiscreteVirtual))

    def __str__(self) -> str:
        return "Ind(" + " x ".join(map(str, self.blocks)) + ")"


@dataclass(frozen=True)
class VirtualRep:
    """Integer combination of standard modules (a Grothendieck-group element)."""

    terms: tuple = field(default=())

    def __post_init__(self):
        merged: dict[StandardModule, int] = {}
        for mod, c in self.terms:
            merged[mod] = merged.get(mod, 0) + int(c)
        terms = tuple((m, c) for m, c in merged.items() if c)
        sizes = {m.n for m, _ in terms}
        if len(sizes) > 1:
            raise ValueError(f"mixed ambient sizes {sorted(sizes)}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, module: StandardModule, coeff: int = 1) -> "VirtualRep":
        return cls(((module, coeff),))

    @property
    def n(self) -> int:
        return self.terms[0][0].n

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        return VirtualRep(self.terms + other.terms)

    def __sub__(self, other: "VirtualRep") -> "VirtualRep":
        return self + other.scale(-1)

    def scale(self, c: int) -> "VirtualRep":
        return VirtualRep(tuple((m, c * k) for m, k in self.terms))

    def is_genuine(self) -> bool:
        return all(c > 0 and m.is_genuine() for m, c in self.terms)

    def __str__(self) -> str:
        return " + ".join(f"{c}*{m}" for m, c in self.terms) or "0"


def as_virtual(pi) -> VirtualRep:
    if isinstance(pi, VirtualRep):
        return pi
    if isinstance(pi, StandardModule):
        return VirtualRep.of(pi)
    return VirtualRep.of(StandardModule((pi,)))


@dataclass(frozen=True)
class SupportElement(Eigenvalues):
    """diag(I_{n_plus}, -I_{n_minus}, rot(z_j) for j in pairs).

    ``variant='SO'`` requires an even number of -1 eigenvalues (I(n));
    ``variant='O'`` allows any (J(n)).
    """

    variant: str | None = None

    def __post_init__(self):
        super().__post_init__()
        if self.variant == "SO" and self.n_minus % 2:
            raise ValueError("SO support elements have an even number of -1 eigenvalues")
        if self.variant not in (None, "SO", "O"):
            raise ValueError(f"unknown variant {self.variant!r}")

    @classmethod
    def from_counts(cls, n1: int, n_minus: int, k: int, variant: str | None = None) -> "SupportElement":
        return cls(n1, n_minus, tuple(range(k)), k, variant)

    @property
    def ambient_n(self) -> int:
        return self.size

    def sub(self, n_plus: int, n_minus: int, pairs: Sequence[int]) -> "SupportElement":
        return SupportElement(n_plus, n_minus, tuple(pairs), self.nvars, None)


# --- X_M(x) ------------------------------------------------------------------

def x_m_classes(x: SupportElement, shape: Sequence[int]) -> list[tuple[SupportElement, ...]]:
    """Distributions of the eigenvalues of ``x`` over blocks of the given sizes.

    Each block receives a conjugation-closed sub-multiset; rotation pairs are
    atomic.  Distinct distributions are distinct M-conjugacy classes.
    """
    if sum(shape) != x.size:
        raise ValueError(f"shape {tuple(shape)} does not partition size {x.size}")
    out: list[tuple[SupportElement, ...]] = []

    def rec(i: int, n_plus: int, n_minus: int, pairs: tuple[int, ...], acc: list):
        if i == len(shape):
            if n_plus == n_minus == 0 and not pairs:
                out.append(tuple(acc))
            return
        m = shape[i]
        for c in range(min(len(pairs), m // 2), -1, -1):
            for chosen in itertools.combinations(pairs, c):
                rest = tuple(j for j in pairs if j not in chosen)
                reals = m - 2 * c
                for a in range(min(reals, n_plus), -1, -1):
                    b = reals - a
                    if b > n_minus:
                        continue
                    acc.append(x.sub(a, b, chosen))
                    rec(i + 1, n_plus - a, n_minus - b, rest, acc)
                    acc.pop()

    rec(0, x.n_plus, x.n_minus, tuple(x.pairs), [])
    return out


# --- Phi values ----------------------------------------------------------------

def _const(c, nvars: int) -> list[Summand]:
    if not c:
        return []
    return [(AbsProduct(), LaurentPoly.constant(c, nvars))]


def phi_block(block, y: SupportElement) -> list[Summand]:
    """Phi = D^{block}(y)^{1/2} c_block(y) for one Levi block.

    The zero value is the empty list.
    """
    nv = y.nvars
    if y.size != block.size:
        raise BadAssignment(f"{block} of size {block.size} given {y.size} eigenvalues")
    if isinstance(block, StandardModule):
        return phi(block, y)
    if isinstance(block, GL1Char):
        return _const(block.at_sign(1 if y.n_plus else -1), nv)
    if isinstance(block, DiscreteVirtual):
        return phi_block(block.principal, y) + [(a, -p) for a, p in phi_block(block.fd, y)]
    if isinstance(block, FiniteDim):
        if y.pairs:
            j = y.pairs[0]
            e = tuple(int(i == j) for i in range(nv))
            return [(AbsProduct([AbsFactor.conj_gap(e)]), block.rotation_character(j, nv))]
        if y.n_plus == 1 and y.n_minus == 1:
            # regular split element: D^{1/2} = |1 - (-1)| = 2
            return _const(2 * block.trace_split(1, -1), nv)
        # +-I_2: the character is analytic there, so the regular germ vanishes
        return []
    if isinstance(block, PrincipalSeries):
        c1, c2 = block.chi1, block.chi2
        if y.pairs:
            # no element of the split torus is conjugate to a rotation
            return []
        if y.n_plus == 1 and y.n_minus == 1:
            return _const(c1.at_sign(1) * c2.at_sign(-1) + c1.at_sign(-1) * c2.at_sign(1), nv)
        s = 1 if y.n_plus == 2 else -1
        return _const(c1.at_sign(s) * c2.at_sign(s), nv)
    raise BadAssignment(f"unsupported block {block!r}")


def _collect(summands: Iterable[Summand]) -> list[Summand]:
    merged: dict[AbsProduct, LaurentPoly] = {}
    order: list[AbsProduct] = []
    for a, p in summands:
        if a in merged:
            merged[a] = merged[a] + p
        else:
            merged[a] = p
            order.append(a)
    return [(a, merged[a]) for a in order if merged[a]]


@lru_cache(maxsize=None)
def _phi_module(pi: StandardModule, x: SupportElement) -> tuple[Summand, ...]:
    out: list[Summand] = []
    for ys in x_m_classes(x, pi.shape):
        parts = [phi_block(b, y) for b, y in zip(pi.blocks, ys)]
        if any(not p for p in parts):
            continue
        for combo in itertools.product(*parts):
            a = AbsProduct()
            poly = LaurentPoly.constant(1, x.nvars)
            for ab, pb in combo:
                a = a * ab
                poly = poly * pb
            out.append((a, poly))
    return tuple(_collect(out))


def phi(pi, x: SupportElement) -> list[Summand]:
    """Phi_pi(x) = D^G(x)^{1/2} c_pi(x) as a list of (AbsProduct, LaurentPoly)."""
    if isinstance(pi, VirtualRep):
        out: list[Summand] = []
        for mod, c in pi.terms:
            out.extend((a, p * c) for a, p in _phi_module(mod, x))
        return _collect(out)
    if not isinstance(pi, StandardModule):
        pi = StandardModule((pi,))
    # plain x: the variant flag does not change Phi
    return list(_phi_module(pi, _plain(x)))


def _plain(x: SupportElement) -> SupportElement:
    if x.variant is None:
        return x
    return SupportElement(x.n_plus, x.n_minus, x.pairs, x.nvars, None)


# --- Weyl determinants -----------------------------------------------------------

def so_weyl_det(x: Eigenvalues) -> AbsProduct:
    """D^{SO_n}(x) = |det(1 - Ad x)| on so_n modulo the centralizer of x.

    Ad(x) on so_n = Lambda^2 of the standard representation, so its eigenvalues
    are the products lambda_i lambda_j (i < j); those equal to 1 span the
    centralizer and are discarded.
    """
    ev = x.monomials()
    out = []
    for (si, ei), (sj, ej) in itertools.combinations(ev, 2):
        s = si * sj
        e = tuple(a + b for a, b in zip(ei, ej))
        if s == 1 and not any(e):
            continue
        out.append(AbsFactor.one_minus(s, e))
    return AbsProduct(out)


def gl_weyl_det_half(x: Eigenvalues) -> AbsProduct:
    """D^{GL_n}(x)^{1/2} = prod over unordered pairs of distinct eigenvalues of |lambda_i - lambda_j|."""
    ev = x.monomials()
    out = []
    for (si, ei), (sj, ej) in itertools.combinations(ev, 2):
        if si == sj and ei == ej:
            continue
        if si == sj and any(ei) and ej == tuple(-a for a in ei):
            out.append(AbsFactor.conj_gap(ei))
        else:
            out.append(AbsFactor.one_minus(si * sj, tuple(b - a for a, b in zip(ei, ej))))
    return AbsProduct(out)


@lru_cache(maxsize=None)
def _integrand_module(pi: StandardModule, x: SupportElement) -> LaurentPoly:
    so_det = so_weyl_det(x)
    gl_det = gl_weyl_det_half(x)
    total = LaurentPoly.zero(x.nvars)
    for a, p in _phi_module(pi, x):
        num, den = abs_cancel(so_det * a, gl_det)
        if num or den:
            raise ResidualAbsFactor(f"{pi} at {x}: leftover {num} / {den}")
        total = total + p
    return total


def integrand_term(pi, x: SupportElement) -> LaurentPoly:
    """D^{SO_n}(x) c_pi(x) as an exact Laurent polynomial in the rotation variables."""
    x = _plain(x)
    if isinstance(pi, VirtualRep):
        total = LaurentPoly.zero(x.nvars)
        for mod, c in pi.terms:
            total = total + _integrand_module(mod, x) * c
        return total
    if not isinstance(pi, StandardModule):
        pi = StandardModule((pi,))
    return _integrand_module(pi, x)
