"""Geometric multiplicity as a finite sum of exact torus integrals.

For (GL_n(R), SO_n) the support is indexed by I(n) = {n1 + 2 n2 + 2k = n}
with weights 1/(2^{n-k-1} k!); for (GL_n(R), O_n) by J(n) =
{n1 + n2 + 2k = n} with weights 1/(2^{n-k} k!).  Each term integrates
D^{SO_n}(x) c_pi(x) conj(theta_omega(x)) over the k rotation circles, which
for Laurent polynomials is a constant-term extraction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .compactrep import (
    CompactGroup,
    IrrepLabel,
    apply_weyl,
    o_character_on_element,
    so_character_on_element,
    weyl_character,
    weyl_group,
    weyl_order,
)
from .errors import EmbeddingMismatch, NonIntegral
from .exactalg import LaurentPoly
from .glstd import SupportElement, as_virtual, integrand_term

VARIANTS = ("SO", "O")


@dataclass(frozen=True, order=True)
class SupportIndex:
    """One support component T_{n1,n2,k}; ``n2`` counts -1 pairs for SO, -1 eigenvalues for O."""

    variant: str
    n1: int
    n2: int
    k: int

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if min(self.n1, self.n2, self.k) < 0:
            raise ValueError("support indices are nonnegative")

    @property
    def n(self) -> int:
        return self.n1 + (2 if self.variant == "SO" else 1) * self.n2 + 2 * self.k

    @property
    def n_minus(self) -> int:
        return 2 * self.n2 if self.variant == "SO" else self.n2

    def element(self) -> SupportElement:
        return SupportElement(self.n1, self.n_minus, tuple(range(self.k)), self.k, self.variant)

    def coefficient(self) -> Fraction:
        return coefficient(self.variant, self.n, self.k)

    def __str__(self) -> str:
        return f"{self.variant}({self.n1},{self.n2},{self.k})"


def enumerate_support(n: int, variant: str) -> list[SupportIndex]:
    if n < 1:
        raise ValueError("n must be positive")
    step = 2 if variant == "SO" else 1
    out = []
    for k in range(n // 2, -1, -1):
        for n2 in range((n - 2 * k) // step, -1, -1):
            n1 = n - 2 * k - step * n2
            out.append(SupportIndex(variant, n1, n2, k))
    return sorted(out, key=lambda s: (s.k, -s.n1, s.n2))


def coefficient(variant: str, n: int, k: int) -> Fraction:
    shift = 1 if variant == "SO" else 0
    return Fraction(1, 2 ** (n - k - shift) * math.factorial(k))


@dataclass(frozen=True)
class GeomResult:
    value: Fraction
    per_term: tuple = field(default=())

    def as_int(self) -> int:
        if self.value.denominator != 1:
            raise NonIntegral(f"{self.value} is not an integer")
        return int(self.value)


def _theta(omega: IrrepLabel, x: SupportElement) -> LaurentPoly:
    if omega.group.family == "O":
        return o_character_on_element(omega, x)
    return so_character_on_element(omega, x)


def term_value(pi, omega: IrrepLabel, idx: SupportIndex) -> Fraction:
    """coeff * CT(integrand * conj(theta_omega)) for a single support component."""
    x = idx.element()
    integrand = integrand_term(pi, x)
    if not integrand:
        return Fraction(0)
    return idx.coefficient() * integrand.dot(_theta(omega, x))


def geom_multiplicity(pi, omega: IrrepLabel, variant: str | None = None,
                      check: bool = True) -> GeomResult:
    """m_geom(pi, omega) for an SO(n) or O(n) label.

    With ``check`` set, a genuine pi must produce a nonnegative integer;
    anything else raises NonIntegral.
    """
    pi = as_virtual(pi)
    fam = omega.group.family
    if variant is None:
        variant = fam
    if fam not in VARIANTS or variant != fam:
        raise EmbeddingMismatch(f"variant {variant} with a {omega.group} label")
    n = pi.n
    if omega.group.n != n:
        raise EmbeddingMismatch(f"{omega.group} type for a representation of GL({n})")
    per_term = []
    total = Fraction(0)
    for idx in enumerate_support(n, variant):
        v = term_value(pi, omega, idx)
        per_term.append((idx, v))
        total += v
    if check and pi.is_genuine() and (total.denominator != 1 or total < 0):
        raise NonIntegral(f"m_geom({pi}, {omega}) = {total}")
    return GeomResult(total, tuple(per_term))


def so_from_o(pi, so_label: IrrepLabel) -> Fraction:
    """SO(n) geometric multiplicity assembled from O(n) runs.

    A twist-fixed SO-type extends to O(n) in two ways and its multiplicity is
    the sum of both; a non-fixed one and its twist together form a single
    O(n)-type whose multiplicity each of them inherits.
    """
    if so_label.group.family != "SO":
        raise EmbeddingMismatch("so_from_o expects an SO(n) label")
    g = CompactGroup("O", so_label.group.n)
    w = so_label.weight
    if so_label.self_dual:
        return sum((geom_multiplicity(pi, IrrepLabel(g, w, s)).value for s in "+-"), Fraction(0))
    merged = IrrepLabel(g, w[:-1] + (abs(w[-1]),))
    return geom_multiplicity(pi, merged).value


def geom_multiplicity_complex(group: CompactGroup, tau_weight, omega: IrrepLabel) -> Fraction:
    """|W|^{-1} CT((sum_w z^{w tau}) * conj(chi_omega)) for a complex group with maximal compact ``group``."""
    if omega.group != group:
        raise EmbeddingMismatch(f"{omega} is not a label of {group}")
    tau = tuple(int(t) for t in tau_weight)
    k = group.torus_rank
    if len(tau) != k:
        raise EmbeddingMismatch(f"weight {tau} for a rank-{k} torus")
    orbit: dict[tuple[int, ...], int] = {}
    if group.family == "SU":
        # act by S_n on the lift (tau, 0), then read off SU coordinates
        lift = tau + (0,)
        for w in weyl_group(CompactGroup("U", group.n)):
            v = apply_weyl(w, lift)
            wt = tuple(a - v[-1] for a in v[:-1])
            orbit[wt] = orbit.get(wt, 0) + 1
    else:
        for w in weyl_group(group):
            wt = apply_weyl(w, tau)
            orbit[wt] = orbit.get(wt, 0) + 1
    induced = LaurentPoly(orbit, k)
    return induced.dot(weyl_character(omega)) / weyl_order(group)
