"""Exact Laurent polynomials over Q and absolute-value factor bookkeeping.

Scalars are :class:`fractions.Fraction` throughout.  A :class:`LaurentPoly`
is a sparse map from integer exponent vectors (fixed length ``nvars``) to
nonzero rationals.  Normalised Haar integration over a product of circles is
the constant term.
"""
from __future__ import annotations

import cmath
from collections import Counter
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import NonDivisible

Exps = tuple[int, ...]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


class LaurentPoly:
    """Immutable multivariate Laurent polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None, nvars: int | None = None):
        clean: dict[Exps, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if nvars is None:
                    nvars = len(e)
                elif len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have length {nvars}")
                c = _as_fraction(c)
                if c:
                    clean[e] = clean.get(e, Fraction(0)) + c
                    if not clean[e]:
                        del clean[e]
        if nvars is None:
            raise ValueError("nvars is required for an empty polynomial")
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "LaurentPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls({tuple(exps): coeff}, len(exps))

    @classmethod
    def var(cls, i: int, nvars: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "LaurentPoly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # basic protocol
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (f"z{i + 1}" if x == 1 else f"z{i + 1}^{x}") for i, x in enumerate(e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                if other.is_constant():
                    return LaurentPoly.constant(other.constant_term(), self.nvars)
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return LaurentPoly.constant(_as_fraction(other), self.nvars)

    def _align(self, other) -> tuple["LaurentPoly", "LaurentPoly"]:
        # a constant polynomial embeds into any variable space
        if isinstance(other, LaurentPoly) and other.nvars != self.nvars and self.is_constant():
            return LaurentPoly.constant(self.constant_term(), other.nvars), other
        return self, self._coerce(other)

    # arithmetic
    def __add__(self, other) -> "LaurentPoly":
        self, other = self._align(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> "LaurentPoly":
        self, other = self._align(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = _as_fraction(other)
            if not c:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw({e: v * c for e, v in self.terms.items()}, self.nvars)
        self, other = self._align(other)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers of non-monomials are not Laurent polynomials")
        out = LaurentPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # queries
    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def leading(self) -> tuple[Exps, Fraction]:
        """Lexicographically greatest exponent and its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def degree_bounds(self) -> list[tuple[int, int]]:
        """Per-variable (min, max) exponents."""
        if not self.terms:
            raise ValueError("zero polynomial has no degree bounds")
        es = list(self.terms)
        return [(min(e[i] for e in es), max(e[i] for e in es)) for i in range(self.nvars)]

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({tuple(-x for x in e): c for e, c in self.terms.items()}, self.nvars)

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial z^exps."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}, self.nvars
        )

    def map_exponents(self, f, nvars: int | None = None) -> "LaurentPoly":
        """Apply an additive map on exponent vectors (terms may merge)."""
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            e2 = tuple(f(e))
            out[e2] = out.get(e2, 0) + c
        return LaurentPoly({k: v for k, v in out.items() if v}, self.nvars if nvars is None else nvars)

    def specialize(self, assignments: Sequence, nvars: int | None = None) -> "LaurentPoly":
        return specialize(self, assignments, nvars)

    def evaluate(self, values: Sequence[complex]) -> complex:
        """Floating-point evaluation, for cross-checks only."""
        total = 0j
        for e, c in self.terms.items():
            term = complex(float(c))
            for v, x in zip(values, e):
                term *= v ** x
            total += term
        return total

    def dot(self, other: "LaurentPoly") -> Fraction:
        """constant_term(self * bar(other)), computed without forming the product."""
        if len(other.terms) < len(self.terms):
            self, other = other, self
        get = other.terms.get
        return sum((c * get(e, 0) for e, c in self.terms.items()), Fraction(0))


# module-level operations mirroring the method API

def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def constant_term(p: LaurentPoly) -> Fraction:
    return p.constant_term()


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def specialize(p: LaurentPoly, assignments: Sequence, nvars: int | None = None) -> LaurentPoly:
    """Substitute each variable by a rational constant or a monomial.

    ``assignments[i]`` is either a number (typically +1 or -1) or an exponent
    vector in the target variables.  The target variable count is taken from
    the first monomial assignment unless ``nvars`` is given.
    """
    if len(assignments) != p.nvars:
        raise ValueError(f"need {p.nvars} assignments, got {len(assignments)}")
    if nvars is None:
        for a in assignments:
            if isinstance(a, (tuple, list)):
                nvars = len(a)
                break
        else:
            nvars = 0
    consts: list[tuple[int, Fraction]] = []
    monos: list[tuple[int, Exps]] = []
    for i, a in enumerate(assignments):
        if isinstance(a, (tuple, list)):
            if len(a) != nvars:
                raise ValueError("inconsistent target variable count")
            monos.append((i, tuple(a)))
        else:
            consts.append((i, _as_fraction(a)))
    out: dict[Exps, Fraction] = {}
    for e, c in p.terms.items():
        for i, v in consts:
            x = e[i]
            if v == 1:
                continue
            if v == -1:
                if x & 1:
                    c = -c
            else:
                c = c * v ** x
        tgt = [0] * nvars
        for i, m in monos:
            x = e[i]
            if x:
                for j, mj in enumerate(m):
                    tgt[j] += mj * x
        t = tuple(tgt)
        out[t] = out.get(t, 0) + c
    return LaurentPoly._raw({k: v for k, v in out.items() if v}, nvars)


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Quotient ``q`` with ``num == q * den``; raises NonDivisible otherwise.

    Lex order on Z^n is a group order, so leading terms multiply.  Candidate
    quotient exponents are confined to the box given by per-variable degree
    additivity, which makes the loop finite.
    """
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    num = den._coerce(num)
    if not num:
        return LaurentPoly.zero(den.nvars)
    nb, db = num.degree_bounds(), den.degree_bounds()
    box = [(a[0] - b[0], a[1] - b[1]) for a, b in zip(nb, db)]
    if any(lo > hi for lo, hi in box):
        raise NonDivisible(f"({num}) / ({den})")
    lead_e, lead_c = den.leading()
    rem = dict(num.terms)
    q: dict[Exps, Fraction] = {}
    while rem:
        e = max(rem)
        qe = tuple(a - b for a, b in zip(e, lead_e))
        if any(not (lo <= x <= hi) for x, (lo, hi) in zip(qe, box)):
            raise NonDivisible(f"({num}) / ({den})")
        qc = rem[e] / lead_c
        q[qe] = qc
        for de, dc in den.terms.items():
            t = tuple(a + b for a, b in zip(qe, de))
            v = rem.get(t, 0) - qc * dc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return LaurentPoly._raw(q, den.nvars)


# --- absolute-value factors -------------------------------------------------

ONE_MINUS = "1-mu"   # |1 - mu|, mu = sign * z^exps
CONJ_GAP = "mu-bar"  # |mu - conj(mu)|, mu = z^exps
TWO = "2"


def _lexmax(e: Exps) -> Exps:
    neg = tuple(-x for x in e)
    return max(e, neg)


class AbsFactor(NamedTuple):
    kind: str
    sign: int
    exps: Exps

    @classmethod
    def one_minus(cls, sign: int, exps: Sequence[int]) -> "AbsFactor":
        """|1 - mu| for mu = sign*z^exps, canonicalised (|1-mu| = |1-1/mu| on the torus)."""
        exps = tuple(exps)
        if not any(exps):
            if sign == 1:
                raise ValueError("|1 - 1| = 0 is not an admissible factor")
            return cls.two(len(exps))
        return cls(ONE_MINUS, sign, _lexmax(exps))

    @classmethod
    def conj_gap(cls, exps: Sequence[int]) -> "AbsFactor":
        exps = tuple(exps)
        if not any(exps):
            raise ValueError("|1 - 1| = 0 is not an admissible factor")
        return cls(CONJ_GAP, 1, _lexmax(exps))

    @classmethod
    def two(cls, nvars: int = 0) -> "AbsFactor":
        return cls(TWO, 1, ())

    def evaluate(self, zs: Sequence[complex]) -> float:
        mono = 1 + 0j
        for z, x in zip(zs, self.exps):
            mono *= z ** x
        if self.kind == TWO:
            return 2.0
        if self.kind == ONE_MINUS:
            return abs(1 - self.sign * mono)
        return abs(mono - mono.conjugate())

    def __str__(self) -> str:
        if self.kind == TWO:
            return "2"
        mono = "*".join(f"z{i + 1}^{x}" for i, x in enumerate(self.exps) if x)
        if self.kind == ONE_MINUS:
            return f"|1{'-' if self.sign == 1 else '+'}{mono}|"
        return f"|{mono}-conj|"


class AbsProduct:
    """Finite multiset of AbsFactor, multiplied as a free commutative monoid."""

    __slots__ = ("_c",)

    def __init__(self, factors: Iterable[AbsFactor] | Mapping[AbsFactor, int] = ()):
        c = Counter(factors)
        self._c = Counter({k: v for k, v in c.items() if v > 0})

    @classmethod
    def empty(cls) -> "AbsProduct":
        return cls()

    def __mul__(self, other: "AbsProduct") -> "AbsProduct":
        return AbsProduct(self._c + other._c)

    def __eq__(self, other) -> bool:
        return isinstance(other, AbsProduct) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return sum(self._c.values())

    def items(self):
        return sorted(self._c.items())

    def counter(self) -> Counter:
        return Counter(self._c)

    def evaluate(self, zs: Sequence[complex]) -> float:
        out = 1.0
        for f, m in self._c.items():
            out *= f.evaluate(zs) ** m
        return out

    def __repr__(self) -> str:
        if not self._c:
            return "AbsProduct{}"
        return "AbsProduct{" + ", ".join(
            (str(f) if m == 1 else f"{f}^{m}") for f, m in self.items()
        ) + "}"


def abs_cancel(numerator: AbsProduct, denominator: AbsProduct) -> tuple[AbsProduct, AbsProduct]:
    """Remove common factors; returns the leftover (numerator, denominator)."""
    n, d = numerator.counter(), denominator.counter()
    return AbsProduct(n - d), AbsProduct(d - n)


def quadrature_constant_term(p: LaurentPoly, points: int = 64) -> complex:
    """Mean of ``p`` over a uniform grid on the torus (test cross-check only)."""
    import itertools

    roots = [cmath.exp(2j * cmath.pi * m / points) for m in range(points)]
    total = 0j
    for zs in itertools.product(roots, repeat=p.nvars):
        total += p.evaluate(zs)
    return total / points ** p.nvars
