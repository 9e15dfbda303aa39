"""Multiplicity of a character of a subgroup H in a representation, for finite H.

    m = |H|^{-1} sum_{h in H} theta(h) chi(h)^{-1}
      = sum over classes of |Z_H(x)|^{-1} theta(x) chi(x)^{-1}

Values are exact elements of a cyclotomic field Q(zeta_N); chi is unitary so
chi^{-1} = conj(chi).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from .errors import BadClassData


# --- cyclotomic numbers ---------------------------------------------------------------

def _poly_divmod(num: list[int], den: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (coefficients low to high) by a monic divisor."""
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    return q, num[:len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p, r = _poly_divmod(p, cyclotomic_poly(d))
            assert not any(r)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def _reduce(coeffs: list[Fraction], order: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(order)
    deg = len(phi) - 1
    c = list(coeffs) + [Fraction(0)] * max(0, deg - len(coeffs))
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j, d in enumerate(phi):
                c[i - deg + j] -= lead * d
    return tuple(c[:deg])


@dataclass(frozen=True, eq=False)
class Cyclotomic:
    """sum_k coeffs[k] zeta^k with zeta = exp(2 pi i / order), reduced mod Phi_order."""

    order: int = 1
    coeffs: tuple[Fraction, ...] = (Fraction(0),)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _reduce([Fraction(c) for c in self.coeffs], self.order))

    @classmethod
    def root(cls, k: int, order: int) -> "Cyclotomic":
        c = [Fraction(0)] * order
        c[k % order] = Fraction(1)
        return cls(order, tuple(c))

    @classmethod
    def of(cls, v) -> "Cyclotomic":
        """Coerce a rational, an [re, im] pair or {"zeta": N, "coeffs": [...]}."""
        if isinstance(v, Cyclotomic):
            return v
        if isinstance(v, (list, tuple)):
            re, im = v
            return cls(4, (Fraction(re), Fraction(im)))
        if isinstance(v, dict):
            order = int(v["zeta"])
            if order < 1:
                raise ValueError("zeta order must be positive")
            return cls(order, tuple(Fraction(c) for c in v["coeffs"]))
        if isinstance(v, float):
            raise TypeError("floating-point values are not exact")
        return cls(1, (Fraction(v),))

    def lift(self, order: int) -> "Cyclotomic":
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) is not inside Q(zeta_{order})")
        step = order // self.order
        c = [Fraction(0)] * order
        for k, a in enumerate(self.coeffs):
            c[k * step] += a
        return Cyclotomic(order, tuple(c))

    def _common(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        other = Cyclotomic.of(other)
        order = math.lcm(self.order, other.order)
        return self.lift(order), other.lift(order)

    def __add__(self, other):
        a, b = self._common(other)
        return Cyclotomic(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-Cyclotomic.of(other))

    def __mul__(self, other):
        a, b = self._common(other)
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return Cyclotomic(a.order, tuple(prod))

    __rmul__ = __mul__

    def __truediv__(self, q):
        q = Fraction(q)
        return Cyclotomic(self.order, tuple(x / q for x in self.coeffs))

    def conj(self) -> "Cyclotomic":
        c = [Fraction(0)] * self.order
        for k, a in enumerate(self.coeffs):
            c[-k % self.order] += a
        return Cyclotomic(self.order, tuple(c))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        try:
            a, b = self._common(other)
        except (TypeError, ValueError):
            return NotImplemented
        return a.coeffs == b.coeffs

    __hash__ = None

    def __complex__(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.order), math.sin(2 * math.pi / self.order))
        return sum((float(a) * z ** k for k, a in enumerate(self.coeffs)), 0j)

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0])
        if 4 % self.order == 0:
            a = self.lift(4)
            re, im = a.coeffs
            return f"{re}{'+' if im >= 0 else '-'}{abs(im)}i"
        parts = [f"{a}*z{self.order}^{k}" if k else str(a) for k, a in enumerate(self.coeffs) if a]
        return " + ".join(parts)

    def to_json(self):
        if 4 % self.order == 0:
            re, im = self.lift(4).coeffs
            return [_num(re), _num(im)]
        return {"zeta": self.order, "coeffs": [_num(a) for a in self.coeffs]}


# --- class data ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassDatum:
    size: int
    centralizer: int
    theta: Cyclotomic
    chi: Cyclotomic


@dataclass(frozen=True)
class FiniteGroupData:
    order_H: int
    classes: tuple[ClassDatum, ...]

    def validate(self) -> None:
        if self.order_H < 1:
            raise BadClassData("order_H must be positive")
        if not self.classes:
            raise BadClassData("no conjugacy classes given")
        for i, c in enumerate(self.classes):
            if c.size < 1 or c.centralizer < 1:
                raise BadClassData(f"class {i}: size and centralizer must be positive")
            if c.size * c.centralizer != self.order_H:
                raise BadClassData(f"class {i}: size * centralizer = {c.size * c.centralizer} != {self.order_H}")
        total = sum(c.size for c in self.classes)
        if total != self.order_H:
            raise BadClassData(f"class sizes sum to {total}, not {self.order_H}")

    @classmethod
    def from_dict(cls, d: dict) -> "FiniteGroupData":
        try:
            classes = tuple(
                ClassDatum(int(c["size"]), int(c["centralizer"]),
                           Cyclotomic.of(c["theta"]), Cyclotomic.of(c["chi"]))
                for c in d["classes"]
            )
            return cls(int(d["order_H"]), classes)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise BadClassData(f"malformed class data: {exc}") from exc

    def to_dict(self) -> dict:
        return {
            "order_H": self.order_H,
            "classes": [
                {"size": c.size, "centralizer": c.centralizer, "theta": c.theta.to_json(), "chi": c.chi.to_json()}
                for c in self.classes
            ],
        }


def _num(q: Fraction):
    return int(q) if q.denominator == 1 else str(q)


def load(path: str | Path) -> FiniteGroupData:
    with open(path) as fh:
        return FiniteGroupData.from_dict(json.load(fh))


def m_geom_average(data: FiniteGroupData) -> Cyclotomic:
    data.validate()
    total = Cyclotomic()
    for c in data.classes:
        total = total + c.theta * c.chi.conj() * c.size
    return total / data.order_H


def m_geom_classes(data: FiniteGroupData) -> Cyclotomic:
    data.validate()
    total = Cyclotomic()
    for c in data.classes:
        total = total + c.theta * c.chi.conj() / c.centralizer
    return total


def from_table(class_sizes: Sequence[int], theta: Sequence, chi: Sequence) -> FiniteGroupData:
    """Assemble class data from class sizes and two class functions."""
    order = sum(class_sizes)
    return FiniteGroupData(order, tuple(
        ClassDatum(s, order // s, Cyclotomic.of(t), Cyclotomic.of(c)) for s, t, c in zip(class_sizes, theta, chi)
    ))
