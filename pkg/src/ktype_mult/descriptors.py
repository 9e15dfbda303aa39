"""Text and file descriptors for groups, representations and K-types.

Representation descriptor::

    {"n": 3, "blocks": [{"type": "gl1", "eps": 0, "s": 0}, ...]}
    {"terms": [{"coeff": 1, "module": {...}}, ...]}

Block types: gl1 (eps, s), gl2fd (a, b), gl2ps (eps1, s1, eps2, s2),
gl2ds (eps1, s1, eps2, s2, a, b) and ind (blocks) for induction in stages.
For a complex group the descriptor is {"tau": [...]}.

K-type descriptors are strings such as ``SO:[1,0]``, ``O:[0]-``, ``U:[2,0]``
or ``SU:[2]``; short weights are padded with zeros.
"""
from __future__ import annotations

import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .compactrep import CompactGroup, IrrepLabel
from .glstd import (
    DiscreteVirtual,
    FiniteDim,
    GL1Char,
    PrincipalSeries,
    StandardModule,
    VirtualRep,
)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class DescriptorError(ValueError):
    """Malformed input; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# --- groups -------------------------------------------------------------------

REAL = "GL"
COMPLEX = {"GLC": "U", "SLC": "SU"}


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int

    @property
    def is_complex(self) -> bool:
        return self.family in COMPLEX

    @property
    def compact(self) -> CompactGroup:
        if self.is_complex:
            return CompactGroup(COMPLEX[self.family], self.n)
        return CompactGroup("O", self.n)

    def __str__(self) -> str:
        return f"{self.family}:{self.n}"


def parse_group(text: str, field: str = "group") -> GroupSpec:
    m = re.fullmatch(r"\s*(GL|GLC|SLC)\s*:\s*(\d+)\s*", str(text))
    if not m:
        raise DescriptorError(field, f"expected GL:n, GLC:n or SLC:n, got {text!r}")
    n = int(m.group(2))
    if n < 1:
        raise DescriptorError(field, "n must be positive")
    return GroupSpec(m.group(1), n)


# --- K-types --------------------------------------------------------------------

_KTYPE = re.compile(r"\s*(SO|O|U|SU)\s*:\s*\[([-\d,\s]*)\]\s*([+-]?)\s*")


def parse_ktype(text: str, n: int, field: str = "ktype") -> IrrepLabel:
    m = _KTYPE.fullmatch(str(text))
    if not m:
        raise DescriptorError(field, f"cannot parse K-type {text!r}")
    fam, body, sign = m.groups()
    try:
        weight = tuple(int(x) for x in body.split(",") if x.strip())
    except ValueError:
        raise DescriptorError(field, f"weight entries must be integers in {text!r}") from None
    group = CompactGroup(fam, n)
    rank = group.torus_rank
    if len(weight) > rank:
        raise DescriptorError(field, f"{fam}({n}) weights have {rank} entries, got {len(weight)}")
    weight = weight + (0,) * (rank - len(weight))
    if fam != "O" and sign:
        raise DescriptorError(field, "only O(n) types carry a sign")
    if fam == "O":
        self_dual = n % 2 == 1 or not weight or weight[-1] == 0
        sign = (sign or "+") if self_dual else None
        if not self_dual and m.group(3):
            raise DescriptorError(field, f"O({n}) type {weight} has no sign")
    try:
        return IrrepLabel(group, weight, sign or None)
    except ValueError as exc:
        raise DescriptorError(field, str(exc)) from None


# --- representations ------------------------------------------------------------

def _get(d: dict, key: str, field: str, default=None, required: bool = True):
    if not isinstance(d, dict):
        raise DescriptorError(field, "expected a table/object")
    if key not in d:
        if required and default is None:
            raise DescriptorError(f"{field}.{key}", "missing")
        return default
    return d[key]


def _int(d: dict, key: str, field: str, default=None) -> int:
    v = _get(d, key, field, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise DescriptorError(f"{field}.{key}", f"expected an integer, got {v!r}")
    return v


def _eps(d: dict, key: str, field: str) -> int:
    v = _int(d, key, field)
    if v not in (0, 1):
        raise DescriptorError(f"{field}.{key}", "must be 0 or 1")
    return v


def _rat(d: dict, key: str, field: str) -> Fraction:
    v = _get(d, key, field, default=0)
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError):
        raise DescriptorError(f"{field}.{key}", f"expected a rational number, got {v!r}") from None


def parse_block(d: dict, field: str):
    kind = _get(d, "type", field)
    if kind == "gl1":
        return GL1Char(_eps(d, "eps", field), _rat(d, "s", field))
    if kind == "gl2fd":
        a, b = _int(d, "a", field), _int(d, "b", field)
        if a < b:
            raise DescriptorError(f"{field}.a", "finite_dim needs a >= b")
        return FiniteDim(a, b)
    chis = None
    if kind in ("gl2ps", "gl2ds"):
        chis = (GL1Char(_eps(d, "eps1", field), _rat(d, "s1", field)),
                GL1Char(_eps(d, "eps2", field), _rat(d, "s2", field)))
    if kind == "gl2ps":
        return PrincipalSeries(*chis)
    if kind == "gl2ds":
        a, b = _int(d, "a", field), _int(d, "b", field)
        if a < b:
            raise DescriptorError(f"{field}.a", "finite_dim needs a >= b")
        return DiscreteVirtual(chis[0], chis[1], FiniteDim(a, b))
    if kind == "ind":
        return _parse_module(d, field)
    raise DescriptorError(f"{field}.type", f"unknown block type {kind!r}")


def _parse_module(d: dict, field: str) -> StandardModule:
    blocks = _get(d, "blocks", field)
    if not isinstance(blocks, list) or not blocks:
        raise DescriptorError(f"{field}.blocks", "expected a nonempty list")
    mod = StandardModule(tuple(parse_block(b, f"{field}.blocks[{i}]") for i, b in enumerate(blocks)))
    if "n" in d and _int(d, "n", field) != mod.n:
        raise DescriptorError(f"{field}.n", f"blocks have total size {mod.n}, not {d['n']}")
    return mod


def parse_rep(d: dict, field: str = "rep") -> VirtualRep:
    if isinstance(d, dict) and "terms" in d:
        terms = d["terms"]
        if not isinstance(terms, list) or not terms:
            raise DescriptorError(f"{field}.terms", "expected a nonempty list")
        parsed = []
        for i, t in enumerate(terms):
            f = f"{field}.terms[{i}]"
            parsed.append((_parse_module(_get(t, "module", f), f + ".module"), _int(t, "coeff", f)))
        sizes = {m.n for m, _ in parsed}
        if len(sizes) != 1:
            raise DescriptorError(f"{field}.terms", f"modules of different sizes {sorted(sizes)}")
        rep = VirtualRep(tuple(parsed))
        if not rep.terms:
            raise DescriptorError(f"{field}.terms", "coefficients cancel to zero")
        return rep
    return VirtualRep.of(_parse_module(d, field))


def parse_tau(d: dict, n: int, family: str, field: str = "rep") -> tuple[int, ...]:
    tau = _get(d, "tau", field)
    rank = n if family == "GLC" else n - 1
    if not isinstance(tau, list) or any(isinstance(t, bool) or not isinstance(t, int) for t in tau):
        raise DescriptorError(f"{field}.tau", "expected a list of integers")
    if len(tau) != rank:
        raise DescriptorError(f"{field}.tau", f"expected {rank} entries, got {len(tau)}")
    return tuple(tau)


# --- files --------------------------------------------------------------------------

def load_file(path: str | Path) -> dict:
    """Read a JSON or TOML document, chosen by file extension."""
    p = Path(path)
    try:
        if p.suffix.lower() == ".toml":
            with open(p, "rb") as fh:
                return tomllib.load(fh)
        with open(p) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DescriptorError(str(p), exc.strerror or str(exc)) from None
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise DescriptorError(str(p), f"parse error: {exc}") from None
