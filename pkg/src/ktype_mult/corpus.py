"""Enumerations of test inputs shared by the self-test and the test suite."""
from __future__ import annotations

import itertools
from typing import Iterator

from .compactrep import CompactGroup, IrrepLabel, all_labels
from .glstd import DiscreteVirtual, FiniteDim, GL1Char, PrincipalSeries, StandardModule

SIGNS = (GL1Char(0), GL1Char(1))


def principal_series() -> list[PrincipalSeries]:
    return [PrincipalSeries(a, b) for a in SIGNS for b in SIGNS]


def finite_dims(max_m: int, twists=(0, 1)) -> list[FiniteDim]:
    return [FiniteDim(m + b, b) for m in range(max_m + 1) for b in twists]


def discrete_virtuals(max_m: int) -> list[DiscreteVirtual]:
    """Every (principal, finite_dim) pair whose difference is an actual discrete series class."""
    out = []
    for fd in finite_dims(max_m):
        for ps in principal_series():
            dv = DiscreteVirtual(ps.chi1, ps.chi2, fd)
            if dv.is_genuine():
                out.append(dv)
    return out


def gl2_blocks(max_m: int = 2) -> list:
    return finite_dims(max_m) + principal_series()


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """Compositions of n into parts 1 and 2, in a fixed order."""
    if n == 0:
        yield ()
        return
    for part in (1, 2):
        if part <= n:
            for rest in compositions(n - part):
                yield (part,) + rest


def standard_modules(n: int, max_m: int = 2) -> list[StandardModule]:
    """All standard modules with GL1 sign characters and GL2 blocks of weight span <= max_m."""
    pools = {1: list(SIGNS), 2: gl2_blocks(max_m)}
    out = []
    for comp in compositions(n):
        for blocks in itertools.product(*(pools[p] for p in comp)):
            out.append(StandardModule(blocks))
    return out


def o_types(n: int, max_first: int = 3) -> list[IrrepLabel]:
    return all_labels(CompactGroup("O", n), max_first)


def so_types(n: int, max_first: int = 3) -> list[IrrepLabel]:
    return all_labels(CompactGroup("SO", n), max_first)


def su2_cases(max_tau: int = 6, max_dim: int = 13) -> list[tuple[tuple[int, ...], IrrepLabel]]:
    g = CompactGroup("SU", 2)
    labels = [IrrepLabel(g, (lam,)) for lam in range(max_dim)]
    return [((t,), lab) for t in range(-max_tau, max_tau + 1) for lab in labels]


def u2_cases(max_entry: int = 3, max_span: int = 6) -> list[tuple[tuple[int, ...], IrrepLabel]]:
    g = CompactGroup("U", 2)
    rng = range(-max_entry, max_entry + 1)
    labels = [IrrepLabel(g, (l2 + span, l2))
              for l2 in range(-max_entry - max_span, max_entry + 1) for span in range(max_span + 1)]
    return [(tau, lab) for tau in itertools.product(rng, repeat=2) for lab in labels]
