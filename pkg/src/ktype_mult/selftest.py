"""The self-test corpus: every comparison and invariant, split into independent tasks.

Tasks are fixed independently of the worker count and results are reduced in
task order, so the report is identical for any ``jobs`` setting.
"""
from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import corpus
from .compactrep import CompactGroup, Eigenvalues, IrrepLabel, o_character_on_element, weyl_character
from .errors import KTypeError, ResidualAbsFactor
from .finitemult import ClassDatum, Cyclotomic, FiniteGroupData, load, m_geom_average, m_geom_classes
from .geommult import enumerate_support, geom_multiplicity, geom_multiplicity_complex, so_from_o
from .glstd import (
    DiscreteVirtual,
    PrincipalSeries,
    StandardModule,
    integrand_term,
    phi,
    x_m_classes,
)
from .oracle import multiplicity, multiplicity_so, weight_multiplicity

CHUNK = 64
FINITE_TRIALS = 1000
FINITE_FIXTURES = (
    "s3_s2", "d4_s4_std_chi0", "d4_s4_std_chi1", "d4_s4_std_chi2", "d4_s4_std_chi3",
    "c4_plane_chi0", "c4_plane_chi1", "c4_plane_chi2", "c4_plane_chi3",
)


@dataclass
class Tally:
    name: str
    passed: int = 0
    total: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, what: str = "") -> None:
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 5:
            self.failures.append(what)

    def merge(self, other: "Tally") -> None:
        self.passed += other.passed
        self.total += other.total
        self.failures.extend(other.failures[: 5 - len(self.failures)])

    @property
    def ok(self) -> bool:
        return self.passed == self.total


# --- GL(2) ---------------------------------------------------------------------------

def _o2_value(omega: IrrepLabel, n_plus: int, n_minus: int) -> int:
    return int(o_character_on_element(omega, Eigenvalues(n_plus, n_minus)).constant_term())


def induced_gl2_formula(ps: PrincipalSeries, omega: IrrepLabel) -> Fraction:
    """Frobenius reciprocity over O(1) x O(1) for Ind(chi1 x chi2), as a four-term average."""
    c1, c2 = ps.chi1, ps.chi2
    total = (c1.at_sign(1) * c2.at_sign(1) * _o2_value(omega, 2, 0)
             + c1.at_sign(-1) * c2.at_sign(-1) * _o2_value(omega, 0, 2)
             + (c1.at_sign(1) * c2.at_sign(-1) + c1.at_sign(-1) * c2.at_sign(1)) * _o2_value(omega, 1, 1))
    return Fraction(total, 4)


def gl2_closed_form(block, omega: IrrepLabel) -> Fraction:
    """[c(I) th(I) + c(-I) th(-I) + 2 th_pi(r) th(r)] / 4 + (1/2) int_SO(2) th_pi th,
    with r = diag(1, -1), from plain traces."""
    if isinstance(block, DiscreteVirtual):
        return gl2_closed_form(block.principal, omega) - gl2_closed_form(block.fd, omega)
    th_r = _o2_value(omega, 1, 1)
    if isinstance(block, PrincipalSeries):
        c1, c2 = block.chi1, block.chi2
        theta_r = Fraction(c1.at_sign(1) * c2.at_sign(-1) + c1.at_sign(-1) * c2.at_sign(1), 2)
        central = (c1.at_sign(1) * c2.at_sign(1) * _o2_value(omega, 2, 0)
                   + c1.at_sign(-1) * c2.at_sign(-1) * _o2_value(omega, 0, 2))
        # the character of an induced representation vanishes on the compact torus
        return (central + 2 * theta_r * th_r) / 4
    theta_r = block.trace_split(1, -1)
    rot = block.rotation_character(0, 1)
    elliptic = rot.dot(o_character_on_element(omega, Eigenvalues(0, 0, (0,), 1)))
    return Fraction(2 * theta_r * th_r, 4) + elliptic / 2


def gl2_corpus() -> tuple[list, list[IrrepLabel]]:
    blocks = corpus.principal_series() + corpus.finite_dims(3) + corpus.discrete_virtuals(3)
    return blocks, corpus.o_types(2, 4)


def check_gl2() -> list[Tally]:
    oracle_vs_geom = Tally("gl2-oracle-vs-geom")
    closed = Tally("gl2-closed-form")
    induced = Tally("gl2-induced-formula")
    blocks, labels = gl2_corpus()
    for b in blocks:
        for lab in labels:
            g = geom_multiplicity(b, lab).value
            m = multiplicity(b, lab)
            oracle_vs_geom.record(g == m, f"{b} {lab}: oracle {m} geom {g}")
            cf = gl2_closed_form(b, lab)
            closed.record(cf == g, f"{b} {lab}: closed form {cf} geom {g}")
            if isinstance(b, PrincipalSeries):
                f = induced_gl2_formula(b, lab)
                induced.record(f == g, f"{b} {lab}: formula {f} geom {g}")
    return [oracle_vs_geom, closed, induced]


# --- oracle against the geometric side -----------------------------------------

def _chunk(n: int, i: int) -> list[StandardModule]:
    return corpus.standard_modules(n)[i * CHUNK:(i + 1) * CHUNK]


def n_chunks(n: int) -> int:
    return -(-len(corpus.standard_modules(n)) // CHUNK)


def check_o_types(n: int, i: int) -> list[Tally]:
    t = Tally(f"O-types n={n}")
    integral = Tally("integrality")
    cancel = Tally("abs-cancellation")
    for mod in _chunk(n, i):
        for x in _support_elements(n):
            try:
                integrand_term(mod, x)
                cancel.record(True)
            except ResidualAbsFactor as exc:
                cancel.record(False, f"{mod} at {x}: {exc}")
        for lab in corpus.o_types(n):
            try:
                g = geom_multiplicity(mod, lab).value
            except KTypeError as exc:
                integral.record(False, f"{mod} {lab}: {type(exc).__name__} {exc}")
                t.record(False, f"{mod} {lab}: {exc}")
                continue
            integral.record(g.denominator == 1 and g >= 0, f"{mod} {lab}: {g}")
            m = multiplicity(mod, lab)
            t.record(g == m, f"{mod} {lab}: oracle {m} geom {g}")
    return [t, integral, cancel]


def check_so_types(n: int, i: int) -> list[Tally]:
    t = Tally(f"SO-types n={n}")
    for mod in _chunk(n, i):
        for lab in corpus.so_types(n):
            try:
                direct = geom_multiplicity(mod, lab).value
                via_o = so_from_o(mod, lab)
            except KTypeError as exc:
                t.record(False, f"{mod} {lab}: {exc}")
                continue
            m = multiplicity_so(mod, lab)
            t.record(direct == via_o == m, f"{mod} {lab}: direct {direct} via O {via_o} oracle {m}")
    return [t]


# --- structure -------------------------------------------------------------------------

def _support_elements(n: int):
    for variant in ("SO", "O"):
        for idx in enumerate_support(n, variant):
            yield idx.element()


def check_stages() -> list[Tally]:
    """Inducing already-induced data in stages agrees with inducing the flat block list."""
    t = Tally("induction-in-stages n=4")
    signs = corpus.SIGNS
    cases = []
    for a, b, c, d in itertools.product(signs, repeat=4):
        cases.append((StandardModule((a, b, c, d)), [
            StandardModule((StandardModule((a, b)), StandardModule((c, d)))),
            StandardModule((PrincipalSeries(a, b), PrincipalSeries(c, d))),
            StandardModule((a, StandardModule((b, c, d)))),
            StandardModule((StandardModule((a, b, c)), d)),
        ]))
    for a, d in itertools.product(signs, repeat=2):
        for blk in corpus.gl2_blocks(2):
            cases.append((StandardModule((a, blk, d)), [
                StandardModule((StandardModule((a, blk)), d)),
                StandardModule((a, StandardModule((blk, d)))),
            ]))
    for flat, staged in cases:
        for x in _support_elements(flat.n):
            ref = dict(phi(flat, x))
            for s in staged:
                t.record(dict(phi(s, x)) == ref, f"{s} at {x}")
    return [t]


def check_vanishing(max_n: int) -> list[Tally]:
    t = Tally("vanishing off X_M")
    for n in range(1, min(max_n, 4) + 1):
        for mod in corpus.standard_modules(n, 1):
            for x in _support_elements(n):
                if not x_m_classes(x, mod.shape):
                    t.record(not phi(mod, x), f"{mod} at {x}")
    return [t]


def check_orthogonality() -> list[Tally]:
    from .compactrep import all_labels, positive_root_density, weyl_order

    t = Tally("weyl-orthogonality")
    for fam, n, top in (("SO", 2, 3), ("SO", 3, 3), ("SO", 4, 2), ("SO", 5, 2), ("SU", 2, 3), ("U", 2, 2)):
        g = CompactGroup(fam, n)
        labs = all_labels(g, top)
        dens = positive_root_density(g)
        chars = {lab: weyl_character(lab) for lab in labs}
        for a in labs:
            for b in labs:
                v = (chars[a] * dens).dot(chars[b]) / weyl_order(g)
                t.record(v == (a == b), f"<{a},{b}> = {v}")
    return [t]


# --- complex and finite ------------------------------------------------------------

def check_complex() -> list[Tally]:
    t = Tally("complex-case")
    for tau, lab in corpus.su2_cases() + corpus.u2_cases():
        g = geom_multiplicity_complex(lab.group, tau, lab)
        w = weight_multiplicity(lab, tau)
        t.record(g == w, f"{lab} tau={tau}: geom {g} weight {w}")
    return [t]


def random_class_data(rng: random.Random) -> FiniteGroupData:
    order = rng.choice([2, 3, 4, 6, 8, 10, 12, 16, 20, 24, 60])
    divisors = [d for d in range(1, order + 1) if order % d == 0]
    sizes = [1]
    while sum(sizes) < order:
        sizes.append(rng.choice([d for d in divisors if d <= order - sum(sizes)]))

    field_order = rng.choice([1, 2, 3, 4, 6, 8, 12])

    def value():
        return Cyclotomic(field_order, tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(field_order)))

    return FiniteGroupData(order, tuple(ClassDatum(s, order // s, value(), value()) for s in sizes))


def check_finite(seed: int = 20240601) -> list[Tally]:
    forms = Tally("finite-two-forms")
    rng = random.Random(seed)
    for _ in range(FINITE_TRIALS):
        d = random_class_data(rng)
        forms.record(m_geom_average(d) == m_geom_classes(d), str(d))
    fixtures = Tally("finite-fixtures")
    data_dir = resources.files("ktype_mult") / "data"
    for name in FINITE_FIXTURES:
        path = data_dir / f"{name}.json"
        expected = json.loads(path.read_text())["hom_dim"]
        with resources.as_file(path) as p:
            d = load(p)
        a, c = m_geom_average(d), m_geom_classes(d)
        fixtures.record(a == c == expected, f"{name}: {a} {c} expected {expected}")
    return [forms, fixtures]


# --- driver --------------------------------------------------------------------------------

def tasks(max_n: int) -> list[tuple]:
    out: list[tuple] = [("gl2",), ("orthogonality",), ("complex",), ("finite",), ("vanishing", max_n)]
    if max_n >= 4:
        out.append(("stages",))
    for n in range(1, max_n + 1):
        out += [("O-types", n, i) for i in range(n_chunks(n))]
    for n in range(1, max_n + 1):
        out += [("SO-types", n, i) for i in range(n_chunks(n))]
    return out


_DISPATCH = {
    "gl2": check_gl2,
    "orthogonality": check_orthogonality,
    "complex": check_complex,
    "finite": check_finite,
    "vanishing": check_vanishing,
    "stages": check_stages,
    "O-types": check_o_types,
    "SO-types": check_so_types,
}


def run_task(task: tuple) -> list[Tally]:
    return _DISPATCH[task[0]](*task[1:])


def run(max_n: int, jobs: int = 1) -> list[Tally]:
    todo = tasks(max_n)
    if jobs <= 1:
        results = [run_task(t) for t in todo]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_task, todo))
    merged: dict[str, Tally] = {}
    for group in results:
        for tally in group:
            if tally.name in merged:
                merged[tally.name].merge(tally)
            else:
                merged[tally.name] = tally
    return list(merged.values())
