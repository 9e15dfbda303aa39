"""Command-line front end: ``mult <subcommand> ...``.

Exit codes: 0 success, 1 discrepancy or internal arithmetic failure,
2 malformed input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .descriptors import (
    DescriptorError,
    GroupSpec,
    load_file,
    parse_group,
    parse_ktype,
    parse_rep,
    parse_tau,
)
from .errors import BadClassData, KTypeError
from .finitemult import FiniteGroupData, m_geom_average, m_geom_classes
from .geommult import geom_multiplicity, geom_multiplicity_complex
from .oracle import branch_o_to_oo, multiplicity, multiplicity_so, weight_multiplicity

SCHEMA = "ktype-mult/1"
COLUMNS = ("rep-id", "ktype-id", "m_oracle", "m_geom", "equal")


def max_n() -> int:
    return int(os.environ.get("KTYPE_MULT_MAX_N", "6"))


# --- output -------------------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


def render(kind: str, columns, rows: list[list[str]], fmt: str, meta: dict) -> str:
    header = f"# {SCHEMA} {kind} " + " ".join(f"{k}={v}" for k, v in meta.items())
    if fmt == "json":
        doc = {"schema": SCHEMA, "kind": kind, **meta, "columns": list(columns),
               "rows": [dict(zip(columns, r)) for r in rows]}
        return json.dumps(doc, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return header.rstrip() + "\n" + buf.getvalue()
    widths = [max(len(str(c)), *(len(r[i]) for r in rows)) if rows else len(str(c))
              for i, c in enumerate(columns)]
    lines = [header.rstrip(), "  ".join(str(c).ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def emit(text: str, output: str | None) -> None:
    if output and output != "-":
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# --- multiplicity jobs --------------------------------------------------------------

def _evaluate(task: tuple) -> tuple[str, str, str]:
    """(mode, group, rep, label) -> formatted (m_oracle, m_geom, equal)."""
    mode, group, rep, label = task
    try:
        if group.is_complex:
            orc = weight_multiplicity(label, rep) if mode != "geom" else None
            geo = geom_multiplicity_complex(label.group, rep, label) if mode != "oracle" else None
        else:
            orc = None
            if mode != "geom":
                orc = multiplicity(rep, label) if label.group.family == "O" else multiplicity_so(rep, label)
            geo = geom_multiplicity(rep, label).value if mode != "oracle" else None
    except KTypeError as exc:
        return ("error", f"{type(exc).__name__}: {exc}", "no")
    equal = "-" if orc is None or geo is None else ("yes" if orc == geo else "no")
    return (_fmt(orc), _fmt(geo), equal)


def _load_reps(args, group: GroupSpec | None):
    """Collect (group, [(rep-id, rep)], [ktype strings]) from --job and --rep."""
    reps_raw: list[tuple[str, dict, str]] = []
    ktypes: list[str] = []
    if args.job:
        doc = load_file(args.job)
        if group is None and "group" in doc:
            group = parse_group(doc["group"], f"{args.job}: group")
        kt = doc.get("ktypes", [])
        if not isinstance(kt, list):
            raise DescriptorError(f"{args.job}: ktypes", "expected a list")
        ktypes += [str(k) for k in kt]
        reps = doc.get("reps", [])
        if not isinstance(reps, list):
            raise DescriptorError(f"{args.job}: reps", "expected a list")
        for i, r in enumerate(reps):
            reps_raw.append((str(r.get("id", f"rep{i}")) if isinstance(r, dict) else f"rep{i}", r,
                             f"{args.job}: reps[{i}]"))
    for path in args.rep or []:
        doc = load_file(path)
        rid = str(doc.get("id", Path(path).stem)) if isinstance(doc, dict) else Path(path).stem
        reps_raw.append((rid, doc, f"{path}: rep"))
    ktypes += args.ktype or []
    if group is None:
        raise DescriptorError("group", "no group given (use --group or a job file)")
    if not reps_raw:
        raise DescriptorError("rep", "no representation given (use --rep or a job file)")
    if not ktypes:
        raise DescriptorError("ktype", "no K-type given (use --ktype or a job file)")
    if group.n > max_n():
        raise DescriptorError("group", f"n = {group.n} exceeds KTYPE_MULT_MAX_N = {max_n()}")
    reps = []
    for rid, d, field in reps_raw:
        if group.is_complex:
            reps.append((rid, parse_tau(d, group.n, group.family, field)))
        else:
            rep = parse_rep(d, field)
            if rep.n != group.n:
                raise DescriptorError(field, f"representation of GL({rep.n}) in a GL({group.n}) job")
            reps.append((rid, rep))
    labels = []
    allowed = ({"U"} if group.family == "GLC" else {"SU"}) if group.is_complex else {"SO", "O"}
    for i, k in enumerate(ktypes):
        lab = parse_ktype(k, group.n, f"ktype[{i}]")
        if lab.group.family not in allowed:
            raise DescriptorError(f"ktype[{i}]", f"{lab.group.family} types do not belong to {group}")
        labels.append(lab)
    return group, reps, labels


def cmd_multiplicity(args) -> int:
    group = parse_group(args.group) if args.group else None
    group, reps, labels = _load_reps(args, group)
    tasks = [(args.mode, group, rep, lab) for _, rep in reps for lab in labels]
    ids = [(rid, lab.descriptor()) for rid, _ in reps for lab in labels]
    results = _map(_evaluate, tasks, args.jobs)
    rows = [[rid, kid, *res] for (rid, kid), res in zip(ids, results)]
    emit(render(args.mode, COLUMNS, rows, args.format, {"group": str(group)}), args.output)
    return 1 if any(r[4] == "no" for r in rows) else 0


def _map(fn, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


# --- branch / finite / selftest -----------------------------------------------------

def cmd_branch(args) -> int:
    if args.n > max_n():
        raise DescriptorError("n", f"n = {args.n} exceeds KTYPE_MULT_MAX_N = {max_n()}")
    label = parse_ktype(args.ktype, args.n, "ktype")
    if label.group.family != "O":
        raise DescriptorError("ktype", "branching is defined for O(n) types")
    try:
        split = tuple(int(x) for x in args.split.split(","))
    except ValueError:
        raise DescriptorError("split", f"expected n1,n2, got {args.split!r}") from None
    if len(split) != 2 or min(split) < 1 or sum(split) != args.n:
        raise DescriptorError("split", f"{args.split!r} is not a splitting of {args.n} into two positive parts")
    rows = [[a.descriptor(), b.descriptor(), str(c)] for (a, b), c in branch_o_to_oo(label, split)]
    meta = {"ktype": label.descriptor(), "split": f"{split[0]},{split[1]}"}
    emit(render("branch", ("left", "right", "mult"), rows, args.format, meta), args.output)
    return 0


def cmd_finite(args) -> int:
    rows = []
    for path in args.files:
        doc = load_file(path)
        try:
            data = FiniteGroupData.from_dict(doc)
            a, c = m_geom_average(data), m_geom_classes(data)
        except BadClassData as exc:
            raise DescriptorError(path, str(exc)) from None
        rows.append([path, str(a), str(c), "yes" if a == c else "no"])
    emit(render("finite", ("file", "m_average", "m_classes", "equal"), rows, args.format, {}), args.output)
    return 1 if any(r[3] == "no" for r in rows) else 0


def cmd_selftest(args) -> int:
    from . import selftest

    top = args.max_n if args.max_n is not None else min(5, max_n())
    if top > max_n():
        raise DescriptorError("max-n", f"{top} exceeds KTYPE_MULT_MAX_N = {max_n()}")
    tallies = selftest.run(top, args.jobs)
    rows = [["PASS" if t.ok else "FAIL", t.name, str(t.passed), str(t.total)] for t in tallies]
    ok = all(t.ok for t in tallies)
    text = render("selftest", ("status", "check", "passed", "total"), rows, args.format, {"max_n": top})
    if args.format == "table":
        cases = sum(t.total for t in tallies)
        text += f"selftest: {'PASS' if ok else 'FAIL'} ({len(tallies)} checks, {cases} cases)\n"
        for t in tallies:
            for f in t.failures:
                text += f"  {t.name}: {f}\n"
    emit(text, args.output)
    return 0 if ok else 1


# --- parser ---------------------------------------------------------------------------

def _jobs(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("--jobs must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mult", description="Exact K-type multiplicities for GL_n(R) standard modules.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({SCHEMA})")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--jobs", type=_jobs, default=1, help="worker processes")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    for name, aliases, mode, text in (
        ("both", ["mult"], "both", "compare branching recursion and geometric formula"),
        ("geom", [], "geom", "geometric multiplicity only"),
        ("oracle", [], "oracle", "branching recursion only"),
    ):
        sp = sub.add_parser(name, aliases=aliases, parents=[common], help=text)
        sp.add_argument("--group", help="GL:n (real), GLC:n or SLC:n (complex)")
        sp.add_argument("--rep", action="append", help="representation descriptor file (JSON or TOML)")
        sp.add_argument("--job", help="job file with group, reps and ktypes")
        sp.add_argument("--ktype", action="append", help="K-type such as SO:[0], O:[1]+, U:[1,0]")
        sp.set_defaults(func=cmd_multiplicity, mode=mode)

    sp = sub.add_parser("branch", parents=[common], help="restrict an O(n)-type to O(n1) x O(n2)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ktype", required=True)
    sp.add_argument("--split", required=True, help="n1,n2")
    sp.set_defaults(func=cmd_branch)

    sp = sub.add_parser("finite", parents=[common], help="finite-group multiplicity from class data")
    sp.add_argument("files", nargs="+")
    sp.set_defaults(func=cmd_finite)

    sp = sub.add_parser("selftest", parents=[common], help="run the built-in comparison corpus")
    sp.add_argument("--max-n", type=int, default=None, help="largest GL(n) in the corpus (default 5)")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DescriptorError as exc:
        print(f"mult: input error: {exc}", file=sys.stderr)
        return 2
    except KTypeError as exc:
        print(f"mult: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
