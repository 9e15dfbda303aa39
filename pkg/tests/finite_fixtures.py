"""Brute-force class data and Hom-dimensions for small permutation groups.

Run as a script to regenerate the JSON fixtures shipped in ktype_mult/data.
"""
from __future__ import annotations

import itertools
import json
import sys
from pathlib import Path

import sympy

DATA = Path(__file__).resolve().parents[1] / "src" / "ktype_mult" / "data"


def compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def generate(gens):
    n = len(gens[0])
    group = {tuple(range(n))}
    frontier = list(group)
    while frontier:
        g = frontier.pop()
        for s in gens:
            h = compose(s, g)
            if h not in group:
                group.add(h)
                frontier.append(h)
    return sorted(group)


def conjugacy_classes(group):
    seen, classes = set(), []
    for g in group:
        if g in seen:
            continue
        cls = sorted({compose(compose(h, g), inverse(h)) for h in group})
        seen.update(cls)
        classes.append(cls)
    return classes


def perm_matrix(p):
    n = len(p)
    m = sympy.zeros(n, n)
    for i in range(n):
        m[p[i], i] = 1
    return m


def standard_matrix(p):
    """Matrix of p on the sum-zero subspace, basis e_i - e_{n-1}."""
    n = len(p)
    b = sympy.zeros(n, n - 1)
    for i in range(n - 1):
        b[i, i] = 1
        b[n - 1, i] = -1
    return (b.T * b).inv() * b.T * perm_matrix(p) * b


def character_from_generators(group, gens, values):
    """A 1-dim character given by its values on generators (checked for consistency)."""
    ident = tuple(range(len(gens[0])))
    val = {ident: sympy.Integer(1)}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for s, v in zip(gens, values):
            h = compose(s, g)
            w = sympy.nsimplify(v * val[g])
            if h in val:
                if sympy.simplify(val[h] - w) != 0:
                    raise ValueError("inconsistent character values")
            else:
                val[h] = w
                frontier.append(h)
    return val


def hom_dim(group, rep, chi) -> int:
    """dim {v : rep(h) v = chi(h) v for all h in the group}."""
    d = rep(group[0]).shape[0]
    stacked = sympy.Matrix.vstack(*[rep(h) - chi[h] * sympy.eye(d) for h in group])
    return d - stacked.rank(simplify=True)


def class_data(group, rep, chi) -> dict:
    classes = conjugacy_classes(group)
    out = []
    for cls in classes:
        g = cls[0]
        theta = sympy.nsimplify(rep(g).trace())
        c = sympy.nsimplify(chi[g])
        out.append({
            "size": len(cls),
            "centralizer": len(group) // len(cls),
            "theta": [_q(sympy.re(theta)), _q(sympy.im(theta))],
            "chi": [_q(sympy.re(c)), _q(sympy.im(c))],
        })
    return {"order_H": len(group), "classes": out}


def _q(x):
    x = sympy.Rational(x)
    return int(x) if x.q == 1 else f"{x.p}/{x.q}"


def fixtures() -> dict[str, tuple[dict, int]]:
    """name -> (class data, brute-force Hom-dimension)."""
    out = {}
    s2 = generate([(1, 0, 2)])
    triv = character_from_generators(s2, [(1, 0, 2)], [1])
    out["s3_s2"] = (class_data(s2, standard_matrix, triv), hom_dim(s2, standard_matrix, triv))

    r, s = (1, 2, 3, 0), (2, 1, 0, 3)
    d4 = generate([r, s])
    for i, (a, b) in enumerate(itertools.product((1, -1), repeat=2)):
        chi = character_from_generators(d4, [r, s], [a, b])
        out[f"d4_s4_std_chi{i}"] = (class_data(d4, standard_matrix, chi), hom_dim(d4, standard_matrix, chi))

    # C4 inside D4 acting on the plane, with complex characters
    c4 = generate([r])
    rot = {r: sympy.Matrix([[0, -1], [1, 0]])}

    def plane(g):
        m = sympy.eye(2)
        h = tuple(range(4))
        while h != g:
            h = compose(r, h)
            m = rot[r] * m
        return m

    for k in range(4):
        chi = character_from_generators(c4, [r], [sympy.I ** k])
        out[f"c4_plane_chi{k}"] = (class_data(c4, plane, chi), hom_dim(c4, plane, chi))
    return out


def main() -> int:
    DATA.mkdir(parents=True, exist_ok=True)
    for name, (data, dim) in fixtures().items():
        with open(DATA / f"{name}.json", "w") as fh:
            json.dump(dict(data, hom_dim=dim), fh, indent=1)
            fh.write("\n")
        print(name, dim)
    return 0


if __name__ == "__main__":
    sys.exit(main())
