#!/usr/bin/env python3
"""Derive gauge-fixed F-symbols for Rep(S3) from explicit irrep matrices.

The three irreps (trivial, sign, standard 2-dim) are realized as real
orthogonal matrices.  Trivalent vertices are orthonormal intertwiners
V_c -> V_a (x) V_b obtained by group-averaging and fixed to a deterministic
gauge (first significant component positive).  F blocks are then overlap
matrices between the two bracketings of V_d -> V_a (x) V_b (x) V_c; unitarity
and the pentagon identity are asserted before anything is written.

Usage: python scripts/derive_rep_s3.py [outfile]
"""
import itertools
import json
import sys
from pathlib import Path

import numpy as np

PERMS = [p for p in itertools.permutations(range(3))]


def compose(p, q):
    # (p*q)(i) = p(q(i))
    return tuple(p[q[i]] for i in range(3))


def perm_sign(p):
    s = 1
    for i in range(3):
        for j in range(i + 1, 3):
            if p[i] > p[j]:
                s = -s
    return s


def perm_matrix(p):
    m = np.zeros((3, 3))
    for j in range(3):
        m[p[j], j] = 1.0
    return m


# orthonormal basis of the sum-zero plane in R^3
_B = np.array([[1 / np.sqrt(2), 1 / np.sqrt(6)],
               [-1 / np.sqrt(2), 1 / np.sqrt(6)],
               [0.0, -2 / np.sqrt(6)]])

IRREPS = {
    "triv": lambda p: np.ones((1, 1)),
    "sgn": lambda p: np.array([[float(perm_sign(p))]]),
    "std": lambda p: _B.T @ perm_matrix(p) @ _B,
}
LABELS = ["triv", "sgn", "std"]
DIMS = {"triv": 1, "sgn": 1, "std": 2}


def sanity():
    for name, rho in IRREPS.items():
        for p in PERMS:
            for q in PERMS:
                assert np.allclose(rho(compose(p, q)), rho(p) @ rho(q)), name
            assert np.allclose(rho(p) @ rho(p).T, np.eye(DIMS[name])), name
    # character orthogonality as an independent cross-check
    for x in LABELS:
        for y in LABELS:
            inner = sum(np.trace(IRREPS[x](p)) * np.trace(IRREPS[y](p))
                        for p in PERMS) / 6
            assert np.isclose(inner, 1.0 if x == y else 0.0)


def mult(a, b, c):
    """dim Hom(c, a (x) b) by character inner product."""
    tot = sum(np.trace(IRREPS[a](p)) * np.trace(IRREPS[b](p)) * np.trace(IRREPS[c](p))
              for p in PERMS) / 6
    n = int(round(float(tot)))
    assert abs(tot - n) < 1e-12
    return n


def vertex(a, b, c):
    """Orthonormal intertwiner V_c -> V_a (x) V_b, deterministic gauge."""
    da, db, dc = DIMS[a], DIMS[b], DIMS[c]
    if mult(a, b, c) == 0:
        return None
    for k in range(da * db * dc):
        seed = np.zeros((da * db, dc))
        seed[k % (da * db), k // (da * db)] = 1.0
        t = np.zeros((da * db, dc))
        for p in PERMS:
            t += np.kron(IRREPS[a](p), IRREPS[b](p)) @ seed @ IRREPS[c](p).T
        t /= 6
        nrm = np.sqrt(np.trace(t.T @ t) / dc)
        if nrm > 1e-8:
            t /= nrm
            # sign gauge: first component of magnitude > 0.1 made positive
            flat = t.ravel()
            lead = flat[np.argmax(np.abs(flat) > 0.1)]
            if lead < 0:
                t = -t
            assert np.allclose(t.T @ t, np.eye(dc)), (a, b, c)
            return t
    raise RuntimeError(f"no intertwiner found for {(a, b, c)}")


VERTS = {(a, b, c): vertex(a, b, c)
         for a in LABELS for b in LABELS for c in LABELS}


def left_tree(a, b, c, d, e):
    return np.kron(VERTS[(a, b, e)], np.eye(DIMS[c])) @ VERTS[(e, c, d)]


def right_tree(a, b, c, d, f):
    return np.kron(np.eye(DIMS[a]), VERTS[(b, c, f)]) @ VERTS[(a, f, d)]


def f_block(a, b, c, d):
    rows = [e for e in LABELS if VERTS[(a, b, e)] is not None
            and VERTS[(e, c, d)] is not None]
    cols = [f for f in LABELS if VERTS[(b, c, f)] is not None
            and VERTS[(a, f, d)] is not None]
    blk = np.zeros((len(rows), len(cols)))
    for i, e in enumerate(rows):
        L = left_tree(a, b, c, d, e)
        for j, f in enumerate(cols):
            R = right_tree(a, b, c, d, f)
            blk[i, j] = np.trace(R.T @ L) / DIMS[d]
    if rows:
        assert np.allclose(blk @ blk.T, np.eye(len(rows)), atol=1e-12), (a, b, c, d)
    return rows, cols, blk


def check_pentagon(blocks):
    """Two rebracketing routes on every 5-letter instance must agree."""
    def F(a, b, c, d):
        return blocks[(a, b, c, d)]

    worst = 0.0
    for a, b, c, d in itertools.product(LABELS, repeat=4):
        for root in LABELS:
            # route 1: ((ab)c)d -> (ab)(cd) -> a(b(cd))
            # route 2: ((ab)c)d -> (a(bc))d -> a((bc)d) -> a(b(cd))
            for e1 in LABELS:
                if mult(a, b, e1) == 0:
                    continue
                for e2 in LABELS:
                    if mult(e1, c, e2) == 0 or mult(e2, d, root) == 0:
                        continue
                    for f in LABELS:
                        for g in LABELS:
                            lhs = 0.0
                            r1, c1, b1 = F(e1, c, d, root)
                            if f in c1 and (e2 in r1):
                                r2, c2, b2 = F(a, b, f, root)
                                if g in c2 and e1 in r2:
                                    lhs = b1[r1.index(e2), c1.index(f)] * \
                                          b2[r2.index(e1), c2.index(g)]
                            rhs = 0.0
                            for h in LABELS:
                                r3, c3, b3 = F(a, b, c, e2)
                                r4, c4, b4 = F(a, h, d, root)
                                r5, c5, b5 = F(b, c, d, g)
                                if (e1 in r3 and h in c3 and e2 in r4 and g in c4
                                        and h in r5 and f in c5):
                                    rhs += (b3[r3.index(e1), c3.index(h)]
                                            * b4[r4.index(e2), c4.index(g)]
                                            * b5[r5.index(h), c5.index(f)])
                            worst = max(worst, abs(lhs - rhs))
    assert worst < 1e-12, worst
    return worst


def main():
    sanity()
    blocks = {key: f_block(*key) for key in itertools.product(LABELS, repeat=4)}
    pent = check_pentagon(blocks)

    N = []
    for a in LABELS:
        for b in LABELS:
            for c in LABELS:
                m = mult(a, b, c)
                if m:
                    N.append([a, b, c, m])
    F = []
    for (a, b, c, d), (rows, cols, blk) in blocks.items():
        if "triv" in (a, b, c) or not rows:
            continue
        for i, e in enumerate(rows):
            for j, f in enumerate(cols):
                v = blk[i, j]
                if abs(v) > 1e-13:
                    F.append({"abcd": [a, b, c, d], "e": e, "f": f,
                              "re": float(v), "im": 0.0})
    doc = {
        "name": "Rep(S3)",
        "labels": LABELS,
        "unit": "triv",
        "dual": {lab: lab for lab in LABELS},
        "N": N,
        "dims": {lab: float(DIMS[lab]) for lab in LABELS},
        "F": F,
        "convention": "isometry",
        "metadata": {"derivation": "scripts/derive_rep_s3.py",
                     "pentagon_residual": pent},
    }
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else \
        Path(__file__).resolve().parent.parent / "src" / "tubecat" / "data" / "rep_s3.json"
    with open(out, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    print("wrote", out, "pentagon residual", pent)


if __name__ == "__main__":
    main()
