#!/usr/bin/env python3
"""Regenerate the closed-form catalog files (everything except rep_s3).

Pointed categories carry a 3-cocycle as their only F data; Fibonacci and
Ising use the standard multiplicity-free solutions (Ising in the
Tambara-Yamagami gauge with kappa = +1).  Values are written as Python float
repr, which round-trips exactly.

Usage: python scripts/make_catalog.py [outdir]   (default src/tubecat/data)
"""
import json
import math
import sys
from pathlib import Path


def fent(abcd, e, f, val):
    ent = {"abcd": list(abcd), "e": e, "f": f,
           "re": float(val.real if isinstance(val, complex) else val),
           "im": float(val.imag if isinstance(val, complex) else 0.0)}
    return ent


def pointed(name, n, cocycle, dual):
    """Vec[Z/n] with a given 3-cocycle (labels are the group elements)."""
    labels = [str(k) for k in range(n)]
    N = [[str(x), str(y), str((x + y) % n), 1] for x in range(n) for y in range(n)]
    F = []
    for a in range(1, n):
        for b in range(1, n):
            for c in range(1, n):
                F.append(fent([str(a), str(b), str(c), str((a + b + c) % n)],
                              str((a + b) % n), str((b + c) % n), cocycle(a, b, c)))
    return {
        "name": name,
        "labels": labels,
        "unit": "0",
        "dual": {str(k): str(dual(k)) for k in range(n)},
        "N": N,
        "dims": {lab: 1.0 for lab in labels},
        "F": F,
        "convention": "isometry",
    }


def fibonacci():
    phi = (1 + math.sqrt(5)) / 2
    F = [fent(["tau", "tau", "tau", "1"], "tau", "tau", 1.0),
         fent(["tau", "tau", "tau", "tau"], "1", "1", 1 / phi),
         fent(["tau", "tau", "tau", "tau"], "1", "tau", 1 / math.sqrt(phi)),
         fent(["tau", "tau", "tau", "tau"], "tau", "1", 1 / math.sqrt(phi)),
         fent(["tau", "tau", "tau", "tau"], "tau", "tau", -1 / phi)]
    return {
        "name": "Fibonacci",
        "labels": ["1", "tau"],
        "unit": "1",
        "dual": {"1": "1", "tau": "tau"},
        "N": [["1", "1", "1", 1], ["1", "tau", "tau", 1], ["tau", "1", "tau", 1],
              ["tau", "tau", "1", 1], ["tau", "tau", "tau", 1]],
        "dims": {"1": 1.0, "tau": phi},
        "F": F,
        "convention": "isometry",
    }


def ising():
    s = 1 / math.sqrt(2)
    F = [
        # sigma sigma sigma, root sigma: 2x2 Hadamard-type block
        fent(["sigma", "sigma", "sigma", "sigma"], "1", "1", s),
        fent(["sigma", "sigma", "sigma", "sigma"], "1", "psi", s),
        fent(["sigma", "sigma", "sigma", "sigma"], "psi", "1", s),
        fent(["sigma", "sigma", "sigma", "sigma"], "psi", "psi", -s),
        # scalar blocks; the two -1 entries are the usual fermionic signs
        fent(["sigma", "sigma", "psi", "psi"], "1", "sigma", 1.0),
        fent(["sigma", "sigma", "psi", "1"], "psi", "sigma", 1.0),
        fent(["sigma", "psi", "sigma", "1"], "sigma", "sigma", 1.0),
        fent(["sigma", "psi", "sigma", "psi"], "sigma", "sigma", -1.0),
        fent(["psi", "sigma", "sigma", "1"], "sigma", "psi", 1.0),
        fent(["psi", "sigma", "sigma", "psi"], "sigma", "1", 1.0),
        fent(["sigma", "psi", "psi", "sigma"], "sigma", "1", 1.0),
        fent(["psi", "psi", "sigma", "sigma"], "1", "sigma", 1.0),
        fent(["psi", "sigma", "psi", "sigma"], "sigma", "sigma", -1.0),
        fent(["psi", "psi", "psi", "psi"], "1", "1", 1.0),
    ]
    return {
        "name": "Ising",
        "labels": ["1", "sigma", "psi"],
        "unit": "1",
        "dual": {"1": "1", "sigma": "sigma", "psi": "psi"},
        "N": [["1", "1", "1", 1], ["1", "sigma", "sigma", 1], ["sigma", "1", "sigma", 1],
              ["1", "psi", "psi", 1], ["psi", "1", "psi", 1],
              ["sigma", "sigma", "1", 1], ["sigma", "sigma", "psi", 1],
              ["sigma", "psi", "sigma", 1], ["psi", "sigma", "sigma", 1],
              ["psi", "psi", "1", 1]],
        "dims": {"1": 1.0, "sigma": math.sqrt(2), "psi": 1.0},
        "F": F,
        "convention": "isometry",
    }


def trivial():
    return {
        "name": "Vec",
        "labels": ["1"],
        "unit": "1",
        "dual": {"1": "1"},
        "N": [["1", "1", "1", 1]],
        "dims": {"1": 1.0},
        "F": [],
        "convention": "isometry",
    }


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else \
        Path(__file__).resolve().parent.parent / "src" / "tubecat" / "data"
    outdir.mkdir(parents=True, exist_ok=True)
    files = {
        "vec.json": trivial(),
        "vec_z2.json": pointed("Vec[Z/2]", 2, lambda a, b, c: 1.0, lambda k: k),
        "vec_z2_twisted.json": pointed("Vec[Z/2] twisted", 2,
                                       lambda a, b, c: (-1.0) ** (a * b * c), lambda k: k),
        "vec_z3.json": pointed("Vec[Z/3]", 3, lambda a, b, c: 1.0,
                               lambda k: (-k) % 3),
        "fibonacci.json": fibonacci(),
        "ising.json": ising(),
    }
    for fname, doc in files.items():
        path = outdir / fname
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
