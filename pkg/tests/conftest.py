import math

import numpy as np
import pytest

from tubecat.catalog import BUILTIN_NAMES, find


@pytest.fixture(scope="session")
def catalog():
    """name -> loaded spec, shared across the whole run (loads validate)."""
    return {name: find(name) for name in BUILTIN_NAMES}


def pointed_category(n: int, k: int = 0, name: str | None = None) -> dict:
    """Category-JSON dict for Vec[Z/n] with the standard 3-cocycle at level k.

    omega(a,b,c) = exp(2 pi i k a floor((b+c)/n) / n); k = 0 is the trivial
    class.  Handy for tests that need complex F data without a data file.
    """
    labels = [str(x) for x in range(n)]
    doc = {
        "name": name or f"Vec[Z/{n}] k={k}",
        "labels": labels,
        "unit": "0",
        "dual": {str(x): str((-x) % n) for x in range(n)},
        "N": [[str(x), str(y), str((x + y) % n), 1]
              for x in range(n) for y in range(n)],
        "convention": "isometry",
        "F": [],
    }
    for a in range(1, n):
        for b in range(1, n):
            for c in range(1, n):
                w = math.e ** (2j * math.pi * k * a * ((b + c) // n) / n)
                doc["F"].append({
                    "abcd": [str(a), str(b), str(c), str((a + b + c) % n)],
                    "e": str((a + b) % n), "f": str((b + c) % n),
                    "re": w.real, "im": w.imag,
                })
    return doc
