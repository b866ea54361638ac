"""Block decomposition and center-object extraction.

Block sizes and twists are frozen from independent sources: the doubles of
Z/2, Z/3 and S3 admit a complete hand calculation (sectors are labeled by a
conjugacy class with a character of its centralizer; the twist is the
character value at the class), and the doubled Fibonacci / Ising data is
the standard anyon tables.  Underlying objects follow from decomposing the
class functions into irreducibles, e.g. functions on the transpositions of
S3 carry triv ⊕ std.  Everything here is seeded; two runs at the same seed
must agree byte for byte.
"""
import cmath
import math

import numpy as np
import pytest

from tubecat.center import (center_report, decompose_blocks,
                            extract_center_simples)
from tubecat.errors import ToleranceError
from tubecat.jsonutil import dumps_canonical
from tubecat.tube import LambdaObject, build_delta, build_tube_algebra

BLOCK_SIZES = {
    "vec": (1,),
    "vec_z2": (1, 1, 1, 1),
    "vec_z2_twisted": (1, 1, 1, 1),
    "vec_z3": (1,) * 9,
    "fibonacci": (1, 1, 1, 2),
    "ising": (1, 1, 1, 1, 1, 1, 1, 1, 2),
    "rep_s3": (1, 1, 1, 1, 1, 2, 2, 2),
}

W3 = cmath.exp(2j * math.pi / 3)
FIB = cmath.exp(4j * math.pi / 5)

# multisets of twists, rounded to 6 places for comparison
TWISTS = {
    "vec": [1],
    "vec_z2": [1, 1, 1, -1],
    "vec_z2_twisted": [1, 1, 1j, -1j],
    "vec_z3": [1] * 5 + [W3, W3, W3.conjugate(), W3.conjugate()],
    "fibonacci": [1, 1, FIB, FIB.conjugate()],
    "rep_s3": [1, 1, 1, 1, 1, -1, W3, W3.conjugate()],
}


def twist_key(t):
    return (round(t.real, 6), round(t.imag, 6))


@pytest.fixture(scope="module")
def reports(catalog):
    return {name: center_report(spec, seed=1) for name, spec in catalog.items()}


def test_frozen_block_sizes(reports):
    for name, expect in BLOCK_SIZES.items():
        got = tuple(sorted(b["size"] for b in reports[name]["blocks"]))
        assert got == tuple(sorted(expect)), name
        assert reports[name]["rank"] == len(expect), name


def test_frozen_twists(reports):
    for name, expect in TWISTS.items():
        got = sorted(twist_key(complex(*b["twist"]))
                     for b in reports[name]["blocks"])
        want = sorted(twist_key(complex(t)) for t in expect)
        assert got == want, name


def test_all_reports_pass(reports):
    for name, rep in reports.items():
        assert rep["pass"], name
        assert rep["tube_dim"] == sum(b["size"] ** 2 for b in rep["blocks"]), name


def test_toric_code_sectors(reports):
    rep = reports["vec_z2"]
    unders = sorted(tuple(sorted(b["underlying"].items())) for b in rep["blocks"])
    assert unders == [(("0", 1),), (("0", 1),), (("1", 1),), (("1", 1),)]
    # the fermion: twist -1 rides on a g-graded sector
    eps = [b for b in rep["blocks"] if abs(complex(*b["twist"]) + 1) < 1e-9]
    assert len(eps) == 1 and eps[0]["underlying"] == {"1": 1}


def test_fibonacci_underlying(reports):
    rep = reports["fibonacci"]
    unders = sorted(tuple(sorted(b["underlying"].items())) for b in rep["blocks"])
    assert unders == [
        (("1", 1),), (("1", 1), ("tau", 1)), (("tau", 1),), (("tau", 1),)]
    # the doubled block carries both labels and trivial twist
    big = [b for b in rep["blocks"] if b["size"] == 2]
    assert big[0]["underlying"] == {"1": 1, "tau": 1}
    assert abs(complex(*big[0]["twist"]) - 1) < 1e-9


def test_rep_s3_underlying_multiset(reports):
    rep = reports["rep_s3"]
    unders = sorted(tuple(sorted(b["underlying"].items())) for b in rep["blocks"])
    assert unders == sorted([
        (("triv", 1),), (("sgn", 1),),
        (("std", 1),), (("std", 1),), (("std", 1),),
        (("sgn", 1), ("triv", 1)),
        (("std", 1), ("triv", 1)),
        (("sgn", 1), ("std", 1)),
    ])


def test_squared_dims_fill_global_dim(catalog, reports):
    for name, rep in reports.items():
        spec = catalog[name]
        d = {lab: float(v) for lab, v in zip(spec.labels, spec.dims.d)}
        total = sum(sum(m * d[lab] for lab, m in b["underlying"].items()) ** 2
                    for b in rep["blocks"])
        assert abs(total - spec.dims.global_dim ** 2) < 1e-6, name


def test_hexagon_residuals_reported_small(reports):
    for name, rep in reports.items():
        for b in rep["blocks"]:
            assert b["hexagon_residual"] < 1e-8, name


def test_summand_content_accounts_for_delta(catalog):
    # sum over blocks of size * multiplicity must reproduce hom(x, Δ)
    for name in ("fibonacci", "ising"):
        spec = catalog[name]
        lam = LambdaObject.all_simples(spec)
        A = build_tube_algebra(spec, lam)
        D = build_delta(spec, lam)
        dec = decompose_blocks(A, seed=1)
        simples = extract_center_simples(A, D, dec)
        eng = A.engine
        for x in range(spec.ring.rank):
            want = sum(eng.hom_space((x,), w).dim for w in D.obj.summands)
            got = sum(n * s.underlying.get(spec.labels[x], 0)
                      for n, s in zip(dec.sizes, simples))
            assert got == want, (name, spec.labels[x])


def test_idempotents_orthogonal_resolution(catalog):
    spec = catalog["ising"]
    lam = LambdaObject.all_simples(spec)
    A = build_tube_algebra(spec, lam)
    dec = decompose_blocks(A, seed=1)
    from tubecat.tube import tube_product, tube_star
    total = None
    for i, p in enumerate(dec.idempotents):
        assert (tube_product(A, p, p) - p).norm() < 1e-10
        assert (tube_star(A, p) - p).norm() < 1e-10
        for q in dec.idempotents[i + 1:]:
            assert tube_product(A, p, q).norm() < 1e-8
        total = p if total is None else total + p
    assert (total - A.unit).norm() < 1e-8


def test_refined_idempotent_is_subordinate(catalog):
    # the rank-one idempotent of the doubled Fibonacci block sits under it
    spec = catalog["fibonacci"]
    lam = LambdaObject.all_simples(spec)
    A = build_tube_algebra(spec, lam)
    D = build_delta(spec, lam)
    dec = decompose_blocks(A, seed=1)
    simples = extract_center_simples(A, D, dec)
    from tubecat.tube import tube_product
    for k, (n, s) in enumerate(zip(dec.sizes, simples)):
        p, q = dec.idempotents[k], s.idempotent
        assert (tube_product(A, p, q) - q).norm() < 1e-9, k
        assert (tube_product(A, q, p) - q).norm() < 1e-9, k
        if n == 1:
            assert (q - p).norm() < 1e-10


def test_same_seed_byte_identical(catalog):
    a = dumps_canonical(center_report(catalog["fibonacci"], seed=7))
    b = dumps_canonical(center_report(catalog["fibonacci"], seed=7))
    assert a == b


def test_sorted_sizes_seed_invariant(catalog):
    for name in ("vec_z2_twisted", "fibonacci", "ising"):
        spec = catalog[name]
        runs = [center_report(spec, seed=s) for s in (1, 2)]
        sized = [sorted(b["size"] for b in r["blocks"]) for r in runs]
        assert sized[0] == sized[1], name
        tw = [sorted(twist_key(complex(*b["twist"])) for b in r["blocks"])
              for r in runs]
        assert tw[0] == tw[1], name


def test_partial_lambda_sees_partial_center(catalog):
    # Λ = tau alone: the vacuum block has no tau summand and drops out
    spec = catalog["fibonacci"]
    lam = LambdaObject.from_mapping(spec, {"tau": 1})
    rep = center_report(spec, lam=lam, seed=1)
    assert rep["tube_dim"] == 3
    assert rep["rank"] == 3
    assert sorted(b["size"] for b in rep["blocks"]) == [1, 1, 1]
    got = sorted(twist_key(complex(*b["twist"])) for b in rep["blocks"])
    assert got == sorted(twist_key(t) for t in (1, FIB, FIB.conjugate()))
    assert rep["pass"]  # dimension completeness check is not applicable here


def test_trivial_category_center(catalog, reports):
    rep = reports["vec"]
    assert rep["rank"] == 1
    assert rep["blocks"][0]["underlying"] == {"1": 1}
    assert abs(complex(*rep["blocks"][0]["twist"]) - 1) < 1e-12


def test_report_schema(reports):
    for rep in reports.values():
        assert set(rep) == {"category", "lambda", "tube_dim", "rank",
                            "blocks", "seed", "pass"}
        for b in rep["blocks"]:
            assert set(b) == {"size", "underlying", "twist", "hexagon_residual"}
