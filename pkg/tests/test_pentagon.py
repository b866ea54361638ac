"""Pentagon sweeps on the catalog plus gauge-invariance of the checker."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tubecat.catalog import find
from tubecat.fsymbols import FSymbolTable
from tubecat.pentagon import pentagon_residual, verify_pentagon


def test_catalog_pentagon_tight(catalog):
    for spec in catalog.values():
        rep = verify_pentagon(spec, tol=1e-12)
        assert rep.ok, (spec.name, rep.max_residual)


def test_rank_one_residual_exactly_zero(catalog):
    res, _ = pentagon_residual(catalog["vec"].fsymbols)
    assert res == 0.0


def test_report_shape(catalog):
    rep = verify_pentagon(catalog["ising"], tol=1e-10)
    doc = rep.as_dict()
    assert doc["suite"] == "pentagon"
    assert doc["pass"] is True
    assert len(doc["cases"]) == 3 ** 4
    assert set(doc["cases"][0]) == {"labels", "residual", "pass"}


def test_broken_table_located(catalog):
    spec = catalog["fibonacci"]
    blocks = {k: v.copy() for k, v in spec.fsymbols._blocks.items()}
    blocks[(1, 1, 1, 1)][0, 1] *= np.exp(0.01j)
    res, word = pentagon_residual(FSymbolTable(spec.ring, blocks))
    assert res > 1e-4
    assert word == (1, 1, 1, 1)


@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
@settings(max_examples=15, deadline=None)
def test_gauge_orbit_keeps_pentagon(seed):
    """Rephasing every non-unit vertex is a gauge move; residual must stay 0.

    The gauge acts on a vertex (a,b)->e by a phase u[a,b,e], and on the block
    F[a,b,c,d][(e),(f)] by u[a,b,e] u[e,c,d] conj(u[b,c,f] u[a,f,d]).
    """
    spec = find("ising")
    ring = spec.ring
    rng = np.random.default_rng(seed)
    u = np.exp(2j * np.pi * rng.random((ring.rank,) * 3))
    unit = ring.unit
    for a in range(ring.rank):
        for b in range(ring.rank):
            u[unit, a, b] = u[a, unit, b] = 1.0
    blocks = {}
    for (a, b, c, d), mat in spec.fsymbols._blocks.items():
        mat = mat.copy()
        rows = spec.fsymbols.rows(a, b, c, d)
        cols = spec.fsymbols.cols(a, b, c, d)
        for i, (e, _, _) in enumerate(rows):
            mat[i, :] *= u[a, b, e] * u[e, c, d]
        for j, (f, _, _) in enumerate(cols):
            mat[:, j] *= np.conj(u[b, c, f] * u[a, f, d])
        blocks[(a, b, c, d)] = mat
    table = FSymbolTable(ring, blocks)
    res, _ = pentagon_residual(table)
    assert res < 1e-12
    assert table.check_unitary(1e-12) < 1e-12
