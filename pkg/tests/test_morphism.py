"""Engine laws: composition, dagger, strict tensor, basis-change unitarity.

These are the load-bearing checks for everything diagrammatic later; tensor
associativity and bifunctoriality in particular exercise the left-tensor
basis change (the only place F enters the engine).
"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tubecat.morphism import Engine

ENGINES = {}


@pytest.fixture(params=["vec_z2_twisted", "fibonacci", "ising", "rep_s3"])
def engine(request, catalog):
    if request.param not in ENGINES:
        ENGINES[request.param] = Engine(catalog[request.param])
    return ENGINES[request.param]


def words_upto(rank, n):
    out = [()]
    for _ in range(n):
        out += [w + (x,) for w in out if len(w) == _ for x in range(rank)]
    return out


def test_identity_composes(engine):
    rng = np.random.default_rng(7)
    for src in [(0,), (1, 1), (1, 0, 1)]:
        for dst in [(1,), (1, 1), (0, 1, 1)]:
            f = engine.random(src, dst, rng)
            assert (engine.identity(dst) @ f).close_to(f, 1e-12)
            assert (f @ engine.identity(src)).close_to(f, 1e-12)


def test_dagger_antihomomorphism(engine):
    rng = np.random.default_rng(11)
    a, b, c = (1,), (1, 1), (1, 1, 1)
    f = engine.random(b, c, rng)
    g = engine.random(a, b, rng)
    assert ((f @ g).dag() - (g.dag() @ f.dag())).norm() < 1e-10
    assert (f.dag().dag() - f).norm() == 0


def test_tensor_with_identity_is_identity(engine):
    for w1 in [(1,), (1, 1)]:
        for w2 in [(1,), (0, 1)]:
            lhs = engine.identity(w1).tensor(engine.identity(w2))
            assert lhs.close_to(engine.identity(w1 + w2), 1e-10)


def test_tensor_bifunctorial(engine):
    rng = np.random.default_rng(23)
    f1 = engine.random((1, 1), (1,), rng)
    f2 = engine.random((1,), (1, 1), rng)
    g1 = engine.random((1,), (1, 1), rng)
    g2 = engine.random((1, 1), (1,), rng)
    lhs = (f1 @ f2).tensor(g1 @ g2)
    rhs = f1.tensor(g1) @ f2.tensor(g2)
    assert lhs.close_to(rhs, 1e-9), (lhs - rhs).norm()


def test_tensor_associative(engine):
    rng = np.random.default_rng(31)
    f = engine.random((1,), (1, 1), rng)
    g = engine.random((1, 1), (1,), rng)
    h = engine.random((1,), (1,), rng)
    lhs = f.tensor(g).tensor(h)
    rhs = f.tensor(g.tensor(h))
    assert lhs.close_to(rhs, 1e-9), (lhs - rhs).norm()


def test_left_right_tensor_routes_agree(engine):
    # (f x id) . (id x g) = (id x g) . (f x id) on disjoint slots
    rng = np.random.default_rng(37)
    f = engine.random((1,), (1, 1), rng)
    g = engine.random((1, 1), (1,), rng)
    r1 = engine.tensor_id_left(f.dst, g) @ engine.tensor_id_right(f, g.src)
    r2 = engine.tensor_id_right(f, g.dst) @ engine.tensor_id_left(f.src, g)
    assert r1.close_to(r2, 1e-9), (r1 - r2).norm()


def test_scalar_tensor(engine):
    rng = np.random.default_rng(41)
    f = engine.random((1,), (1,), rng)
    s = engine.scalar_morphism(2.5 - 1j)
    assert s.tensor(f).close_to(f * (2.5 - 1j), 1e-10)
    assert f.tensor(s).close_to(f * (2.5 - 1j), 1e-10)


def test_omega_blocks_unitary(engine):
    # engine.omega raises on non-unitary blocks; touch a spread of words
    rank = engine.ring.rank
    for c in range(rank):
        for word in [(1,), (1, 1), (1, 0, 1), (1, 1, 1)]:
            engine.omega(c, word)


def test_zero_and_linearity(engine):
    rng = np.random.default_rng(43)
    f = engine.random((1, 1), (1, 1), rng)
    z = engine.zero((1, 1), (1, 1))
    assert (f + z - f).norm() == 0
    assert (f - f).norm() == 0
    assert (2 * f - f - f).norm() < 1e-14


def test_random_seed_determinism(engine):
    f1 = engine.random((1, 1), (1, 1), np.random.default_rng(99))
    f2 = engine.random((1, 1), (1, 1), np.random.default_rng(99))
    assert (f1 - f2).norm() == 0


@given(st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=12, deadline=None)
def test_interchange_random_words(seed):
    from tubecat.catalog import find
    spec = find("ising")
    eng = ENGINES.setdefault("ising", Engine(spec))
    rng = np.random.default_rng(seed)
    rank = spec.rank
    mk = lambda: tuple(rng.integers(0, rank, size=rng.integers(1, 3)))
    a, b, c, d = mk(), mk(), mk(), mk()
    f = eng.random(a, b, rng)
    g = eng.random(c, d, rng)
    lhs = eng.tensor_id_left(b, g) @ eng.tensor_id_right(f, c)
    rhs = eng.tensor_id_right(f, d) @ eng.tensor_id_left(a, g)
    assert lhs.close_to(rhs, 1e-9), (lhs - rhs).norm()
