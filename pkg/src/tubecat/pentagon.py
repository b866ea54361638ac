"""Pentagon verification by comparing the two rebracketing routes.

For every 4-letter word (a,b,c,d) and every root r, the change of basis from
the fully-left tree ((ab)c)d to the fully-right tree a(b(cd)) is computed
twice: through (ab)(cd) (two F-moves) and through (a(bc))d, a((bc)d) (three
F-moves).  The residual is the max-abs difference of the two transition
matrices; no closed-form pentagon identity is trusted, only the operational
meaning of an F-move.
"""
from __future__ import annotations

import itertools

import numpy as np

__all__ = ["pentagon_residual", "verify_pentagon"]


def _basis_T1(ring, a, b, c, d, root):
    # ((ab)c)d: (e1, m1) then (e2, m2) then m3
    out = []
    for e1 in range(ring.rank):
        for m1 in range(ring.N[a, b, e1]):
            for e2 in range(ring.rank):
                for m2 in range(ring.N[e1, c, e2]):
                    for m3 in range(ring.N[e2, d, root]):
                        out.append((e1, m1, e2, m2, m3))
    return out


def _basis_T4(ring, a, b, c, d, root):
    # a(b(cd)): (f, r1) then (g, s1) then s2
    out = []
    for f in range(ring.rank):
        for r1 in range(ring.N[c, d, f]):
            for g in range(ring.rank):
                for s1 in range(ring.N[b, f, g]):
                    for s2 in range(ring.N[a, g, root]):
                        out.append((f, r1, g, s1, s2))
    return out


def _route_via_pair(F, a, b, c, d, root, src, dst):
    """((ab)c)d -> (ab)(cd) -> a(b(cd)); two moves."""
    mat = np.zeros((len(src), len(dst)), dtype=complex)
    for i, (e1, m1, e2, m2, m3) in enumerate(src):
        rows1 = F.rows(e1, c, d, root)
        cols1 = F.cols(e1, c, d, root)
        blk1 = F.block(e1, c, d, root)
        r1i = rows1.index((e2, m2, m3))
        for jc, (f, r1, r2) in enumerate(cols1):
            amp1 = blk1[r1i, jc]
            if amp1 == 0:
                continue
            rows2 = F.rows(a, b, f, root)
            cols2 = F.cols(a, b, f, root)
            blk2 = F.block(a, b, f, root)
            r2i = rows2.index((e1, m1, r2))
            for jc2, (g, s1, s2) in enumerate(cols2):
                amp2 = blk2[r2i, jc2]
                if amp2 == 0:
                    continue
                mat[i, dst.index((f, r1, g, s1, s2))] += amp1 * amp2
    return mat


def _route_via_middle(F, a, b, c, d, root, src, dst):
    """((ab)c)d -> (a(bc))d -> a((bc)d) -> a(b(cd)); three moves."""
    mat = np.zeros((len(src), len(dst)), dtype=complex)
    for i, (e1, m1, e2, m2, m3) in enumerate(src):
        blk1 = F.block(a, b, c, e2)
        r1i = F.rows(a, b, c, e2).index((e1, m1, m2))
        for jc, (h, n1, n2) in enumerate(F.cols(a, b, c, e2)):
            amp1 = blk1[r1i, jc]
            if amp1 == 0:
                continue
            blk2 = F.block(a, h, d, root)
            r2i = F.rows(a, h, d, root).index((e2, n2, m3))
            for jc2, (k, t1, t2) in enumerate(F.cols(a, h, d, root)):
                amp2 = blk2[r2i, jc2]
                if amp2 == 0:
                    continue
                blk3 = F.block(b, c, d, k)
                r3i = F.rows(b, c, d, k).index((h, n1, t1))
                for jc3, (f, r1, s1) in enumerate(F.cols(b, c, d, k)):
                    amp3 = blk3[r3i, jc3]
                    if amp3 == 0:
                        continue
                    mat[i, dst.index((f, r1, k, s1, t2))] += amp1 * amp2 * amp3
    return mat


def iter_pentagon_cases(F):
    """Yield ((a,b,c,d), residual) per 4-letter word, residual maxed over roots."""
    ring = F.ring
    for word in itertools.product(range(ring.rank), repeat=4):
        a, b, c, d = word
        res = 0.0
        for root in range(ring.rank):
            src = _basis_T1(ring, a, b, c, d, root)
            if not src:
                continue
            dst = _basis_T4(ring, a, b, c, d, root)
            m_pair = _route_via_pair(F, a, b, c, d, root, src, dst)
            m_mid = _route_via_middle(F, a, b, c, d, root, src, dst)
            res = max(res, float(np.max(np.abs(m_pair - m_mid))))
        yield word, res


def pentagon_residual(F):
    """Worst residual and the word attaining it: (residual, (a,b,c,d))."""
    worst, where = 0.0, None
    for word, res in iter_pentagon_cases(F):
        if res >= worst:
            worst, where = res, word
    return worst, where


def verify_pentagon(spec, tol: float = 1e-12):
    """Check every rebracketing instance of a loaded category; full report."""
    from .report import VerificationReport

    rep = VerificationReport(suite="pentagon", tol=tol)
    names = spec.ring.labels
    for word, res in iter_pentagon_cases(spec.fsymbols):
        rep.add([names[i] for i in word], res)
    return rep
