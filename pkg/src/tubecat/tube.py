"""Tube algebra of a fusion category over a chosen object Λ.

Λ is a multiplicity vector over the simple labels.  The algebra lives on
A(Λ) = ⊕_a Hom(Λ⊗a, a⊗Λ), one component per simple direction a, each
component stored blockwise over the slots of Λ.  Alongside it we build the
conjugation closure Δ(Λ) = ⊕_x x⊗Λ⊗x̄ with its unitary half-braiding, and
the two mutually inverse maps between tube elements and half-braiding
commutant endomorphisms of Δ.

Diagram conventions.  Every operation here is a closed formula in the word
engine: trivalent vertices enter through canonical_pair (dual bases carrying
the √(d·d·d) weight), and a vertex drawn in a rotated position is the same
element transported by exact bends (rotate_clockwise).  All √d prefactors
are written once, next to the diagram they come from; nothing downstream
re-normalizes, so a convention slip shows up as a failed unitarity or
round-trip check instead of being absorbed silently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .duality import coev, ev, rotate_clockwise
from .errors import (NotInCommutant, ShapeError, ToleranceError)
from .morphism import Engine, Morphism, engine_for
from .pairs import canonical_pair
from .sums import BlockMorphism, SumObject, block_trace
from .trees import Word

__all__ = [
    "LambdaObject", "DeltaObject", "TubeBasisLabel", "TubeElement",
    "TubeAlgebra", "build_delta", "build_tube_algebra",
    "tube_product", "tube_star", "t_map", "f_map",
    "extend_halfbraiding", "hexagon_residual", "delta_trace", "gram",
    "tube_json",
]


# ---- the object Λ -----------------------------------------------------------

@dataclass(frozen=True)
class LambdaObject:
    """Multiplicity vector over the simple labels: Λ = ⊕ₓ x^{⊕mult[x]}."""

    mult: tuple

    def __post_init__(self):
        if not self.mult or any(int(m) != m or m < 0 for m in self.mult):
            raise ShapeError("multiplicities must be nonnegative integers")
        if not any(self.mult):
            raise ShapeError("at least one positive multiplicity required")
        object.__setattr__(self, "mult", tuple(int(m) for m in self.mult))

    @classmethod
    def all_simples(cls, spec) -> "LambdaObject":
        return cls(tuple(1 for _ in spec.labels))

    @classmethod
    def from_mapping(cls, spec, mapping) -> "LambdaObject":
        mult = [0] * len(spec.labels)
        for key, m in mapping.items():
            mult[spec.index(key) if isinstance(key, str) else int(key)] = int(m)
        return cls(tuple(mult))

    def slots(self) -> tuple:
        """Ordered (label, copy) pairs, one per simple summand of Λ."""
        return tuple((x, c) for x, m in enumerate(self.mult) for c in range(m))

    def as_dict(self, spec) -> dict:
        return {spec.labels[x]: m for x, m in enumerate(self.mult) if m}


# ---- Δ(Λ) and its half-braiding ---------------------------------------------

@dataclass(eq=False)
class DeltaObject:
    """⊕ₓ x⊗Λ⊗x̄ with a unitary half-braiding, one component per simple.

    ``obj`` tags summands by (x, slot); ``braiding[a]`` maps Δ⊗a → a⊗Δ.
    ``residuals`` records the worst unitarity / hexagon / unit-component
    defects measured while building.
    """

    spec: object
    lam: LambdaObject
    obj: SumObject
    braiding: dict
    residuals: dict

    @property
    def engine(self) -> Engine:
        return self.obj.engine


def _rotated_fuses(eng: Engine, a: int, y: int, x: int) -> tuple:
    """Fusion halves of the (a,y;x) dual pair, rotated to sit on a downward
    strand: each maps (x̄, a) → (ȳ,)."""
    key = ("rotfuse", a, y, x)
    out = eng.cache.get(key)
    if out is None:
        pair = canonical_pair(eng, a, y, x)
        out = tuple(rotate_clockwise(f) for f in pair.fuses)
        eng.cache[key] = out
    return out


def _rotated_splits(eng: Engine, x: int, a: int, y: int) -> tuple:
    """Splitting halves of the (x,a;y) dual pair rotated likewise: each maps
    (x̄,) → (a, ȳ)."""
    key = ("rotsplit", x, a, y)
    out = eng.cache.get(key)
    if out is None:
        pair = canonical_pair(eng, x, a, y)
        out = tuple(rotate_clockwise(s) for s in pair.splits)
        eng.cache[key] = out
    return out


def _delta_braiding_component(eng: Engine, obj: SumObject, a: int) -> BlockMorphism:
    # Per summand (x, slot): split x into (a, y) on the left line, absorb a
    # into the conjugate line with the transported fusion half on the right.
    # Coefficient per (x, y): √(d_a⁻¹)·√(d_a d_y d_x) = √(d_x d_y).
    ring, d = eng.ring, eng.d
    blocks: dict = {}
    for j, (x, s) in enumerate(obj.tags):
        word = obj.summands[j]
        l = word[1]
        for y in range(ring.rank):
            n = int(ring.N[a, y, x])
            if not n:
                continue
            i = obj.index((y, s))
            yd = ring.dual[y]
            pair = canonical_pair(eng, a, y, x)
            rots = _rotated_fuses(eng, a, y, x)
            acc = None
            for t in range(n):
                left = eng.tensor_id_right(pair.splits[t], (l, yd))
                right = eng.tensor_id_left((x, l), rots[t])
                term = left @ right
                acc = term if acc is None else acc + term
            blocks[(i, j)] = acc * math.sqrt(d[x] * d[y])
    return BlockMorphism(obj.tensor_right((a,)), obj.tensor_left((a,)), blocks)


def _padded_identity(obj: SumObject, unit: int) -> BlockMorphism:
    """The trivial braiding Δ⊗1 → 1⊗Δ: identity matrices in tree bases."""
    eng = obj.engine
    blocks = {}
    for i, w in enumerate(obj.summands):
        src, dst = w + (unit,), (unit,) + w
        tb = eng.basis(src)
        blocks[(i, i)] = eng.make(src, dst, {z: np.eye(tb.dim(z), dtype=complex)
                                             for z in tb.roots()})
    return BlockMorphism(obj.tensor_right((unit,)), obj.tensor_left((unit,)), blocks)


def extend_halfbraiding(obj: SumObject, braiding: dict, word: Word) -> BlockMorphism:
    """Half-braiding against an arbitrary word, assembled from the simple
    components through the tree isometries of Hom(c, word)."""
    word = tuple(word)
    eng = obj.engine
    if len(word) == 1:
        return braiding[word[0]]
    src, dst = obj.tensor_right(word), obj.tensor_left(word)
    out: dict = {}
    for c in eng.basis(word).roots():
        for iota in eng.hom_basis((c,), word):
            e_c = braiding[c]
            for (i, j), m in e_c.blocks.items():
                left = eng.tensor_id_right(iota, obj.summands[i])
                right = eng.tensor_id_left(obj.summands[j], iota.dag())
                term = left @ m @ right
                key = (i, j)
                out[key] = out[key] + term if key in out else term
    return BlockMorphism(src, dst, out)


def hexagon_residual(obj: SumObject, braiding: dict, a: int, b: int) -> float:
    """Defect of braiding past a⊗b in one move versus one leg at a time."""
    joined = extend_halfbraiding(obj, braiding, (a, b))
    staged = braiding[b].tensor_id_left((a,)) @ braiding[a].tensor_id_right((b,))
    return (joined - staged).norm()


def build_delta(spec, lam: LambdaObject, tol: float = 1e-9) -> DeltaObject:
    """Assemble Δ(Λ) and verify that its braiding is a unitary half-braiding.

    Raises ToleranceError when any unitarity, unit-component, or hexagon
    residual reaches ``tol``; that signals an engine or data bug, not bad
    user input.
    """
    eng = engine_for(spec)
    ring = eng.ring
    if len(lam.mult) != ring.rank:
        raise ShapeError("multiplicity vector length does not match the label set")
    slots = lam.slots()
    words, tags = [], []
    for x in range(ring.rank):
        for s, (l, _copy) in enumerate(slots):
            words.append((x, l, ring.dual[x]))
            tags.append((x, s))
    obj = SumObject(eng, words, tags)

    braiding = {a: _delta_braiding_component(eng, obj, a) for a in range(ring.rank)}

    worst_u = 0.0
    for a, e in braiding.items():
        left = (e.dag() @ e - BlockMorphism.identity(obj.tensor_right((a,)))).norm()
        right = (e @ e.dag() - BlockMorphism.identity(obj.tensor_left((a,)))).norm()
        worst_u = max(worst_u, left, right)
    if not worst_u < tol:
        raise ToleranceError(f"half-braiding unitarity defect {worst_u:.3e} >= {tol:g}")

    unit_res = (braiding[ring.unit] - _padded_identity(obj, ring.unit)).norm()
    if not unit_res < tol:
        raise ToleranceError(f"unit braiding component defect {unit_res:.3e} >= {tol:g}")

    worst_h = 0.0
    for a in range(ring.rank):
        for b in range(ring.rank):
            worst_h = max(worst_h, hexagon_residual(obj, braiding, a, b))
    if not worst_h < tol:
        raise ToleranceError(f"hexagon defect {worst_h:.3e} >= {tol:g}")

    return DeltaObject(spec=spec, lam=lam, obj=obj, braiding=braiding,
                       residuals={"unitarity": worst_u, "unit": unit_res,
                                  "hexagon": worst_h})


# ---- tube algebra -----------------------------------------------------------

@dataclass(frozen=True)
class TubeBasisLabel:
    """(direction label a, flat index into the a-component basis)."""

    a: int
    i: int


class TubeElement:
    """Finitely supported family of components f_a: Λ⊗a → a⊗Λ."""

    __slots__ = ("algebra", "components")

    def __init__(self, algebra: "TubeAlgebra", components: dict):
        for a, m in components.items():
            if not (m.src.same_words(algebra.src_objs[a])
                    and m.dst.same_words(algebra.dst_objs[a])):
                raise ShapeError(f"component {a} does not live on Λ⊗a -> a⊗Λ")
        self.algebra = algebra
        self.components = dict(components)

    def component(self, a: int) -> BlockMorphism:
        m = self.components.get(a)
        if m is None:
            m = BlockMorphism.zero(self.algebra.src_objs[a], self.algebra.dst_objs[a])
        return m

    def vector(self) -> np.ndarray:
        return self.algebra.vector_of(self)

    def __add__(self, other: "TubeElement") -> "TubeElement":
        out = dict(self.components)
        for a, m in other.components.items():
            out[a] = out[a] + m if a in out else m
        return TubeElement(self.algebra, out)

    def __sub__(self, other: "TubeElement") -> "TubeElement":
        return self + (other * (-1.0))

    def __mul__(self, z) -> "TubeElement":
        return TubeElement(self.algebra, {a: m * z for a, m in self.components.items()})

    __rmul__ = __mul__

    def norm(self) -> float:
        return max((m.norm() for m in self.components.values()), default=0.0)

    def close_to(self, other: "TubeElement", tol: float = 1e-9) -> bool:
        return (self - other).norm() < tol

    def __repr__(self):
        labs = self.algebra.spec.labels
        sup = ",".join(labs[a] for a, m in sorted(self.components.items()) if m.norm() > 0)
        return f"<TubeElement support=({sup}) norm={self.norm():.3g}>"


@dataclass(eq=False)
class TubeAlgebra:
    """Structure constants of A(Λ) in a fixed slot-ordered basis.

    Basis order inside the a-component: source slot major, then target slot,
    then the tree-pair index of Hom(x⊗a, a⊗y).  ``mult_table[i,j,k]`` is the
    coefficient of basis k in (basis i)·(basis j); ``star_table[i,j]`` the
    coefficient of basis j in (basis i)*.
    """

    spec: object
    lam: LambdaObject
    engine: Engine
    slots: tuple
    basis: tuple
    dim: int
    src_objs: dict
    dst_objs: dict
    layout: dict
    mult_table: np.ndarray
    star_table: np.ndarray
    unit: TubeElement
    residuals: dict

    # ---- coordinates ---------------------------------------------------------
    def component_dim(self, a: int) -> int:
        return sum(n for (_l, _m, n, _off) in self.layout[a])

    def offset(self, a: int) -> int:
        off = 0
        for b in range(a):
            off += self.component_dim(b)
        return off

    def vector_of(self, f: TubeElement) -> np.ndarray:
        out = np.zeros(self.dim, dtype=complex)
        for a, comp in f.components.items():
            base = self.offset(a)
            for (l, m, n, off) in self.layout[a]:
                if n == 0:
                    continue
                blk = comp.blocks.get((m, l))
                if blk is not None:
                    out[base + off: base + off + n] = blk.coeffs()
        return out

    def element(self, vec) -> TubeElement:
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (self.dim,):
            raise ShapeError(f"coefficient vector must have length {self.dim}")
        eng = self.engine
        comps = {}
        for a in range(eng.ring.rank):
            base = self.offset(a)
            blocks = {}
            for (l, m, n, off) in self.layout[a]:
                if n == 0:
                    continue
                seg = vec[base + off: base + off + n]
                if not np.any(seg):
                    continue
                src = self.src_objs[a].summands[l]
                dst = self.dst_objs[a].summands[m]
                blocks[(m, l)] = _morphism_from_coeffs(eng, src, dst, seg)
            if blocks:
                comps[a] = BlockMorphism(self.src_objs[a], self.dst_objs[a], blocks)
        return TubeElement(self, comps)

    def basis_element(self, k: int) -> TubeElement:
        vec = np.zeros(self.dim, dtype=complex)
        vec[k] = 1.0
        return self.element(vec)

    def random_element(self, rng: np.random.Generator) -> TubeElement:
        return self.element(rng.standard_normal(self.dim)
                            + 1j * rng.standard_normal(self.dim))


def _morphism_from_coeffs(eng: Engine, src: Word, dst: Word, vec) -> Morphism:
    blocks = {}
    pos = 0
    for z, dd, sd in eng.common_roots(src, dst):
        n = dd * sd
        blocks[z] = np.asarray(vec[pos:pos + n], dtype=complex).reshape(dd, sd)
        pos += n
    if pos != len(vec):
        raise ShapeError("coefficient segment does not match the hom space")
    return eng.make(src, dst, blocks)


def _component_objects(eng: Engine, slots: tuple, a: int):
    src = SumObject(eng, [(x, a) for (x, _c) in slots])
    dst = SumObject(eng, [(a, x) for (x, _c) in slots])
    return src, dst


def build_tube_algebra(spec, lam: LambdaObject, tol: float = 1e-9) -> TubeAlgebra:
    """Tabulate structure constants and star, then verify the algebra axioms.

    Build-time checks: associativity over the full basis (via the dense
    tables), star involutivity and anti-multiplicativity, and the unit law,
    with the unit recomputed through the product formula rather than assumed.
    The positivity of the trace form needs Δ and lives with the tests.
    """
    eng = engine_for(spec)
    ring = eng.ring
    if len(lam.mult) != ring.rank:
        raise ShapeError("multiplicity vector length does not match the label set")
    slots = lam.slots()

    src_objs, dst_objs, layout = {}, {}, {}
    basis = []
    for a in range(ring.rank):
        src_objs[a], dst_objs[a] = _component_objects(eng, slots, a)
        rows, off = [], 0
        for l, (x, _cx) in enumerate(slots):
            for m, (y, _cy) in enumerate(slots):
                n = eng.hom_space((x, a), (a, y)).dim
                rows.append((l, m, n, off))
                off += n
        layout[a] = rows
        for i in range(off):
            basis.append(TubeBasisLabel(a, i))
    dim = len(basis)

    alg = TubeAlgebra(spec=spec, lam=lam, engine=eng, slots=slots,
                      basis=tuple(basis), dim=dim,
                      src_objs=src_objs, dst_objs=dst_objs, layout=layout,
                      mult_table=np.zeros((dim, dim, dim), dtype=complex),
                      star_table=np.zeros((dim, dim), dtype=complex),
                      unit=None, residuals={})

    unit_blocks = {}
    u = ring.unit
    for l, (x, _c) in enumerate(slots):
        src = src_objs[u].summands[l]
        dst = dst_objs[u].summands[l]
        tb = eng.basis(src)
        unit_blocks[(l, l)] = eng.make(src, dst, {z: np.eye(tb.dim(z), dtype=complex)
                                                  for z in tb.roots()})
    alg.unit = TubeElement(alg, {u: BlockMorphism(src_objs[u], dst_objs[u], unit_blocks)})

    basis_elems = [alg.basis_element(k) for k in range(dim)]
    for i, ei in enumerate(basis_elems):
        alg.star_table[i] = alg.vector_of(tube_star(alg, ei))
        for j, ej in enumerate(basis_elems):
            alg.mult_table[i, j] = alg.vector_of(tube_product(alg, ei, ej))

    c, s = alg.mult_table, alg.star_table
    uvec = alg.vector_of(alg.unit)
    eye = np.eye(dim)
    r_unit = max(
        float(np.max(np.abs(np.einsum("i,ijk->jk", uvec, c) - eye))),
        float(np.max(np.abs(np.einsum("j,ijk->ik", uvec, c) - eye))))
    r_assoc = float(np.max(np.abs(np.einsum("ijm,mkl->ijkl", c, c)
                                  - np.einsum("jkm,iml->ijkl", c, c))))
    r_inv = float(np.max(np.abs(np.conj(s) @ s - eye)))
    r_anti = float(np.max(np.abs(np.einsum("ijk,kl->ijl", np.conj(c), s)
                                 - np.einsum("jp,iq,pql->ijl", s, s, c))))
    r_star_unit = float(np.max(np.abs(np.conj(uvec) @ s - uvec)))
    alg.residuals = {"unit": r_unit, "assoc": r_assoc, "star_inv": r_inv,
                     "star_anti": r_anti, "star_unit": r_star_unit}
    worst = max(alg.residuals.values())
    if not worst < tol:
        bad = max(alg.residuals, key=alg.residuals.get)
        raise ToleranceError(f"tube algebra {bad} defect {alg.residuals[bad]:.3e} >= {tol:g}")
    return alg


# ---- product, star ----------------------------------------------------------

def tube_product(A: TubeAlgebra, f: TubeElement, g: TubeElement) -> TubeElement:
    """Stack f over g: split the direction line into (c, b) with a dual pair,
    run g along c below f along b, and fuse back.  Coefficient per (b, c):
    √(d_c d_b d_a)."""
    eng = A.engine
    ring, d = eng.ring, eng.d
    slots = A.slots
    acc: dict = {}
    for b, fb in f.components.items():
        for c, gc in g.components.items():
            for a in ring.fusion_outcomes(c, b):
                pair = canonical_pair(eng, c, b, a)
                coeff = math.sqrt(d[c] * d[b] * d[a])
                for (mp, l), gblk in gc.blocks.items():
                    xl = slots[l][0]
                    for (m, mp2), fblk in fb.blocks.items():
                        if mp2 != mp:
                            continue
                        xm = slots[m][0]
                        term = None
                        for t in range(pair.n):
                            lo = eng.tensor_id_left((xl,), pair.splits[t])
                            mid = eng.tensor_id_left((c,), fblk) \
                                @ eng.tensor_id_right(gblk, (b,))
                            hi = eng.tensor_id_right(pair.fuses[t], (xm,))
                            piece = hi @ mid @ lo
                            term = piece if term is None else term + piece
                        key = (m, l)
                        blocks = acc.setdefault(a, {})
                        add = term * coeff
                        blocks[key] = blocks[key] + add if key in blocks else add
    comps = {a: BlockMorphism(A.src_objs[a], A.dst_objs[a], blocks)
             for a, blocks in acc.items()}
    return TubeElement(A, comps)


def tube_star(A: TubeAlgebra, f: TubeElement) -> TubeElement:
    """Adjoint of the opposite-direction component, bent back into shape with
    one calibrated cup and cap; no vertex weights enter."""
    eng = A.engine
    ring = eng.ring
    slots = A.slots
    comps = {}
    for b, fb in f.components.items():
        a = ring.dual[b]
        cup = coev(eng, a)   # () -> (a, abar)
        cap = ev(eng, a)     # (abar, a) -> ()
        blocks = {}
        for (lkey, mkey), blk in fb.blocks.items():
            xl, xm = slots[lkey][0], slots[mkey][0]
            dagblk = blk.dag()  # (abar, x_l) -> (x_m, abar)
            h1 = eng.tensor_id_right(cup, (xl, a))
            h2 = eng.tensor_id_left((a,), eng.tensor_id_right(dagblk, (a,)))
            h3 = eng.tensor_id_left((a, xm), cap)
            blocks[(mkey, lkey)] = h3 @ h2 @ h1
        comps[a] = BlockMorphism(A.src_objs[a], A.dst_objs[a], blocks)
    return TubeElement(A, comps)


# ---- tube elements as endomorphisms of Δ -------------------------------------

def t_map(A: TubeAlgebra, delta: DeltaObject, f: TubeElement) -> BlockMorphism:
    """Thread every direction line of f through the conjugate sandwich:
    the (x, a; y) dual pair crosses the a-line over the summand boundary,
    one half transported to the conjugate strand.  Output is an
    endomorphism of Δ."""
    if delta.lam != A.lam:
        raise ShapeError("Δ and the tube algebra were built over different Λ")
    eng = A.engine
    ring, d = eng.ring, eng.d
    slots = A.slots
    obj = delta.obj
    out: dict = {}
    for a, fa in f.components.items():
        for (m, l), blk in fa.blocks.items():
            xl, xm = slots[l][0], slots[m][0]
            for x in range(ring.rank):
                for y in ring.fusion_outcomes(x, a):
                    n = int(ring.N[x, a, y])
                    yd = ring.dual[y]
                    pair = canonical_pair(eng, x, a, y)
                    rots = _rotated_splits(eng, x, a, y)  # (xbar,) -> (a, ybar)
                    coeff = math.sqrt(d[x] * d[a] * d[y])
                    mid = eng.tensor_id_left((x,), eng.tensor_id_right(blk, (yd,)))
                    term = None
                    for t in range(n):
                        lo = eng.tensor_id_left((x, xl), rots[t])
                        hi = eng.tensor_id_right(pair.fuses[t], (xm, yd))
                        piece = hi @ mid @ lo
                        term = piece if term is None else term + piece
                    key = (obj.index((y, m)), obj.index((x, l)))
                    add = term * coeff
                    out[key] = out[key] + add if key in out else add
    return BlockMorphism(obj, obj, out)


def naturality_residual(delta: DeltaObject, T: BlockMorphism) -> float:
    """How far T is from commuting with the half-braiding of Δ."""
    worst = 0.0
    for b, e in delta.braiding.items():
        lhs = T.tensor_id_left((b,)) @ e
        rhs = e @ T.tensor_id_right((b,))
        worst = max(worst, (lhs - rhs).norm())
    return worst


def f_map(A: TubeAlgebra, delta: DeltaObject, T: BlockMorphism,
          tol: float = 1e-7) -> TubeElement:
    """Invert t_map: close each summand block of T with a cup on the left
    strand and a cap on the right one, then fuse the freed legs into the
    direction line with a dual pair.  Prefactor 1/dim(C).

    Raises NotInCommutant when T fails to commute with the half-braiding
    (residual >= ``tol``); the closure formula is only inverse to t_map on
    the commutant.
    """
    if not (T.src.same_words(delta.obj) and T.dst.same_words(delta.obj)):
        raise ShapeError("f_map needs an endomorphism of Δ in block form")
    if delta.lam != A.lam:
        raise ShapeError("Δ and the tube algebra were built over different Λ")
    nat = naturality_residual(delta, T)
    if not nat < tol:
        raise NotInCommutant(f"naturality defect {nat:.3e} >= {tol:g}")

    eng = A.engine
    ring, d = eng.ring, eng.d
    slots = A.slots
    obj = delta.obj
    pref = 1.0 / A.spec.dims.global_dim
    comps = {}
    for a in range(ring.rank):
        blocks = {}
        for l, (xl_lab, _cl) in enumerate(slots):
            for m, (xm_lab, _cm) in enumerate(slots):
                acc = None
                for x in range(ring.rank):
                    xd = ring.dual[x]
                    for y in range(ring.rank):
                        # the freed legs fuse into a only when a sits in xbar*y
                        if int(ring.N[xd, y, a]) == 0:
                            continue
                        Tblk = T.blocks.get((obj.index((y, m)), obj.index((x, l))))
                        if Tblk is None:
                            continue
                        pair = canonical_pair(eng, xd, y, a)
                        coeff = math.sqrt(d[x] * d[y] * d[a])
                        # the x loop must close against the same pairing that
                        # caps it, ev(x) with its own dagger; coev(xbar) is off
                        # by the dual-twist sign on self-conjugate labels
                        cupx = ev(eng, x).dag()  # () -> (xbar, x)
                        capy = ev(eng, y)        # (ybar, y) -> ()
                        g3 = eng.tensor_id_left((xd,), eng.tensor_id_right(Tblk, (y,)))
                        g4 = eng.tensor_id_left((xd, y, xm_lab), capy)
                        g43 = g4 @ g3
                        for t in range(pair.n):
                            g1 = eng.tensor_id_left((xl_lab,), pair.splits[t])
                            g2 = eng.tensor_id_right(cupx, (xl_lab, xd, y))
                            g5 = eng.tensor_id_right(pair.fuses[t], (xm_lab,))
                            piece = (g5 @ g43 @ (g2 @ g1)) * coeff
                            acc = piece if acc is None else acc + piece
                if acc is not None:
                    blocks[(m, l)] = acc * pref
        if blocks:
            comps[a] = BlockMorphism(A.src_objs[a], A.dst_objs[a], blocks)
    return TubeElement(A, comps)


def delta_trace(T: BlockMorphism) -> complex:
    """Quantum trace over Δ of an endomorphism in block form."""
    return block_trace(T)


def gram(A: TubeAlgebra, delta: DeltaObject, f: TubeElement, g: TubeElement) -> complex:
    """⟨f, g⟩ = tr_Δ(T_g† ∘ T_f); positive definite on the tube algebra."""
    Tf = t_map(A, delta, f)
    Tg = t_map(A, delta, g)
    return delta_trace(Tg.dag() @ Tf)


# ---- serialization ------------------------------------------------------------

def tube_json(A: TubeAlgebra, category: str | None = None,
              threshold: float = 1e-12) -> dict:
    """Sparse structure-constant tables in a stable order."""
    labs = A.spec.labels
    mult_rows = []
    c = A.mult_table
    for i in range(A.dim):
        for j in range(A.dim):
            for k in range(A.dim):
                v = c[i, j, k]
                if abs(v) > threshold:
                    mult_rows.append([i, j, k, float(v.real), float(v.imag)])
    star_rows = []
    for i in range(A.dim):
        for j in range(A.dim):
            v = A.star_table[i, j]
            if abs(v) > threshold:
                star_rows.append([i, j, float(v.real), float(v.imag)])
    return {
        "category": category if category is not None else A.spec.name,
        "lambda": A.lam.as_dict(A.spec),
        "dim": A.dim,
        "basis": [{"a": labs[b.a], "i": b.i} for b in A.basis],
        "mult_table": mult_rows,
        "star_table": star_rows,
    }
