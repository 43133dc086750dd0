"""Graded algebras with a homogeneous basis, and graded matrix algebras M_k(D).

A :class:`GradedAlgebra` is a real algebra given by structure constants on a
basis whose elements are homogeneous.  When the algebra comes from explicit
(Gaussian-rational) matrices those are kept, so that two gradings of the same
matrix algebra can be compared subspace by subspace.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import (BasisMismatch, EmbeddingInvalid, NotADivisionGrading,
                     SizeBoundExceeded, UnrecognizedStructure)
from .exact import GaussQ, RowReducer, SpanSolver, nullspace, vec_add
from .groups import GroupSpec, Subgroup, extend_on_generators, make_group
from .structure import AlgebraClass, FDAlgebra, identify_algebra
from .twisted import TwistedAlgebra

DIM_BOUND = 256
GRADING_LAW_BOUND = 64
_GENERIC_TRIES = 16


# -- Gaussian matrices ---------------------------------------------------------

def gmat(rows) -> list[list[GaussQ]]:
    return [[GaussQ.coerce(x) for x in row] for row in rows]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            s = GaussQ(0)
            for k in range(m):
                if a[i][k] and b[k][j]:
                    s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


def mat_add(a, b, scale=1):
    return [[x + scale * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    c = GaussQ.coerce(c)
    return [[c * x for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def conj_transpose(a):
    return [[x.conjugate() for x in col] for col in zip(*a)]


def identity(n: int):
    return [[GaussQ(1) if i == j else GaussQ(0) for j in range(n)] for i in range(n)]


def kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[GaussQ(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = GaussQ.coerce(x)
        off += len(b)
    return out


def realify(m) -> dict:
    """Flatten a Gaussian matrix to a sparse real vector (re, im per entry)."""
    out = {}
    k = 0
    for row in m:
        for x in row:
            x = GaussQ.coerce(x)
            if x.re:
                out[2 * k] = x.re
            if x.im:
                out[2 * k + 1] = x.im
            k += 1
    return out


def mat_from_realified(vec: Mapping[int, Fraction], size: int):
    out = [[GaussQ(0)] * size for _ in range(size)]
    for c, v in vec.items():
        k, part = divmod(c, 2)
        i, j = divmod(k, size)
        out[i][j] = out[i][j] + (GaussQ(0, v) if part else GaussQ(v))
    return out


# -- graded algebras ---------------------------------------------------------------

@dataclass(eq=False)
class GradedAlgebra:
    group: GroupSpec
    alg: FDAlgebra
    degrees: list[int]
    names: list[str] | None = None
    mats: list | None = None  # explicit matrix realization of the basis, if any
    letters: str | None = None  # display names for the group generators
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.degrees) != self.alg.dim:
            raise ValueError("one degree per basis element is required")
        self.degrees = [int(d) for d in self.degrees]
        if self.names is None:
            self.names = list(self.alg.names)

    @property
    def dim(self) -> int:
        return self.alg.dim

    def degree_name(self, t: int) -> str:
        name = self.group.name(t)
        if self.letters:
            from .groups import GENERATOR_LETTERS
            name = "".join(self.letters[GENERATOR_LETTERS.index(ch)] if ch.isalpha() and ch != "e"
                           else ch for ch in name)
        return name

    def components(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return dict(sorted(out.items()))

    def support(self) -> list[int]:
        return sorted(set(self.degrees))

    def component_profile(self) -> dict[int, int]:
        return {g: len(b) for g, b in self.components().items()}

    def grading_law_violations(self, pairs=None) -> list[tuple[int, int]]:
        bad = []
        n = self.dim
        add = self.group.add_table
        it = pairs if pairs is not None else ((i, j) for i in range(n) for j in range(n))
        for i, j in it:
            want = int(add[self.degrees[i], self.degrees[j]])
            for k in self.alg.basis_product(i, j):
                if self.degrees[k] != want:
                    bad.append((i, j))
                    break
        return bad

    def check_grading_law(self, sample_seed: int | None = 0):
        n = self.dim
        if n <= GRADING_LAW_BOUND or sample_seed is None:
            bad = self.grading_law_violations()
        else:
            import random
            rng = random.Random(sample_seed)
            pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(4 * n)]
            bad = self.grading_law_violations(pairs)
        if bad:
            raise EmbeddingInvalid(f"grading law fails on {len(bad)} basis pairs")

    # -- subalgebras ---------------------------------------------------------
    def component_subalgebra(self, g: int = 0) -> FDAlgebra:
        idx = self.components().get(g, [])
        return restrict_to_basis(self.alg, idx)

    def vectors(self) -> list[dict] | None:
        if self.mats is None:
            return None
        return [realify(m) for m in self.mats]

    def linear_map(self, fn: Callable) -> list[dict]:
        """Matrix of a map given on explicit matrices, in basis coordinates."""
        if self.mats is None:
            raise BasisMismatch("algebra has no matrix realization")
        solver = SpanSolver([realify(m) for m in self.mats])
        out = []
        for m in self.mats:
            c = solver.solve(realify(fn(m)))
            if c is None:
                raise BasisMismatch("map does not preserve the algebra")
            out.append(c)
        return out

    def to_json(self) -> dict:
        out = {"group": self.group.to_json(), "degrees": [self.group.name(d) for d in self.degrees]}
        out.update(self.meta.get("spec", {}))
        return out


def restrict_to_basis(A: FDAlgebra, idx: Sequence[int]) -> FDAlgebra:
    """Subalgebra spanned by a subset of basis vectors (must be closed)."""
    pos = {b: k for k, b in enumerate(idx)}
    table = {}
    for a in idx:
        for b in idx:
            p = A.basis_product(a, b)
            if any(k not in pos for k in p):
                raise UnrecognizedStructure("basis subset is not a subalgebra")
            if p:
                table[(pos[a], pos[b])] = {pos[k]: v for k, v in p.items()}
    unit = {pos[k]: v for k, v in A.unit.items() if k in pos}
    if len(unit) != len(A.unit):
        raise UnrecognizedStructure("subalgebra does not contain the unit")
    return FDAlgebra(len(idx), table, unit, [A.names[b] for b in idx])


def subalgebra_from_vectors(A: FDAlgebra, vecs: Sequence[dict]) -> FDAlgebra:
    solver = SpanSolver(vecs)
    n = len(vecs)
    table = {}
    for i in range(n):
        for j in range(n):
            c = solver.solve(A.mul(vecs[i], vecs[j]))
            if c is None:
                raise UnrecognizedStructure("subspace is not closed under the product")
            if c:
                table[(i, j)] = c
    unit = solver.solve(A.unit)
    if unit is None:
        raise UnrecognizedStructure("subspace does not contain the unit")
    return FDAlgebra(n, table, unit)


def from_matrices(mats, degrees, group: GroupSpec, names=None, letters=None) -> GradedAlgebra:
    """Graded algebra spanned by explicit homogeneous matrices."""
    mats = [gmat(m) for m in mats]
    vecs = [realify(m) for m in mats]
    try:
        solver = SpanSolver(vecs)
    except ValueError:
        raise BasisMismatch("matrices are linearly dependent") from None
    n = len(mats)
    table = {}
    for i in range(n):
        for j in range(n):
            c = solver.solve(realify(mat_mul(mats[i], mats[j])))
            if c is None:
                raise BasisMismatch("span of the matrices is not closed under the product")
            if c:
                table[(i, j)] = c
    unit = solver.solve(realify(identity(len(mats[0]))))
    if unit is None:
        raise BasisMismatch("identity matrix is not in the span")
    degs = [group.parse_element(d) if isinstance(d, str) else int(d) for d in degrees]
    ga = GradedAlgebra(group, FDAlgebra(n, table, unit, names), degs, names, mats, letters)
    ga.check_grading_law()
    return ga


def as_graded(d: TwistedAlgebra) -> GradedAlgebra:
    """A twisted algebra as a real graded algebra (complex ones realified)."""
    A = d.to_fd_algebra()
    if d.is_complex:
        degs = [t for t in range(d.dim) for _ in (0, 1)]
    else:
        degs = list(range(d.dim))
    return GradedAlgebra(d.group, A, degs, A.names)


def trivial_grading(A: FDAlgebra, mats=None) -> GradedAlgebra:
    return GradedAlgebra(make_group(()), A, [0] * A.dim, None, mats)


# -- graded matrix algebras -----------------------------------------------------

@dataclass(eq=False)
class GradedMatrixAlgebra(GradedAlgebra):
    inner: TwistedAlgebra | None = None
    k: int = 1
    block_degrees: tuple[int, ...] = ()
    embedding: tuple[int, ...] = ()


def _embedding_images(d: TwistedAlgebra, ambient: GroupSpec, embedding) -> list[int]:
    T = d.group
    if embedding is None:
        if T.rank == 0:
            return [0]
        if T.orders == ambient.orders[: T.rank]:
            embedding = [ambient.generator_indices()[i] for i in range(T.rank)]
        else:
            raise EmbeddingInvalid("an explicit embedding of T into G is required")
    gens = [ambient.parse_element(e) if isinstance(e, str) else int(e) for e in embedding]
    if len(gens) != T.rank:
        raise EmbeddingInvalid("one image per generator of T is required")
    images = extend_on_generators(T, ambient, gens)
    if images is None or len(set(images)) != T.order:
        raise EmbeddingInvalid("generator images do not define an injective homomorphism")
    return images


def build_graded_matrix(d: TwistedAlgebra, ambient: GroupSpec, degrees: Sequence,
                        embedding=None) -> GradedMatrixAlgebra:
    """M_k(D): entry (i, j) holding d in D_t has degree g_i t g_j^-1."""
    k = len(degrees)
    if k < 1:
        raise EmbeddingInvalid("need at least one degree")
    images = _embedding_images(d, ambient, embedding)
    gs = [ambient.parse_element(g) if isinstance(g, str) else int(g) for g in degrees]
    if any(not 0 <= g < ambient.order for g in gs):
        raise EmbeddingInvalid("degree outside the ambient group")
    D = d.to_fd_algebra()
    dD = D.dim
    total = k * k * dD
    if total > DIM_BOUND:
        raise SizeBoundExceeded(f"dimension {total} exceeds {DIM_BOUND}")
    # real basis element s of D has D-degree tdeg[s]
    tdeg = [s // 2 if d.is_complex else s for s in range(dD)]

    def idx(i, j, s):
        return (i * k + j) * dD + s

    table = {}
    for i in range(k):
        for j in range(k):
            for s in range(dD):
                for l in range(k):
                    for r in range(dD):
                        p = D.basis_product(s, r)
                        if p:
                            table[(idx(i, j, s), idx(j, l, r))] = {idx(i, l, q): v for q, v in p.items()}
    unit = {}
    for i in range(k):
        for s, v in D.unit.items():
            unit[idx(i, i, s)] = v
    names = []
    degs = []
    add, neg = ambient.add_table, ambient.neg_table
    for i in range(k):
        for j in range(k):
            for s in range(dD):
                names.append(f"E{i + 1}{j + 1}*{D.names[s]}")
                degs.append(int(add[add[gs[i], images[tdeg[s]]], neg[gs[j]]]))
    A = FDAlgebra(total, table, unit, names)
    out = GradedMatrixAlgebra(ambient, A, degs, names, None, None, {},
                              d, k, tuple(gs), tuple(images))
    out.check_grading_law()
    return out


# -- division gradings -----------------------------------------------------------

def is_invertible(A: FDAlgebra, x: dict) -> bool:
    """x is invertible iff left multiplication by x has full rank."""
    rr = RowReducer()
    for j in range(A.dim):
        rr.add(A.mul(x, {j: 1}))
    return rr.rank == A.dim


def _candidates(idx: Sequence[int]):
    for b in idx:
        yield {b: Fraction(1)}
    m = len(idx)
    if m < 2:
        return
    # small deterministic combinations, then points on a moment curve
    for s in range(1, _GENERIC_TRIES + 1):
        yield {b: Fraction(((s * (p + 1)) % 5) - 2 or 1) for p, b in enumerate(idx)}
    for s in range(2, 2 + _GENERIC_TRIES):
        yield {b: Fraction(s) ** p for p, b in enumerate(idx)}


def component_has_invertible(ga: GradedAlgebra, g: int) -> bool:
    idx = ga.components().get(g, [])
    return any(is_invertible(ga.alg, x) for x in _candidates(idx))


def is_division_grading(ga: GradedAlgebra) -> bool:
    if ga.dim > DIM_BOUND:
        raise SizeBoundExceeded(f"dimension {ga.dim} exceeds {DIM_BOUND}")
    comps = ga.components()
    if 0 not in comps:
        return False
    try:
        De = identify_algebra(ga.component_subalgebra(0))
    except UnrecognizedStructure:
        return False
    if De.factors not in ((("R", 1),), (("C", 1),), (("H", 1),)):
        return False
    de = len(comps[0])
    if any(len(b) != de for b in comps.values()):
        return False
    return all(component_has_invertible(ga, g) for g in comps)


def component_profile(ga: GradedAlgebra, check_division: bool = False) -> dict[int, int]:
    prof = ga.component_profile()
    if check_division and len(set(prof.values())) != 1:
        raise NotADivisionGrading("components of a division grading must have equal dimension")
    return prof


def is_coarsening(coarse: GradedAlgebra, fine: GradedAlgebra) -> bool:
    """Every component of ``fine`` lies inside some component of ``coarse``."""
    if coarse.dim != fine.dim:
        raise BasisMismatch("algebras have different dimensions")
    if coarse.mats is not None and fine.mats is not None:
        vc, vf = coarse.vectors(), fine.vectors()
        if len(coarse.mats[0]) != len(fine.mats[0]):
            raise BasisMismatch("matrix sizes differ")
        full = RowReducer()
        for v in vc:
            full.add(v)
        if any(full.reduce(v) for v in vf):
            raise BasisMismatch("gradings live on different subalgebras")
    elif coarse.alg is fine.alg:
        vc = [{i: Fraction(1)} for i in range(coarse.dim)]
        vf = vc
    else:
        raise BasisMismatch("no common basis to compare the gradings")
    reducers = []
    for g, idx in coarse.components().items():
        rr = RowReducer()
        for i in idx:
            rr.add(vc[i])
        reducers.append(rr)
    for g, idx in fine.components().items():
        if not any(all(not rr.reduce(vf[i]) for i in idx) for rr in reducers):
            return False
    return True


def graded_tensor(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    n1, n2 = a.dim, b.dim
    if n1 * n2 > DIM_BOUND:
        raise SizeBoundExceeded(f"dimension {n1 * n2} exceeds {DIM_BOUND}")
    G = a.group.direct_product(b.group)
    table = {}
    for i in range(n1):
        for k in range(n1):
            p = a.alg.basis_product(i, k)
            if not p:
                continue
            for j in range(n2):
                for l in range(n2):
                    q = b.alg.basis_product(j, l)
                    if q:
                        table[(i + n1 * j, k + n1 * l)] = {m + n1 * r: x * y
                                                          for m, x in p.items() for r, y in q.items()}
    unit = {m + n1 * r: x * y for m, x in a.alg.unit.items() for r, y in b.alg.unit.items()}
    names = [f"{a.names[i]}(x){b.names[j]}" for j in range(n2) for i in range(n1)]
    degs = [a.group.pair_index(b.group, a.degrees[i], b.degrees[j]) for j in range(n2) for i in range(n1)]
    mats = None
    if a.mats is not None and b.mats is not None:
        mats = [kron(a.mats[i], b.mats[j]) for j in range(n2) for i in range(n1)]
    letters = None
    if a.letters or b.letters:
        from .groups import GENERATOR_LETTERS
        la = a.letters or GENERATOR_LETTERS[: a.group.rank]
        lb = b.letters or GENERATOR_LETTERS[a.group.rank: a.group.rank + b.group.rank]
        letters = (la[: a.group.rank] + lb[: b.group.rank])
    out = GradedAlgebra(G, FDAlgebra(n1 * n2, table, unit, names), degs, names, mats, letters)
    out.check_grading_law()
    return out


@dataclass
class Centralizer:
    algebra: GradedAlgebra
    vectors: list[dict]  # basis of the centralizer inside the ambient algebra
    K: Subgroup


def neutral_centralizer(ga: GradedAlgebra) -> Centralizer:
    """C(D_e), solved component by component; K is its support."""
    if ga.dim > DIM_BOUND:
        raise SizeBoundExceeded(f"dimension {ga.dim} exceeds {DIM_BOUND}")
    A = ga.alg
    comps = ga.components()
    De = [{i: Fraction(1)} for i in comps.get(0, [])]
    vecs, degs = [], []
    for g, idx in comps.items():
        # unknowns: coefficients on the basis of the component
        eqs = []
        for y in De:
            rows: dict[int, dict] = {}
            for p, i in enumerate(idx):
                ei = {i: 1}
                diff = vec_add(A.mul(ei, y), A.mul(y, ei), -1)
                for w, c in diff.items():
                    rows.setdefault(w, {})[p] = c
            eqs.extend(rows.values())
        for sol in nullspace(eqs, len(idx)):
            vecs.append({idx[p]: c for p, c in sol.items()})
            degs.append(g)
    # gradedness: the componentwise solutions span the full centralizer
    full = A.commutant(De)
    if len(full) != len(vecs):
        raise UnrecognizedStructure("centralizer is not a graded subspace")
    sub = subalgebra_from_vectors(A, vecs)
    names = [f"c{i}" for i in range(len(vecs))]
    mats = None
    if ga.mats is not None:
        size = len(ga.mats[0])
        mats = [mat_from_realified(_combine(ga.vectors(), v), size) for v in vecs]
    cg = GradedAlgebra(ga.group, sub, degs, names, mats, ga.letters)
    K = Subgroup(ga.group, tuple(sorted(set(degs))))
    return Centralizer(cg, vecs, K)


def _combine(basis_vecs: Sequence[dict], coeffs: Mapping[int, Fraction]) -> dict:
    out: dict = {}
    for i, c in coeffs.items():
        out = vec_add(out, basis_vecs[i], c)
    return out


def double_centralizer_holds(ga: GradedAlgebra) -> bool:
    """dim D = dim D_e * dim C(D_e)."""
    c = neutral_centralizer(ga)
    return ga.dim == len(ga.components().get(0, [])) * c.algebra.dim


# -- labels -------------------------------------------------------------------------

@dataclass(frozen=True)
class GradingLabel:
    tag: str
    m: int
    algebra: AlgebraClass

    def to_json(self) -> dict:
        return {"label": self.tag, "m": self.m, "algebra": self.algebra.label()}

    def __str__(self):
        return f"{self.tag} ({self.algebra.label()})"


def _support_subgroup(ga: GradedAlgebra) -> Subgroup:
    sup = Subgroup(ga.group, tuple(ga.support()))
    if not sup.is_closed():
        raise NotADivisionGrading("support is not a subgroup")
    return sup


def _dim1_tag(cls: AlgebraClass, ga: GradedAlgebra, sup: Subgroup) -> str:
    if len(cls.factors) != 1:
        raise UnrecognizedStructure(f"{cls.label()} is not simple; labels cover simple algebras")
    div = cls.factors[0][0]
    if div == "R":
        return "a"
    if div == "H":
        return "b"
    exp2 = all(ga.group.element_order(t) <= 2 for t in sup.members)
    return "c" if exp2 else "d"


def label_division_grading(ga: GradedAlgebra) -> GradingLabel:
    if not is_division_grading(ga):
        raise NotADivisionGrading("not a division grading")
    sup = _support_subgroup(ga)
    cls = identify_algebra(ga.alg)
    de = len(ga.components()[0])
    m = max(sup.order.bit_length() - 1, 0) // 2
    if de == 1:
        return GradingLabel("1-" + _dim1_tag(cls, ga, sup), m, cls)
    if de == 4:
        c = neutral_centralizer(ga)
        inner = label_division_grading(c.algebra)
        return GradingLabel("4-" + inner.tag.split("-")[1], inner.m, cls)
    if de != 2:
        raise UnrecognizedStructure(f"component dimension {de}")
    if len(cls.factors) != 1:
        raise UnrecognizedStructure(f"{cls.label()} is not simple; labels cover simple algebras")
    div = cls.factors[0][0]
    if div == "R":
        return GradingLabel("2-a", m, cls)
    if div == "H":
        return GradingLabel("2-b", m, cls)
    # complex case: is the neutral component the center?
    Z = ga.alg.center()
    rr = RowReducer()
    for z in Z:
        rr.add(z)
    if all(not rr.reduce({i: 1}) for i in ga.components()[0]):
        return GradingLabel("2-f", m, cls)
    K = neutral_centralizer(ga).K
    outside = set(sup.members) - set(K.members)
    order4 = {t for t in sup.members if ga.group.element_order(t) == 4}
    if order4 and outside == order4:
        return GradingLabel("2-e", m, cls)
    if not order4:
        return GradingLabel("2-c", m, cls)
    return GradingLabel("2-d", m, cls)


# -- multiplicity functions ---------------------------------------------------------

def coset_rep(G: GroupSpec, T: Subgroup, g: int) -> int:
    add = G.add_table
    return min(int(add[g, t]) for t in T.members)


def coset_reps(G: GroupSpec, T: Subgroup) -> list[int]:
    return sorted({coset_rep(G, T, g) for g in range(G.order)})


@dataclass(frozen=True)
class MultiplicityFunction:
    group: GroupSpec
    T: Subgroup
    values: tuple[tuple[int, int], ...]  # (coset representative, multiplicity), all cosets

    def __getitem__(self, g: int) -> int:
        r = coset_rep(self.group, self.T, g)
        return dict(self.values)[r]

    @property
    def total(self) -> int:
        return sum(v for _, v in self.values)

    def as_list(self) -> list[int]:
        return [v for _, v in self.values]

    def support(self) -> list[int]:
        return [r for r, v in self.values if v]

    def degrees(self) -> list[int]:
        out = []
        for r, v in self.values:
            out.extend([r] * v)
        return out

    def to_json(self) -> dict:
        return {self.group.name(r): v for r, v in self.values if v}


def kappa_from_degrees(G: GroupSpec, T: Subgroup, degrees: Sequence) -> MultiplicityFunction:
    gs = [G.parse_element(g) if isinstance(g, str) else int(g) for g in degrees]
    counts = {r: 0 for r in coset_reps(G, T)}
    for g in gs:
        counts[coset_rep(G, T, g)] += 1
    return MultiplicityFunction(G, T, tuple(sorted(counts.items())))


def kappa_from_mapping(G: GroupSpec, T: Subgroup, mapping: Mapping) -> MultiplicityFunction:
    counts = {r: 0 for r in coset_reps(G, T)}
    for g, v in mapping.items():
        g = G.parse_element(g) if isinstance(g, str) else int(g)
        counts[coset_rep(G, T, g)] += int(v)
    return MultiplicityFunction(G, T, tuple(sorted(counts.items())))


def identify(ga: GradedAlgebra) -> AlgebraClass:
    return identify_algebra(ga.alg)

