"""Skew elements under an involution as graded Lie algebras, and the
six-parameter model (D, phi0, g0, kappa, sigma, delta) of graded matrix
algebras with involution.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (InconsistentParameters, NotAnInvolution, PreconditionViolated,
                     SizeBoundExceeded)
from .exact import GaussQ, SpanSolver, nullspace, rank, signature, vec_add
from .forms import QuadraticForm, polarization
from .graded import (DIM_BOUND, GradedAlgebra, GradedMatrixAlgebra, MultiplicityFunction,
                     build_graded_matrix, coset_rep, coset_reps, gmat, kappa_from_mapping,
                     mat_mul, realify, transpose)
from .groups import GroupSpec, Subgroup, make_group, parse_group
from .involutions import GradedInvolution, LinearInvolution
from .structure import FDAlgebra
from .twisted import AlgebraElement, TwistedAlgebra, build_twisted

LIE_DIM_BOUND = 256


# -- graded Lie algebras -------------------------------------------------------------

@dataclass(eq=False)
class GradedLieAlgebra:
    parent: GradedAlgebra
    basis: list[dict]  # vectors in the parent basis
    degrees: list[int]
    brackets: dict = field(default_factory=dict)  # (i, j) -> coordinates in ``basis``

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                c = self.brackets.get((i, j))
                if c:
                    out = vec_add(out, c, a * b)
        return out

    def components(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return dict(sorted(out.items()))

    def component_profile(self) -> dict[int, int]:
        return {g: len(v) for g, v in self.components().items()}

    def antisymmetry_violations(self) -> list[tuple[int, int]]:
        bad = []
        for i in range(self.dim):
            if self.brackets.get((i, i)):
                bad.append((i, i))
            for j in range(i + 1, self.dim):
                a = self.brackets.get((i, j), {})
                b = self.brackets.get((j, i), {})
                if vec_add(a, b):
                    bad.append((i, j))
        return bad

    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        bad = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                xy = self.brackets.get((i, j), {})
                for k in range(j + 1, n):
                    s = self.bracket(xy, {k: 1})
                    s = vec_add(s, self.bracket(self.brackets.get((j, k), {}), {i: 1}))
                    s = vec_add(s, self.bracket(self.brackets.get((k, i), {}), {j: 1}))
                    if s:
                        bad.append((i, j, k))
        return bad

    def grading_violations(self) -> list[tuple[int, int]]:
        add = self.parent.group.add_table
        bad = []
        for (i, j), c in self.brackets.items():
            want = int(add[self.degrees[i], self.degrees[j]])
            if any(self.degrees[k] != want for k in c):
                bad.append((i, j))
        return bad

    def verify(self):
        if self.antisymmetry_violations():
            raise NotAnInvolution("bracket is not anticommutative")
        if self.jacobi_violations():
            raise NotAnInvolution("Jacobi identity fails")
        if self.grading_violations():
            raise NotAnInvolution("bracket does not respect the grading")

    def to_json(self) -> dict:
        g = self.parent.group
        return {"dim": self.dim,
                "components": {self.parent.degree_name(d): n for d, n in self.component_profile().items()},
                "group": str(g)}


def _check_degree_preserving(r: GradedAlgebra, phi: LinearInvolution):
    for i, img in enumerate(phi.images):
        if any(r.degrees[k] != r.degrees[i] for k in img):
            raise NotAnInvolution("involution does not preserve degrees")


def eigen_components(r: GradedAlgebra, phi: LinearInvolution, sign: int) -> dict[int, list[dict]]:
    """{x : phi(x) = sign x}, solved one homogeneous component at a time."""
    out = {}
    for g, idx in r.components().items():
        pos = {b: k for k, b in enumerate(idx)}
        rows: dict[int, dict] = {}
        for b in idx:
            diff = vec_add(phi.images[b], {b: 1}, -sign)
            for w, c in diff.items():
                rows.setdefault(w, {})[pos[b]] = c
        sol = nullspace(list(rows.values()), len(idx))
        out[g] = [{idx[k]: c for k, c in v.items()} for v in sol]
    return out


def skew_lie(r: GradedAlgebra, phi: LinearInvolution, verify: bool = True) -> GradedLieAlgebra:
    if r.dim > LIE_DIM_BOUND:
        raise SizeBoundExceeded(f"dimension {r.dim} exceeds {LIE_DIM_BOUND}")
    if phi.algebra is not r.alg:
        raise PreconditionViolated("involution acts on a different algebra")
    _check_degree_preserving(r, phi)
    phi.verify()
    basis, degs = [], []
    for g, vecs in eigen_components(r, phi, -1).items():
        basis.extend(vecs)
        degs.extend([g] * len(vecs))
    A = r.alg
    brackets = {}
    if basis:
        solver = SpanSolver(basis)
        for i, x in enumerate(basis):
            for j, y in enumerate(basis):
                if i == j:
                    continue
                c = solver.solve(vec_add(A.mul(x, y), A.mul(y, x), -1))
                if c is None:
                    raise NotAnInvolution("skew elements are not closed under the commutator")
                if c:
                    brackets[(i, j)] = c
    L = GradedLieAlgebra(r, basis, degs, brackets)
    if verify:
        L.verify()
    return L


# -- matrix models -------------------------------------------------------------------

def matrix_algebra(n: int, degrees: Sequence | None = None, group: GroupSpec | None = None) -> GradedAlgebra:
    """M_n(R) on matrix units with the elementary grading deg E_ij = g_i - g_j."""
    group = group or make_group(())
    gs = [group.parse_element(g) if isinstance(g, str) else int(g) for g in (degrees or [0] * n)]
    if len(gs) != n:
        raise ValueError("one degree per row is required")
    table = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                table[(i * n + j, j * n + l)] = {i * n + l: 1}
    names = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    A = FDAlgebra(n * n, table, {i * n + i: 1 for i in range(n)}, names)
    mats = []
    for i in range(n):
        for j in range(n):
            m = [[0] * n for _ in range(n)]
            m[i][j] = 1
            mats.append(gmat(m))
    add, neg = group.add_table, group.neg_table
    degs = [int(add[gs[i], neg[gs[j]]]) for i in range(n) for j in range(n)]
    return GradedAlgebra(group, A, degs, names, mats)


def symplectic_form(n: int):
    if n % 2:
        raise PreconditionViolated("symplectic involution needs even size")
    h = n // 2
    J = [[0] * n for _ in range(n)]
    for i in range(h):
        J[i][h + i] = 1
        J[h + i][i] = -1
    return gmat(J)


def matrix_involution(r: GradedAlgebra, fn: Callable) -> LinearInvolution:
    return LinearInvolution(r.alg, tuple(r.linear_map(fn)))


def transpose_involution(r: GradedAlgebra) -> LinearInvolution:
    return matrix_involution(r, transpose)


def symplectic_involution(r: GradedAlgebra) -> LinearInvolution:
    """X -> J^-1 X^T J with J = [[0, I], [-I, 0]] (so J^-1 = -J)."""
    n = len(r.mats[0])
    J = symplectic_form(n)
    Jinv = [[-x for x in row] for row in J]
    return matrix_involution(r, lambda X: mat_mul(mat_mul(Jinv, transpose(X)), J))


def conj_transpose_involution(r: GradedAlgebra) -> LinearInvolution:
    from .graded import conj_transpose
    return matrix_involution(r, conj_transpose)


# -- six-parameter model -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SixParams:
    G: GroupSpec
    D: TwistedAlgebra
    phi0: GradedInvolution
    g0: int
    kappa: MultiplicityFunction
    sigma: tuple[tuple[int, int], ...]  # (coset rep, signature) for the signed cosets
    delta: int
    k: int
    embedding: tuple[int, ...] = ()  # images in G of the generators of T
    x_e: int = 0  # X_e = i^x_e * 1 (only meaningful when D_e is complex)

    @property
    def T(self) -> Subgroup:
        return Subgroup(self.G, tuple(sorted(self.t_images())))

    def t_images(self) -> list[int]:
        from .graded import _embedding_images
        return _embedding_images(self.D, self.G, list(self.embedding) or None)

    def sigma_map(self) -> dict[int, int]:
        return dict(self.sigma)

    def key(self):
        return (self.g0, self.kappa.values, tuple(sorted(self.sigma)))

    def replace(self, **kw) -> "SixParams":
        from dataclasses import replace
        return replace(self, **kw)

    def to_json(self) -> dict:
        G = self.G
        D = self.D
        out = {"group": str(G), "D": {"group": str(D.group)}}
        if D.is_complex:
            out["D"]["generator_phases"] = D.bichar.gen_phases().tolist()
            out["eta_c"] = list(self.phi0.eta_c)
        else:
            out["D"]["mu"] = D.form.signs
            out["eta"] = self.phi0.eta.signs
        out["embedding"] = [G.name(e) for e in self.embedding]
        out["g0"] = G.name(self.g0)
        out["k"] = self.k
        out["kappa"] = self.kappa.to_json()
        out["sigma"] = {G.name(r): v for r, v in self.sigma}
        out["delta"] = self.delta
        out["x_e"] = self.x_e
        return out

    @classmethod
    def from_json(cls, obj) -> "SixParams":
        from .forms import Bicharacter
        from .twisted import build_complex_twisted
        G = parse_group(obj["group"])
        T = parse_group(obj["D"]["group"])
        if "mu" in obj["D"]:
            D = build_twisted(T, QuadraticForm.from_signs(T, obj["D"]["mu"]))
            phi0 = GradedInvolution(D, eta=QuadraticForm.from_signs(T, obj.get("eta", obj["D"]["mu"])))
        else:
            D = build_complex_twisted(T, Bicharacter.from_generator_phases(T, obj["D"]["generator_phases"]))
            phi0 = GradedInvolution(D, eta_c=tuple(int(x) % 4 for x in obj["eta_c"]))
        phi0.verify()
        emb = tuple(G.parse_element(e) for e in obj.get("embedding", []))
        p = cls(G, D, phi0, G.parse_element(obj["g0"]), None, (), int(obj["delta"]),
                int(obj["k"]), emb, int(obj.get("x_e", 0)))
        kappa = kappa_from_mapping(G, p.T, obj["kappa"])
        sigma = tuple(sorted((coset_rep(G, p.T, G.parse_element(r)), int(v))
                             for r, v in obj.get("sigma", {}).items()))
        return p.replace(kappa=kappa, sigma=sigma)


def make_six_params(G: GroupSpec, D: TwistedAlgebra, phi0: GradedInvolution, g0, kappa: dict,
                    sigma: dict, delta: int, k: int | None = None, embedding=(), x_e: int = 0) -> SixParams:
    """Convenience constructor taking group-element names or indices."""
    def el(x):
        return G.parse_element(x) if isinstance(x, str) else int(x)
    emb = tuple(el(e) for e in embedding)
    p = SixParams(G, D, phi0, el(g0), None, (), delta, 0, emb, x_e)
    kap = kappa_from_mapping(G, p.T, kappa)
    sig = tuple(sorted((coset_rep(G, p.T, el(r)), int(v)) for r, v in sigma.items()))
    return p.replace(kappa=kap, sigma=sig, k=kap.total if k is None else k)


def _t_index(p: SixParams, g: int) -> int | None:
    """Preimage in T of an element of G, or None."""
    imgs = p.t_images()
    return imgs.index(g) if g in imgs else None


def _block_unit(p: SixParams, t: int) -> AlgebraElement:
    D = p.D
    u = D.basis(t)
    if t == 0 and p.x_e:
        if not D.is_complex:
            raise InconsistentParameters("a non-unit X_e needs complex scalars")
        u = u * D.unit_scalar(p.x_e)
    return u


def _inverse(D: TwistedAlgebra, u: AlgebraElement) -> AlgebraElement:
    (t, c), = u.coeffs.items()
    s = D.group.neg(t)
    lam = (D.basis(t) * D.basis(s)).coeffs[0]
    return D.element({s: 1 / (c * lam) if not D.is_complex else GaussQ(1) / (c * lam)})


def _phi0_ratio(p: SixParams, u: AlgebraElement):
    """lambda with phi0(u) = lambda u for a homogeneous u."""
    (t, c), = u.coeffs.items()
    return p.phi0(u).coeffs[t] / c


def check_six_params(p: SixParams) -> list[dict]:
    """Validate the parameters and return one block description per coset in supp(kappa)."""
    G = p.G
    if p.kappa.total != p.k:
        raise InconsistentParameters(f"sum of kappa is {p.kappa.total}, expected k = {p.k}")
    if p.delta not in (1, -1):
        raise InconsistentParameters("delta must be +1 or -1")
    if p.phi0.parent is not p.D:
        raise InconsistentParameters("phi0 acts on a different algebra")
    sig = p.sigma_map()
    blocks = []
    add = G.add_table
    for r in p.kappa.support():
        n = p.kappa[r]
        t_g = int(add[p.g0, add[r, r]])
        t = _t_index(p, t_g)
        if t is None:
            raise InconsistentParameters(f"g0 g^2 = {G.name(t_g)} is not in T for coset {G.name(r)}")
        u = _block_unit(p, t)
        lam = _phi0_ratio(p, u)
        if lam not in (1, -1):
            raise InconsistentParameters("phi0(X_t) is not a real multiple of X_t")
        signed = lam == p.delta
        if signed != (r in sig):
            raise InconsistentParameters(f"coset {G.name(r)}: marking disagrees with eta(t) delta")
        if signed:
            s = sig[r]
            if abs(s) > n or (n - s) % 2:
                raise InconsistentParameters(f"signature {s} impossible for multiplicity {n}")
            blocks.append({"rep": r, "size": n, "t": t, "unit": u, "kind": "diag",
                           "p": (n + s) // 2, "q": (n - s) // 2})
        else:
            if n % 2:
                raise InconsistentParameters(f"coset {G.name(r)} needs even multiplicity")
            blocks.append({"rep": r, "size": n, "t": t, "unit": u, "kind": "alt"})
    for r in sig:
        if p.kappa[r] == 0:
            raise InconsistentParameters("sigma is supported outside supp(kappa)")
    return blocks


def _S(block) -> tuple[list[list[int]], list[list[int]]]:
    n = block["size"]
    S = [[0] * n for _ in range(n)]
    if block["kind"] == "diag":
        for i in range(n):
            S[i][i] = 1 if i < block["p"] else -1
        return S, S
    h = n // 2
    for i in range(h):
        S[i][h + i] = 1
        S[h + i][i] = -1
    Sinv = [[-x for x in row] for row in S]
    return S, Sinv


def build_six_param(p: SixParams, ambient: GroupSpec | None = None
                    ) -> tuple[GradedMatrixAlgebra, LinearInvolution]:
    """M_k(D) with phi(X) = Phi^-1 phi0(X^T) Phi, Phi = diag(X_{t_i} S_i)."""
    G = ambient or p.G
    blocks = check_six_params(p)
    D = p.D
    dD = D.real_dim
    if p.k * p.k * dD > DIM_BOUND:
        raise SizeBoundExceeded(f"dimension {p.k * p.k * dD} exceeds {DIM_BOUND}")
    degrees = []
    row_block, row_local = [], []
    for b, blk in enumerate(blocks):
        for i in range(blk["size"]):
            degrees.append(blk["rep"])
            row_block.append(b)
            row_local.append(i)
    R = build_graded_matrix(D, G, degrees, list(p.embedding) or None)
    k = p.k
    mats = [_S(blk) for blk in blocks]
    units = [blk["unit"] for blk in blocks]
    inverses = [_inverse(D, u) for u in units]
    starts = []
    off = 0
    for blk in blocks:
        starts.append(off)
        off += blk["size"]

    def d_elem(s: int) -> AlgebraElement:
        if D.is_complex:
            t, part = divmod(s, 2)
            return D.element({t: GaussQ(0, 1) if part else GaussQ(1)})
        return D.basis(s)

    def d_coords(x: AlgebraElement) -> dict:
        out = {}
        for t, c in x.coeffs.items():
            if D.is_complex:
                c = GaussQ.coerce(c)
                if c.re:
                    out[2 * t] = c.re
                if c.im:
                    out[2 * t + 1] = c.im
            else:
                out[t] = Fraction(c)
        return out

    images = []
    for a in range(k):
        for b in range(k):
            ba, bb = row_block[a], row_block[b]
            S_a = mats[ba][0]
            Sinv_b = mats[bb][1]
            for s in range(dD):
                core = inverses[bb] * p.phi0(d_elem(s)) * units[ba]
                cv = d_coords(core)
                img: dict = {}
                la, lb = row_local[a], row_local[b]
                for bp in range(blocks[bb]["size"]):
                    x = Sinv_b[bp][lb]
                    if not x:
                        continue
                    for ap in range(blocks[ba]["size"]):
                        y = S_a[la][ap]
                        if not y:
                            continue
                        row, col = starts[bb] + bp, starts[ba] + ap
                        for q, v in cv.items():
                            img = vec_add(img, {(row * k + col) * dD + q: v}, x * y)
                images.append(img)
    phi = LinearInvolution(R.alg, tuple(images))
    _check_degree_preserving(R, phi)
    try:
        phi.verify()
    except NotAnInvolution as exc:
        raise InconsistentParameters(f"constructed map is not an involution: {exc}") from None
    return R, phi


# -- parameter action ----------------------------------------------------------------

def extended_signature(p: SixParams) -> dict[int, int]:
    """sigma~ on G: sigma~(g_i + t) = sigma(g_i) eta(t) mu(t) beta(t, t_i)."""
    D = p.D
    if D.is_complex or D.form is None:
        raise PreconditionViolated("extended signature is implemented for real D")
    G = p.G
    imgs = p.t_images()
    mu, eta = D.form, p.phi0.eta
    beta = polarization(mu)
    add = G.add_table
    out = {}
    for r, s in p.sigma:
        t_i = _t_index(p, int(add[p.g0, add[r, r]]))
        for t in range(D.dim):
            out[int(add[r, imgs[t]])] = s * eta.values[t] * mu.values[t] * beta.sign(t, t_i)
    return out


def param_action(g: int, flip: bool, p: SixParams) -> SixParams:
    """Shift kappa and sigma~ by g, replace g0 by g0 - 2g, optionally negate signatures."""
    G = p.G
    T = p.T
    add, neg = G.add_table, G.neg_table
    ext = extended_signature(p)
    sgn = -1 if flip else 1
    kappa = MultiplicityFunction(G, T, tuple(
        (r, p.kappa[int(add[r, neg[g]])]) for r in coset_reps(G, T)))
    signed = {coset_rep(G, T, int(add[r, g])) for r, _ in p.sigma}
    sigma = tuple(sorted((r, sgn * ext[int(add[r, neg[g]])]) for r in signed))
    g0 = int(add[p.g0, neg[add[g, g]]])
    return p.replace(kappa=kappa, sigma=sigma, g0=g0)


def same_orbit(p1: SixParams, p2: SixParams, G: GroupSpec | None = None):
    """(True, (g, flip)) when p2 = g . p1 up to a global sign flip, else (False, None)."""
    G = G or p1.G
    if G.order > 64:
        raise SizeBoundExceeded(f"|G| = {G.order} exceeds 64")
    if p1.D is not p2.D and not _same_d(p1, p2):
        raise PreconditionViolated("orbit search needs the same D, phi0 and delta")
    if p1.delta != p2.delta:
        raise PreconditionViolated("orbit search needs the same D, phi0 and delta")
    target = p2.key()
    for g in range(G.order):
        for flip in (False, True):
            if param_action(g, flip, p1).key() == target:
                return True, (g, flip)
    return False, None


def _same_d(p1: SixParams, p2: SixParams) -> bool:
    a, b = p1.D, p2.D
    return (a.group == b.group and a.is_complex == b.is_complex and
            (a.phases == b.phases).all() and p1.phi0.to_json() == p2.phi0.to_json() and
            p1.embedding == p2.embedding)


def orbit_invariants(R: GradedAlgebra, phi: LinearInvolution) -> dict:
    """Per-degree (dim Sym, dim Skew, signature of tr(x^2) on Sym for 2-torsion degrees)."""
    A = R.alg
    sym = eigen_components(R, phi, 1)
    skew = eigen_components(R, phi, -1)
    G = R.group
    out = {}
    for g in R.components():
        entry = [len(sym[g]), len(skew[g])]
        if int(G.add_table[g, g]) == 0 and sym[g]:
            vs = sym[g]
            gram = [[A.trace(A.mul(x, y)) for y in vs] for x in vs]
            pos, negc, _ = signature(gram)
            entry.append(pos - negc)
        out[G.name(g)] = tuple(entry)
    return out


# -- random parameters ---------------------------------------------------------------

def _d_options(G: GroupSpec):
    """(T, mu signs, embedding) choices for the generator over Z2^2 and Z4."""
    R = (make_group(()), "+", ())
    if G.orders == (2, 2):
        H = (make_group((2, 2)), "+---", (G.parse_element("a"), G.parse_element("b")))
        return [R, (make_group((2,)), "+-", (G.parse_element("a"),)), H]
    if G.orders == (4,):
        return [R, (make_group((2,)), "+-", (G.parse_element("a^2"),))]
    return [R]


def random_six_params(G: GroupSpec, rng: random.Random, max_k: int = 4) -> SixParams:
    opts = _d_options(G)
    for _ in range(1000):
        T, mu_s, emb = rng.choice(opts)
        D = build_twisted(T, QuadraticForm.from_signs(T, mu_s))
        etas = [h for h in _same_polarization_forms(D.form)]
        phi0 = GradedInvolution(D, eta=rng.choice(etas))
        delta = rng.choice((1, -1))
        g0 = rng.randrange(G.order)
        base = SixParams(G, D, phi0, g0, None, (), delta, 0, emb)
        Tsub = base.T
        add = G.add_table
        reps = [r for r in coset_reps(G, Tsub) if _t_index(base, int(add[g0, add[r, r]])) is not None]
        if not reps:
            continue
        kappa, sigma = {}, {}
        for r in reps:
            n = rng.randrange(0, 3)
            if not n:
                continue
            t = _t_index(base, int(add[g0, add[r, r]]))
            lam = _phi0_ratio(base, _block_unit(base, t))
            if lam == delta:
                kappa[r] = n
                sigma[r] = rng.choice(range(-n, n + 1, 2))
            else:
                kappa[r] = 2 * ((n + 1) // 2)
        total = sum(kappa.values())
        if not total or total > max_k:
            continue
        kap = kappa_from_mapping(G, Tsub, kappa)
        return base.replace(kappa=kap, sigma=tuple(sorted(sigma.items())), k=total)
    raise RuntimeError("could not sample consistent parameters")


def _same_polarization_forms(mu: QuadraticForm) -> list[QuadraticForm]:
    from .forms import iter_all_forms
    b = polarization(mu)
    return [h for h in iter_all_forms(mu.group.rank) if polarization(h) == b]


# -- transfer of gradings ------------------------------------------------------------

def _partition(vec_groups: Sequence[Sequence[dict]]) -> list[list[dict]]:
    return [list(v) for v in vec_groups if v]


def _same_partition(P: list[list[dict]], Q: list[list[dict]]) -> bool:
    if sorted(map(len, P)) != sorted(map(len, Q)):
        return False
    for U in P:
        if not any(len(V) == len(U) and rank(list(U) + list(V)) == len(U) for V in Q):
            return False
    return True


@dataclass
class TransferReport:
    lie_dims: list[int]
    graded: list[bool]
    distinct_on_algebra: bool
    distinct_on_lie: bool

    @property
    def informative(self) -> bool:
        return len(self.graded) > 1 and max(self.lie_dims, default=0) > 1

    @property
    def ok(self) -> bool:
        return all(self.graded) and (not self.distinct_on_algebra or self.distinct_on_lie)

    def to_json(self) -> dict:
        return {"lie_dims": self.lie_dims, "graded": self.graded,
                "distinct_on_algebra": self.distinct_on_algebra,
                "distinct_on_lie": self.distinct_on_lie,
                "informative": self.informative, "ok": self.ok}


def verify_transfer_bijection_sample(gradings: Sequence[GradedAlgebra], phi_fn: Callable) -> TransferReport:
    """Forward direction only: gradings of (R, phi) restrict to gradings of Skew(R, phi).

    Each grading must carry explicit matrices spanning the same algebra;
    gradings are compared as decompositions into subspaces of the matrix space.
    """
    lie_parts, alg_parts, dims, graded = [], [], [], []
    for r in gradings:
        phi = matrix_involution(r, phi_fn)
        L = skew_lie(r, phi, verify=False)
        if L.dim > 21:
            raise SizeBoundExceeded("transfer check is limited to dim L <= 21")
        graded.append(not L.antisymmetry_violations() and not L.jacobi_violations()
                      and not L.grading_violations())
        dims.append(L.dim)
        vecs = r.vectors()

        def to_matrix_space(x):
            out: dict = {}
            for i, c in x.items():
                out = vec_add(out, vecs[i], c)
            return out
        alg_parts.append(_partition([[vecs[i] for i in idx] for idx in r.components().values()]))
        lie_parts.append(_partition([[to_matrix_space(L.basis[i]) for i in idx]
                                     for idx in L.components().values()]))
    n = len(gradings)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    d_alg = all(not _same_partition(alg_parts[i], alg_parts[j]) for i, j in pairs)
    d_lie = all(not _same_partition(lie_parts[i], lie_parts[j]) for i, j in pairs)
    return TransferReport(dims, graded, d_alg, d_lie)
