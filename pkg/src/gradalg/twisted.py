"""Twisted group algebras: one-dimensional homogeneous components X_t.

The cocycle is pinned by the normal form X_u = X_{t1}^{u1} ... X_{tN}^{uN}
over the ordered generators t1..tN.  For a sign form on Z2^N this gives

    c(u, v) = prod_{i>j} beta(t_i, t_j)^(u_i v_j) * prod_i mu(t_i)^(u_i v_i)

and for a complex bicharacter (X_{t_i} of order n_i)

    c(u, v) = prod_{i>j} beta(t_i, t_j)^(u_i v_j).

Both are bilinear in the residue vectors, hence 2-cocycles.  Cocycle values
are stored as phases mod 4.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import (CocycleVerificationFailed, DegenerateBicharacter, GradAlgError,
                     InvalidGroup, ParseError, PreconditionViolated, SizeBoundExceeded,
                     UnsupportedExponent)
from .exact import UNIT_PHASES, GaussQ, signature
from .forms import Bicharacter, QuadraticForm, arf, polarization
from .groups import GroupSpec, GENERATOR_LETTERS
from .structure import AlgebraClass, FDAlgebra, class_from_arf, identify_algebra

VERIFY_BOUND = 64
REGREP_BOUND = 2 ** 10
REGREP_VERIFY_BOUND = 256


@dataclass(frozen=True, eq=False)
class TwistedAlgebra:
    group: GroupSpec
    phases: np.ndarray  # (n, n) cocycle phases mod 4
    scalars: str = "rational"  # or "gaussian"
    form: QuadraticForm | None = None
    bichar: Bicharacter | None = None
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        p = np.asarray(self.phases, dtype=np.int64) % 4
        p.setflags(write=False)
        object.__setattr__(self, "phases", p)
        if self.scalars not in ("rational", "gaussian"):
            raise ValueError(f"unknown scalar field {self.scalars!r}")
        if self.scalars == "rational" and np.any(p % 2):
            raise CocycleVerificationFailed("rational algebra with non-real cocycle")

    @property
    def dim(self) -> int:
        return self.group.order

    @property
    def real_dim(self) -> int:
        return self.dim * (2 if self.scalars == "gaussian" else 1)

    @property
    def is_complex(self) -> bool:
        return self.scalars == "gaussian"

    def coefficient_type(self):
        return GaussQ if self.is_complex else Fraction

    def scalar(self, c):
        return GaussQ.coerce(c) if self.is_complex else Fraction(c)

    def unit_scalar(self, phase: int):
        phase %= 4
        if self.is_complex:
            return UNIT_PHASES[phase]
        return Fraction(1 - phase)  # phases 0 or 2

    def cocycle(self, u: int, v: int):
        return self.unit_scalar(int(self.phases[u, v]))

    # -- names --------------------------------------------------------------
    def basis_name(self, t: int) -> str:
        if self.labels:
            return self.labels[t]
        if t == 0:
            return "1"
        parts = []
        for k, r in enumerate(self.group.residues(t)):
            if r:
                parts.append(f"X_{GENERATOR_LETTERS[k]}" + (f"^{r}" if r > 1 else ""))
        return "".join(parts)

    # -- elements ---------------------------------------------------------
    def element(self, coeffs: Mapping[int, object] | None = None) -> "AlgebraElement":
        return AlgebraElement(self, coeffs or {})

    def basis(self, t: int) -> "AlgebraElement":
        return AlgebraElement(self, {t: 1})

    def X(self, name: str) -> "AlgebraElement":
        """Basis element by group name (``"ab"`` -> X_ab)."""
        return self.basis(self.group.parse_element(name))

    @property
    def one(self) -> "AlgebraElement":
        return self.basis(0)

    def parse(self, text: str) -> "AlgebraElement":
        """Read ``"1 + 2X_a - 3X_aX_b"`` style text (labels are also accepted)."""
        names = {self.basis_name(t): t for t in range(self.dim)}
        return _parse_linear(text, names, self)

    # -- products -----------------------------------------------------------
    def multiply(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        if x.parent is not self or y.parent is not self:
            raise GradAlgError("elements belong to different algebras")
        add = self.group.add_table
        out: dict = {}
        for u, a in x.coeffs.items():
            for v, b in y.coeffs.items():
                w = int(add[u, v])
                c = a * b * self.cocycle(u, v)
                s = out.get(w, 0) + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return AlgebraElement(self, out)

    # -- verification ---------------------------------------------------------
    def associativity_defect(self) -> int:
        """Number of triples violating the cocycle identity."""
        c = self.phases
        add = self.group.add_table
        n = self.dim
        bad = 0
        for u in range(n):
            uv = add[u]  # u+v over v
            lhs = c[u][:, None] + c[uv][:, :]  # c(u,v) + c(uv, w)
            rhs = c[:, :] + c[u][add]  # c(v,w) + c(u, v+w)
            bad += int(np.count_nonzero((lhs - rhs) % 4))
        return bad

    def verify(self, mu: QuadraticForm | None = None, beta: Bicharacter | None = None):
        n = self.dim
        c = self.phases
        if n <= VERIFY_BOUND and self.associativity_defect():
            raise CocycleVerificationFailed("cocycle identity fails")
        if np.any(c[0, :]) or np.any(c[:, 0]):
            raise CocycleVerificationFailed("X_e is not the unit")
        if mu is not None:
            diag = np.diagonal(c)
            want = np.where(mu.array == 1, 0, 2)
            if np.any((diag - want) % 4):
                raise CocycleVerificationFailed("X_t^2 != mu(t) for some t")
        if beta is not None:
            if np.any((c - c.T - beta.phases) % 4):
                raise CocycleVerificationFailed("commutation relations fail")

    # -- structure ------------------------------------------------------------
    def commutation_bichar(self) -> Bicharacter:
        return Bicharacter(self.group, (self.phases - self.phases.T) % 4)

    def center_basis(self) -> list[int]:
        return list(self.commutation_bichar().radical_members)

    def regular_representation(self) -> "RegularRep":
        if self.dim > REGREP_BOUND:
            raise SizeBoundExceeded(f"|T| = {self.dim} exceeds {REGREP_BOUND}")
        rep = RegularRep(self.group.add_table.copy(), self.phases.copy())
        if self.dim <= REGREP_VERIFY_BOUND and not rep.is_multiplicative(self.phases, self.group.add_table):
            raise CocycleVerificationFailed("regular representation is not multiplicative")
        return rep

    def to_fd_algebra(self) -> FDAlgebra:
        """Real structure constants read off the regular representation.

        For Gaussian scalars the real basis is X_0, iX_0, X_1, iX_1, ...
        Built once per algebra, so involutions and gradings share it.
        """
        cached = self.__dict__.get("_fd")
        if cached is None:
            cached = self._build_fd()
            object.__setattr__(self, "_fd", cached)
        return cached

    def _build_fd(self) -> FDAlgebra:
        rep = self.regular_representation()
        n = self.dim
        table = {}
        if not self.is_complex:
            for u in range(n):
                for v in range(n):
                    w, ph = int(rep.perm[u, v]), int(rep.phase[u, v])
                    table[(u, v)] = {w: 1 - ph}
            return FDAlgebra(n, table, {0: 1}, [self.basis_name(t) for t in range(n)],
                             generators=self.group.generator_indices())
        for u in range(n):
            for v in range(n):
                w, ph = int(rep.perm[u, v]), int(rep.phase[u, v])
                for a in (0, 1):
                    for b in (0, 1):
                        z = UNIT_PHASES[(ph + a + b) % 4]
                        vec = {}
                        if z.re:
                            vec[2 * w] = int(z.re)
                        if z.im:
                            vec[2 * w + 1] = int(z.im)
                        table[(2 * u + a, 2 * v + b)] = vec
        names = []
        for t in range(n):
            names += [self.basis_name(t), "i" + self.basis_name(t)]
        gens = [1] + [2 * g for g in self.group.generator_indices()]
        return FDAlgebra(2 * n, table, {0: 1}, names, generators=gens)

    def __repr__(self):
        return f"TwistedAlgebra({self.group}, {self.scalars})"


@dataclass(frozen=True, eq=False)
class RegularRep:
    """Left regular representation as signed permutations.

    ``L_u e_v = i^phase[u, v] e_{perm[u, v]}``.
    """
    perm: np.ndarray
    phase: np.ndarray

    @property
    def size(self) -> int:
        return self.perm.shape[0]

    def compose(self, u: int, v: int):
        """(perm, phase) arrays of L_u L_v."""
        p = self.perm[u][self.perm[v]]
        ph = (self.phase[v] + self.phase[u][self.perm[v]]) % 4
        return p, ph

    def is_multiplicative(self, cocycle: np.ndarray, add: np.ndarray) -> bool:
        for u in range(self.size):
            # L_u L_v for every v at once
            p = self.perm[u][self.perm]  # (v, w)
            ph = (self.phase + self.phase[u][self.perm]) % 4
            if not np.array_equal(p, self.perm[add[u]]):
                return False
            if np.any((ph - cocycle[u][:, None] - self.phase[add[u]]) % 4):
                return False
        return True

    def dense(self, u: int) -> np.ndarray:
        """Complex dense matrix of L_u."""
        n = self.size
        M = np.zeros((n, n), dtype=complex)
        M[self.perm[u], np.arange(n)] = np.array([1, 1j, -1, -1j])[self.phase[u]]
        return M

    def dense_int(self, u: int) -> np.ndarray:
        """Integer dense matrix of L_u (real cocycles only)."""
        if np.any(self.phase[u] % 2):
            raise ValueError("L_u is not real")
        n = self.size
        M = np.zeros((n, n), dtype=np.int64)
        M[self.perm[u], np.arange(n)] = 1 - self.phase[u]
        return M

    def trace_gram(self) -> np.ndarray:
        """Phases-to-values matrix of tr(L_u L_v), computed by composition."""
        n = self.size
        vals = np.array([1, 1j, -1, -1j])
        G = np.zeros((n, n), dtype=complex)
        idx = np.arange(n)
        for u in range(n):
            p = self.perm[u][self.perm]  # row v: permutation of L_u L_v
            ph = (self.phase + self.phase[u][self.perm]) % 4
            fixed = p == idx[None, :]
            G[u] = (vals[ph] * fixed).sum(axis=1)
        return G


@dataclass(eq=False)
class AlgebraElement:
    parent: TwistedAlgebra
    coeffs: dict

    def __post_init__(self):
        conv = self.parent.scalar
        self.coeffs = {int(t): conv(c) for t, c in self.coeffs.items() if c}

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.parent.multiply(self, other)
        c = self.parent.scalar(other)
        return AlgebraElement(self.parent, {t: a * c for t, a in self.coeffs.items()})

    def __rmul__(self, other):
        c = self.parent.scalar(other)
        return AlgebraElement(self.parent, {t: c * a for t, a in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.parent.one * other
        out = dict(self.coeffs)
        for t, a in other.coeffs.items():
            s = out.get(t, 0) + a
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return AlgebraElement(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other if isinstance(other, AlgebraElement) else -self.parent.scalar(other))

    def __pow__(self, k: int):
        out = self.parent.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.parent is other.parent and self.coeffs == other.coeffs
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_support(self) -> list[int]:
        return sorted(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for t in sorted(self.coeffs):
            c = self.coeffs[t]
            name = self.parent.basis_name(t)
            parts.append(_term(c, name if t else ""))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    __repr__ = __str__


def _term(c, name: str) -> str:
    if isinstance(c, GaussQ) and c.im:
        cs = repr(c)
        return f"{cs}{name}" if name else cs
    c = c.re if isinstance(c, GaussQ) else c
    if not name:
        return str(c)
    if c == 1:
        return name
    if c == -1:
        return f"-{name}"
    return f"{c}{name}"


def _parse_linear(text: str, names: Mapping[str, int], parent) -> AlgebraElement:
    s = text.replace(" ", "").replace("-", "+-")
    out: dict = {}
    keys = sorted(names, key=len, reverse=True)
    for tok in filter(None, s.split("+")):
        for key in keys:
            if key != "1" and tok.endswith(key):
                coef = tok[: -len(key)]
                t = names[key]
                break
        else:
            coef, t = tok, 0
        if coef in ("", "+"):
            c = Fraction(1)
        elif coef == "-":
            c = Fraction(-1)
        else:
            if not re.fullmatch(r"-?\d+(/\d+)?", coef):
                raise ParseError(f"cannot parse term {tok!r}")
            c = Fraction(coef)
        out[t] = out.get(t, 0) + c
    return AlgebraElement(parent, out)


# -- constructions ---------------------------------------------------------------

def _real_cocycle(group: GroupSpec, beta: Bicharacter, gen_mu_bits: Sequence[int]) -> np.ndarray:
    bits = (beta.gen_phases() // 2) % 2
    M = np.tril(bits, -1) + np.diag(np.asarray(gen_mu_bits, dtype=np.int64))
    r = group.residue_array
    return 2 * ((r @ M @ r.T) % 2)


def build_twisted(t: GroupSpec, m: QuadraticForm) -> TwistedAlgebra:
    if m.group != t:
        raise InvalidGroup("form lives on a different group")
    if t.exponent > 2:
        raise PreconditionViolated("build_twisted needs a group of exponent <= 2")
    beta = polarization(m)
    gens = t.generator_indices()
    phases = _real_cocycle(t, beta, [0 if m.values[g] == 1 else 1 for g in gens])
    alg = TwistedAlgebra(t, phases, "rational", m, beta)
    alg.verify(m, beta)
    return alg


def twisted_from_generators(n: int, squares: Sequence[int], anticommute: bool = True,
                            beta_signs=None) -> TwistedAlgebra:
    """Algebra on Z2^n from generator squares and pairwise commutation signs."""
    from .groups import elementary_2
    g = elementary_2(n)
    if beta_signs is None:
        beta_signs = [[1 if i == j or not anticommute else -1 for j in range(n)] for i in range(n)]
    beta = Bicharacter.from_signs(g, beta_signs)
    phases = _real_cocycle(g, beta, [0 if s == 1 else 1 for s in squares])
    mu = QuadraticForm(g, tuple(int(1 - d) for d in np.diagonal(phases)))
    alg = TwistedAlgebra(g, phases, "rational", mu, beta)
    alg.verify(mu, beta)
    return alg


def build_complex_twisted(t: GroupSpec, b: Bicharacter) -> TwistedAlgebra:
    if b.group != t:
        raise InvalidGroup("bicharacter lives on a different group")
    if 4 % t.exponent:
        raise UnsupportedExponent(f"exponent {t.exponent} needs roots of unity beyond i")
    if not (b.is_bicharacter() and b.is_alternating()):
        raise DegenerateBicharacter("not an alternating bicharacter")
    if len(b.radical_members) != 1:
        raise DegenerateBicharacter("radical of beta is not trivial")
    B = b.gen_phases()
    r = t.residue_array
    phases = (r @ np.tril(B, -1) @ r.T) % 4
    alg = TwistedAlgebra(t, phases, "gaussian", None, b)
    alg.verify(None, b)
    return alg


# -- invariants ----------------------------------------------------------------

def center_basis(a: TwistedAlgebra) -> list[int]:
    return a.center_basis()


def regular_representation(a: TwistedAlgebra) -> RegularRep:
    return a.regular_representation()


def trace_form_signature(a: TwistedAlgebra) -> int:
    """Exact signature of (x, y) -> tr(L_x L_y) on the standard basis."""
    if a.is_complex:
        raise PreconditionViolated("trace-form signature needs a real algebra")
    G = a.regular_representation().trace_gram()
    if np.any(G.imag):
        raise CocycleVerificationFailed("real algebra with non-real traces")
    M = [[int(round(x)) for x in row] for row in G.real]
    p, q, _ = signature(M)
    return p - q


def classify_by_arf(t: GroupSpec, m: QuadraticForm) -> AlgebraClass:
    if t.exponent > 2:
        raise PreconditionViolated("classify_by_arf needs an elementary abelian 2-group")
    rad, _, _ = polarization(m).radical()
    if rad.order > 2:
        raise PreconditionViolated(f"radical of size {rad.order} exceeds 2")
    return class_from_arf(t.rank, arf(m))


def structural_identify(a: TwistedAlgebra) -> AlgebraClass:
    """Identify via the regular representation only (center and trace forms)."""
    return identify_algebra(a.to_fd_algebra())


def describe(a: TwistedAlgebra) -> dict:
    """JSON summary: class, n, Arf, trace signature and center dimension."""
    cls = structural_identify(a)
    out = cls.to_json()
    out["arf"] = arf(a.form) if a.form is not None else None
    out["signature"] = trace_form_signature(a)
    out["center_dim"] = len(a.center_basis())
    return out


# -- oracle cross-check ------------------------------------------------------------

def oracle_crosscheck(n: int, sample: int | None = None, seed: int | None = None) -> dict:
    """Compare classify_by_arf with the structural oracle on forms over Z2^n.

    Every form is checked unless ``sample`` is given; forms whose radical
    has more than two elements are skipped (they are not in scope).
    """
    from .forms import iter_all_forms, random_form
    if sample is not None:
        if seed is None:
            raise PreconditionViolated("sampling needs a seed")
        import random
        rng = random.Random(seed)
        forms = (random_form(n, rng) for _ in range(sample))
    else:
        forms = iter_all_forms(n)
    checked = skipped = 0
    mismatches = []
    for m in forms:
        rad, _, _ = polarization(m).radical()
        if rad.order > 2:
            skipped += 1
            continue
        checked += 1
        expect = classify_by_arf(m.group, m)
        got = structural_identify(build_twisted(m.group, m))
        if got != expect:
            mismatches.append({"values": m.signs, "arf": expect.label(), "structural": got.label()})
    return {"n": n, "checked": checked, "agree": checked - len(mismatches),
            "skipped": skipped, "mismatches": mismatches}
