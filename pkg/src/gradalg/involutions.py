"""Involutions on graded division algebras with one-dimensional components.

First kind: phi(X_t) = eta(t) X_t with eta a sign form of the same
polarization as mu.  Second kind (complex algebras):
phi(c X_t) = conj(c) eta_c(t) X_t with eta_c(t) a fourth root of unity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .errors import (InternalDisagreement, NonSquareSignature, NotAnInvolution,
                     NotSecondKind, PolarizationMismatch, PreconditionViolated)
from .exact import UNIT_PHASES, GaussQ, exact_sqrt, nullspace, phase_of, signature, vec_add
from .forms import QuadraticForm, arf, polarization
from .groups import GroupSpec, Subgroup, two_torsion
from .structure import AlgebraClass, FDAlgebra, class_from_arf
from .twisted import AlgebraElement, TwistedAlgebra, build_twisted, structural_identify

TAGS_1A = ("1a-1", "1a-2", "1a-3")
TAGS_1C = ("1c-1", "1c-2", "1c-3", "1c-4")


@dataclass(frozen=True, eq=False)
class GradedInvolution:
    parent: TwistedAlgebra
    eta: QuadraticForm | None = None  # first kind
    eta_c: tuple[int, ...] | None = None  # second kind: phases mod 4

    @property
    def second_kind(self) -> bool:
        return self.eta_c is not None

    def phase(self, t: int) -> int:
        if self.second_kind:
            return self.eta_c[t] % 4
        return 0 if self.eta.values[t] == 1 else 2

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        out = {}
        for t, c in x.coeffs.items():
            if self.second_kind:
                c = GaussQ.coerce(c).conjugate()
            out[t] = c * self.parent.unit_scalar(self.phase(t))
        return AlgebraElement(self.parent, out)

    __call__ = apply

    def defects(self) -> list[tuple[int, int]]:
        """Basis pairs where phi(X_u X_v) != phi(X_v) phi(X_u)."""
        a = self.parent
        c = a.phases
        add = a.group.add_table
        eta = np.array([self.phase(t) for t in range(a.dim)], dtype=np.int64)
        sgn = -1 if self.second_kind else 1
        lhs = (sgn * c + eta[add]) % 4
        rhs = (eta[:, None] + eta[None, :] + c.T) % 4
        bad = np.argwhere(lhs != rhs)
        return [(int(u), int(v)) for u, v in bad]

    def is_involutive(self) -> bool:
        a = self.parent
        for t in range(a.dim):
            x = a.basis(t)
            if self.apply(self.apply(x)) != x:
                return False
        if self.second_kind:
            i = a.element({0: GaussQ(0, 1)})
            if self.apply(self.apply(i)) != i:
                return False
        return True

    def verify(self):
        if self.defects():
            raise NotAnInvolution("phi is not an anti-automorphism")
        if not self.is_involutive():
            raise NotAnInvolution("phi does not square to the identity")

    def to_json(self) -> dict:
        if self.second_kind:
            return {"kind": "second", "eta_c": list(self.eta_c)}
        return {"kind": "first", "eta": self.eta.signs}


def involution_from_eta(a: TwistedAlgebra, h: QuadraticForm) -> GradedInvolution:
    if a.form is None:
        raise PreconditionViolated("algebra was not built from a quadratic form")
    if h.group != a.group or polarization(h) != polarization(a.form):
        raise PolarizationMismatch("eta must have the same polarization as mu")
    phi = GradedInvolution(a, eta=h)
    phi.verify()
    return phi


def distinguished_involution(a: TwistedAlgebra) -> GradedInvolution:
    return involution_from_eta(a, a.form)


def _same_polarization(mu: QuadraticForm, eta: QuadraticForm):
    if mu.group != eta.group or polarization(mu) != polarization(eta):
        raise PolarizationMismatch("eta must have the same polarization as mu")


def classify_involution_1a(mu: QuadraticForm, eta: QuadraticForm) -> str:
    _same_polarization(mu, eta)
    if polarization(mu).type_tag != "I":
        raise PreconditionViolated("case (1-a) needs a type I polarization")
    if arf(mu) != 1:
        raise PreconditionViolated("case (1-a) needs Arf(mu) = +1")
    if eta == mu:
        return "1a-1"
    return "1a-2" if arf(eta) == 1 else "1a-3"


def classify_involution_1c(mu: QuadraticForm, eta: QuadraticForm) -> str:
    _same_polarization(mu, eta)
    _, tag, f = polarization(mu).radical()
    if tag != "II":
        raise PreconditionViolated("case (1-c) needs a type II polarization")
    if mu.values[f] != -1:
        raise PreconditionViolated("case (1-c) needs mu(f_beta) = -1")
    if eta == mu:
        return "1c-1"
    if eta.values[f] == -1:
        return "1c-2"
    return "1c-3" if arf(eta) == 1 else "1c-4"


def split_class_identify(t: GroupSpec, mu: QuadraticForm) -> AlgebraClass:
    _, tag, f = polarization(mu).radical()
    if tag != "II" or mu.values[f] != 1:
        raise PreconditionViolated("needs a type II polarization with mu(f_beta) = +1")
    cls = class_from_arf(t.rank, arf(mu))
    check = structural_identify(build_twisted(t, mu))
    if check != cls:
        raise InternalDisagreement(f"Arf route gives {cls}, structure gives {check}")
    return cls


# -- second kind -------------------------------------------------------------------

def second_kind_from_generators(a: TwistedAlgebra, gen_phases: Sequence[int]) -> GradedInvolution:
    """Propagate eta_c from generators: phi(X_u) = phi(X_tN)^uN ... phi(X_t1)^u1."""
    if not a.is_complex:
        raise NotSecondKind("second-kind involutions need a complex algebra")
    g = a.group
    gens = g.generator_indices()
    eta = []
    for u in range(g.order):
        res = g.residues(u)
        x = a.one
        coef = GaussQ(1)
        for k in reversed(range(g.rank)):
            for _ in range(res[k]):
                x = x * a.basis(gens[k])
                coef = coef * UNIT_PHASES[gen_phases[k] % 4]
        # x = (reversed word) = lambda X_u
        lam = x.coeffs[u]
        eta.append(phase_of(coef * lam))
    phi = GradedInvolution(a, eta_c=tuple(eta))
    phi.verify()
    return phi


def enumerate_second_kind(a: TwistedAlgebra) -> list[GradedInvolution]:
    """All second-kind involutions obtained from generator phases in mu_4."""
    out, seen = [], set()
    for choice in product(range(4), repeat=a.group.rank):
        try:
            phi = second_kind_from_generators(a, choice)
        except NotAnInvolution:
            continue
        if phi.eta_c not in seen:
            seen.add(phi.eta_c)
            out.append(phi)
    return out


def _fixed_generator(eta_phase: int) -> GaussQ:
    """w with conj(w) * i^eta = w, spanning the real solution line."""
    # solve conj(z) u = z for z = x + iy over Q
    u = UNIT_PHASES[eta_phase % 4]
    # conj(z) u - z = 0 : real equations in (x, y)
    eqs = [{0: u.re - 1, 1: u.im}, {0: u.im, 1: -u.re - 1}]
    basis = nullspace([{k: v for k, v in e.items() if v} for e in eqs], 2)
    if len(basis) != 1:
        raise InternalDisagreement("fixed line of a second-kind involution is not one-dimensional")
    v = basis[0]
    return GaussQ(v.get(0, 0), v.get(1, 0))


def s_invariant_2f(a: TwistedAlgebra, phi: GradedInvolution) -> Subgroup:
    if not (a.is_complex and phi.second_kind):
        raise NotSecondKind("phi must act as complex conjugation on the scalars")
    if len(a.center_basis()) != 1:
        raise PreconditionViolated("radical of beta must be trivial")
    T2 = two_torsion(a.group)
    members = []
    for t in T2.members:
        w = _fixed_generator(phi.phase(t))
        x = a.element({t: w})
        if phi(x) != x:
            raise InternalDisagreement("fixed element is not fixed")
        sq = x * x
        r = sq.coeffs.get(0, GaussQ(0))
        if set(sq.coeffs) != {0} or r.im:
            raise InternalDisagreement("square of a fixed element is not a real scalar")
        if r.re > 0:
            members.append(t)
    S = Subgroup(a.group, tuple(members))
    if not S.is_closed() or T2.order % S.order or T2.order // S.order > 2:
        raise InternalDisagreement("S is not a subgroup of index <= 2 in T_[2]")
    return S


# -- signatures ------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearInvolution:
    """A real-linear map on an FDAlgebra, given by images of basis vectors."""
    algebra: FDAlgebra
    images: tuple[dict, ...]

    def apply(self, x: dict) -> dict:
        out: dict = {}
        for i, c in x.items():
            out = vec_add(out, self.images[i], c)
        return out

    __call__ = apply

    def is_anti_automorphism(self) -> bool:
        A = self.algebra
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.apply(A.basis_product(i, j))
                rhs = A.mul(self.images[j], self.images[i])
                if lhs != rhs:
                    return False
        return True

    def is_involutive(self) -> bool:
        return all(self.apply(self.images[i]) == {i: 1} or
                   self.apply(self.images[i]) == {i: Fraction(1)} for i in range(self.algebra.dim))

    def verify(self):
        if not self.is_involutive():
            raise NotAnInvolution("map does not square to the identity")
        if not self.is_anti_automorphism():
            raise NotAnInvolution("map is not an anti-automorphism")

    def eigenspace(self, sign: int) -> list[dict]:
        """Basis of {x : phi(x) = sign * x}."""
        n = self.algebra.dim
        rows: dict[int, dict] = {}
        for i in range(n):
            diff = vec_add(self.images[i], {i: 1}, -sign)
            for w, c in diff.items():
                rows.setdefault(w, {})[i] = c
        return nullspace(list(rows.values()), n)


def twisted_linear_involution(a: TwistedAlgebra, phi: GradedInvolution) -> LinearInvolution:
    """phi on the realified basis of ``a.to_fd_algebra()``."""
    A = a.to_fd_algebra()
    images = []
    for t in range(a.dim):
        parts = (0, 1) if a.is_complex else (0,)
        for part in parts:
            c = GaussQ(0, 1) if part else a.scalar(1)
            y = phi(a.element({t: c}))
            z = GaussQ.coerce(y.coeffs.get(t, 0))
            vec = {}
            if a.is_complex:
                if z.re:
                    vec[2 * t] = z.re
                if z.im:
                    vec[2 * t + 1] = z.im
            elif z.re:
                vec[t] = z.re
            images.append(vec)
    return LinearInvolution(A, tuple(images))


def sym_trace_signature(lin: LinearInvolution) -> int:
    """Signature of x -> tr_reg(x^2) on the phi-symmetric subspace."""
    A = lin.algebra
    sym = lin.eigenspace(1)
    n = len(sym)
    G = [[A.trace(A.mul(sym[i], sym[j])) for j in range(n)] for i in range(n)]
    p, q, _ = signature(G)
    return p - q


def signature_from_sym_trace(s: int) -> int:
    if s == 0:
        return 0
    r = exact_sqrt(s)
    if r is None:
        raise NonSquareSignature(f"trace signature {s} is not a perfect square")
    return r


def involution_signature(a: TwistedAlgebra, phi: GradedInvolution) -> int:
    if not (a.is_complex and phi.second_kind):
        raise NotSecondKind("signature is defined here for second-kind involutions")
    if a.real_dim > 256:
        from .errors import SizeBoundExceeded
        raise SizeBoundExceeded("real dimension exceeds 256")
    lin = twisted_linear_involution(a, phi)
    lin.verify()
    return signature_from_sym_trace(sym_trace_signature(lin))


def hermitian_adjoint_model(p: int, q: int):
    """M_n(C) with phi(X) = H^-1 X^* H, H = diag(I_p, -I_q), as a LinearInvolution."""
    from .graded import conj_transpose, from_matrices, mat_mul
    from .groups import make_group
    n = p + q
    mats = []
    for i in range(n):
        for j in range(n):
            for z in (GaussQ(1), GaussQ(0, 1)):
                m = [[GaussQ(0)] * n for _ in range(n)]
                m[i][j] = z
                mats.append(m)
    ga = from_matrices(mats, [0] * len(mats), make_group(()))
    H = [[GaussQ(0)] * n for _ in range(n)]
    for k in range(n):
        H[k][k] = GaussQ(1 if k < p else -1)
    lin = LinearInvolution(ga.alg, tuple(ga.linear_map(lambda X: mat_mul(mat_mul(H, conj_transpose(X)), H))))
    lin.verify()
    return lin
