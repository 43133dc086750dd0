"""Sign-valued quadratic forms and alternating bicharacters on finite abelian groups.

A bicharacter is stored as a table of phases mod 4 (value ``i**phase``), so
sign-valued ones use phases 0 and 2 only.  Quadratic forms are dense tuples
of +1/-1 in canonical element order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .errors import (IdenticalForms, InternalDisagreement, InvalidGroup, NotAQuadraticForm,
                     SamePolarizationRequired, SizeBoundExceeded)
from .groups import (GroupSpec, Subgroup, characters_to_sign, elementary_2,
                     iter_automorphisms, make_group)

ENUM_BOUND = 2 ** 12
AUTOMORPHISM_BOUND = 64
_CHUNK = 256


def _sign_to_bit(v: int) -> int:
    return 0 if v == 1 else 1


@dataclass(frozen=True, eq=False)
class Bicharacter:
    group: GroupSpec
    phases: np.ndarray  # (n, n) int8, values mod 4

    def __post_init__(self):
        n = self.group.order
        p = np.asarray(self.phases, dtype=np.int64) % 4
        if p.shape != (n, n):
            raise ValueError(f"phase table must be {n}x{n}, got {p.shape}")
        p = p.astype(np.int8)
        p.setflags(write=False)
        object.__setattr__(self, "phases", p)

    @classmethod
    def from_generator_phases(cls, group: GroupSpec, gen_phases) -> "Bicharacter":
        """Extend phases on generator pairs bilinearly.

        ``gen_phases[i][j]`` is the phase of beta(t_i, t_j).  Raises
        ValueError if the values are incompatible with the generator orders.
        """
        B = np.asarray(gen_phases, dtype=np.int64).reshape(group.rank, group.rank) % 4
        for i, n in enumerate(group.orders):
            if np.any((n * B[i, :]) % 4) or np.any((n * B[:, i]) % 4):
                raise ValueError("generator phases do not respect the cyclic orders")
        r = group.residue_array
        return cls(group, (r @ B @ r.T) % 4)

    @classmethod
    def from_signs(cls, group: GroupSpec, gen_signs) -> "Bicharacter":
        """Sign matrix on generator pairs (entries +1/-1)."""
        S = np.asarray(gen_signs, dtype=np.int64).reshape(group.rank, group.rank)
        return cls.from_generator_phases(group, np.where(S == 1, 0, 2))

    @classmethod
    def trivial(cls, group: GroupSpec) -> "Bicharacter":
        return cls(group, np.zeros((group.order, group.order), dtype=np.int8))

    # -- values -----------------------------------------------------------
    def phase(self, u: int, v: int) -> int:
        return int(self.phases[u, v])

    def sign(self, u: int, v: int) -> int:
        p = int(self.phases[u, v])
        if p % 2:
            raise ValueError("bicharacter value is not real")
        return 1 - p

    def value(self, u: int, v: int) -> complex:
        return (1, 1j, -1, -1j)[int(self.phases[u, v])]

    @property
    def is_real(self) -> bool:
        return not np.any(self.phases % 2)

    def gen_phases(self) -> np.ndarray:
        g = self.group.generator_indices()
        return self.phases[np.ix_(g, g)].astype(np.int64)

    # -- laws -------------------------------------------------------------
    def is_bicharacter(self) -> bool:
        """Additive in each slot (checked against generator values)."""
        g = self.group
        if g.rank == 0:
            return int(self.phases[0, 0]) == 0
        gens = g.generator_indices()
        r = g.residue_array
        P = self.phases.astype(np.int64)
        for k, n in zip(gens, g.orders):
            if np.any((n * P[k, :]) % 4) or np.any((n * P[:, k]) % 4):
                return False
        G1 = P[gens, :]  # rank x n
        G2 = P[:, gens]  # n x rank
        for lo in range(0, g.order, _CHUNK):
            hi = min(lo + _CHUNK, g.order)
            if np.any((r[lo:hi] @ G1 - P[lo:hi, :]) % 4):
                return False
            if np.any((G2[lo:hi] @ r.T - P[lo:hi, :]) % 4):
                return False
        return True

    def is_alternating(self) -> bool:
        return not np.any(np.diagonal(self.phases))

    # -- radical ----------------------------------------------------------
    @cached_property
    def radical_members(self) -> tuple[int, ...]:
        return tuple(int(t) for t in np.nonzero(~np.any(self.phases, axis=0))[0])

    def radical(self) -> tuple[Subgroup, str, int | None]:
        """(rad, type tag, f_beta).  Type I: rad trivial; II: |rad| = 2."""
        rad = Subgroup(self.group, self.radical_members)
        if rad.order == 1:
            return rad, "I", None
        if rad.order == 2:
            return rad, "II", rad.members[1]
        return rad, "other", None

    @property
    def type_tag(self) -> str:
        return self.radical()[1]

    def perp(self, u: int) -> Subgroup:
        return Subgroup(self.group, tuple(int(v) for v in np.nonzero(self.phases[u, :] == 0)[0]))

    # -- misc -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Bicharacter):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.phases, other.phases)

    def __hash__(self):
        return hash((self.group, self.phases.tobytes()))

    def product(self, other: "Bicharacter") -> "Bicharacter":
        """Bicharacter on the direct product, ``beta1(u1,v1) beta2(u2,v2)``."""
        n1, n2 = self.group.order, other.group.order
        P = (self.phases.astype(np.int64)[None, :, None, :] +
             other.phases.astype(np.int64)[:, None, :, None])
        # index of (i1, i2) is i1 + n1*i2, so i2 is the slow axis
        return Bicharacter(self.group.direct_product(other.group), P.reshape(n1 * n2, n1 * n2) % 4)

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "generator_phases": self.gen_phases().tolist()}

    @classmethod
    def from_json(cls, obj) -> "Bicharacter":
        return cls.from_generator_phases(GroupSpec.from_json(obj["group"]), obj["generator_phases"])


@dataclass(frozen=True)
class QuadraticForm:
    group: GroupSpec
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if len(vals) != self.group.order:
            raise NotAQuadraticForm(f"need {self.group.order} values, got {len(vals)}")
        if any(v not in (1, -1) for v in vals):
            raise NotAQuadraticForm("values must be +1 or -1")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_signs(cls, group: GroupSpec, text: str) -> "QuadraticForm":
        return cls(group, parse_signs(text))

    def __call__(self, t: int) -> int:
        return self.values[t]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    @property
    def signs(self) -> str:
        return format_signs(self.values)

    def __str__(self):
        return self.signs

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "values": list(self.values)}

    @classmethod
    def from_json(cls, obj) -> "QuadraticForm":
        vals = obj["values"]
        if isinstance(vals, str):
            vals = parse_signs(vals)
        return cls(GroupSpec.from_json(obj["group"]), tuple(vals))

    @cached_property
    def polarization(self) -> Bicharacter:
        return polarization(self)


def parse_signs(text: str) -> tuple[int, ...]:
    out = []
    for ch in text.strip():
        if ch == "+":
            out.append(1)
        elif ch == "-":
            out.append(-1)
        elif ch in " ,":
            continue
        else:
            raise NotAQuadraticForm(f"bad sign character {ch!r}")
    return tuple(out)


def format_signs(values: Sequence[int]) -> str:
    return "".join("+" if v == 1 else "-" for v in values)


def polarization(m: QuadraticForm) -> Bicharacter:
    """beta(u, v) = mu(uv) mu(u)^-1 mu(v)^-1; raises unless it is a bicharacter."""
    g = m.group
    if m.values[0] != 1:
        raise NotAQuadraticForm("mu(e) must be +1")
    mu = m.array
    B = mu[g.add_table] * mu[:, None] * mu[None, :]
    b = Bicharacter(g, np.where(B == 1, 0, 2))
    if not b.is_bicharacter():
        raise NotAQuadraticForm("polarization is not a bicharacter")
    return b


def is_quadratic_form(group: GroupSpec, values: Sequence[int]) -> bool:
    try:
        polarization(QuadraticForm(group, tuple(values)))
    except NotAQuadraticForm:
        return False
    return True


def radical(b: Bicharacter):
    return b.radical()


def arf(m: QuadraticForm) -> int:
    s = int(m.array.sum())
    return (s > 0) - (s < 0)


def is_regular(m: QuadraticForm) -> bool:
    _, tag, f = m.polarization.radical()
    if tag == "I":
        return True
    return tag == "II" and m.values[f] == -1


def perp(b: Bicharacter, u) -> Subgroup:
    if not isinstance(u, (int, np.integer)):
        u = u.index
    return b.perp(int(u))


# -- enumeration ------------------------------------------------------------

def _base_form_values(b: Bicharacter) -> np.ndarray:
    """mu0(x) = (-1)^(sum_{i<j} b_ij x_i x_j) for a sign bicharacter on Z2^N."""
    g = b.group
    bits = (b.gen_phases() // 2) % 2
    r = g.residue_array
    upper = np.triu(bits, 1)
    e = np.einsum("ui,ij,uj->u", r, upper, r) % 2 if g.rank else np.zeros(1, dtype=np.int64)
    return 1 - 2 * e


def enumerate_forms(b: Bicharacter) -> list[QuadraticForm]:
    """Every quadratic form with polarization ``b`` (exponent-2 groups)."""
    g = b.group
    if g.order > ENUM_BOUND:
        raise SizeBoundExceeded(f"|T| = {g.order} exceeds {ENUM_BOUND}")
    if g.exponent > 2:
        raise InvalidGroup("enumerate_forms needs a group of exponent <= 2")
    if not (b.is_real and b.is_alternating() and b.is_bicharacter()):
        raise NotAQuadraticForm("not an alternating sign bicharacter")
    mu0 = _base_form_values(b)
    out = []
    for chi in characters_to_sign(g):
        out.append(QuadraticForm(g, tuple(int(x) for x in mu0 * np.array(chi))))
    return out


def iter_sign_bicharacters(n: int) -> Iterator[Bicharacter]:
    """All alternating sign bicharacters on Z2^n (2^(n(n-1)/2) of them)."""
    g = elementary_2(n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for bits in product((0, 1), repeat=len(pairs)):
        B = np.zeros((n, n), dtype=np.int64)
        for (i, j), x in zip(pairs, bits):
            B[i, j] = B[j, i] = 2 * x
        yield Bicharacter.from_generator_phases(g, B)


def iter_all_forms(n: int) -> Iterator[QuadraticForm]:
    """All 2^(n(n+1)/2) quadratic forms on Z2^n, deterministic order."""
    for b in iter_sign_bicharacters(n):
        yield from enumerate_forms(b)


def form_from_gf2(n: int, upper_bits, diag_bits) -> QuadraticForm:
    """Form (-1)^q with q(x) = sum_i d_i x_i + sum_{i<j} c_ij x_i x_j."""
    g = elementary_2(n)
    r = g.residue_array
    C = np.zeros((n, n), dtype=np.int64)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            C[i, j] = upper_bits[k]
            k += 1
    q = (np.einsum("ui,ij,uj->u", r, C, r) + r @ np.asarray(diag_bits, dtype=np.int64)) % 2 \
        if n else np.zeros(1, dtype=np.int64)
    return QuadraticForm(g, tuple(int(1 - 2 * x) for x in q))


def random_form(n: int, rng) -> QuadraticForm:
    """Uniform form on Z2^n from a ``random.Random``-like source."""
    npairs = n * (n - 1) // 2
    return form_from_gf2(n, [rng.getrandbits(1) for _ in range(npairs)],
                         [rng.getrandbits(1) for _ in range(n)])


# -- equivalence --------------------------------------------------------------

def fast_equivalent(m1: QuadraticForm, m2: QuadraticForm) -> bool | None:
    """Invariant-based answer for exponent-2 groups; None if not applicable."""
    if m1.group != m2.group:
        return False
    g = m1.group
    if g.exponent > 2:
        return None
    b1, b2 = m1.polarization, m2.polarization
    _, t1, f1 = b1.radical()
    _, t2, f2 = b2.radical()
    if t1 != t2 or t1 == "other":
        return None if t1 == t2 else False
    if t1 == "I":
        return arf(m1) == arf(m2)
    return (m1.values[f1], arf(m1)) == (m2.values[f2], arf(m2))


def equivalent_bruteforce(m1: QuadraticForm, m2: QuadraticForm) -> tuple[bool, list[int] | None]:
    """Search for an automorphism alpha with m1 = m2 o alpha."""
    g = m1.group
    if g.order > AUTOMORPHISM_BOUND:
        raise SizeBoundExceeded(f"|T| = {g.order} exceeds {AUTOMORPHISM_BOUND}")
    if sorted(m1.values) != sorted(m2.values):
        return False, None
    b1, b2 = polarization(m1), polarization(m2)
    gens = g.generator_indices()

    def accept(k, images):
        if m1.values[gens[k]] != m2.values[images[k]]:
            return False
        for j in range(k):
            if b1.phase(gens[j], gens[k]) != b2.phase(images[j], images[k]):
                return False
        return True

    for perm in iter_automorphisms(g, accept):
        if all(m1.values[t] == m2.values[perm[t]] for t in range(g.order)):
            return True, perm
    return False, None


def equivalent(m1: QuadraticForm, m2: QuadraticForm) -> tuple[bool, list[int] | None]:
    """Equivalence up to a group automorphism, with a witness when found.

    Small groups use the automorphism search; above the bound only the
    invariant path is available and no witness is produced.
    """
    if m1.group != m2.group:
        raise InvalidGroup("forms live on different groups")
    if m1 == m2:
        return True, list(range(m1.group.order))
    if m1.group.order <= AUTOMORPHISM_BOUND:
        return equivalent_bruteforce(m1, m2)
    fast = fast_equivalent(m1, m2)
    if fast is None:
        raise SizeBoundExceeded("no invariant shortcut for this polarization type")
    return fast, None


# -- constructions ------------------------------------------------------------

def orthogonal_sum(m1: QuadraticForm, m2: QuadraticForm) -> QuadraticForm:
    g = m1.group.direct_product(m2.group)
    vals = np.outer(m2.array, m1.array).reshape(-1)  # index i1 + |T1| i2
    return QuadraticForm(g, tuple(int(v) for v in vals))


def agreement_subgroup(m: QuadraticForm, h: QuadraticForm) -> Subgroup:
    if m.group != h.group or polarization(m) != polarization(h):
        raise SamePolarizationRequired("forms must share their polarization")
    if m.values == h.values:
        raise IdenticalForms("forms are equal; agreement set is the whole group")
    sub = Subgroup(m.group, tuple(t for t in range(m.group.order) if m.values[t] == h.values[t]))
    if not sub.is_closed() or sub.index != 2:
        raise InternalDisagreement("agreement set is not an index-2 subgroup")
    return sub


def trivial_form(group: GroupSpec | None = None) -> QuadraticForm:
    group = group or make_group(())
    return QuadraticForm(group, (1,) * group.order)


# -- counting ------------------------------------------------------------------

def arf_counts(b: Bicharacter) -> dict[int, int]:
    """How many forms with polarization ``b`` have Arf +1, -1 and 0."""
    out = {1: 0, -1: 0, 0: 0}
    for m in enumerate_forms(b):
        out[arf(m)] += 1
    return out


def type_one_arf_counts(m: int) -> dict[tuple[int, int], int]:
    """Exhaustive over every type I sign bicharacter on Z2^(2m).

    Returns {(#Arf +1, #Arf -1): number of bicharacters with those counts}.
    The forms with polarization beta are mu0 * chi, so their sums are the
    Walsh transform of mu0.
    """
    n = 2 * m
    if n > 8:
        raise SizeBoundExceeded("exhaustive count is limited to Z2^8")
    g = elementary_2(n)
    r = g.residue_array  # (2^n, n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    prods = np.stack([r[:, i] * r[:, j] for i, j in pairs], axis=1) if pairs else np.zeros((g.order, 0), int)
    hadamard = 1 - 2 * ((r @ r.T) % 2)
    out: dict[tuple[int, int], int] = {}
    total = 1 << len(pairs)
    step = 4096
    for start in range(0, total, step):
        codes = np.arange(start, min(total, start + step), dtype=np.int64)
        bits = (codes[:, None] >> np.arange(len(pairs))) & 1  # (K, npairs)
        B = np.zeros((len(codes), n, n), dtype=np.int64)
        for k, (i, j) in enumerate(pairs):
            B[:, i, j] = B[:, j, i] = bits[:, k]
        # radical: x with B x = 0 over GF(2)
        rad = ((B @ r.T) % 2).any(axis=1).sum(axis=1)  # number of x outside the radical
        regular = rad == g.order - 1
        mu0 = 1 - 2 * ((bits @ prods.T) % 2)  # (K, 2^n)
        sums = mu0[regular] @ hadamard
        plus = (sums > 0).sum(axis=1)
        minus = (sums < 0).sum(axis=1)
        for key in zip(plus.tolist(), minus.tolist()):
            out[key] = out.get(key, 0) + 1
    return out
