"""Finite abelian groups written as products of cyclic groups.

Elements are residue vectors.  Internally everything is indexed by a
mixed-radix integer in which the *first* cyclic factor varies fastest, so
for ``Z2^2`` the canonical order is ``e, a, b, ab`` and for ``Z2xZ4`` it is
``e, a, b, ab, b^2, ab^2, b^3, ab^3``.  The group law is written additively
in code; names shown to users are multiplicative.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import product
from math import gcd, prod
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import InvalidGroup, SizeBoundExceeded

# 'e' is the identity and 'i' is reserved for the complex unit
GENERATOR_LETTERS = "abcdfghjklmnpqrsuvwxyz"

SUBGROUP_ENUM_BOUND = 2 ** 16


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        for n in self.orders:
            if n < 2:
                raise InvalidGroup(f"cyclic orders must be >= 2, got {n}")
        if len(self.orders) > len(GENERATOR_LETTERS):
            raise InvalidGroup("too many cyclic factors")

    # -- basic data -----------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def order(self) -> int:
        return prod(self.orders)

    def __len__(self):
        return self.order

    @cached_property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.orders, 1)

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        out, s = [], 1
        for n in self.orders:
            out.append(s)
            s *= n
        return tuple(out)

    @property
    def is_elementary_2(self) -> bool:
        return all(n == 2 for n in self.orders)

    # -- index <-> residues --------------------------------------------
    def residues(self, index: int) -> tuple[int, ...]:
        out = []
        for n in self.orders:
            index, r = divmod(index, n)
            out.append(r)
        return tuple(out)

    def index_of(self, residues: Sequence[int]) -> int:
        if len(residues) != self.rank:
            raise InvalidGroup(f"expected {self.rank} residues, got {len(residues)}")
        return sum((int(r) % n) * s for r, n, s in zip(residues, self.orders, self._strides))

    def element(self, index_or_residues) -> "GroupElement":
        if isinstance(index_or_residues, GroupElement):
            return index_or_residues
        if isinstance(index_or_residues, (int, np.integer)):
            return GroupElement(self, self.residues(int(index_or_residues)))
        return GroupElement(self, tuple(int(r) % n for r, n in zip(index_or_residues, self.orders)))

    def elements(self) -> list["GroupElement"]:
        return [GroupElement(self, self.residues(i)) for i in range(self.order)]

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def generator(self, i: int) -> "GroupElement":
        r = [0] * self.rank
        r[i] = 1
        return GroupElement(self, tuple(r))

    def generator_indices(self) -> list[int]:
        return list(self._strides)

    # -- arithmetic on indices -----------------------------------------
    def add(self, i: int, j: int) -> int:
        return self.index_of([a + b for a, b in zip(self.residues(i), self.residues(j))])

    def neg(self, i: int) -> int:
        return self.index_of([-a for a in self.residues(i)])

    def scale(self, i: int, k: int) -> int:
        return self.index_of([k * a for a in self.residues(i)])

    @cached_property
    def residue_array(self) -> np.ndarray:
        """(order, rank) array of residues in canonical order."""
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        cols = [(idx // s) % n for n, s in zip(self.orders, self._strides)]
        return np.stack(cols, axis=1)

    def _index_from_residue_array(self, res: np.ndarray) -> np.ndarray:
        out = np.zeros(res.shape[:-1], dtype=np.int64)
        for k, (n, s) in enumerate(zip(self.orders, self._strides)):
            out += (res[..., k] % n) * s
        return out

    @cached_property
    def add_table(self) -> np.ndarray:
        """Cayley table on indices; ``add_table[i, j] = index(i + j)``."""
        r = self.residue_array
        return self._index_from_residue_array(r[:, None, :] + r[None, :, :])

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self._index_from_residue_array(-self.residue_array)

    def element_order(self, i: int) -> int:
        res = self.residues(i)
        return reduce(lambda a, b: a * b // gcd(a, b),
                      (n // gcd(n, r) for r, n in zip(res, self.orders)), 1)

    # -- names ----------------------------------------------------------
    def name(self, index: int) -> str:
        res = self.residues(index)
        parts = []
        for k, r in enumerate(res):
            if r == 0:
                continue
            letter = GENERATOR_LETTERS[k]
            parts.append(letter if r == 1 else f"{letter}^{r}")
        return "".join(parts) or "e"

    def names(self) -> list[str]:
        return [self.name(i) for i in range(self.order)]

    def parse_element(self, text: str) -> int:
        """Inverse of :meth:`name` (accepts ``e``, ``ab``, ``ab^3``, ...)."""
        text = text.strip()
        if text in ("e", "1", ""):
            return 0
        res = [0] * self.rank
        for letter, power in re.findall(r"([a-z])(?:\^(\d+))?", text):
            k = GENERATOR_LETTERS.find(letter)
            if k < 0 or k >= self.rank:
                raise InvalidGroup(f"unknown generator {letter!r} in {text!r}")
            res[k] += int(power) if power else 1
        return self.index_of(res)

    def __str__(self):
        return spec_string(self)

    # -- serialisation --------------------------------------------------
    def to_json(self) -> dict:
        return {"orders": list(self.orders)}

    @classmethod
    def from_json(cls, obj) -> "GroupSpec":
        if isinstance(obj, GroupSpec):
            return obj
        if isinstance(obj, str):
            return parse_group(obj)
        if isinstance(obj, dict) and "orders" in obj:
            return make_group(obj["orders"])
        if isinstance(obj, (list, tuple)):
            return make_group(obj)
        raise InvalidGroup(f"cannot read a group from {obj!r}")

    def direct_product(self, other: "GroupSpec") -> "GroupSpec":
        return GroupSpec(self.orders + other.orders)

    def pair_index(self, other: "GroupSpec", i: int, j: int) -> int:
        """Index in ``self x other`` of the pair ``(i, j)``."""
        return i + self.order * j


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    residues: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.group.index_of(self.residues)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return self.group.element([a + b for a, b in zip(self.residues, other.residues)])

    __mul__ = __add__

    def __neg__(self) -> "GroupElement":
        return self.group.element([-a for a in self.residues])

    def inverse(self) -> "GroupElement":
        return -self

    def order(self) -> int:
        return self.group.element_order(self.index)

    def __str__(self):
        return self.group.name(self.index)


@dataclass(frozen=True)
class Subgroup:
    parent: GroupSpec
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(int(m) for m in self.members))))

    @classmethod
    def checked(cls, parent: GroupSpec, members) -> "Subgroup":
        sub = cls(parent, tuple(members))
        if not sub.is_closed():
            raise InvalidGroup("member set is not a subgroup")
        return sub

    def is_closed(self) -> bool:
        s = set(self.members)
        if 0 not in s or self.parent.order % len(s):
            return False
        table = self.parent.add_table
        return all(int(table[a, b]) in s for a in s for b in s)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, item) -> bool:
        if isinstance(item, GroupElement):
            item = item.index
        return int(item) in self.members

    def __len__(self):
        return len(self.members)

    def elements(self) -> list[GroupElement]:
        return [self.parent.element(m) for m in self.members]

    def names(self) -> list[str]:
        return [self.parent.name(m) for m in self.members]


def make_group(orders: Sequence[int]) -> GroupSpec:
    return GroupSpec(tuple(orders))


_FACTOR = re.compile(r"^Z(\d+)(?:\^(\d+))?$")


def parse_group(text: str) -> GroupSpec:
    """Read ``"Z2^2"``, ``"Z4"``, ``"Z2xZ4"``, ``"Z2^2xZ4"`` or ``"1"``."""
    text = text.strip().replace(" ", "").replace("×", "x")
    if text in ("1", "trivial", "Z1", ""):
        return GroupSpec(())
    orders: list[int] = []
    for part in text.split("x"):
        m = _FACTOR.match(part)
        if not m:
            raise InvalidGroup(f"cannot parse group factor {part!r} in {text!r}")
        n, k = int(m.group(1)), int(m.group(2) or 1)
        orders.extend([n] * k)
    return make_group(orders)


def spec_string(g: GroupSpec) -> str:
    if g.rank == 0:
        return "1"
    parts, i = [], 0
    while i < g.rank:
        j = i
        while j < g.rank and g.orders[j] == g.orders[i]:
            j += 1
        parts.append(f"Z{g.orders[i]}" + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return "x".join(parts)


def elementary_2(n: int) -> GroupSpec:
    return GroupSpec((2,) * n)


# -- subgroups -------------------------------------------------------------

def characters_to_sign(g: GroupSpec) -> Iterator[tuple[int, ...]]:
    """All homomorphisms ``g -> {+1,-1}`` as value tuples in canonical order.

    A generator of odd order must map to +1.
    """
    choices = [(0, 1) if n % 2 == 0 else (0,) for n in g.orders]
    res = g.residue_array
    for bits in product(*choices):
        exps = (res @ np.array(bits, dtype=np.int64)) % 2 if g.rank else np.zeros(1, dtype=np.int64)
        yield tuple(int(1 - 2 * x) for x in exps)


def index_le2_subgroups(g: GroupSpec) -> list[Subgroup]:
    """Subgroups of index 1 or 2, as kernels of sign characters."""
    if g.order > SUBGROUP_ENUM_BOUND:
        raise SizeBoundExceeded(f"|G| = {g.order} exceeds {SUBGROUP_ENUM_BOUND}")
    subs = []
    for chi in characters_to_sign(g):
        members = tuple(i for i, v in enumerate(chi) if v == 1)
        sub = Subgroup(g, members)
        assert sub.is_closed()
        subs.append(sub)
    return sorted(subs, key=lambda s: (len(s.members) != g.order, s.members))


def two_torsion(g: GroupSpec) -> Subgroup:
    if g.rank == 0:
        return Subgroup(g, (0,))
    doubled = g.add_table[np.arange(g.order), np.arange(g.order)]
    return Subgroup(g, tuple(int(i) for i in np.nonzero(doubled == 0)[0]))


def is_subgroup(g: GroupSpec, members) -> bool:
    return Subgroup(g, tuple(members)).is_closed()


# -- homomorphisms and automorphisms ---------------------------------------

def extend_on_generators(src: GroupSpec, dst: GroupSpec, images: Sequence[int]) -> list[int] | None:
    """Extend generator images to a homomorphism ``src -> dst``.

    Returns the image of every element (canonical order) or None when the
    images do not respect the generator orders.
    """
    for n, h in zip(src.orders, images):
        if dst.scale(h, n) != 0:
            return None
    img_res = np.array([dst.residues(h) for h in images], dtype=np.int64).reshape(src.rank, dst.rank)
    res = src.residue_array @ img_res if src.rank else np.zeros((1, dst.rank), dtype=np.int64)
    return [int(x) for x in dst._index_from_residue_array(res)]


def iter_automorphisms(g: GroupSpec,
                       accept: Callable[[int, list[int]], bool] | None = None) -> Iterator[list[int]]:
    """Enumerate automorphisms as permutations of canonical indices.

    ``accept(k, images)`` is called after choosing the image of generator
    ``k``; returning False prunes that branch.
    """
    if g.rank == 0:
        yield [0]
        return
    candidates = []
    for n in g.orders:
        candidates.append([h for h in range(g.order) if g.element_order(h) == n])
    images: list[int] = []

    def rec(k: int):
        if k == g.rank:
            perm = extend_on_generators(g, g, images)
            if perm is not None and len(set(perm)) == g.order:
                yield list(perm)
            return
        for h in candidates[k]:
            if h in images:
                continue
            images.append(h)
            if accept is None or accept(k, images):
                yield from rec(k + 1)
            images.pop()

    yield from rec(0)
