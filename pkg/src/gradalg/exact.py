"""Exact scalars and sparse linear algebra over Q.

Vectors are sparse dicts ``{coordinate: Fraction}`` with no zero entries.
Nothing here touches floating point.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

Vec = dict  # dict[int, Fraction]


@dataclass(frozen=True)
class GaussQ:
    """Gaussian rational ``re + im*i``."""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, complex):
            return GaussQ(Fraction(x.real), Fraction(x.imag))
        return GaussQ(Fraction(x), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        o = GaussQ.coerce(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussQ.coerce(other))

    def __rsub__(self, other):
        return GaussQ.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        o = GaussQ.coerce(other)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = GaussQ.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("GaussQ division by zero")
        p = self * o.conjugate()
        return GaussQ(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return GaussQ.coerce(other) / self

    def __pow__(self, k: int):
        out, base = GaussQ(1), self
        if k < 0:
            base, k = GaussQ(1) / base, -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussQ.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


I = GaussQ(0, 1)

# i^k for k mod 4
_SCALARS = (GaussQ, numbers.Number)
UNIT_PHASES = (GaussQ(1), GaussQ(0, 1), GaussQ(-1), GaussQ(0, -1))


def phase_of(z) -> int:
    """Inverse of ``UNIT_PHASES``; raises for non-units."""
    z = GaussQ.coerce(z)
    for k, u in enumerate(UNIT_PHASES):
        if u == z:
            return k
    raise ValueError(f"{z!r} is not a fourth root of unity")


# -- sparse vectors --------------------------------------------------------

def vec_add(x: Mapping, y: Mapping, scale=1) -> Vec:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(x: Mapping, c) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def vec_is_zero(x: Mapping) -> bool:
    return not any(x.values())


def dense(x: Mapping, n: int) -> list:
    return [x.get(i, Fraction(0)) for i in range(n)]


def sparse(values: Iterable) -> Vec:
    return {i: Fraction(v) for i, v in enumerate(values) if v}


# -- elimination -----------------------------------------------------------

class RowReducer:
    """Incremental reduced echelon basis of a row space.

    ``add(v)`` inserts a vector and reports whether it was independent;
    ``reduce(v)`` returns the remainder of ``v`` modulo the span, and
    ``coordinates(v)`` expresses a vector of the span in terms of the
    inserted vectors (or returns None if it is outside).
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, Vec] = {}  # pivot -> row with 1 at pivot
        self.track = track
        self.combos: dict[int, Vec] = {}  # pivot -> combination of inserted vectors
        self.count = 0

    def _reduce(self, v: Mapping, combo: Vec | None):
        v = dict(v)
        # pivots are eliminated greedily; rows are fully reduced so one pass per pivot suffices
        changed = True
        while changed:
            changed = False
            for p in [k for k in v if k in self.rows]:
                c = v.get(p)
                if not c:
                    continue
                v = vec_add(v, self.rows[p], -c)
                if combo is not None:
                    combo = vec_add(combo, self.combos[p], -c)
                changed = True
        return v, combo

    def reduce(self, v: Mapping) -> Vec:
        return self._reduce(v, None)[0]

    def add(self, v: Mapping) -> bool:
        combo = {self.count: Fraction(1)} if self.track else None
        self.count += 1
        r, combo = self._reduce(v, combo)
        if not r:
            return False
        p = min(r)
        c = r[p]
        r = vec_scale(r, 1 / Fraction(c))
        if combo is not None:
            combo = vec_scale(combo, 1 / Fraction(c))
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                self.rows[q] = vec_add(row, r, -a)
                if self.track:
                    self.combos[q] = vec_add(self.combos[q], combo, -a)
        self.rows[p] = r
        if self.track:
            self.combos[p] = combo
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping) -> Vec | None:
        if not self.track:
            raise ValueError("RowReducer was built without tracking")
        r, combo = self._reduce(v, {})
        if r:
            return None
        return vec_scale(combo, -1)


def rank(vectors: Iterable[Mapping]) -> int:
    rr = RowReducer()
    for v in vectors:
        rr.add(v)
    return rr.rank


def nullspace(equations: Sequence[Mapping], ncols: int) -> list[Vec]:
    """Basis of ``{x in Q^ncols : <eq, x> = 0 for every equation}``."""
    rr = RowReducer()
    for eq in equations:
        rr.add(eq)
    pivots = set(rr.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        x = {free: Fraction(1)}
        for p, row in rr.rows.items():
            c = row.get(free)
            if c:
                x[p] = -c
        basis.append(x)
    return basis


class SpanSolver:
    """Express vectors in terms of a fixed independent family."""

    def __init__(self, basis: Sequence[Mapping]):
        self.rr = RowReducer(track=True)
        for v in basis:
            if not self.rr.add(v):
                raise ValueError("SpanSolver basis is linearly dependent")
        self.size = len(basis)

    def solve(self, v: Mapping) -> Vec | None:
        return self.rr.coordinates(v)


# -- symmetric signature ---------------------------------------------------

def signature(matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a rational symmetric matrix.

    Symmetric elimination by congruence (Sylvester's law of inertia).  When
    every remaining diagonal entry vanishes, a 2x2 hyperbolic block
    ``[[0, b], [b, 0]]`` is eliminated, contributing one of each sign.
    Accepts a dense list of rows or a dict-of-dicts.
    """
    if isinstance(matrix, dict):
        m = {i: {j: Fraction(v) for j, v in row.items() if v} for i, row in matrix.items()}
        n_total = len(matrix)
    else:
        m = {i: {j: Fraction(v) for j, v in enumerate(row) if v} for i, row in enumerate(matrix)}
        n_total = len(m)
    for i, row in m.items():
        for j, v in row.items():
            if m.get(j, {}).get(i, 0) != v:
                raise ValueError("signature() needs a symmetric matrix")
    pos = neg = 0
    alive = set(m)

    def drop(k):
        alive.discard(k)
        for j in list(m[k]):
            if j != k:
                m[j].pop(k, None)
        m[k] = {}

    while True:
        diag = [i for i in alive if m[i].get(i)]
        if diag:
            p = min(diag, key=lambda i: (len(m[i]), i))
            d = m[p][p]
            if d > 0:
                pos += 1
            else:
                neg += 1
            col = {j: v for j, v in m[p].items() if j != p}
            drop(p)
            for j, a in col.items():
                f = a / d
                rj = m[j]
                for k, b in col.items():
                    s = rj.get(k, 0) - f * b
                    if s:
                        rj[k] = s
                    else:
                        rj.pop(k, None)
            continue
        off = [(i, j) for i in sorted(alive) for j in m[i] if j != i]
        if not off:
            break
        i, j = off[0]
        b = m[i][j]
        ci = {k: v for k, v in m[i].items() if k not in (i, j)}
        cj = {k: v for k, v in m[j].items() if k not in (i, j)}
        drop(i)
        drop(j)
        pos += 1
        neg += 1
        # Schur complement of the block [[0,b],[b,0]]: M -= (c_i c_j^T + c_j c_i^T)/b
        keys = set(ci) | set(cj)
        for k in keys:
            rk = m[k]
            for l in keys:
                s = rk.get(l, 0) - (ci.get(k, 0) * cj.get(l, 0) + cj.get(k, 0) * ci.get(l, 0)) / b
                if s:
                    rk[l] = s
                else:
                    rk.pop(l, None)
    return pos, neg, n_total - pos - neg


def signature_value(matrix) -> int:
    p, n, _ = signature(matrix)
    return p - n


def exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def sign(x) -> int:
    return (x > 0) - (x < 0)
