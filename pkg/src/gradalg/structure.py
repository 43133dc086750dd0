"""Finite-dimensional real algebras given by structure constants.

This is the oracle substrate: an algebra is identified from its center and
the trace form of its left regular representation, never from the data it
was built from.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import UnrecognizedStructure
from .exact import RowReducer, SpanSolver, exact_sqrt, nullspace, signature, vec_add

# -- recognition targets ----------------------------------------------------

_DIV_ORDER = {"R": 0, "C": 1, "H": 2}
_DIV_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class AlgebraClass:
    """Product of full matrix algebras ``M_n(D)``, D in R, C, H."""
    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        fs = tuple(sorted(((str(d), int(n)) for d, n in self.factors),
                          key=lambda f: (_DIV_ORDER[f[0]], f[1])))
        if not fs or any(n < 1 for _, n in fs):
            raise ValueError("an algebra class needs factors of positive size")
        object.__setattr__(self, "factors", fs)

    @classmethod
    def mat(cls, div: str, n: int = 1) -> "AlgebraClass":
        return cls(((div, n),))

    @property
    def kind(self) -> str:
        return "x".join(f"Mat{d}" for d, _ in self.factors)

    @property
    def n(self):
        ns = [n for _, n in self.factors]
        return ns[0] if len(set(ns)) == 1 else ns

    @property
    def dim(self) -> int:
        return sum(_DIV_DIM[d] * n * n for d, n in self.factors)

    @property
    def signature(self) -> int:
        """Signature of the regular trace form, summed over factors."""
        out = 0
        for d, n in self.factors:
            out += {"R": n, "C": 0, "H": -2 * n}[d]
        return out

    @property
    def center_dim(self) -> int:
        return sum(2 if d == "C" else 1 for d, _ in self.factors)

    def tensor(self, other: "AlgebraClass") -> "AlgebraClass":
        out = []
        for d1, n1 in self.factors:
            for d2, n2 in other.factors:
                out.extend(_tensor_simple(d1, n1, d2, n2))
        return AlgebraClass(tuple(out))

    __matmul__ = tensor

    def label(self) -> str:
        parts = []
        for d, n in self.factors:
            parts.append(d if n == 1 else f"M{n}({d})")
        return "x".join(parts)

    def __str__(self):
        return self.label()

    def to_json(self) -> dict:
        return {"class": self.kind, "n": self.n}

    @classmethod
    def from_json(cls, obj) -> "AlgebraClass":
        kinds = obj["class"].split("x")
        ns = obj["n"] if isinstance(obj["n"], list) else [obj["n"]] * len(kinds)
        return cls(tuple((k.removeprefix("Mat"), n) for k, n in zip(kinds, ns)))

    @classmethod
    def parse(cls, text: str) -> "AlgebraClass":
        """Inverse of :meth:`label`."""
        out = []
        for part in text.split("x"):
            part = part.strip()
            if part in _DIV_ORDER:
                out.append((part, 1))
            elif part.startswith("M") and part.endswith(")"):
                n, d = part[1:-1].split("(")
                out.append((d, int(n)))
            else:
                raise ValueError(f"cannot parse algebra class {text!r}")
        return cls(tuple(out))


def _tensor_simple(d1, n1, d2, n2):
    n = n1 * n2
    pair = "".join(sorted((d1, d2), key=_DIV_ORDER.get))
    if d1 == "R":
        return [(d2, n)]
    if d2 == "R":
        return [(d1, n)]
    if pair == "CC":
        return [("C", n), ("C", n)]
    if pair == "CH":
        return [("C", 2 * n)]
    return [("R", 4 * n)]  # H (x) H = M4(R)


MatR = lambda n=1: AlgebraClass.mat("R", n)  # noqa: E731
MatC = lambda n=1: AlgebraClass.mat("C", n)  # noqa: E731
MatH = lambda n=1: AlgebraClass.mat("H", n)  # noqa: E731


def class_from_arf(N: int, arf_value: int) -> AlgebraClass:
    """The real algebra attached to a regular or split form on Z2^N."""
    m, odd = divmod(N, 2)
    if not odd:
        if arf_value == 1:
            return MatR(2 ** m)
        if arf_value == -1:
            return MatH(2 ** (m - 1))
        raise ValueError("Arf 0 is impossible on an even-rank group with trivial radical")
    if arf_value == 0:
        return MatC(2 ** m)
    if arf_value == 1:
        return AlgebraClass((("R", 2 ** m),) * 2)
    if m == 0:
        raise ValueError("Arf -1 is impossible on Z2")
    return AlgebraClass((("H", 2 ** (m - 1)),) * 2)


# -- structure constants ----------------------------------------------------

class FDAlgebra:
    """Real algebra with basis e_0..e_{n-1} and ``e_i e_j = table(i, j)``.

    ``table`` may be a dict keyed by pairs or a callable; products are
    sparse dicts with Fraction values.
    """

    def __init__(self, dim: int, table, unit: dict, names: Sequence[str] | None = None,
                 generators: Sequence[int] | None = None):
        self.dim = dim
        # basis indices generating the algebra; the center is their commutant
        self.generators = list(generators) if generators is not None else None
        if callable(table):
            self._table = {(i, j): table(i, j) for i in range(dim) for j in range(dim)}
        else:
            self._table = dict(table)
        self.unit = dict(unit)
        self.names = list(names) if names else [f"e{i}" for i in range(dim)]

    def basis_product(self, i: int, j: int) -> dict:
        return self._table.get((i, j), {})

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                p = self.basis_product(i, j)
                if p:
                    out = vec_add(out, p, a * b)
        return out

    def basis_vector(self, i: int) -> dict:
        return {i: Fraction(1)}

    def is_associative(self, triples: Sequence[tuple[int, int, int]] | None = None) -> bool:
        rng = range(self.dim)
        it = triples if triples is not None else ((i, j, k) for i in rng for j in rng for k in rng)
        for i, j, k in it:
            ei, ej, ek = ({i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)})
            if self.mul(self.mul(ei, ej), ek) != self.mul(ei, self.mul(ej, ek)):
                return False
        return True

    # -- traces --------------------------------------------------------
    def _basis_traces(self) -> list[Fraction]:
        """tr(L_{e_m}) for each m."""
        if not hasattr(self, "_traces"):
            self._traces = [sum(self.basis_product(m, k).get(k, 0) for k in range(self.dim))
                            for m in range(self.dim)]
        return self._traces

    def trace(self, x: dict) -> Fraction:
        tr = self._basis_traces()
        return Fraction(sum(c * tr[m] for m, c in x.items()))

    def trace_gram(self, left: dict | None = None) -> list[list[Fraction]]:
        """Matrix of (x, y) -> tr(L_{left x y}); ``left`` defaults to 1."""
        tr = self._basis_traces()
        n = self.dim
        rows = [{i: Fraction(1)} if left is None else self.mul(left, {i: Fraction(1)})
                for i in range(n)]
        G = [[0] * n for _ in range(n)]
        for i, w in enumerate(rows):
            for k, a in w.items():
                for j in range(n):
                    p = self.basis_product(k, j)
                    if p:
                        G[i][j] += a * sum(c * tr[m] for m, c in p.items())
        return G

    def trace_signature(self) -> tuple[int, int, int]:
        return signature(self.trace_gram())

    # -- center ----------------------------------------------------------
    def commutant(self, elements: Sequence[dict]) -> list[dict]:
        """Basis of {z : z y = y z for every y in ``elements``}."""
        eqs = []
        for y in elements:
            rows: dict[int, dict] = {}
            for t in range(self.dim):
                et = {t: 1}
                diff = vec_add(self.mul(et, y), self.mul(y, et), -1)
                for w, c in diff.items():
                    rows.setdefault(w, {})[t] = c
            eqs.extend(r for r in rows.values() if r)
        return nullspace(eqs, self.dim)

    def center(self) -> list[dict]:
        gens = self.generators if self.generators is not None else range(self.dim)
        return self.commutant([{j: 1} for j in gens])


def identify_algebra(A: FDAlgebra) -> AlgebraClass:
    """Recognize a semisimple real algebra with center of dimension <= 2.

    Uses only the center and trace forms of the left regular representation.
    """
    pos, neg, zero = A.trace_signature()
    if zero:
        raise UnrecognizedStructure("trace form is degenerate (algebra not semisimple)")
    sig = pos - neg
    Z = A.center()
    dim = A.dim
    if len(Z) == 1:
        return _simple_central(dim, sig)
    if len(Z) != 2:
        raise UnrecognizedStructure(f"center has dimension {len(Z)}")
    rr = RowReducer()
    rr.add(A.unit)
    z = next(v for v in Z if rr.reduce(v))
    solver = SpanSolver([A.unit, z])
    coords = solver.solve(A.mul(z, z))
    if coords is None:
        raise UnrecognizedStructure("center is not closed under multiplication")
    a, b = coords.get(0, Fraction(0)), coords.get(1, Fraction(0))
    zc = vec_add(z, A.unit, -b / 2)  # zc^2 = d * 1
    d = a + b * b / 4
    if d < 0:
        n2 = Fraction(dim, 2)
        n = exact_sqrt(int(n2)) if n2.denominator == 1 else None
        if n is None or sig != 0:
            raise UnrecognizedStructure(f"dimension {dim} with a complex center is not 2n^2")
        return MatC(n)
    if d == 0:
        raise UnrecognizedStructure("center is not reduced")
    t = A.trace(zc)
    ratio = t * t / d
    if ratio.denominator != 1 or exact_sqrt(int(ratio)) is None:
        raise UnrecognizedStructure("factor dimensions are not integral")
    delta = exact_sqrt(int(ratio)) * (1 if t >= 0 else -1)
    sp, sn, _ = signature(A.trace_gram(left=zc))
    sdiff = sp - sn
    if (dim + delta) % 2 or (sig + sdiff) % 2:
        raise UnrecognizedStructure("inconsistent split invariants")
    f1 = _simple_central((dim + delta) // 2, (sig + sdiff) // 2)
    f2 = _simple_central((dim - delta) // 2, (sig - sdiff) // 2)
    return AlgebraClass(f1.factors + f2.factors)


def _simple_central(dim: int, sig: int) -> AlgebraClass:
    if sig > 0 and sig * sig == dim:
        return MatR(sig)
    if sig < 0 and sig % 2 == 0 and sig * sig == dim:
        return MatH(-sig // 2)
    raise UnrecognizedStructure(f"no central simple algebra of dimension {dim} and signature {sig}")


def from_matrices(mats: Sequence, unit_coords: dict | None = None,
                  product: Callable | None = None) -> FDAlgebra:
    """Algebra spanned by a basis of real matrices closed under product.

    ``mats`` are lists of rows with rational entries; the product of two
    basis matrices is expanded in the basis by exact solve.
    """
    n = len(mats)
    flat = [{k: Fraction(v) for k, v in enumerate(x for row in m for x in row) if v} for m in mats]
    solver = SpanSolver(flat)
    mul = product or _matmul
    table = {}
    for i in range(n):
        for j in range(n):
            p = mul(mats[i], mats[j])
            vec = {k: Fraction(v) for k, v in enumerate(x for row in p for x in row) if v}
            c = solver.solve(vec)
            if c is None:
                raise UnrecognizedStructure("basis is not closed under the product")
            if c:
                table[(i, j)] = c
    if unit_coords is None:
        size = len(mats[0])
        ident = {k: Fraction(1) for k in range(0, size * size, size + 1)}
        unit_coords = solver.solve(ident)
        if unit_coords is None:
            raise UnrecognizedStructure("identity matrix is not in the span")
    return FDAlgebra(n, table, unit_coords)


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p)]
            for i in range(n)]
