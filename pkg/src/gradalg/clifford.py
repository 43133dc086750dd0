"""Real Clifford algebras Cl_{p,q} as Z2^N-graded twisted group algebras.

Generators v_1..v_p square to +1 and v_{p+1}..v_N to -1.  The word
v_I = v_{i1}...v_{ir} (i1 < ... < ir) has degree equal to the bitmask of I,
which is also its canonical index in Z2^N.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import InternalDisagreement, SizeBoundExceeded
from .exact import GaussQ
from .forms import QuadraticForm, arf
from .groups import elementary_2
from .structure import AlgebraClass, MatH, MatR, class_from_arf
from .twisted import TwistedAlgebra, twisted_from_generators

BUILD_BOUND = 10
FORMULA_BOUND = 20
BINOMIAL_BOUND = 64


@dataclass(frozen=True)
class CliffordSignature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("p and q must be non-negative")

    @property
    def N(self) -> int:
        return self.p + self.q

    @property
    def negative_mask(self) -> int:
        return ((1 << self.q) - 1) << self.p

    def __str__(self):
        return f"Cl({self.p},{self.q})"


@dataclass(frozen=True)
class BinomialSums:
    S0: int
    S1: int
    S2: int
    S3: int

    def as_tuple(self):
        return (self.S0, self.S1, self.S2, self.S3)


def _sig(sig, q=None) -> CliffordSignature:
    if isinstance(sig, CliffordSignature):
        return sig
    if q is not None:
        return CliffordSignature(int(sig), int(q))
    return CliffordSignature(*sig)


def clifford_build(sig) -> TwistedAlgebra:
    s = _sig(sig)
    if s.N > BUILD_BOUND:
        raise SizeBoundExceeded(f"N = {s.N} exceeds {BUILD_BOUND}")
    alg = twisted_from_generators(s.N, [1] * s.p + [-1] * s.q, anticommute=True)
    assert alg.dim == 2 ** s.N
    return alg


def _square_exponents(s: CliffordSignature) -> np.ndarray:
    """Parity of the exponent of -1 in v_I^2, for every I."""
    idx = np.arange(2 ** s.N, dtype=np.int64)
    r = np.zeros_like(idx)
    neg = np.zeros_like(idx)
    for k in range(s.N):
        bit = (idx >> k) & 1
        r += bit
        if k >= s.p:
            neg += bit
    return (r * (r - 1) // 2 + neg) % 2


def mu_pq(sig, method: str = "formula") -> QuadraticForm:
    """Signs of v_I^2: formula (-1)^(C(r,2) + |I cap negatives|) or the built algebra."""
    s = _sig(sig)
    g = elementary_2(s.N)
    if method == "formula":
        if s.N > FORMULA_BOUND:
            raise SizeBoundExceeded(f"N = {s.N} exceeds {FORMULA_BOUND}")
        e = _square_exponents(s)
        return QuadraticForm(g, tuple(int(x) for x in 1 - 2 * e))
    if method == "algebra":
        alg = clifford_build(s)
        diag = np.diagonal(alg.phases)
        return QuadraticForm(g, tuple(int(1 - d) for d in diag))
    raise ValueError(f"unknown method {method!r}")


def _arf_trig(k: int) -> int:
    # cos(k pi/4) + sin(k pi/4) has the sign of Re + Im of (1+i)^k
    z = GaussQ(1, 1) ** (k % 8)
    v = z.re + z.im
    return (v > 0) - (v < 0)


def _arf_mod8(p: int, q: int) -> int:
    r = (p - q + 1) % 8
    if r in (1, 2, 3):
        return 1
    if r in (0, 4):
        return 0
    return -1


def arf_closed_form(sig) -> int:
    s = _sig(sig)
    a, b = _arf_trig(s.p - s.q), _arf_mod8(s.p, s.q)
    if a != b:
        raise InternalDisagreement(f"{s}: trigonometric rule {a} vs mod-8 rule {b}")
    return a


def identify_clifford(sig) -> AlgebraClass:
    s = _sig(sig)
    return class_from_arf(s.N, arf_closed_form(s))


PERIODICITY_RULES = (
    ("Cl(p+1,q+1) = Cl(p,q) (x) M2(R)", lambda p, q: ((p + 1, q + 1), (p, q), MatR(2))),
    ("Cl(p+2,q) = Cl(q,p) (x) M2(R)", lambda p, q: ((p + 2, q), (q, p), MatR(2))),
    ("Cl(p,q+2) = Cl(q,p) (x) H", lambda p, q: ((p, q + 2), (q, p), MatH(1))),
)


def periodicity_check(sig) -> list[dict]:
    s = _sig(sig)
    out = []
    for name, rule in PERIODICITY_RULES:
        lhs_sig, rhs_sig, factor = rule(s.p, s.q)
        lhs = identify_clifford(lhs_sig)
        rhs = identify_clifford(rhs_sig).tensor(factor)
        out.append({"rule": name, "p": s.p, "q": s.q, "lhs": lhs.label(),
                    "rhs": rhs.label(), "pass": lhs == rhs})
    return out


def binomial_sums(N: int) -> tuple[BinomialSums, BinomialSums]:
    """(direct, closed form) values of S_k = sum_{r = k mod 4} C(N, r)."""
    if not 1 <= N <= BINOMIAL_BOUND:
        raise SizeBoundExceeded(f"N must lie in [1, {BINOMIAL_BOUND}]")
    direct = [0, 0, 0, 0]
    for r in range(N + 1):
        direct[r % 4] += comb(N, r)
    # (1+i)^N = 2^(N/2) (cos(N pi/4) + i sin(N pi/4)), exactly over Z[i]
    z = GaussQ(1, 1) ** N
    X, Y = int(z.re), int(z.im)
    h = 2 ** (N - 1)
    closed = [(h + X) // 2, (h + Y) // 2, (h - X) // 2, (h - Y) // 2]
    for num in (h + X, h + Y, h - X, h - Y):
        if num % 2:
            raise InternalDisagreement("closed form is not integral")
    return BinomialSums(*direct), BinomialSums(*closed)


def arf_via_counting(sig) -> int:
    s = _sig(sig)
    if s.N > FORMULA_BOUND:
        raise SizeBoundExceeded(f"N = {s.N} exceeds {FORMULA_BOUND}")
    e = _square_exponents(s)
    minus = int(e.sum())
    diff = 2 ** s.N - 2 * minus
    if s.N >= 1 and (s.p == 0 or s.q == 0):
        S = binomial_sums(s.N)[0]
        expect = (S.S0 + S.S1 - S.S2 - S.S3) if s.q == 0 else (S.S0 - S.S1 - S.S2 + S.S3)
        if diff != expect:
            raise InternalDisagreement(f"{s}: count {diff} vs binomial identity {expect}")
    return (diff > 0) - (diff < 0)


def arf_three_ways(sig) -> dict:
    s = _sig(sig)
    return {"counting": arf_via_counting(s), "closed": arf_closed_form(s),
            "form": arf(mu_pq(s))}


def clifford_table(max_n: int) -> list[list[AlgebraClass]]:
    """Grid indexed [p][q] for 0 <= p, q <= max_n."""
    return [[identify_clifford((p, q)) for q in range(max_n + 1)] for p in range(max_n + 1)]
