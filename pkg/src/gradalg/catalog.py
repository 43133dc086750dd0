"""Explicit matrix realizations of the standard small graded division algebras.

Matrices are listed in canonical degree order of their grading group.
"""
from __future__ import annotations

from .exact import GaussQ
from .graded import GradedAlgebra, block_diag, from_matrices, graded_tensor, trivial_grading
from .groups import make_group
from .structure import FDAlgebra

i = GaussQ(0, 1)

I2 = [[1, 0], [0, 1]]
J2 = [[0, -1], [1, 0]]  # square -I
SX = [[0, 1], [1, 0]]
SZ = [[1, 0], [0, -1]]

# quaternions inside M2(C): A_i A_j = A_k
QI = [[i, 0], [0, -i]]
QJ = [[0, 1], [-1, 0]]
QK = [[0, i], [i, 0]]


def _neg(m):
    return [[-GaussQ.coerce(x) for x in row] for row in m]


def _scale(m, c):
    c = GaussQ.coerce(c)
    return [[c * GaussQ.coerce(x) for x in row] for row in m]


def grad_M2R_dim1() -> GradedAlgebra:
    return from_matrices([I2, [[-1, 0], [0, 1]], SX, J2], ["e", "a", "b", "ab"], make_group([2, 2]))


def grad_H_dim1() -> GradedAlgebra:
    return from_matrices([I2, QI, QJ, QK], ["e", "a", "b", "ab"], make_group([2, 2]),
                         names=["1", "i", "j", "k"])


def grad_C_dim1() -> GradedAlgebra:
    return from_matrices([[[1]], [[i]]], ["e", "a"], make_group([2]), names=["1", "i"])


def grad_M2R_dim2() -> GradedAlgebra:
    return from_matrices([I2, J2, SX, [[-1, 0], [0, 1]]], ["e", "e", "a", "a"], make_group([2]))


def grad_M2C_dim1() -> GradedAlgebra:
    mats = [
        I2, SX,
        [[1 + i, 0], [0, -1 - i]], [[0, -1 - i], [1 + i, 0]],
        [[i, 0], [0, i]], [[0, i], [i, 0]],
        [[-1 + i, 0], [0, 1 - i]], [[0, 1 - i], [-1 + i, 0]],
    ]
    degs = ["e", "a", "b", "ab", "b^2", "ab^2", "b^3", "ab^3"]
    return from_matrices(mats, degs, make_group([2, 4]))


def grad_M2C_Z4() -> GradedAlgebra:
    mats = [
        I2, [[0, i], [i, 0]],
        [[1 + i, 0], [0, -1 - i]], [[0, 1 - i], [-1 + i, 0]],
        [[i, 0], [0, i]], SX,
        [[-1 + i, 0], [0, 1 - i]], [[0, -1 - i], [1 + i, 0]],
    ]
    degs = ["e", "e", "a", "a", "a^2", "a^2", "a^3", "a^3"]
    return from_matrices(mats, degs, make_group([4]))


def grad_M2C_Z22() -> GradedAlgebra:
    """Z2^2 = <g, f>, displayed with those letters; degrees e, g, f, gf."""
    mats = [
        I2, J2,
        SX, [[-1, 0], [0, 1]],
        [[i, 0], [0, i]], [[0, -i], [i, 0]],
        [[0, i], [i, 0]], [[-i, 0], [0, i]],
    ]
    degs = ["e", "e", "a", "a", "b", "b", "ab", "ab"]
    return from_matrices(mats, degs, make_group([2, 2]), letters="gf")


def grad_M2C_Z23() -> GradedAlgebra:
    """A refinement of :func:`grad_M2C_Z22` by Z2^3 = <g, f, h> (M2(R) (x) C type)."""
    mats = [
        I2, J2, SX, [[-1, 0], [0, 1]],
        [[i, 0], [0, i]], [[0, -i], [i, 0]], [[0, i], [i, 0]], [[-i, 0], [0, i]],
    ]
    degs = ["e", "c", "a", "ac", "b", "bc", "ab", "abc"]
    return from_matrices(mats, degs, make_group([2, 2, 2]), letters="gfh")


def _pair(x1, x2):
    return block_diag(x1, x2)


def grad_semisimple_RR() -> GradedAlgebra:
    """Z2 grading on R x R: (1,1) in degree e and (1,-1) in degree a."""
    return from_matrices([_pair([[1]], [[1]]), _pair([[1]], [[-1]])], ["e", "a"], make_group([2]))


def grad_M2_RxR() -> GradedAlgebra:
    """M2(R x R) graded by Z2 x Z4; each matrix is a pair of real 2x2 blocks."""
    D1 = [[1, 0], [0, -1]]
    D2 = [[-1, 0], [0, 1]]
    mats = [
        _pair(I2, I2), _pair(D1, D1),
        _pair(SX, [[0, -1], [1, 0]]), _pair([[0, 1], [-1, 0]], [[0, -1], [-1, 0]]),
        _pair(I2, _neg(I2)), _pair(D1, D2),
        _pair(SX, [[0, 1], [-1, 0]]), _pair([[0, 1], [-1, 0]], SX),
    ]
    degs = ["e", "a", "b", "ab", "b^2", "ab^2", "b^3", "ab^3"]
    return from_matrices(mats, degs, make_group([2, 4]))


def grad_M2R_x_H() -> GradedAlgebra:
    """M2(R) x H graded by Z2 x Z4; H is realized inside M2(C)."""
    mats = [
        _pair(I2, I2), _pair(J2, QI), _pair(SZ, QJ), _pair(SX, QK),
        _pair(I2, _neg(I2)), _pair(J2, _neg(QI)), _pair(SZ, _neg(QJ)), _pair(SX, _neg(QK)),
    ]
    degs = ["e", "a", "b", "ab", "b^2", "ab^2", "b^3", "ab^3"]
    return from_matrices(mats, degs, make_group([2, 4]))


def quaternions_trivial() -> GradedAlgebra:
    """H with the trivial grading (everything in degree e)."""
    g = grad_H_dim1()
    return GradedAlgebra(make_group(()), g.alg, [0] * 4, g.names, g.mats)


def reals_trivial() -> GradedAlgebra:
    return trivial_grading(FDAlgebra(1, {(0, 0): {0: 1}}, {0: 1}, ["1"]), [[[1]]])


def quaternion_neutral_example() -> GradedAlgebra:
    """H (trivially graded) (x) H (graded by Z2^2): neutral component H."""
    return graded_tensor(quaternions_trivial(), grad_H_dim1())


EXAMPLES = {
    "grad_M2R_dim1": grad_M2R_dim1,
    "grad_H_dim1": grad_H_dim1,
    "grad_C_dim1": grad_C_dim1,
    "grad_M2R_dim2": grad_M2R_dim2,
    "grad_M2C_dim1": grad_M2C_dim1,
    "grad_M2C_Z4": grad_M2C_Z4,
    "grad_M2C_Z22": grad_M2C_Z22,
    "grad_M2C_Z23": grad_M2C_Z23,
    "grad_semisimple_RR": grad_semisimple_RR,
    "grad_M2_RxR": grad_M2_RxR,
    "grad_M2R_x_H": grad_M2R_x_H,
    "quaternions_trivial": quaternions_trivial,
    "quaternion_neutral": quaternion_neutral_example,
}


def example(name: str) -> GradedAlgebra:
    try:
        ga = EXAMPLES[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
    ga.meta["spec"] = {"example": name}
    return ga
