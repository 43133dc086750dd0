import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from gradalg.catalog import example
from gradalg.errors import InconsistentParameters, NotAnInvolution
from gradalg.forms import QuadraticForm
from gradalg.graded import as_graded, transpose
from gradalg.groups import elementary_2, make_group, parse_group
from gradalg.involutions import GradedInvolution, twisted_linear_involution
from gradalg.lie import (SixParams, build_six_param, check_six_params, conj_transpose_involution,
                         extended_signature, make_six_params, matrix_algebra, matrix_involution,
                         orbit_invariants, param_action, random_six_params, same_orbit, skew_lie,
                         symplectic_form, symplectic_involution, transpose_involution,
                         verify_transfer_bijection_sample)
from gradalg.twisted import build_twisted


def real_alg(text, g):
    return build_twisted(g, QuadraticForm.from_signs(g, text))


def trivial_r():
    g = make_group(())
    return real_alg("+", g)


def numeric(m):
    Z = np.array([[float(x.re) + 1j * float(x.im) for x in row] for row in m])
    return np.block([[Z.real, -Z.imag], [Z.imag, Z.real]])


def skew_matrices(L):
    mats = [numeric(m) for m in L.parent.mats]
    return [sum(float(c) * mats[i] for i, c in x.items()) for x in L.basis]


# -- skew Lie algebras of matrix algebras ----------------------------------------------

@pytest.mark.parametrize("n", range(2, 7))
def test_so_dims(n):
    r = matrix_algebra(n)
    L = skew_lie(r, transpose_involution(r))
    assert L.dim == n * (n - 1) // 2 == oracles.skew_dim(n, np.eye(n))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_sp_dims(r):
    R = matrix_algebra(2 * r)
    L = skew_lie(R, symplectic_involution(R))
    J = numeric(symplectic_form(2 * r))[: 2 * r, : 2 * r]
    assert L.dim == r * (2 * r + 1) == oracles.skew_dim(2 * r, J)


def test_skew_elements_are_skew_and_closed_numerically():
    R = matrix_algebra(4, ["e", "a", "e", "a"], elementary_2(1))
    L = skew_lie(R, symplectic_involution(R))
    J = numeric(symplectic_form(4))[:4, :4]
    mats = skew_matrices(L)
    flat = np.array([m.reshape(-1) for m in mats]).T
    for X in mats:
        X4 = X[:4, :4]
        assert np.allclose(X4.T @ J + J @ X4, 0)
    for X in mats:
        for Y in mats:
            B = (X @ Y - Y @ X).reshape(-1)
            c, *_ = np.linalg.lstsq(flat, B, rcond=None)
            assert np.allclose(flat @ c, B)
    assert L.component_profile() == {0: 6, 1: 4}


def test_violations_empty():
    for n in (2, 3, 4):
        r = matrix_algebra(n, ["e", "a", "a", "e"][:n], elementary_2(1))
        L = skew_lie(r, transpose_involution(r), verify=False)
        assert not L.antisymmetry_violations()
        assert not L.jacobi_violations()
        assert not L.grading_violations()


def test_quaternion_skew_part():
    D = real_alg("+---", elementary_2(2))
    phi = GradedInvolution(D, eta=QuadraticForm.from_signs(D.group, "+++-"))
    R = as_graded(D)
    L = skew_lie(R, twisted_linear_involution(D, phi))
    assert L.dim == 1
    x = L.basis[0]
    assert list(x) == [3]  # spanned by X_aX_b, the k direction
    assert L.bracket(x, x) == {}


def test_conjugate_transpose_on_z22_grading():
    R = example("grad_M2C_Z22")
    L = skew_lie(R, conj_transpose_involution(R))
    assert L.dim == 4
    mats = skew_matrices(L)
    for X in mats:
        Z = X[:2, :2] + 1j * X[2:, :2]
        assert np.allclose(Z.conj().T, -Z)


def test_non_graded_involution_rejected():
    # transpose does not preserve an elementary grading with distinct row degrees of Z4
    R = matrix_algebra(2, ["e", "a"], parse_group("Z4"))
    with pytest.raises(NotAnInvolution):
        skew_lie(R, transpose_involution(R))


def test_transfer_sample():
    G = elementary_2(1)
    gradings = [matrix_algebra(4, d, G) for d in (["e", "e", "a", "a"], ["e", "a", "e", "a"])]
    rep = verify_transfer_bijection_sample(gradings, transpose)
    assert rep.ok and rep.informative
    assert rep.lie_dims == [6, 6]


def test_transfer_degenerate_so2():
    G = elementary_2(1)
    gradings = [matrix_algebra(2, d, G) for d in (["e", "e"], ["e", "a"])]
    rep = verify_transfer_bijection_sample(gradings, transpose)
    assert rep.lie_dims == [1, 1]
    assert not rep.informative


# -- six-parameter model --------------------------------------------------------------

def z2_transpose_params():
    G = elementary_2(1)
    D = trivial_r()
    phi0 = GradedInvolution(D, eta=D.form)
    return make_six_params(G, D, phi0, "e", {"e": 1, "a": 1}, {"e": 1, "a": 1}, 1)


def test_six_param_transpose_example():
    p = z2_transpose_params()
    R, phi = build_six_param(p)
    assert R.dim == 4
    L = skew_lie(R, phi)
    assert L.dim == 1


def test_six_param_symplectic_example():
    G = make_group(())
    D = trivial_r()
    phi0 = GradedInvolution(D, eta=D.form)
    p = make_six_params(G, D, phi0, "e", {"e": 2}, {}, -1)
    R, phi = build_six_param(p)
    assert skew_lie(R, phi).dim == 3


def test_kappa_sum_mismatch():
    p = z2_transpose_params().replace(k=3)
    with pytest.raises(InconsistentParameters):
        check_six_params(p)


def test_bad_signature_for_multiplicity():
    G = elementary_2(1)
    D = trivial_r()
    phi0 = GradedInvolution(D, eta=D.form)
    with pytest.raises(InconsistentParameters):
        build_six_param(make_six_params(G, D, phi0, "e", {"e": 1, "a": 1}, {"e": 2, "a": 1}, 1))


def test_action_examples():
    p = z2_transpose_params()
    assert param_action(0, False, p).key() == p.key()
    G = parse_group("Z4")
    D = trivial_r()
    phi0 = GradedInvolution(D, eta=D.form)
    q = make_six_params(G, D, phi0, "e", {"e": 1}, {"e": 1}, 1)
    moved = param_action(G.parse_element("a"), False, q)
    assert G.name(moved.g0) == "a^2"
    flipped = param_action(0, True, q)
    assert flipped.kappa == q.kappa
    assert dict(flipped.sigma) == {r: -s for r, s in q.sigma}


def test_same_orbit_examples():
    p = z2_transpose_params()
    q = param_action(1, True, p)
    ok, witness = same_orbit(p, q)
    assert ok
    assert param_action(*witness, p).key() == q.key()
    G = elementary_2(1)
    D = p.D
    other = make_six_params(G, D, p.phi0, "e", {"e": 2}, {"e": 0}, 1)
    assert same_orbit(p, other)[0] is False
    neg = make_six_params(G, D, p.phi0, "e", {"e": 1, "a": 1}, {"e": -1, "a": -1}, 1)
    assert same_orbit(p, neg)[0]


def test_six_param_json_roundtrip():
    rng = random.Random(3)
    for G in (elementary_2(2), parse_group("Z4")):
        for _ in range(5):
            p = random_six_params(G, rng)
            q = SixParams.from_json(p.to_json())
            assert q.key() == p.key() and q.delta == p.delta


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 20), st.sampled_from(["Z2^2", "Z4"]))
def test_orbit_invariants_are_invariant(seed, gname):
    G = parse_group(gname)
    rng = random.Random(seed)
    p = random_six_params(G, rng)
    base = orbit_invariants(*build_six_param(p))
    g = rng.randrange(G.order)
    flip = rng.random() < 0.5
    q = param_action(g, flip, p)
    assert orbit_invariants(*build_six_param(q)) == base


def test_extended_signature_restricts_to_sigma():
    p = z2_transpose_params()
    ext = extended_signature(p)
    for r, s in p.sigma:
        assert ext[r] == s
