import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from gradalg.catalog import EXAMPLES, example
from gradalg.errors import EmbeddingInvalid, NotADivisionGrading, UnrecognizedStructure
from gradalg.forms import QuadraticForm
from gradalg.graded import (build_graded_matrix, component_profile, double_centralizer_holds, graded_tensor,
                            identify, is_coarsening, is_division_grading, kappa_from_degrees,
                            label_division_grading, neutral_centralizer, trivial_grading)
from gradalg.groups import Subgroup, elementary_2, make_group, parse_group
from gradalg.structure import FDAlgebra
from gradalg.twisted import build_twisted


def numeric(m):
    """Realified float copy of a GaussQ matrix."""
    Z = np.array([[float(x.re) + 1j * float(x.im) for x in row] for row in m])
    return np.block([[Z.real, -Z.imag], [Z.imag, Z.real]])


def real_twisted(text, g):
    return build_twisted(g, QuadraticForm.from_signs(g, text))


# -- the catalog against matrices ------------------------------------------------------

@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_catalog_grading_law_on_matrices(name):
    ga = example(name)
    mats = [numeric(m) for m in ga.mats]
    flat = np.array([m.reshape(-1) for m in mats]).T
    add = ga.group.add_table
    for i, x in enumerate(mats):
        for j, y in enumerate(mats):
            c, *_ = np.linalg.lstsq(flat, (x @ y).reshape(-1), rcond=None)
            assert np.allclose(flat @ c, (x @ y).reshape(-1))
            want = add[ga.degrees[i], ga.degrees[j]]
            assert all(abs(c[k]) < 1e-9 for k in range(len(mats)) if ga.degrees[k] != want)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_catalog_class_matches_numeric_oracle(name):
    ga = example(name)
    C = oracles.constants_from_matrices([numeric(m) for m in ga.mats])
    assert identify(ga).label() == oracles.classify(C)


# -- graded matrix algebras ---------------------------------------------------------

def test_elementary_m2r():
    g = make_group(())
    R = build_twisted(g, QuadraticForm(g, (1,)))
    G = elementary_2(1)
    ga = build_graded_matrix(R, G, ["e", "a"])
    assert ga.dim == 4
    # E11, E12, E21, E22 in row-major order
    assert [G.name(d) for d in ga.degrees] == ["e", "a", "a", "e"]
    assert identify(ga).label() == "M2(R)"


def test_split_form_recovers_dim1_example():
    G = elementary_2(2)
    ga = build_graded_matrix(real_twisted("+++-", G), G, ["e"])
    assert component_profile(ga) == {0: 1, 1: 1, 2: 1, 3: 1}
    assert is_division_grading(ga)
    assert label_division_grading(ga).tag == "1-a"


def test_complex_form_in_z22():
    Z2 = elementary_2(1)
    G = elementary_2(2)
    ga = build_graded_matrix(real_twisted("+-", Z2), G, ["e", "b"], embedding=["a"])
    assert ga.dim == 8
    assert component_profile(ga) == {0: 2, 1: 2, 2: 2, 3: 2}
    assert identify(ga).label() == "M2(C)"


def test_bad_embedding():
    Z2 = elementary_2(1)
    with pytest.raises(EmbeddingInvalid):
        build_graded_matrix(real_twisted("+-", Z2), parse_group("Z4"), ["e"], embedding=["a"])
    with pytest.raises(EmbeddingInvalid):
        build_graded_matrix(real_twisted("+-", Z2), elementary_2(2), [])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 16), st.integers(1, 3))
def test_random_elementary_gradings(seed, k):
    rng = random.Random(seed)
    G = parse_group(rng.choice(["Z2^2", "Z4", "Z2xZ4"]))
    T = elementary_2(1)
    D = real_twisted(rng.choice(["++", "+-"]), T)
    two = [t for t in range(1, G.order) if G.element_order(t) == 2]
    emb = [rng.choice(two)]
    degs = [rng.randrange(G.order) for _ in range(k)]
    ga = build_graded_matrix(D, G, degs, embedding=emb)
    assert ga.grading_law_violations() == []
    # component sizes from the degree formula, counted directly
    img = [0, emb[0]]
    want = {}
    for i in range(k):
        for j in range(k):
            for t in range(2):
                g = G.add(G.add(degs[i], img[t]), G.neg(degs[j]))
                want[g] = want.get(g, 0) + 1
    assert component_profile(ga) == dict(sorted(want.items()))


# -- division gradings ---------------------------------------------------------------

def test_division_examples():
    assert is_division_grading(example("grad_M2R_dim1"))
    assert is_division_grading(example("grad_M2R_dim2"))
    g = make_group(())
    R = build_twisted(g, QuadraticForm(g, (1,)))
    ga = build_graded_matrix(R, elementary_2(1), ["e", "e"])
    assert not is_division_grading(ga)
    with pytest.raises(NotADivisionGrading):
        label_division_grading(ga)


def test_profiles():
    assert sorted(component_profile(example("grad_M2C_Z22")).values()) == [2, 2, 2, 2]
    assert sorted(component_profile(example("grad_M2C_dim1")).values()) == [1] * 8
    assert list(component_profile(example("quaternions_trivial")).values()) == [4]


def test_coarsenings():
    assert is_coarsening(example("grad_M2R_dim2"), example("grad_M2R_dim1"))
    assert is_coarsening(example("grad_M2C_Z4"), example("grad_M2C_dim1"))
    assert not is_coarsening(example("grad_M2R_dim1"), example("grad_M2R_dim2"))
    for name in EXAMPLES:
        ga = example(name)
        assert is_coarsening(ga, ga)


def test_tensor_products():
    t = graded_tensor(example("grad_M2R_dim1"), example("grad_H_dim1"))
    assert t.dim == 16 and t.group.order == 16
    assert is_division_grading(t)
    assert identify(t).label() == "M2(H)"
    t = graded_tensor(example("grad_M2R_dim1"), example("grad_C_dim1"))
    assert t.dim == 8 and identify(t).label() == "M2(C)"
    assert label_division_grading(t).tag == "1-c"
    x = example("grad_M2R_dim1")
    t = graded_tensor(x, trivial_grading(real_twisted("+", make_group(())).to_fd_algebra()))
    assert sorted(component_profile(t).values()) == sorted(component_profile(x).values())
    assert identify(t) == identify(x)


def test_neutral_centralizer():
    ga = example("grad_M2C_Z22")
    c = neutral_centralizer(ga)
    assert [ga.degree_name(t) for t in c.K.members] == ["e", "f"]
    ga = example("grad_M2R_dim1")
    assert neutral_centralizer(ga).K.members == tuple(ga.support())
    q = example("quaternion_neutral")
    assert neutral_centralizer(q).K.order == 4
    assert double_centralizer_holds(q)


# -- labels ---------------------------------------------------------------------------

@pytest.mark.parametrize("name, tag", [
    ("grad_M2R_dim1", "1-a"), ("grad_H_dim1", "1-b"), ("grad_C_dim1", "1-c"), ("grad_M2C_dim1", "1-d"),
    ("grad_M2R_dim2", "2-a"), ("grad_M2C_Z4", "2-e"), ("grad_M2C_Z22", "2-c"), ("grad_M2C_Z23", "1-c"),
    ("quaternions_trivial", "4-a"), ("quaternion_neutral", "4-b"),
])
def test_labels(name, tag):
    assert label_division_grading(example(name)).tag == tag


@pytest.mark.parametrize("name, label", [
    ("grad_semisimple_RR", "RxR"), ("grad_M2_RxR", "M2(R)xM2(R)"), ("grad_M2R_x_H", "M2(R)xH"),
])
def test_semisimple_examples(name, label):
    ga = example(name)
    assert identify(ga).label() == label
    with pytest.raises(UnrecognizedStructure):
        label_division_grading(ga)


def test_refinement_of_2c_is_1c():
    fine, coarse = example("grad_M2C_Z23"), example("grad_M2C_Z22")
    # different grading groups, compared through the shared matrices
    assert fine.dim == coarse.dim
    assert is_coarsening(coarse, fine)


# -- multiplicity functions ---------------------------------------------------------

def test_kappa_examples():
    G = parse_group("Z4")
    T = Subgroup(G, (0, 2))
    assert kappa_from_degrees(G, T, ["e", "a", "a^3"]).to_json() == {"e": 1, "a": 2}
    k = kappa_from_degrees(G, T, ["a", "a", "a"])
    assert k.support() == [1] and k.total == 3
    G = elementary_2(2)
    assert kappa_from_degrees(G, Subgroup(G, (0,)), ["e", "a", "b", "b"]).as_list() == [1, 1, 2, 0]


def test_fd_algebra_from_graded_is_associative():
    for name in EXAMPLES:
        A: FDAlgebra = example(name).alg
        assert A.is_associative()
