import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chevloc.group import ChevalleyGroup
from chevloc.lie import (
    GeneratorTemplate,
    ad_matrices,
    check_jacobi,
    compute_structure_constants,
    lie_data,
)
from chevloc.roots import add, neg, parse_system, root_string

NAMES = ["A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]
SYSTEMS = {n: parse_system(n) for n in NAMES}


def test_a2_constant():
    sys = SYSTEMS["A2"]
    c = compute_structure_constants(sys)
    assert abs(c((1, 0), (0, 1))) == 1


def test_g2_constant():
    sys = SYSTEMS["G2"]
    c = compute_structure_constants(sys)
    assert abs(c((1, 0), (1, 1))) == 2


@pytest.mark.parametrize("name", NAMES)
def test_constants_antisymmetric_and_sized(name):
    sys = SYSTEMS[name]
    c = compute_structure_constants(sys)
    for a in sys.roots:
        for b in sys.roots:
            if add(a, b) in sys.roots:
                assert c(a, b) == -c(b, a)
                p, _ = root_string(sys, a, b)
                assert abs(c(a, b)) == p + 1


@pytest.mark.parametrize("name", NAMES)
def test_jacobi(name):
    check_jacobi(compute_structure_constants(SYSTEMS[name]))


@pytest.mark.parametrize("name", NAMES)
def test_extraspecial_signs_positive(name):
    sys = SYSTEMS[name]
    c = compute_structure_constants(sys)
    pos = sys.positive_roots
    idx = {a: i for i, a in enumerate(pos)}
    for g in pos[sys.rank:]:
        # extraspecial pair: a minimal, then b = g - a
        pairs = [(a, tuple(x - y for x, y in zip(g, a))) for a in pos]
        pairs = [(a, b) for a, b in pairs if b in idx and idx[a] < idx[b]]
        a, b = min(pairs, key=lambda ab: idx[ab[0]])
        assert c(a, b) > 0


def test_a2_first_order_entry():
    sys = SYSTEMS["A2"]
    d = lie_data(sys)
    tpl = d.templates[(1, 0)]
    ri = sys.root_index
    # coefficient of t sending e_{a2} to e_{a1+a2}
    assert tpl.coeffs[1][ri[(1, 1)], ri[(0, 1)]] == d.consts((1, 0), (0, 1))
    assert abs(tpl.coeffs[1][ri[(1, 1)], ri[(0, 1)]]) == 1


@pytest.mark.parametrize("name", [n for n in NAMES if n != "F4"])
def test_templates_identity_at_zero_and_json(name):
    sys = SYSTEMS[name]
    d = lie_data(sys)
    for a, tpl in d.templates.items():
        assert np.array_equal(tpl.evaluate_int(0), np.eye(sys.dim, dtype=np.int64))
        back = GeneratorTemplate.from_json(tpl.to_json())
        assert back.root == a and all(np.array_equal(x, y) for x, y in zip(back.coeffs, tpl.coeffs))


# Polynomials of degree <= 3 in each variable: agreement on a 7x7 grid of
# integers is an identity of polynomial matrices (product degree <= 6).
GRID = range(-3, 4)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_one_parameter_subgroup_identity(name):
    sys = SYSTEMS[name]
    for tpl in lie_data(sys).templates.values():
        assert tpl.degree <= 3
        for s in GRID:
            for t in GRID:
                assert np.array_equal(tpl.evaluate_int(s) @ tpl.evaluate_int(t), tpl.evaluate_int(s + t))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2", "A3"]), st.data())
def test_template_determinant_one(name, data):
    sys = SYSTEMS[name]
    a = data.draw(st.sampled_from(sys.ordered_roots))
    t = data.draw(st.integers(-3, 3))
    M = lie_data(sys).templates[a].evaluate_int(t)
    assert round(np.linalg.det(M.astype(float))) == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "B2", "G2"]), st.data())
def test_ad_root_vectors_nilpotent(name, data):
    sys = SYSTEMS[name]
    ad = ad_matrices(compute_structure_constants(sys))
    a = data.draw(st.sampled_from(sys.ordered_roots))
    X = ad[sys.root_index[a]]
    assert not np.linalg.matrix_power(X, 5).any()


def test_commutator_constants_cover_non_proportional_pairs():
    for name in ("A2", "B2", "G2"):
        sys = SYSTEMS[name]
        cc = lie_data(sys).commutator_constants
        for a in sys.roots:
            for b in sys.roots:
                if b in (a, neg(a)):
                    continue
                terms = cc[(a, b)]
                if add(a, b) in sys.roots:
                    (i, j), g, C = terms[0]
                    assert (i, j) == (1, 1) and g == add(a, b)
                    assert C == lie_data(sys).consts(a, b)
                else:
                    assert all(g != add(a, b) for _, g, _ in terms)


def test_h_matrix_matches_weyl_definition_and_is_diagonal():
    sys = SYSTEMS["A2"]
    G = ChevalleyGroup(sys, "gf:3")
    for a in sys.roots:
        h = G.h(a, 2)
        assert h == G.h_via_weyl(a, 2)
        assert np.array_equal(h.mat, np.diag(np.diag(h.mat)))
    # h_{a1}(2) acts on e_{a1} by 2^2 = 1 in F3
    i = sys.root_index[(1, 0)]
    assert G.h((1, 0), 2).mat[i, i] == 1
    assert G.h((1, 0), 1).is_identity
