import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chevloc.errors import NonUnitTorusParameter, NotInBigCell
from chevloc.gauss import (
    GaussForm,
    big_cell_factor,
    code_arity,
    code_eq,
    code_mul,
    code_mul_predicate,
    decode,
    encode,
    gauss_decompose,
    identity_form,
    in_big_cell,
    torus_matrix,
    unipotent_matrix,
)
from chevloc.group import ChevalleyGroup, enumerate_group
from chevloc.roots import parse_system

A2, B2, G2 = (parse_system(s) for s in ("A2", "B2", "G2"))
F3 = ChevalleyGroup(A2, "gf:3")


def utv_oracle(G):
    """Every product u t v over the (small) group, by brute force."""
    sys, R = G.sys, G.ring
    n = sys.n_positive
    out = set()
    for u in itertools.product(range(R.size), repeat=n):
        U = unipotent_matrix(G, sys.positive_roots, u)
        for h in itertools.product(R.units, repeat=sys.rank):
            UT = U @ torus_matrix(G, h) % G.m
            for v in itertools.product(range(R.size), repeat=n):
                M = UT @ unipotent_matrix(G, sys.negative_roots, v) % G.m
                out.add(M.astype(np.uint8).tobytes())
    return out


def test_identity_form():
    f = gauss_decompose(F3.identity)
    assert f == identity_form(F3)
    assert f.u == (0, 0, 0) and f.h == (1, 1) and f.u2 == (0, 0, 0)


def test_negative_root_element_is_in_v():
    f = big_cell_factor(F3.x((-1, 0), 1))
    assert f.u == (0, 0, 0) and f.h == (1, 1)
    assert f.v == (1, 0, 0)


def test_weyl_element_not_in_big_cell():
    w = F3.w((1, 0), 1)
    with pytest.raises(NotInBigCell):
        big_cell_factor(w)
    # oracle: 3^3 * 2^2 * 3^3 products, none equal to w
    assert w.mat.astype(np.uint8).tobytes() not in utv_oracle(F3)
    f = gauss_decompose(w)
    assert any(f.u2) and decode(F3, f) == w


def test_big_cell_matches_oracle_f2():
    G = ChevalleyGroup(A2, "gf:2")
    T = enumerate_group(A2, G)
    oracle = utv_oracle(G)
    mine = {T.elements[i].astype(np.uint8).tobytes() for i in range(len(T)) if in_big_cell(T.element(i))}
    assert mine == oracle
    assert len(mine) == 64


def test_product_example_f2():
    G = ChevalleyGroup(A2, "gf:2")
    g = G.x((-1, 0), 1) * G.x((1, 0), 1)
    assert decode(G, gauss_decompose(g)) == g


def test_two_codes_same_element():
    g = F3.x((1, 0), 1) * F3.x((-1, -1), 2)
    f1 = gauss_decompose(g)
    shifted = big_cell_factor(g * F3.x((0, 1), 1).inv())
    f2 = GaussForm(shifted.u, shifted.h, shifted.v, (0, 1, 0))
    assert f1 != f2
    assert code_eq(F3, f1, f2)


def test_code_eq_basics():
    c = encode(F3.x((0, 1), 2))
    assert code_eq(F3, c, c)
    assert not code_eq(F3, identity_form(F3), encode(F3.x((1, 0), 1)))
    bad = GaussForm(c.u, (0, 1), c.v, c.u2)
    with pytest.raises(NonUnitTorusParameter):
        code_eq(F3, bad, c)


def test_identity_law():
    rng = random.Random(3)
    e = identity_form(F3)
    for _ in range(20):
        c = encode(F3.evaluate(F3.random_word(rng, 8, "xwh")))
        assert code_eq(F3, code_mul(F3, c, e), c)
        assert code_eq(F3, code_mul(F3, e, c), c)


def test_arity():
    assert code_arity(F3) == (6 * 3 + 2 * 2, 9 * 3 + 3 * 2)
    assert code_arity(ChevalleyGroup(G2, "gf:5")) == (6 * 6 + 4, 9 * 6 + 6)


def test_json_round_trip():
    G = ChevalleyGroup(A2, "dual:2")
    rng = random.Random(5)
    for _ in range(10):
        f = gauss_decompose(G.evaluate(G.random_word(rng, 6, "xwh")))
        assert GaussForm.from_json(f.to_json(G.ring), G.ring) == f


def test_code_mul_associative_500():
    rng = random.Random(11)
    for _ in range(500):
        a, b, c = (encode(F3.evaluate(F3.random_word(rng, 5, "xwh"))) for _ in range(3))
        left = code_mul(F3, code_mul(F3, a, b), c)
        right = code_mul(F3, a, code_mul(F3, b, c))
        assert code_eq(F3, left, right)


# ---------------------------------------------------------------- properties

INSTANCES = [(A2, "gf:2"), (A2, "gf:3"), (A2, "zmod:4"), (A2, "dual:2"), (A2, "gf:4"), (B2, "gf:3"), (G2, "gf:5")]
GROUPS = {(s.name, r): ChevalleyGroup(s, r) for s, r in INSTANCES}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(GROUPS)), st.integers(0, 10**6))
def test_decompose_recomposes(key, seed):
    G = GROUPS[key]
    rng = random.Random(seed)
    g = G.evaluate(G.random_word(rng, rng.randint(0, 10), "xwh"))
    f = gauss_decompose(g)
    assert decode(G, f) == g
    assert all(G.ring.is_unit(t) for t in f.h)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(GROUPS)), st.data())
def test_big_cell_form_unique(key, data):
    # decode(f) always lies in the big cell and factors back to f when u2 = 0
    G = GROUPS[key]
    R, n, l = G.ring, G.sys.n_positive, G.sys.rank
    u = tuple(data.draw(st.integers(0, R.size - 1)) for _ in range(n))
    v = tuple(data.draw(st.integers(0, R.size - 1)) for _ in range(n))
    h = tuple(data.draw(st.sampled_from(R.units)) for _ in range(l))
    f = GaussForm(u, h, v, (0,) * n)
    back = big_cell_factor(decode(G, f))
    assert back.u == u and back.v == v
    assert code_eq(G, back, f)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(GROUPS)), st.integers(0, 10**6))
def test_mul_predicate(key, seed):
    G = GROUPS[key]
    rng = random.Random(seed)
    a, b = (G.evaluate(G.random_word(rng, 5, "xwh")) for _ in range(2))
    assert code_mul_predicate(G, encode(a), encode(b), encode(a * b))
    if not b.is_identity():
        assert not code_mul_predicate(G, encode(a), encode(b), encode(a))
