import time

import pytest
from hypothesis import given, settings, strategies as st

from chevloc.errors import ParseError
from chevloc.roots import (
    ALL_SMALL_SYSTEMS,
    EXPECTED_ROOT_COUNT,
    add,
    b_set,
    build_root_system,
    deletion_closure,
    neg,
    parse_root,
    parse_system,
    root_string,
)

A2, B2, G2 = (parse_system(s) for s in ("A2", "B2", "G2"))

# B2 in Bourbaki numbering: mu short simple, nu long simple
MU, NU = (0, 1), (1, 0)


def lin(*terms):
    out = (0,) * len(terms[0][1])
    for c, r in terms:
        out = tuple(o + c * x for o, x in zip(out, r))
    return out


@pytest.mark.parametrize("fam,l", ALL_SMALL_SYSTEMS + [("E", 7), ("E", 8)])
def test_root_counts(fam, l):
    sys = build_root_system(fam, l)
    assert len(sys.roots) == EXPECTED_ROOT_COUNT[fam](l)
    assert len(sys.positive_roots) * 2 == len(sys.roots)


def test_g2_roots_listed():
    a1, a2 = (1, 0), (0, 1)
    listed = [a1, a2, add(a1, a2), lin((2, a1), (1, a2)), lin((3, a1), (1, a2)), lin((3, a1), (2, a2))]
    assert G2.roots == frozenset(listed + [neg(r) for r in listed])
    assert not G2.is_long(a1) and G2.is_long(a2)


def test_b2_roots_listed():
    listed = [MU, NU, add(MU, NU), lin((2, MU), (1, NU))]
    assert B2.roots == frozenset(listed + [neg(r) for r in listed])
    assert not B2.is_long(MU) and B2.is_long(NU)


def test_a2_has_six_roots_three_positive():
    assert len(A2.roots) == 6 and len(A2.positive_roots) == 3


def test_pairings():
    assert B2.pairing(add(MU, NU), neg(NU)) == -1
    assert A2.pairing((1, 0), (0, 1)) == -1
    for sys in (A2, B2, G2):
        for a in sys.roots:
            assert sys.pairing(a, a) == 2


def test_b_sets():
    a1, a2 = (1, 0), (0, 1)
    assert b_set(G2, a1) == {a1, neg(a2), (3, 1), (3, 2), (-3, -2)}
    assert b_set(A2, a1) == {a1, neg(a2), (1, 1)}
    for fam, l in ALL_SMALL_SYSTEMS:
        sys = build_root_system(fam, l)
        s = sys.simple_roots
        assert {neg(b) for b in s[1:]} <= b_set(sys, s[0])


def test_root_strings():
    assert root_string(A2, (1, 0), (0, 1)) == (0, 1)
    assert root_string(G2, (1, 0), (0, 1)) == (0, 3)
    assert root_string(B2, (1, 2), NU) == (0, 0)


def test_g2_short_deletion_rule1_only():
    deleted, trace = deletion_closure(G2, (1, 0))
    assert deleted == G2.roots - {(1, 0)}
    assert len(deleted) == 11 and all(d.rule == 1 for d in trace)


def test_a3_deletion_rule1_only():
    sys = parse_system("A3")
    for a in sys.roots:
        deleted, trace = deletion_closure(sys, a)
        assert deleted == sys.roots - {a}
        assert all(d.rule == 1 for d in trace)


def test_b2_short_alpha_trace():
    deleted, trace = deletion_closure(B2, MU)
    by_rule = {d.root: (d.rule, d.witness) for d in trace}
    for r in (neg(MU), NU, add(MU, NU), neg(add(MU, NU)), neg(lin((2, MU), (1, NU)))):
        assert by_rule[r][0] == 1
    delta = add(MU, NU)
    assert by_rule[neg(NU)] == (2, delta)
    assert by_rule[lin((2, MU), (1, NU))] == (2, delta)


def test_deletion_complete_all_systems_fast():
    t0 = time.perf_counter()
    for fam, l in ALL_SMALL_SYSTEMS:
        sys = build_root_system(fam, l)
        for a in sys.roots:
            assert deletion_closure(sys, a)[0] == sys.roots - {a}
    assert time.perf_counter() - t0 < 10


def test_rule2_true_action_exponent_gap():
    """Rule 2 with the exponent of the real torus action leaves roots for short alpha_1 in B and C types."""
    expected = {("B", 2): 4, ("C", 3): 12, ("C", 4): 24, ("C", 5): 40, ("C", 6): 60}
    for fam, l in ALL_SMALL_SYSTEMS:
        sys = build_root_system(fam, l)
        bad = [a for a in sys.roots if deletion_closure(sys, a, exponent="action")[0] != sys.roots - {a}]
        assert len(bad) == expected.get((fam, l), 0), (fam, l)
    left = B2.roots - {MU} - deletion_closure(B2, MU, exponent="action")[0]
    assert left == {neg(NU), lin((2, MU), (1, NU))}


def test_bad_exponent_rejected():
    with pytest.raises(ValueError):
        deletion_closure(A2, (1, 0), exponent="other")


def test_parse_root():
    assert parse_root("[1, -1]") == (1, -1)
    with pytest.raises(ParseError):
        parse_root("1,0")
    with pytest.raises(ParseError):
        parse_root("[2,0]", A2)


# ---------------------------------------------------------------- properties

systems = st.sampled_from(ALL_SMALL_SYSTEMS).map(lambda fl: build_root_system(*fl))


@settings(max_examples=60, deadline=None)
@given(systems, st.data())
def test_reflection_closure(sys, data):
    a = data.draw(st.sampled_from(sys.ordered_roots))
    b = data.draw(st.sampled_from(sys.ordered_roots))
    assert sys.reflect(b, a) in sys.roots
    assert sys.reflect(sys.reflect(b, a), a) == b


@settings(max_examples=60, deadline=None)
@given(systems, st.data())
def test_pairing_integrality_and_symmetry_of_sign(sys, data):
    a = data.draw(st.sampled_from(sys.ordered_roots))
    b = data.draw(st.sampled_from(sys.ordered_roots))
    p, q = sys.pairing(a, b), sys.pairing(b, a)
    assert p in range(-3, 4)
    assert (p > 0) == (q > 0) and (p == 0) == (q == 0)
    if a != b and a != neg(b):
        assert p * q in (0, 1, 2, 3)


@settings(max_examples=60, deadline=None)
@given(systems, st.data())
def test_root_string_endpoints(sys, data):
    a = data.draw(st.sampled_from(sys.ordered_roots))
    b = data.draw(st.sampled_from(sys.ordered_roots))
    if b in (a, neg(a)):
        return
    p, q = root_string(sys, a, b)
    assert p - q == sys.pairing(b, a)
    for k in range(-p, q + 1):
        assert lin((1, b), (k, a)) in sys.roots


@settings(max_examples=40, deadline=None)
@given(systems, st.data())
def test_deletion_excludes_alpha_and_stays_in_phi(sys, data):
    a = data.draw(st.sampled_from(sys.ordered_roots))
    deleted, trace = deletion_closure(sys, a)
    assert a not in deleted and deleted <= sys.roots
    assert {d.root for d in trace} == deleted
