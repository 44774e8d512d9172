"""Gauss decomposition g = u t v u' over a local ring and the tuple codes built on it.

Parameters are read off the adjoint matrix: for a product of root elements in
which no two or more other factors sum to gamma, the Cartan component of
g(e_{-gamma}) equals c * h_gamma, where c is the gamma-parameter. Peeling
factors in height order keeps that condition true at every step.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DecompositionFailed, NotInBigCell, NonUnitTorusParameter, RingMismatch
from .group import ChevalleyGroup, GroupElement, reduce_mod_radical
from .roots import Root, neg


@dataclass(frozen=True)
class GaussForm:
    """Codes of (u, h, v, u2): u = prod x_{a_i}(u_i), h = prod h_{a_j}(h_j) over simple roots,
    v = prod x_{-a_i}(v_i), u2 = prod x_{a_i}(u2_i), products in positive-root order."""

    u: tuple
    h: tuple
    v: tuple
    u2: tuple

    def as_tuple(self) -> tuple:
        return self.u + self.h + self.v + self.u2

    def to_json(self, ring) -> str:
        f = ring.format
        return json.dumps(
            {"u": [f(c) for c in self.u], "h": [f(c) for c in self.h], "v": [f(c) for c in self.v], "u2": [f(c) for c in self.u2]}
        )

    @classmethod
    def from_json(cls, text: str, ring) -> "GaussForm":
        d = json.loads(text)
        p = ring.parse
        return cls(*(tuple(p(str(s)) for s in d[k]) for k in ("u", "h", "v", "u2")))

    def map(self, perm) -> "GaussForm":
        """Apply a code relabelling to every coordinate."""
        return GaussForm(*(tuple(int(perm[c]) for c in part) for part in (self.u, self.h, self.v, self.u2)))


CodedElement = GaussForm


def identity_form(G: ChevalleyGroup) -> GaussForm:
    n, l = G.sys.n_positive, G.sys.rank
    z, o = G.ring.zero, G.ring.one
    return GaussForm((z,) * n, (o,) * l, (z,) * n, (z,) * n)


# ---------------------------------------------------------------- matrix readouts


def _entry(G: ChevalleyGroup, mat: np.ndarray, i: int, j: int) -> int:
    d = G.d
    return G.ring.code_from_coords(mat[i * d : (i + 1) * d, j * d])


@lru_cache(maxsize=None)
def _readout_plan(G: ChevalleyGroup, gamma: Root):
    """(row, column, integer coefficient) with a unit coefficient of h_gamma."""
    sys = G.sys
    nr = len(sys.ordered_roots)
    cor = sys.coroot_coeffs(gamma)
    for k, c in enumerate(cor):
        if c and G.ring.is_integer_unit(c):
            return nr + k, sys.root_index[neg(gamma)], c
    raise DecompositionFailed(f"no coroot coefficient of {gamma} is a unit in {G.ring.name}")


def root_coordinate(G: ChevalleyGroup, mat: np.ndarray, gamma: Root) -> int:
    """gamma-parameter of a product of root elements (see module docstring)."""
    row, col, c = _readout_plan(G, gamma)
    R = G.ring
    return R.mul(_entry(G, mat, row, col), R.inv(R.from_int(c)))


def _peel(G: ChevalleyGroup, mat: np.ndarray, roots) -> tuple[tuple, np.ndarray]:
    """Read prod_{r in roots} x_r(c_r) from the left; returns params and the remainder."""
    R = G.ring
    params = []
    for r in roots:
        c = root_coordinate(G, mat, r)
        params.append(c)
        if c:
            mat = G.x_matrix(r, R.neg(c)) @ mat % G.m
    return tuple(params), mat


# ---------------------------------------------------------------- triangular factorization


@lru_cache(maxsize=None)
def _height_order(G: ChevalleyGroup) -> np.ndarray:
    """Basis permutation: positive roots by decreasing height, Cartan, negatives by increasing depth."""
    sys = G.sys
    ri = sys.root_index
    nr = len(sys.ordered_roots)
    pos = sorted(sys.positive_roots, key=lambda a: -sum(a))
    negs = sorted(sys.negative_roots, key=lambda a: -sum(a))
    return np.array([ri[a] for a in pos] + list(range(nr, sys.dim)) + [ri[a] for a in negs])


def _udl(G: ChevalleyGroup, codes: np.ndarray):
    """Factor A = U D L (U upper, L lower unitriangular in the height order). Raises NotInBigCell."""
    R = G.ring
    add, mul, neg_, inv = R.add_table, R.mul_table, R.neg_table, R.inv_table
    order = _height_order(G)
    # reversing the order turns U D L into the usual L D U
    rev = order[::-1]
    A = codes[np.ix_(rev, rev)].copy()
    n = len(A)
    Lw = np.zeros_like(A)
    Uw = np.zeros_like(A)
    Dg = np.zeros(n, dtype=np.int64)
    for k in range(n):
        piv = A[k, k]
        if inv[piv] < 0:
            raise NotInBigCell(f"pivot {R.format(int(piv))} at position {k} is not a unit")
        pi = inv[piv]
        Dg[k] = piv
        Lw[k, k] = Uw[k, k] = R.one
        col = mul[A[k + 1 :, k], pi]
        row = mul[pi, A[k, k + 1 :]]
        Lw[k + 1 :, k] = col
        Uw[k, k + 1 :] = row
        if k + 1 < n:
            upd = mul[col[:, None], A[k, k + 1 :][None, :]]
            A[k + 1 :, k + 1 :] = add[A[k + 1 :, k + 1 :], neg_[upd]]
    back = np.argsort(rev)
    U = Lw[np.ix_(back, back)]
    L = Uw[np.ix_(back, back)]
    D = Dg[back]
    return U, D, L


@lru_cache(maxsize=None)
def _torus_lookup(G: ChevalleyGroup) -> dict:
    """Diagonal values on the simple root vectors -> lexicographically least torus parameters."""
    R = G.ring
    sys = G.sys
    simple = sys.simple_roots
    A = [[sys.pairing(a, b) for b in simple] for a in simple]
    table = {}
    for xs in itertools.product(R.units, repeat=sys.rank):
        vals = []
        for i in range(sys.rank):
            v = R.one
            for j in range(sys.rank):
                v = R.mul(v, R.pow(xs[j], A[i][j]))
            vals.append(v)
        table.setdefault(tuple(vals), xs)
    return table


def torus_matrix(G: ChevalleyGroup, h: tuple) -> np.ndarray:
    M = np.eye(G.D, dtype=np.int64)
    for a, t in zip(G.sys.simple_roots, h):
        if not G.ring.is_unit(t):
            raise NonUnitTorusParameter(f"torus parameter {G.ring.format(t)} is not a unit")
        if t != G.ring.one:
            M = M @ G.h_matrix(a, t) % G.m
    return M


def unipotent_matrix(G: ChevalleyGroup, roots, params) -> np.ndarray:
    M = np.eye(G.D, dtype=np.int64)
    for r, c in zip(roots, params):
        if c:
            M = M @ G.x_matrix(r, c) % G.m
    return M


def decode(G: ChevalleyGroup, form: GaussForm) -> GroupElement:
    sys = G.sys
    pos = sys.positive_roots
    M = unipotent_matrix(G, pos, form.u)
    M = M @ torus_matrix(G, form.h) % G.m
    M = M @ unipotent_matrix(G, sys.negative_roots, form.v) % G.m
    M = M @ unipotent_matrix(G, pos, form.u2) % G.m
    return GroupElement(G, M)


def big_cell_factor(g: GroupElement) -> GaussForm:
    """The unique g = u t v with u in U, t in H, v in V; raises NotInBigCell."""
    G = g.group
    sys = G.sys
    U, D, L = _udl(G, g.codes)
    ri = sys.root_index
    key = tuple(int(D[ri[a]]) for a in sys.simple_roots)
    h = _torus_lookup(G).get(key)
    if h is None:
        raise NotInBigCell("diagonal part is not in the image of the torus generators")
    Um = G.embed(U)
    Lm = G.embed(L)
    u, rest = _peel(G, Um, sys.positive_roots)
    v, rest2 = _peel(G, Lm, sys.negative_roots)
    form = GaussForm(u, h, v, (G.ring.zero,) * sys.n_positive)
    if not np.array_equal(decode(G, form).mat, g.mat):
        raise NotInBigCell("triangular factors are not products of root elements")
    return form


def in_big_cell(g: GroupElement) -> bool:
    try:
        big_cell_factor(g)
    except NotInBigCell:
        return False
    return True


def _u_inverse(G: ChevalleyGroup, params) -> np.ndarray:
    R = G.ring
    M = np.eye(G.D, dtype=np.int64)
    for r, c in reversed(list(zip(G.sys.positive_roots, params))):
        if c:
            M = M @ G.x_matrix(r, R.neg(c)) % G.m
    return M


def gauss_decompose(g: GroupElement) -> GaussForm:
    """g = u t v u' with u' found over the residue field and lifted."""
    G = g.group
    k = G.residue_group
    gbar = reduce_mod_radical(g)
    n = G.sys.n_positive
    for params in itertools.product(range(k.ring.size), repeat=n):
        cand = GroupElement(k, gbar.mat @ _u_inverse(k, params) % k.m)
        try:
            _udl(k, cand.codes)
        except NotInBigCell:
            continue
        lifted = tuple(int(G.ring.lift_map[c]) for c in params)
        h = GroupElement(G, g.mat @ _u_inverse(G, lifted) % G.m)
        try:
            f = big_cell_factor(h)
        except NotInBigCell as e:
            raise DecompositionFailed(f"residue in big cell but lift is not: {e}") from e
        form = GaussForm(f.u, f.h, f.v, lifted)
        if not np.array_equal(decode(G, form).mat, g.mat):
            raise DecompositionFailed("recomposition mismatch")
        return form
    raise DecompositionFailed("no u' over the residue field moves g into the big cell")


def encode(g: GroupElement) -> GaussForm:
    return gauss_decompose(g)


def _check_code(G: ChevalleyGroup, c: GaussForm):
    n, l = G.sys.n_positive, G.sys.rank
    if (len(c.u), len(c.h), len(c.v), len(c.u2)) != (n, l, n, n):
        raise RingMismatch("code has the wrong shape for this group")
    for t in c.h:
        if not G.ring.is_unit(t):
            raise NonUnitTorusParameter(f"torus coordinate {G.ring.format(t)} is not a unit")


def code_eq(G: ChevalleyGroup, c1: GaussForm, c2: GaussForm) -> bool:
    """Do two codes name the same group element? Evaluated by ring arithmetic only."""
    _check_code(G, c1)
    _check_code(G, c2)
    return np.array_equal(decode(G, c1).mat, decode(G, c2).mat)


def code_mul(G: ChevalleyGroup, c1: GaussForm, c2: GaussForm) -> GaussForm:
    _check_code(G, c1)
    _check_code(G, c2)
    return gauss_decompose(decode(G, c1) * decode(G, c2))


def code_mul_predicate(G: ChevalleyGroup, c1: GaussForm, c2: GaussForm, c3: GaussForm) -> bool:
    """The ternary predicate: decode(c3) = decode(c1) decode(c2)."""
    return code_eq(G, code_mul(G, c1, c2), c3)


def code_arity(G: ChevalleyGroup) -> tuple[int, int]:
    """Argument counts of the equality and multiplication predicates."""
    n, l = G.sys.n_positive, G.sys.rank
    return 6 * n + 2 * l, 9 * n + 3 * l
