"""Chevalley basis, structure constants and adjoint generator templates.

Basis order of the adjoint module: e_a for a in ``sys.ordered_roots``
(positive roots, then negatives), followed by the simple coroots h_1 .. h_l.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .errors import NonIntegralEntry, SignInconsistency
from .roots import Root, RootSystem, add, neg, root_string, sub


@dataclass(frozen=True)
class StructureConstants:
    sys: RootSystem
    N: dict  # (a, b) -> int, defined whenever a + b is a root

    def __call__(self, a: Root, b: Root) -> int:
        return self.N.get((a, b), 0)

    def cartan_action(self, a: Root, b: Root) -> int:
        """Eigenvalue of h_a on e_b."""
        return self.sys.pairing(b, a)


def _is_pos(a):
    return sum(a) > 0


def compute_structure_constants(sys: RootSystem) -> StructureConstants:
    """Signs from extraspecial pairs (all positive), the rest forced; Jacobi-checked."""
    pos = sys.positive_roots
    idx = {a: i for i, a in enumerate(pos)}
    table: dict = {}  # positive pairs (a, b) with idx[a] < idx[b]

    def norm(a):
        return sys.norm(a)

    def Npos(a, b):
        if idx[a] < idx[b]:
            return table[(a, b)]
        return -table[(b, a)]

    def N(a, b):
        c = add(a, b)
        if c not in sys.roots:
            return Fraction(0)
        if _is_pos(a) and _is_pos(b):
            return Fraction(Npos(a, b))
        if not _is_pos(a) and not _is_pos(b):
            return -N(neg(a), neg(b))
        if not _is_pos(a):
            return -N(b, a)
        # a > 0 > b; the triple (a, b, -c) sums to zero
        if _is_pos(c):
            return Fraction(norm(c), norm(a)) * -N(neg(b), c)
        return Fraction(norm(c), norm(b)) * N(neg(c), a)

    for xi in pos[sys.rank:]:
        pairs = [(a, sub(xi, a)) for a in pos if sub(xi, a) in idx and idx[a] < idx[sub(xi, a)]]
        a0, b0 = pairs[0]
        p0 = root_string(sys, a0, b0)[0]
        table[(a0, b0)] = p0 + 1
        Nneg0 = -N(a0, b0)  # N_{-a0,-b0}
        for a, b in pairs[1:]:
            t2 = N(b, neg(a0)) * N(a, neg(b0))
            t2 = t2 / norm(sub(b, a0)) if sub(b, a0) in sys.roots else 0
            t3 = N(neg(a0), a) * N(b, neg(b0))
            t3 = t3 / norm(sub(a, a0)) if sub(a, a0) in sys.roots else 0
            val = -(t2 + t3) * norm(xi) / Nneg0
            p = root_string(sys, a, b)[0]
            if val.denominator != 1 or abs(val) != p + 1:
                raise SignInconsistency(f"N{a, b} = {val}, expected +-{p + 1}")
            table[(a, b)] = int(val)

    full = {}
    for a in sys.roots:
        for b in sys.roots:
            if add(a, b) in sys.roots:
                v = N(a, b)
                assert v.denominator == 1
                full[(a, b)] = int(v)
    consts = StructureConstants(sys, full)
    check_jacobi(consts)
    return consts


def ad_matrices(consts: StructureConstants) -> np.ndarray:
    """ad of every basis vector, shape (dim, dim, dim)."""
    sys = consts.sys
    roots = sys.ordered_roots
    ri = sys.root_index
    nr = len(roots)
    dim = sys.dim
    l = sys.rank
    simple = sys.simple_roots
    ad = np.zeros((dim, dim, dim), dtype=np.int64)
    for i, a in enumerate(roots):
        for j, b in enumerate(roots):
            c = add(a, b)
            if c in sys.roots:
                ad[i, ri[c], j] = consts(a, b)
            elif not any(c):
                # [e_a, e_-a] = h_a
                for k, v in enumerate(sys.coroot_coeffs(a)):
                    ad[i, nr + k, j] = v
        for k in range(l):
            # [e_a, h_k] = -<a, a_k> e_a
            ad[i, i, nr + k] = -sys.pairing(a, simple[k])
    for k in range(l):
        for j, b in enumerate(roots):
            ad[nr + k, j, j] = sys.pairing(b, simple[k])
    return ad


def check_jacobi(consts: StructureConstants) -> None:
    """ad must be a Lie algebra homomorphism: [ad x, ad y] = ad [x, y]."""
    ad = ad_matrices(consts)
    dim = len(ad)
    for i in range(dim):
        for j in range(i + 1, dim):
            lhs = ad[i] @ ad[j] - ad[j] @ ad[i]
            rhs = np.tensordot(ad[i][:, j], ad, axes=(0, 0))
            if not np.array_equal(lhs, rhs):
                raise SignInconsistency(f"Jacobi identity fails on basis pair ({i}, {j})")


@dataclass(frozen=True)
class GeneratorTemplate:
    """x_a(t) = sum_k coeffs[k] t^k as an integer polynomial matrix."""

    root: Root
    coeffs: tuple  # tuple of np.ndarray (dim, dim)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate_int(self, t: int) -> np.ndarray:
        out = np.zeros_like(self.coeffs[0])
        for k, c in enumerate(self.coeffs):
            out = out + c * (t ** k)
        return out

    def to_json(self) -> str:
        return json.dumps({"root": list(self.root), "coeffs": [c.tolist() for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> "GeneratorTemplate":
        d = json.loads(text)
        return cls(tuple(d["root"]), tuple(np.array(c, dtype=np.int64) for c in d["coeffs"]))


def adjoint_generator(sys: RootSystem, consts: StructureConstants, alpha: Root) -> GeneratorTemplate:
    X = ad_matrices(consts)[sys.root_index[alpha]]
    dim = sys.dim
    coeffs = [np.eye(dim, dtype=np.int64)]
    P = np.eye(dim, dtype=object)
    Xo = X.astype(object)
    k = 0
    while True:
        k += 1
        P = P.dot(Xo)
        if not P.any():
            break
        fk = factorial(k)
        if any(int(v) % fk for v in P.flat):
            raise NonIntegralEntry(f"x_{alpha}: X^{k}/{k}! is not integral")
        coeffs.append((P // fk).astype(np.int64))
    return GeneratorTemplate(alpha, tuple(coeffs))


@dataclass
class LieData:
    """Everything derived once per root system."""

    sys: RootSystem
    consts: StructureConstants
    templates: dict  # root -> GeneratorTemplate
    commutator_constants: dict  # (a, b) -> list of ((i, j), root, C_ij)


# ---------------------------------------------------------------- symbolic commutators
#
# Polynomial matrices in two variables s, t: dict (i, j) -> integer matrix.


def _pm_mul(A: dict, B: dict) -> dict:
    out: dict = {}
    for ka, ma in A.items():
        for kb, mb in B.items():
            k = (ka[0] + kb[0], ka[1] + kb[1])
            prod = ma @ mb
            out[k] = out[k] + prod if k in out else prod
    return {k: v for k, v in out.items() if v.any()}


def _template_poly(tpl: GeneratorTemplate, i: int, j: int, c: int) -> dict:
    """x_a(c s^i t^j) as a polynomial matrix."""
    out = {}
    for k, m in enumerate(tpl.coeffs):
        key = (i * k, j * k)
        out[key] = out.get(key, 0) + m * (c ** k)
    return {k: v for k, v in out.items() if np.any(v)}


def _commutator_constants(sys, templates, a, b):
    dim = sys.dim
    nr = len(sys.ordered_roots)
    comm = _pm_mul(
        _pm_mul(_template_poly(templates[a], 1, 0, 1), _template_poly(templates[b], 0, 1, 1)),
        _pm_mul(_template_poly(templates[a], 1, 0, -1), _template_poly(templates[b], 0, 1, -1)),
    )
    terms = []
    cands = []
    for i in range(1, 4):
        for j in range(1, 4):
            g = tuple(i * x + j * y for x, y in zip(a, b))
            if g in sys.roots:
                cands.append((i + j, i, j, g))
    cands.sort()
    for _, i, j, g in cands:
        col = sys.root_index[neg(g)]
        cor = sys.coroot_coeffs(g)
        k = next(k for k, v in enumerate(cor) if v)
        coeff = 0
        for key, m in comm.items():
            v = int(m[nr + k, col])
            if v:
                if key != (i, j) or v % cor[k]:
                    raise SignInconsistency(f"unexpected term s^{key[0]} t^{key[1]} reading {g}")
                coeff = v // cor[k]
        if coeff:
            terms.append(((i, j), g, coeff))
            comm = _pm_mul(_template_poly(templates[g], i, j, -coeff), comm)
    ident = {(0, 0): np.eye(dim, dtype=np.int64)}
    if set(comm) != {(0, 0)} or not np.array_equal(comm[(0, 0)], ident[(0, 0)]):
        raise SignInconsistency(f"commutator of {a}, {b} does not peel to the identity")
    return terms


@lru_cache(maxsize=None)
def lie_data(sys: RootSystem) -> LieData:
    consts = compute_structure_constants(sys)
    templates = {a: adjoint_generator(sys, consts, a) for a in sys.ordered_roots}
    cc = {}
    for a in sys.ordered_roots:
        for b in sys.ordered_roots:
            if a != b and a != neg(b):
                cc[(a, b)] = _commutator_constants(sys, templates, a, b)
    return LieData(sys, consts, templates, cc)
