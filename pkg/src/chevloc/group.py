"""Elements of E_ad(Phi, R) as matrices in the adjoint representation.

An R-matrix of size dim is stored through the regular representation of R as
an integer matrix of size dim*d modulo m (d = rank of R over Z/m), so group
multiplication is a single integer matmul. ``GroupElement.codes`` recovers
the matrix of ring-element codes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    GroupTooLarge,
    NonUnitInverse,
    NonUnitTorusParameter,
    ParseError,
    RingMismatch,
    WidthCapExceeded,
)
from .lie import lie_data
from .rings import LocalRing, check_required_units, code_of, make_ring
from .roots import Root, RootSystem, format_root, neg, parse_root

DEFAULT_CAP = 200_000


def _matinv_mod(M: np.ndarray, m: int) -> np.ndarray:
    """Inverse of an integer matrix modulo m (m a prime power)."""
    n = len(M)
    A = np.concatenate([M % m, np.eye(n, dtype=np.int64)], axis=1)
    p = next(q for q in range(2, m + 1) if m % q == 0)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r, c] % p), None)
        if piv is None:
            raise NonUnitInverse("matrix is not invertible")
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
        A[c] = (A[c] * pow(int(A[c, c]), -1, m)) % m
        col = A[:, c].copy()
        col[c] = 0
        A = (A - np.outer(col, A[c])) % m
    return A[:, n:]


@dataclass(frozen=True)
class Token:
    kind: str  # 'x', 'w' or 'h'
    root: Root
    code: int

    def format(self, ring: LocalRing) -> str:
        return f"{self.kind}{format_root(self.root)}({ring.format(self.code)})"


class ChevalleyGroup:
    """E_ad(sys, ring) with cached generator matrices."""

    def __init__(self, sys: RootSystem, ring: LocalRing | str):
        self.sys = sys
        self.ring = make_ring(ring)
        self.lie = lie_data(sys)
        self.n = sys.dim
        self.d = self.ring.degree
        self.m = self.ring.modulus
        self.D = self.n * self.d
        self._xcache: dict = {}
        self._hcache: dict = {}
        self._pow_cache: dict = {}

    def __repr__(self):
        return f"E_ad({self.sys.name}, {self.ring.name})"

    @property
    def name(self) -> str:
        return f"{self.sys.name}/{self.ring.name}"

    @cached_property
    def residue_group(self) -> "ChevalleyGroup":
        if self.ring.is_field:
            return self
        return ChevalleyGroup(self.sys, self.ring.residue_field)

    # -- conversions

    def embed(self, codes: np.ndarray) -> np.ndarray:
        n, d = self.n, self.d
        L = self.ring.regular[np.asarray(codes)]  # (n, n, d, d)
        return L.transpose(0, 2, 1, 3).reshape(n * d, n * d)

    def codes_of(self, mat: np.ndarray) -> np.ndarray:
        n, d = self.n, self.d
        coords = mat.reshape(n, d, n, d)[:, :, :, 0].transpose(0, 2, 1)
        return self.ring.codes_from_coords(coords)

    def batch_codes(self, mats: np.ndarray) -> np.ndarray:
        n, d = self.n, self.d
        k = len(mats)
        coords = mats.reshape(k, n, d, n, d)[:, :, :, :, 0].transpose(0, 1, 3, 2)
        return self.ring.codes_from_coords(coords)

    def element(self, mat: np.ndarray, word=None) -> "GroupElement":
        return GroupElement(self, np.asarray(mat, dtype=np.int64) % self.m, word)

    def from_codes(self, codes) -> "GroupElement":
        return self.element(self.embed(np.asarray(codes)))

    # -- generators

    def _power(self, t: int, k: int) -> int:
        key = (t, k)
        if key not in self._pow_cache:
            self._pow_cache[key] = self.ring.pow(t, k)
        return self._pow_cache[key]

    def x_matrix(self, alpha: Root, t: int) -> np.ndarray:
        key = (alpha, t)
        M = self._xcache.get(key)
        if M is None:
            tpl = self.lie.templates[alpha]
            L = self.ring.regular
            M = np.zeros((self.D, self.D), dtype=np.int64)
            for k, C in enumerate(tpl.coeffs):
                M += np.kron(C % self.m, L[self._power(t, k)])
            M %= self.m
            M.setflags(write=False)
            self._xcache[key] = M
        return M

    def h_matrix(self, alpha: Root, t: int) -> np.ndarray:
        key = (alpha, t)
        M = self._hcache.get(key)
        if M is None:
            if not self.ring.is_unit(t):
                raise NonUnitTorusParameter(f"h{format_root(alpha)}({self.ring.format(t)}): not a unit")
            codes = np.zeros((self.n, self.n), dtype=np.int64)
            for i, b in enumerate(self.sys.ordered_roots):
                codes[i, i] = self.ring.pow(t, self.sys.pairing(b, alpha))
            for i in range(len(self.sys.ordered_roots), self.n):
                codes[i, i] = self.ring.one
            M = self.embed(codes)
            M.setflags(write=False)
            self._hcache[key] = M
        return M

    def diagonal_matrix(self, i: int, t: int) -> np.ndarray:
        """Adjoint torus element acting by t^(c_i(b)) on e_b, c_i the alpha_i-coefficient; in G_ad, not always in E."""
        if not self.ring.is_unit(t):
            raise NonUnitTorusParameter(f"diagonal parameter {self.ring.format(t)} is not a unit")
        codes = np.zeros((self.n, self.n), dtype=np.int64)
        for j, b in enumerate(self.sys.ordered_roots):
            codes[j, j] = self.ring.pow(t, b[i])
        for j in range(len(self.sys.ordered_roots), self.n):
            codes[j, j] = self.ring.one
        return self.embed(codes)

    def _check_root(self, alpha):
        alpha = tuple(alpha)
        if alpha not in self.sys.roots:
            raise ValueError(f"{alpha} is not a root of {self.sys.name}")
        return alpha

    def x(self, alpha: Root, t) -> "GroupElement":
        alpha = self._check_root(alpha)
        c = code_of(self.ring, t)
        return GroupElement(self, self.x_matrix(alpha, c), (Token("x", alpha, c),))

    def w(self, alpha: Root, t) -> "GroupElement":
        """x_a(t) x_-a(-1/t) x_a(t)."""
        alpha = self._check_root(alpha)
        c = code_of(self.ring, t)
        if not self.ring.is_unit(c):
            raise NonUnitTorusParameter(f"w{format_root(alpha)}({self.ring.format(c)}): not a unit")
        R = self.ring
        X = self.x_matrix(alpha, c)
        Y = self.x_matrix(neg(alpha), R.neg(R.inv(c)))
        return GroupElement(self, (X @ Y % self.m) @ X % self.m, (Token("w", alpha, c),))

    def h(self, alpha: Root, t) -> "GroupElement":
        """Torus element acting on e_b by t^<b, a>."""
        alpha = self._check_root(alpha)
        c = code_of(self.ring, t)
        return GroupElement(self, self.h_matrix(alpha, c), (Token("h", alpha, c),))

    def h_via_weyl(self, alpha: Root, t) -> "GroupElement":
        """w_a(t) w_a(1)^-1, the defining formula for h_a(t)."""
        return self.w(alpha, t) * self.w(alpha, 1).inv()

    @cached_property
    def identity(self) -> "GroupElement":
        return GroupElement(self, np.eye(self.D, dtype=np.int64), ())

    def token(self, tok: Token) -> "GroupElement":
        return getattr(self, tok.kind)(tok.root, self.ring.element(tok.code))

    def evaluate(self, word: Sequence[Token]) -> "GroupElement":
        g = self.identity
        for tok in word:
            g = g * self.token(tok)
        return GroupElement(self, g.mat, tuple(word))

    def parse_word(self, text: str) -> "GroupElement":
        return self.evaluate(parse_word(text, self.sys, self.ring))

    def elementary_generators(self) -> list["GroupElement"]:
        """x_a(b) for a in Phi and b in the ring's Z-basis: generates E."""
        return [self.x(a, self.ring.element(b)) for a in self.sys.ordered_roots for b in self.ring.basis]

    def torus_generators(self) -> list["GroupElement"]:
        """h_a(u) for simple a and units u; these lie in E."""
        return [self.h(a, self.ring.element(u)) for a in self.sys.simple_roots for u in self.ring.units if u != self.ring.one]

    def adjoint_torus_generators(self) -> list["GroupElement"]:
        """Diagonal elements of the adjoint torus; together with E they generate G_ad."""
        return [
            GroupElement(self, self.diagonal_matrix(i, u))
            for i in range(self.sys.rank)
            for u in self.ring.units
            if u != self.ring.one
        ]

    def random_word(self, rng, length: int, kinds: str = "xh") -> list[Token]:
        out = []
        for _ in range(length):
            kind = rng.choice(kinds)
            a = rng.choice(self.sys.ordered_roots)
            if kind == "x":
                c = rng.randrange(self.ring.size)
            else:
                c = rng.choice(self.ring.units)
            out.append(Token(kind, a, c))
        return out

    def estimated_order(self) -> int:
        return estimated_order(self.sys, self.ring)


class GroupElement:
    __slots__ = ("group", "mat", "word", "_key")

    def __init__(self, group: ChevalleyGroup, mat: np.ndarray, word=None):
        self.group = group
        self.mat = mat
        self.word = word
        self._key = None

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.mat.astype(np.uint8).tobytes()
        return self._key

    def _same(self, other):
        if other.group is not self.group:
            if other.group.sys != self.group.sys or other.group.ring.name != self.group.ring.name:
                raise RingMismatch(f"{self.group} vs {other.group}")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._same(other)
        word = self.word + other.word if self.word is not None and other.word is not None else None
        return GroupElement(self.group, self.mat @ other.mat % self.group.m, word)

    def inv(self) -> "GroupElement":
        g = self.group
        word = None
        if self.word is not None:
            word = tuple(_inverse_token(t, g.ring) for t in reversed(self.word))
        return GroupElement(g, _matinv_mod(self.mat, g.m), word)

    def __pow__(self, e: int) -> "GroupElement":
        if e < 0:
            return self.inv() ** (-e)
        r = self.group.identity
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, other):
        return isinstance(other, GroupElement) and np.array_equal(self.mat, other.mat)

    def __hash__(self):
        return hash(self.key)

    @property
    def codes(self) -> np.ndarray:
        return self.group.codes_of(self.mat)

    def is_identity(self) -> bool:
        return np.array_equal(self.mat, np.eye(self.group.D, dtype=np.int64))

    def format_word(self) -> str:
        if self.word is None:
            return "<matrix>"
        return " * ".join(t.format(self.group.ring) for t in self.word) or "1"

    def __repr__(self):
        return f"GroupElement({self.format_word()})"


def _inverse_token(t: Token, ring: LocalRing) -> Token:
    if t.kind == "x":
        return Token("x", t.root, ring.neg(t.code))
    if t.kind == "h":
        return Token("h", t.root, ring.inv(t.code))
    # w_a(t)^-1 = w_a(-t)
    return Token("w", t.root, ring.neg(t.code))


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def inv(a: GroupElement) -> GroupElement:
    return a.inv()


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """a b a^-1 b^-1."""
    return a * b * a.inv() * b.inv()


def conjugate(g: GroupElement, h: GroupElement) -> GroupElement:
    """h g h^-1."""
    return h * g * h.inv()


def x(sys, ring, alpha, t) -> GroupElement:
    return ChevalleyGroup(sys, ring).x(alpha, t)


_TOKEN = re.compile(r"^\s*([xwh])\s*(\[[^\]]*\])\s*\((.*)\)\s*$")


def _split_top_level(text: str) -> list[str]:
    """Split on '*' outside brackets, so literals like 2*e stay whole."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "*" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_word(text: str, sys: RootSystem, ring: LocalRing) -> list[Token]:
    """``x[1,0](2) * h[0,1](3) * w[-1,-1](1)``; empty text is the identity."""
    text = text.strip()
    if not text:
        return []
    out = []
    for part in _split_top_level(text):
        m = _TOKEN.match(part)
        if not m:
            raise ParseError(f"bad token {part!r} in word {text!r}")
        kind, root_text, elt = m.groups()
        root = parse_root(root_text, sys)
        c = ring.parse(elt)
        if kind in "wh" and not ring.is_unit(c):
            raise NonUnitTorusParameter(f"{kind}{root_text}({elt}): parameter is not a unit")
        out.append(Token(kind, root, c))
    return out


def reduce_mod_radical(g: GroupElement) -> GroupElement:
    G = g.group
    k = G.residue_group
    word = None
    if g.word is not None:
        word = tuple(Token(t.kind, t.root, G.ring.residue(t.code)) for t in g.word)
    return GroupElement(k, k.embed(G.ring.residue_map[g.codes]) % k.m, word)


# ---------------------------------------------------------------- Steinberg and SL2 checks


def sl2_identity_sides(G: ChevalleyGroup, gamma: Root, s) -> tuple[GroupElement, GroupElement]:
    R = G.ring
    c = code_of(R, s)
    one_minus = R.sub(R.one, c)
    if not R.is_unit(one_minus):
        raise NonUnitInverse(f"1 - {R.format(c)} is not a unit")
    q = R.inv(one_minus)
    lhs = G.x(gamma, 1) * G.x(neg(gamma), R.element(c)) * G.x(gamma, 1).inv()
    rhs = (
        G.h(gamma, R.element(q))
        * G.x(gamma, R.element(R.sub(R.mul(c, c), c)))
        * G.x(neg(gamma), R.element(R.mul(c, q)))
    )
    return lhs, rhs


def sl2_identity_check(sys, ring, gamma: Root, s) -> bool:
    """x_g(1) x_-g(s) x_g(1)^-1 == h_g(1/(1-s)) x_g(s^2-s) x_-g(s/(1-s))."""
    G = ring if isinstance(ring, ChevalleyGroup) else ChevalleyGroup(sys, ring)
    lhs, rhs = sl2_identity_sides(G, gamma, s)
    return lhs == rhs


def check_additivity(G: ChevalleyGroup) -> list:
    """Failures of x_a(s) x_a(t) = x_a(s+t), exhaustive."""
    R = G.ring
    bad = []
    for a in G.sys.ordered_roots:
        for s in range(R.size):
            Xs = G.x_matrix(a, s)
            prods = np.einsum("ij,tjk->tik", Xs, np.stack([G.x_matrix(a, t) for t in range(R.size)])) % G.m
            for t in range(R.size):
                if not np.array_equal(prods[t], G.x_matrix(a, R.add(s, t))):
                    bad.append((a, s, t))
    return bad


def check_torus_relation(G: ChevalleyGroup) -> list:
    """Failures of h_a(t) x_b(s) h_a(t)^-1 = x_b(t^<b,a> s), exhaustive.

    Both sides of the torus action are compared; h_a(t) is built from Weyl
    elements so the diagonal formula is not used to check itself.
    """
    R = G.ring
    bad = []
    for a in G.sys.ordered_roots:
        for t in R.units:
            H = G.h_via_weyl(a, R.element(t))
            assert np.array_equal(H.mat, G.h_matrix(a, t)), (a, t)
            Hi = H.inv().mat
            for b in G.sys.ordered_roots:
                e = R.pow(t, G.sys.pairing(b, a))
                for s in range(R.size):
                    lhs = H.mat @ G.x_matrix(b, s) % G.m @ Hi % G.m
                    if not np.array_equal(lhs, G.x_matrix(b, R.mul(e, s))):
                        bad.append((a, t, b, s))
    return bad


def commutator_rhs(G: ChevalleyGroup, a: Root, b: Root, s: int, t: int) -> np.ndarray:
    R = G.ring
    M = np.eye(G.D, dtype=np.int64)
    for (i, j), g, C in G.lie.commutator_constants[(a, b)]:
        val = R.mul(R.from_int(C), R.mul(R.pow(s, i), R.pow(t, j)))
        M = M @ G.x_matrix(g, val) % G.m
    return M


def check_commutator_formula(G: ChevalleyGroup) -> list:
    """Failures of [x_a(s), x_b(t)] = prod x_{ia+jb}(C_ij s^i t^j), all non-proportional pairs."""
    R = G.ring
    m = G.m
    bad = []
    roots = G.sys.ordered_roots
    for a in roots:
        for b in roots:
            if a == b or a == neg(b):
                continue
            for s in range(R.size):
                A = G.x_matrix(a, s)
                Ai = G.x_matrix(a, R.neg(s))
                for t in range(R.size):
                    B = G.x_matrix(b, t)
                    Bi = G.x_matrix(b, R.neg(t))
                    lhs = A @ B % m @ Ai % m @ Bi % m
                    if not np.array_equal(lhs, commutator_rhs(G, a, b, s, t)):
                        bad.append((a, b, s, t))
    return bad


# ---------------------------------------------------------------- finite tables

_DEGREES = {
    "A": lambda l: list(range(2, l + 2)),
    "B": lambda l: list(range(2, 2 * l + 1, 2)),
    "C": lambda l: list(range(2, 2 * l + 1, 2)),
    "D": lambda l: list(range(2, 2 * l - 1, 2)) + [l],
    "E": lambda l: {6: [2, 5, 6, 8, 9, 12], 7: [2, 6, 8, 10, 12, 14, 18], 8: [2, 8, 12, 14, 18, 20, 24, 30]}[l],
    "F": lambda l: [2, 6, 8, 12],
    "G": lambda l: [2, 6],
}


def estimated_order(sys: RootSystem, ring: LocalRing) -> int:
    """Upper bound |J|^dim * q^N prod (q^d_i - 1) for the order of E_ad."""
    q = ring.residue_field.size
    J = len(ring.radical)
    order = J ** sys.dim * q ** sys.n_positive
    for d in _DEGREES[sys.family](sys.rank):
        order *= q ** d - 1
    return order


class FiniteGroupTable:
    """All elements of a finite matrix group, indexed in BFS order from the identity."""

    def __init__(self, group: ChevalleyGroup, generators: Sequence[GroupElement], cap: int = DEFAULT_CAP):
        self.group = group
        self.generators = list(generators)
        G = group
        m = G.m
        D = G.D
        dtype = np.uint8 if m <= 256 else np.int64
        ident = np.eye(D, dtype=np.int64)
        chunks = [ident[None].astype(dtype)]
        index = {ident.astype(np.uint8).tobytes(): 0}
        gens = np.stack([g.mat for g in self.generators]) if self.generators else np.zeros((0, D, D), np.int64)
        frontier = ident[None]
        count = 1
        right_parts = [[] for _ in self.generators]
        while len(frontier):
            new_mats = []
            for gi in range(len(gens)):
                P = np.matmul(frontier, gens[gi]) % m
                P8 = P.astype(np.uint8).reshape(len(P), -1)
                idxs = np.empty(len(P), dtype=np.int64)
                for r in range(len(P)):
                    k = P8[r].tobytes()
                    j = index.get(k)
                    if j is None:
                        j = count
                        index[k] = j
                        count += 1
                        new_mats.append(P[r])
                        if count > cap:
                            raise GroupTooLarge(f"{G} exceeds the enumeration cap {cap}")
                    idxs[r] = j
                right_parts[gi].append(idxs)
            if new_mats:
                frontier = np.stack(new_mats)
                chunks.append(frontier.astype(dtype))
            else:
                frontier = np.zeros((0, D, D), dtype=np.int64)
        self.elements = np.concatenate(chunks)
        self.index = index
        self.right_perm = [np.concatenate(p) if p else np.zeros(0, np.int64) for p in right_parts]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mat(self, i: int) -> np.ndarray:
        return self.elements[i].astype(np.int64)

    def element(self, i: int) -> GroupElement:
        return GroupElement(self.group, self.mat(i))

    def index_of(self, g) -> int:
        mat = g.mat if isinstance(g, GroupElement) else g
        return self.index[np.asarray(mat).astype(np.uint8).tobytes()]

    def __contains__(self, g) -> bool:
        mat = g.mat if isinstance(g, GroupElement) else g
        return np.asarray(mat).astype(np.uint8).tobytes() in self.index

    def lookup(self, mats: np.ndarray) -> np.ndarray:
        """Indices of a stack of matrices; -1 for matrices outside the table."""
        M8 = mats.astype(np.uint8).reshape(len(mats), -1)
        return np.array([self.index.get(r.tobytes(), -1) for r in M8], dtype=np.int64)

    def mul(self, i: int, j: int) -> int:
        return self.index_of(self.mat(i) @ self.mat(j) % self.group.m)

    def batch(self, idx=None, chunk: int = 8192):
        """Yield (indices, int64 matrices) in chunks."""
        idx = np.arange(len(self)) if idx is None else np.asarray(idx)
        for s in range(0, len(idx), chunk):
            part = idx[s : s + chunk]
            yield part, self.elements[part].astype(np.int64)

    # -- permutation calculus; every element acts on indices by left and right multiplication

    @cached_property
    def left_perm(self) -> list:
        """i -> index of gen * x_i, one array per generator."""
        return [self.left_multiply(g.mat) for g in self.generators]

    @cached_property
    def _tree(self):
        """BFS spanning tree: x_i = x_parent[i] * gen[gen_of[i]]; levels in BFS order."""
        n = len(self)
        parent = np.full(n, -1, dtype=np.int64)
        gen_of = np.full(n, -1, dtype=np.int64)
        parent[0] = 0
        levels = [np.array([0])]
        frontier = levels[0]
        while len(frontier):
            found = []
            for gi, R in enumerate(self.right_perm):
                tgt = R[frontier]
                fresh = parent[tgt] < 0
                parent[tgt[fresh]] = frontier[fresh]
                gen_of[tgt[fresh]] = gi
                found.append(tgt[fresh])
            frontier = np.unique(np.concatenate(found)) if found else np.zeros(0, np.int64)
            if len(frontier):
                levels.append(frontier)
        return parent, gen_of, levels

    def word_of(self, i: int) -> list[int]:
        """Generator indices g_1 .. g_r with x_i = gen[g_1] ... gen[g_r]."""
        parent, gen_of, _ = self._tree
        out = []
        while i:
            out.append(int(gen_of[i]))
            i = int(parent[i])
        return out[::-1]

    @cached_property
    def inverse(self) -> np.ndarray:
        parent, gen_of, levels = self._tree
        inv_left = [np.argsort(L) for L in self.left_perm]
        inv = np.zeros(len(self), dtype=np.int64)
        for lev in levels[1:]:
            # (x_p g)^-1 = g^-1 x_p^-1
            for gi, Li in enumerate(inv_left):
                sel = lev[gen_of[lev] == gi]
                inv[sel] = Li[inv[parent[sel]]]
        return inv

    def right_perm_of(self, i: int) -> np.ndarray:
        """y -> index of x_y * x_i."""
        perm = np.arange(len(self))
        for g in self.word_of(i):
            perm = self.right_perm[g][perm]
        return perm

    def left_perm_of(self, i: int) -> np.ndarray:
        """y -> index of x_i * x_y."""
        perm = np.arange(len(self))
        for g in reversed(self.word_of(i)):
            perm = self.left_perm[g][perm]
        return perm

    def conj_perm_of(self, i: int) -> np.ndarray:
        """y -> index of x_i x_y x_i^-1."""
        return self.right_perm_of(int(self.inverse[i]))[self.left_perm_of(i)]

    def left_multiply(self, g: np.ndarray, idx=None) -> np.ndarray:
        out = []
        for _, M in self.batch(idx):
            out.append(self.lookup(np.matmul(g, M) % self.group.m))
        return np.concatenate(out) if out else np.zeros(0, np.int64)

    def conjugation_perm(self, g: GroupElement) -> np.ndarray:
        """i -> index of g x_i g^-1."""
        return self.conj_perm_of(self.index_of(g))

    def commutes_mask(self, g, idx=None) -> np.ndarray:
        """Elements (optionally among idx) commuting with g (an index or a matrix)."""
        i = g if isinstance(g, (int, np.integer)) else self.index_of(g)
        fixed = self.conj_perm_of(int(i)) == np.arange(len(self))
        return fixed if idx is None else fixed[np.asarray(idx)]

    def element_set(self) -> set:
        return set(self.index)

    def closure(self, gens, start=None) -> np.ndarray:
        """Boolean mask of the subgroup generated by the given indices (and the start mask)."""
        mask = np.zeros(len(self), dtype=bool)
        mask[0] = True
        if start is not None:
            mask |= start
        perms = [self.right_perm_of(int(g)) for g in gens]
        frontier = np.flatnonzero(mask)
        while len(frontier):
            found = []
            for P in perms:
                tgt = P[frontier]
                tgt = tgt[~mask[tgt]]
                mask[tgt] = True
                found.append(tgt)
            frontier = np.concatenate(found) if found else np.zeros(0, np.int64)
        return mask

    @cached_property
    def generator_conjugations(self) -> list:
        """y -> g y g^-1 for each generator g."""
        return [np.argsort(R)[L] for R, L in zip(self.right_perm, self.left_perm)]

    @cached_property
    def conjugacy_classes(self) -> np.ndarray:
        """Class id per element, ids assigned in order of first element."""
        perms = self.generator_conjugations
        cls = np.full(len(self), -1, dtype=np.int64)
        nxt = 0
        for i in range(len(self)):
            if cls[i] >= 0:
                continue
            cls[i] = nxt
            frontier = np.array([i])
            while len(frontier):
                tgt = np.concatenate([p[frontier] for p in perms])
                tgt = np.unique(tgt[cls[tgt] < 0])
                cls[tgt] = nxt
                frontier = tgt
            nxt += 1
        return cls

    def class_members(self, cid: int) -> np.ndarray:
        return np.flatnonzero(self.conjugacy_classes == cid)


def enumerate_group(sys, ring, generators=None, cap: int = DEFAULT_CAP) -> FiniteGroupTable:
    G = ring if isinstance(ring, ChevalleyGroup) else ChevalleyGroup(sys, ring)
    if G.estimated_order() > cap and generators is None:
        raise GroupTooLarge(f"{G} has estimated order {G.estimated_order()} > cap {cap}")
    gens = G.elementary_generators() if generators is None else generators
    return FiniteGroupTable(G, gens, cap=cap)


def centralizer(table: FiniteGroupTable, g) -> np.ndarray:
    mat = g.mat if isinstance(g, GroupElement) else table.mat(g)
    return np.flatnonzero(table.commutes_mask(mat))


def center(table: FiniteGroupTable) -> np.ndarray:
    mask = np.ones(len(table), dtype=bool)
    for g in table.generators:
        mask &= table.commutes_mask(g.mat)
    return np.flatnonzero(mask)


@dataclass
class CommutantReport:
    e_order: int
    g_order: int
    commutators_in_e: bool
    equal: bool
    width: int
    widths: list = field(default_factory=list)  # |products of <= w commutators|

    @property
    def passed(self) -> bool:
        return self.commutators_in_e and self.equal


def check_commutant(sys, ring, width_cap: int = 4, cap: int = DEFAULT_CAP) -> CommutantReport:
    """E = [G, G] for G = E_ad with the adjoint torus adjoined, with the empirical commutator width."""
    G = ring if isinstance(ring, ChevalleyGroup) else ChevalleyGroup(sys, ring)
    E = enumerate_group(G.sys, G, cap=cap)
    Gt = FiniteGroupTable(G, G.elementary_generators() + G.adjoint_torus_generators(), cap=cap)
    cls = Gt.conjugacy_classes
    ncls = int(cls.max()) + 1
    reps = [int(np.flatnonzero(cls == c)[0]) for c in range(ncls)]
    members = [np.flatnonzero(cls == c) for c in range(ncls)]
    inv = Gt.inverse
    comm = set()
    for r in reps:
        prods = Gt.left_multiply(Gt.mat(r), members[cls[inv[r]]])
        comm.update(cls[prods].tolist())
    e_keys = E.index
    in_e = all(Gt.elements[members[c][0]].astype(np.uint8).tobytes() in e_keys for c in comm)
    sizes = [sum(len(members[c]) for c in comm)]
    current = set(comm)
    width = 1
    while sum(len(members[c]) for c in current) < len(E):
        if width >= width_cap:
            raise WidthCapExceeded(f"width exceeds {width_cap}")
        target = np.concatenate([members[c] for c in comm])
        nxt = set(current)
        for c in current:
            prods = Gt.left_multiply(Gt.mat(reps[c]), target)
            nxt.update(cls[prods].tolist())
        current = nxt
        width += 1
        sizes.append(sum(len(members[c]) for c in current))
    span = {Gt.elements[i].astype(np.uint8).tobytes() for c in current for i in members[c]}
    equal = span == set(e_keys)
    return CommutantReport(len(E), len(Gt), in_e, equal, width, sizes)
