"""Definable subsets of a finite elementary Chevalley group, evaluated on its multiplication table.

First-order constructions are computed by their extensions: a quantifier over
the group is a scan over table indices, and sets are boolean masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from .errors import InclusionViolated, MismatchWithRootSubgroup, NotASubgroup, NotFound
from .group import FiniteGroupTable, GroupElement
from .roots import Root


@dataclass
class DefinableSet:
    table: FiniteGroupTable = field(repr=False)
    mask: np.ndarray = field(repr=False)
    recipe: str
    params: dict = field(default_factory=dict)

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, g) -> bool:
        i = g if isinstance(g, (int, np.integer)) else self.table.index_of(g)
        return bool(self.mask[i])

    @property
    def elements(self) -> list[GroupElement]:
        return [self.table.element(int(i)) for i in self.indices]


def _mask(table: FiniteGroupTable, idx) -> np.ndarray:
    m = np.zeros(len(table), dtype=bool)
    m[np.asarray(list(idx), dtype=np.int64)] = True
    return m


def is_normal(table: FiniteGroupTable, mask: np.ndarray) -> bool:
    return all(mask[p[np.flatnonzero(mask)]].all() for p in _generator_conjugations(table))


def is_subgroup(table: FiniteGroupTable, mask: np.ndarray) -> bool:
    if not mask[0]:
        return False
    idx = np.flatnonzero(mask)
    if not mask[table.inverse[idx]].all():
        return False
    # closed under products: x * s in the set for all x, s
    return all(mask[table.right_perm_of(int(s))[idx]].all() for s in idx)


def _generator_conjugations(table: FiniteGroupTable):
    return table.generator_conjugations


# ---------------------------------------------------------------- congruence kernel


def congruence_kernel(table: FiniteGroupTable) -> np.ndarray:
    """Mask of E_J = ker(reduction mod the radical) inside the enumerated E."""
    G = table.group
    k = G.residue_group
    ident = np.eye(k.n, dtype=np.int64)
    out = []
    for _, M in table.batch():
        res = G.ring.residue_map[G.batch_codes(M)]
        out.append((res == ident).all(axis=(1, 2)))
    return np.concatenate(out)


def normal_closure(table: FiniteGroupTable, i: int, stop_above: int | None = None) -> np.ndarray:
    """Mask of the normal closure of x_i; stops with the whole group once it passes stop_above."""
    conj = _generator_conjugations(table)
    gens = [int(i)]
    H = table.closure(gens)
    while True:
        if stop_above is not None and H.sum() > stop_above:
            return np.ones(len(table), dtype=bool)
        escaped = None
        for t in gens:
            for p in conj:
                if not H[p[t]]:
                    escaped = int(p[t])
                    break
            if escaped is not None:
                break
        if escaped is None:
            return H
        gens.append(escaped)
        H = table.closure(gens)


def conjugates_products(table: FiniteGroupTable, i: int, N: int) -> np.ndarray:
    """P_N: products of at most N conjugates of x_i and x_i^-1 (the empty product included)."""
    cls = table.conjugacy_classes
    inv = table.inverse
    C = np.flatnonzero((cls == cls[i]) | (cls == cls[inv[i]]))
    perms = [table.right_perm_of(int(c)) for c in C]
    P = np.zeros(len(table), dtype=bool)
    P[0] = True
    for _ in range(N):
        idx = np.flatnonzero(P)
        nxt = P.copy()
        for p in perms:
            nxt[p[idx]] = True
        if (nxt == P).all():
            break
        P = nxt
    return P


class PhiEvaluator:
    """phi_N on every conjugacy class of the table, with the normal closures cached."""

    def __init__(self, table: FiniteGroupTable):
        self.table = table
        self._closure: dict = {}

    def closure_of_class(self, cid: int) -> np.ndarray:
        if cid not in self._closure:
            rep = int(self.table.class_members(cid)[0])
            self._closure[cid] = normal_closure(self.table, rep, stop_above=len(self.table) // 2)
        return self._closure[cid]

    def phi(self, i: int, N: int) -> bool:
        """P_N(x_i) is a proper normal subgroup of E."""
        T = self.table
        cid = int(T.conjugacy_classes[i])
        K = self.closure_of_class(cid)
        if K.all():
            return False
        # a normal subgroup containing x_i contains K, and P_N lies inside K
        return bool((conjugates_products(T, i, N) == K).all())

    def phi_mask(self, N: int) -> np.ndarray:
        T = self.table
        cls = T.conjugacy_classes
        out = np.zeros(len(T), dtype=bool)
        for cid in range(int(cls.max()) + 1):
            rep = int(T.class_members(cid)[0])
            if self.phi(rep, N):
                out |= cls == cid
        return out


def phi_N(table: FiniteGroupTable, A, N: int) -> bool:
    i = A if isinstance(A, (int, np.integer)) else table.index_of(A)
    return PhiEvaluator(table).phi(int(i), N)


def _products_of(table: FiniteGroupTable, S: np.ndarray, M: int) -> np.ndarray:
    """Products of at most M elements of S (the empty product included)."""
    perms = [table.right_perm_of(int(s)) for s in np.flatnonzero(S)]
    P = np.zeros(len(table), dtype=bool)
    P[0] = True
    for _ in range(M):
        idx = np.flatnonzero(P)
        nxt = P.copy()
        for p in perms:
            nxt[p[idx]] = True
        if (nxt == P).all():
            break
        P = nxt
    return P


def e_j_by_formula(table: FiniteGroupTable, M: int, N: int, evaluator: PhiEvaluator | None = None) -> DefinableSet:
    """Normal_{M,N}: products of at most M elements satisfying phi_N; must be a normal subgroup."""
    ev = evaluator or PhiEvaluator(table)
    S = ev.phi_mask(N)
    P = _products_of(table, S, M)
    if not (is_subgroup(table, P) and is_normal(table, P)):
        raise NotASubgroup(f"products of <= {M} phi_{N}-elements do not form a normal subgroup")
    return DefinableSet(table, P, "Normal", {"M": M, "N": N, "phi_count": int(S.sum())})


def find_M_N(table: FiniteGroupTable, max_N: int = 8, max_M: int = 8) -> tuple[int, int]:
    """Least N, then least M, for which Normal_{M,N} equals the congruence kernel."""
    ev = PhiEvaluator(table)
    kernel = congruence_kernel(table)
    for N in range(1, max_N + 1):
        for M in range(1, max_M + 1):
            try:
                res = e_j_by_formula(table, M, N, ev)
            except NotASubgroup:
                continue
            if (res.mask == kernel).all():
                return M, N
    raise NotFound(f"no (M, N) with M <= {max_M}, N <= {max_N}")


# ---------------------------------------------------------------- centralizer sets


def centralizer_mask(table: FiniteGroupTable, i: int) -> np.ndarray:
    return table.commutes_mask(int(i))


def _generating_set(table: FiniteGroupTable, mask: np.ndarray) -> list[int]:
    """A few indices generating the subgroup given by mask, chosen greedily in index order."""
    gens: list[int] = []
    H = table.closure([])
    for j in np.flatnonzero(mask):
        if not H[j]:
            gens.append(int(j))
            H = table.closure(gens)
            if (H == mask).all():
                break
    return gens


def center_of_centralizer(table: FiniteGroupTable, i: int) -> np.ndarray:
    C = centralizer_mask(table, i)
    Z = C.copy()
    for g in _generating_set(table, C):
        Z &= table.commutes_mask(g)
    return Z


def g_alpha_set(table: FiniteGroupTable, alpha: Root, t=1) -> DefinableSet:
    """{g : C(g) = C(x_alpha(t))}; such g lie in the centre of that centralizer."""
    G = table.group
    i = table.index_of(G.x(alpha, t))
    C = centralizer_mask(table, i)
    out = np.zeros(len(table), dtype=bool)
    for z in np.flatnonzero(center_of_centralizer(table, i)):
        if (centralizer_mask(table, int(z)) == C).all():
            out[z] = True
    return DefinableSet(table, out, "G_alpha", {"alpha": alpha})


def root_subgroup_mask(table: FiniteGroupTable, alpha: Root, units_only: bool = False) -> np.ndarray:
    G = table.group
    R = G.ring
    ts = R.units if units_only else range(R.size)
    return _mask(table, [table.index_of(G.x(alpha, R.element(t))) for t in ts])


@dataclass
class SandwichReport:
    alpha: Root
    group_order: int
    kernel_order: int
    root_subgroup: int
    middle: int
    unit_part: int
    outer_ok: bool
    inner_ok: bool

    @property
    def passed(self) -> bool:
        return self.outer_ok and self.inner_ok


def check_sandwich(table: FiniteGroupTable, alpha: Root, kernel: np.ndarray | None = None, strict: bool = True) -> SandwichReport:
    """X_a(R) contains X_a(R) E_J meet G_a, which contains X_a(R*)."""
    kernel = congruence_kernel(table) if kernel is None else kernel
    X = root_subgroup_mask(table, alpha)
    Xu = root_subgroup_mask(table, alpha, units_only=True)
    XE = np.zeros(len(table), dtype=bool)
    kidx = np.flatnonzero(kernel)
    for x in np.flatnonzero(X):
        XE[table.left_perm_of(int(x))[kidx]] = True
    middle = XE & g_alpha_set(table, alpha).mask
    rep = SandwichReport(
        alpha, len(table), int(kernel.sum()), int(X.sum()), int(middle.sum()), int(Xu.sum()),
        outer_ok=bool((~middle | X).all()), inner_ok=bool((~Xu | middle).all()),
    )
    if strict and not rep.passed:
        raise InclusionViolated(f"sandwich fails for {alpha}: {rep}")
    return rep


def residue_preimage(table: FiniteGroupTable, alpha: Root) -> np.ndarray:
    """Elements whose reduction lies in X_alpha of the residue field."""
    G = table.group
    k = G.residue_group
    targets = {k.x(alpha, k.ring.element(t)).codes.tobytes() for t in range(k.ring.size)}
    out = []
    for _, M in table.batch():
        res = G.ring.residue_map[G.batch_codes(M)].astype(np.int64)
        out.append(np.array([r.tobytes() in targets for r in res], dtype=bool))
    return np.concatenate(out)


def root_subgroup_definable(table: FiniteGroupTable, alpha: Root, strict: bool = True) -> DefinableSet:
    """Preimage of X_alpha(R/J) meet {AB : C(A) and C(B) together cut out C(x_alpha(1))}.

    Any such A lies in C(x_alpha(1)) and commutes with all of it, so the pair
    search runs over the centre of that centralizer.
    """
    G = table.group
    i = table.index_of(G.x(alpha, 1))
    C = centralizer_mask(table, i)
    Z = np.flatnonzero(center_of_centralizer(table, i))
    cents = {int(z): centralizer_mask(table, int(z)) for z in Z}
    prods = np.zeros(len(table), dtype=bool)
    for a in Z:
        Ra = None
        for b in Z:
            if ((cents[int(a)] & cents[int(b)]) == C).all():
                if Ra is None:
                    Ra = table.left_perm_of(int(a))
                prods[Ra[b]] = True
    result = prods & residue_preimage(table, alpha)
    ds = DefinableSet(table, result, "root_subgroup", {"alpha": alpha, "center_size": len(Z)})
    if strict and not (result == root_subgroup_mask(table, alpha)).all():
        raise MismatchWithRootSubgroup(f"definable set for {alpha} has {len(ds)} elements, X_alpha has {G.ring.size}")
    return ds
