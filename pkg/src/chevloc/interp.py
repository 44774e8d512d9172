"""Mutual interpretation of R and E_ad(Phi, R).

Ring inside group: the carrier is a root subgroup X_delta, addition is the
group law, and multiplication comes from the commutator pairing
[x_a(s), x_b(t)] = x_delta(C s t) after moving carrier elements into X_a and
X_b. Those moves ("transports") are chains of Weyl conjugations and
commutator steps. Every step uses only the group law and a fixed parameter
tuple {x_alpha(1)}, so the same code runs on matrices and on Gauss codes.

Group inside ring: Gauss codes with code_eq / code_mul (see gauss).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import IsomorphismFailure, NoA2Subsystem
from .gauss import GaussForm, decode, gauss_decompose
from .group import ChevalleyGroup, FiniteGroupTable, GroupElement
from .lie import lie_data
from .rings import LocalRing, from_tables, ring_isomorphisms
from .roots import Root, RootSystem, neg


# ---------------------------------------------------------------- transport plans


@dataclass(frozen=True)
class Step:
    """One move of a carrier image into another root subgroup.

    weyl: conjugate by w_beta(1). comm: commutator with x_beta(1), then
    multiply by transported powers listed in ``strips`` to cancel the other terms.
    """

    kind: str
    src: Root
    beta: Root
    strips: tuple = ()  # ((root, power), ...)


@dataclass
class TransportPlan:
    carrier: Root
    char: int
    steps: dict  # root -> Step producing it from an earlier root
    coeff: dict  # root -> c with T_root(x_carrier(s)) = x_root(c s)
    pair: tuple  # (a, b) with a + b = carrier
    power: int  # x (*) y = [T_a x, T_b y] ** power


@lru_cache(maxsize=None)
def weyl_sign(sys: RootSystem, beta: Root, gamma: Root) -> int:
    """eta with w_beta(1) x_gamma(s) w_beta(1)^-1 = x_{s_beta gamma}(eta s), read over Z."""
    tpl = lie_data(sys).templates
    W = tpl[beta].evaluate_int(1) @ tpl[neg(beta)].evaluate_int(-1) @ tpl[beta].evaluate_int(1)
    Wi = tpl[beta].evaluate_int(-1) @ tpl[neg(beta)].evaluate_int(1) @ tpl[beta].evaluate_int(-1)
    img = W @ tpl[gamma].evaluate_int(1) @ Wi
    target = sys.reflect(gamma, beta)
    for eta in (1, -1):
        if np.array_equal(img, tpl[target].evaluate_int(eta)):
            return eta
    raise IsomorphismFailure(f"w_{beta} does not map x_{gamma}(1) to x_{target}(+-1)")


def _unit_mod(c: int, char: int) -> bool:
    from math import gcd

    return gcd(c % char, char) == 1


def plan_transports(sys: RootSystem, carrier: Root, char: int) -> dict:
    """Breadth-first search for transports from X_carrier to as many root subgroups as possible."""
    cc = lie_data(sys).commutator_constants
    pos = sys.positive_roots
    steps: dict = {}
    coeff = {carrier: 1}
    order = [carrier]
    changed = True
    while changed:
        changed = False
        for g in list(order):
            for b in pos:
                if g in (b, neg(b)):
                    continue
                t = sys.reflect(g, b)
                if t not in coeff:
                    coeff[t] = weyl_sign(sys, b, g) * coeff[g] % char
                    steps[t] = Step("weyl", g, b)
                    order.append(t)
                    changed = True
            for b in sys.ordered_roots:
                if g in (b, neg(b)):
                    continue
                terms = cc[(g, b)]
                if not terms or terms[0][0] != (1, 1) or any(ij[0] != 1 for ij, _, _ in terms):
                    continue
                t = terms[0][1]
                if t in coeff or not _unit_mod(terms[0][2] * coeff[g], char):
                    continue
                if any(r not in coeff for _, r, _ in terms[1:]):
                    continue
                strips = []
                for _, r, C in reversed(terms[1:]):
                    k = C * coeff[g] * pow(coeff[r], -1, char)
                    strips.append((r, -k % char))
                coeff[t] = terms[0][2] * coeff[g] % char
                steps[t] = Step("comm", g, b, tuple(strips))
                order.append(t)
                changed = True
    return {"steps": steps, "coeff": coeff}


def _pairs_for(sys: RootSystem, carrier: Root):
    cc = lie_data(sys).commutator_constants
    for a in sys.ordered_roots:
        b = tuple(x - y for x, y in zip(carrier, a))
        if b in sys.roots and a != b:
            terms = cc[(a, b)]
            if len(terms) == 1 and terms[0][0] == (1, 1):
                yield a, b, terms[0][2]


def make_plan(sys: RootSystem, carrier: Root, char: int) -> TransportPlan | None:
    """Plan with a single-term commutator pair for the given carrier, or None."""
    tp = plan_transports(sys, carrier, char)
    coeff = tp["coeff"]
    for a, b, C in _pairs_for(sys, carrier):
        if a in coeff and b in coeff:
            k = C * coeff[a] * coeff[b]
            if _unit_mod(k, char):
                return TransportPlan(carrier, char, tp["steps"], coeff, (a, b), pow(k, -1, char))
    return None


def choose_plan(sys: RootSystem, char: int) -> TransportPlan:
    """Prefer a pairing constant +-1, then a carrier that is a sum of two positive roots."""
    best = None
    for d in sys.positive_roots:
        p = make_plan(sys, d, char)
        if p is None:
            continue
        C = abs(lie_data(sys).commutator_constants[p.pair][0][2])
        rank = (C != 1, not (sum(p.pair[0]) > 0 and sum(p.pair[1]) > 0))
        if best is None or rank < best[0]:
            best = (rank, p)
    if best is None:
        raise NoA2Subsystem(f"no carrier root of {sys.name} admits a unit commutator pairing")
    return best[1]


# ---------------------------------------------------------------- executing plans


class Interpreter:
    """Runs a transport plan with a parameter tuple (root -> element standing for x_root(1))."""

    def __init__(self, plan: TransportPlan, params: dict):
        self.plan = plan
        self.p = params
        self._w: dict = {}

    def weyl(self, beta: Root):
        if beta not in self._w:
            p = self.p
            w = p[beta] * p[neg(beta)].inv() * p[beta]
            self._w[beta] = (w, w.inv())
        return self._w[beta]

    def transport(self, x, root: Root, memo: dict | None = None):
        """Image of a carrier element in the root subgroup of ``root``."""
        memo = {} if memo is None else memo
        if root == self.plan.carrier:
            return x
        if root in memo:
            return memo[root]
        st = self.plan.steps[root]
        y = self.transport(x, st.src, memo)
        if st.kind == "weyl":
            w, wi = self.weyl(st.beta)
            out = w * y * wi
        else:
            pb = self.p[st.beta]
            out = y * pb * y.inv() * pb.inv()
            for r, k in st.strips:
                out = out * (self.transport(x, r, memo) ** k)
        memo[root] = out
        return out

    def times(self, x, y):
        a, b = self.plan.pair
        u = self.transport(x, a)
        v = self.transport(y, b)
        return (u * v * u.inv() * v.inv()) ** self.plan.power


# ---------------------------------------------------------------- ring from group


def ring_axiom_failures(add_t: np.ndarray, mul_t: np.ndarray, one: int) -> list[str]:
    """Commutative ring with 1 axioms, checked on all triples."""
    n = len(add_t)
    A, M = add_t, mul_t
    out = []
    if not np.array_equal(A, A.T):
        out.append("addition not commutative")
    if not np.array_equal(M, M.T):
        out.append("multiplication not commutative")
    if not np.array_equal(A[A], A[:, A]):
        # A[A][i, j, k] = (i + j) + k ; A[:, A][i, j, k] = i + (j + k)
        out.append("addition not associative")
    if not np.array_equal(M[M], M[:, M]):
        out.append("multiplication not associative")
    if not np.array_equal(A[0], np.arange(n)):
        out.append("identity is not the additive zero")
    if not (A == 0).any(axis=1).all():
        out.append("missing additive inverses")
    if not np.array_equal(M[one], np.arange(n)):
        out.append("one is not a multiplicative identity")
    # a (b + c) = ab + ac
    lhs = M[:, A]
    rhs = A[M[:, :, None], M[:, None, :]]
    if not np.array_equal(lhs, rhs):
        out.append("not distributive")
    return out


@dataclass
class InterpretedRing:
    plan: TransportPlan
    carrier: list  # carrier elements; index = code in ``ring``
    ring: LocalRing | None
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.ring is not None and not self.failures

    def code_of(self, x) -> int:
        return self._index[x.key]

    def __post_init__(self):
        self._index = {x.key: i for i, x in enumerate(self.carrier)}


def interpret_ring(carrier: list, params: dict, plan: TransportPlan, name: str = "R'") -> InterpretedRing:
    """Tables of (carrier, group law, transported commutator) and the ring they define."""
    n = len(carrier)
    idx = {x.key: i for i, x in enumerate(carrier)}
    one_key = params[plan.carrier].key
    if one_key not in idx or n < 2:
        return InterpretedRing(plan, carrier, None, ["parameter not in carrier"])
    I = Interpreter(plan, params)
    add_t = np.zeros((n, n), dtype=np.int64)
    mul_t = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(carrier):
        for j, y in enumerate(carrier):
            s = idx.get((x * y).key)
            try:
                t = idx.get(I.times(x, y).key)
            except KeyError:
                t = None
            if s is None or t is None:
                return InterpretedRing(plan, carrier, None, [f"operation leaves the carrier at ({i}, {j})"])
            add_t[i, j], mul_t[i, j] = s, t
    fails = ring_axiom_failures(add_t, mul_t, idx[one_key])
    if fails:
        return InterpretedRing(plan, carrier, None, fails)
    try:
        R = from_tables(name, add_t, mul_t, idx[one_key])
    except ValueError as e:
        return InterpretedRing(plan, carrier, None, [str(e)])
    return InterpretedRing(plan, carrier, R)


def true_parameters(G: ChevalleyGroup) -> dict:
    return {a: G.x(a, 1) for a in G.sys.ordered_roots}


@dataclass
class RingReport:
    instance: str
    direction: str
    carrier_root: Root
    pair: tuple
    size: int
    exhaustive: bool
    axioms_ok: bool
    bijective: bool
    additive_failures: int
    multiplicative_failures: int
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.axioms_ok and self.bijective and not self.additive_failures and not self.multiplicative_failures

    def to_dict(self) -> dict:
        return {
            "instance": self.instance, "direction": self.direction,
            "carrier_root": list(self.carrier_root), "pair": [list(r) for r in self.pair],
            "size": self.size, "exhaustive": self.exhaustive, "axioms_ok": self.axioms_ok,
            "bijective": self.bijective, "additive_failures": self.additive_failures,
            "multiplicative_failures": self.multiplicative_failures, "failures": self.failures,
            "notes": self.notes, "passed": self.passed,
        }


def check_iota(R: LocalRing, ir: InterpretedRing, embed) -> tuple[bool, int, int, np.ndarray]:
    """t -> code of embed(t) in the interpreted ring: bijective, additive, multiplicative."""
    iota = np.array([ir.code_of(embed(t)) for t in range(R.size)], dtype=np.int64)
    bij = len(set(iota.tolist())) == R.size and iota[0] == 0 and iota[R.one] == ir.ring.one
    Rp = ir.ring
    add_bad = int((iota[R.add_table] != Rp.add_table[iota[:, None], iota[None, :]]).sum())
    mul_bad = int((iota[R.mul_table] != Rp.mul_table[iota[:, None], iota[None, :]]).sum())
    return bool(bij), add_bad, mul_bad, iota


def _sorted_carrier(elems: list, table: FiniteGroupTable | None):
    if table is not None:
        return sorted(elems, key=table.index_of)
    ident = [e for e in elems if e.is_identity()]
    rest = sorted((e for e in elems if not e.is_identity()), key=lambda e: e.key)
    return ident + rest


def ring_from_group(G: ChevalleyGroup, table: FiniteGroupTable | None = None, params: dict | None = None):
    """Interpret R inside E_ad(Phi, R); returns (InterpretedRing, RingReport).

    With a table the carrier is the definable set Z(C(x_delta(1))); without one
    it is built as {x_delta(t)}.
    """
    R = G.ring
    plan = choose_plan(G.sys, R.modulus)
    given = params is not None
    params = params or true_parameters(G)
    d = plan.carrier
    if table is not None:
        from .definability import center_of_centralizer

        z = np.flatnonzero(center_of_centralizer(table, table.index_of(params[d])))
        elems = [table.element(int(i)) for i in z]
    else:
        elems = [G.x(d, R.element(t)) for t in range(R.size)]
    carrier = _sorted_carrier(elems, table)
    ir = interpret_ring(carrier, params, plan)
    rep = RingReport(G.name, "ring", d, plan.pair, len(carrier), True, ir.ring is not None, False, 0, 0, list(ir.failures))
    if ir.ring is not None and given:
        # no canonical t -> x_delta(t) for an arbitrary tuple; ask for any isomorphism
        rep.bijective = next(iter(ring_isomorphisms(R, ir.ring)), None) is not None
        rep.notes.append("custom parameters: checked R isomorphic to R', not a fixed map")
    elif ir.ring is not None:
        bij, ab, mb, _ = check_iota(R, ir, lambda t: G.x(d, R.element(t)))
        rep.bijective, rep.additive_failures, rep.multiplicative_failures = bij, ab, mb
    return ir, rep


# ---------------------------------------------------------------- group from ring


class Coded:
    """A group element represented by its canonical Gauss code; the group law goes through code_mul."""

    __slots__ = ("group", "form", "_key")

    def __init__(self, group: "CodedGroup", form: GaussForm):
        self.group = group
        self.form = form
        self._key = None

    @property
    def key(self):
        if self._key is None:
            self._key = self.form.as_tuple()
        return self._key

    def __mul__(self, other: "Coded") -> "Coded":
        return self.group.mul(self, other)

    def inv(self) -> "Coded":
        return self.group.inverse(self)

    def __pow__(self, e: int) -> "Coded":
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
        return isinstance(other, Coded) and self.group.eq(self, other)

    def __hash__(self):
        return hash(self.key)

    def is_identity(self) -> bool:
        return self == self.group.identity


class CodedGroup:
    """E_ad(Phi, R) rebuilt from R: codes modulo code_eq, with code_mul."""

    def __init__(self, sys: RootSystem, ring):
        self.G = ChevalleyGroup(sys, ring)
        self.sys = sys
        self.ring = self.G.ring
        self._mul_cache: dict = {}

    def encode(self, g: GroupElement) -> Coded:
        return Coded(self, gauss_decompose(g))

    def decode(self, c: Coded) -> GroupElement:
        return decode(self.G, c.form)

    @property
    def identity(self) -> Coded:
        return self.encode(self.G.identity)

    def x(self, alpha: Root, t) -> Coded:
        return self.encode(self.G.x(alpha, t))

    def mul(self, a: Coded, b: Coded) -> Coded:
        key = (a.key, b.key)
        c = self._mul_cache.get(key)
        if c is None:
            c = self.encode(self.decode(a) * self.decode(b))
            self._mul_cache[key] = c
        return c

    def inverse(self, a: Coded) -> Coded:
        return self.encode(self.decode(a).inv())

    def eq(self, a: Coded, b: Coded) -> bool:
        return np.array_equal(self.decode(a).mat, self.decode(b).mat)


def group_from_ring(sys: RootSystem, ring) -> CodedGroup:
    return CodedGroup(sys, ring)


@dataclass
class CodedGroupReport:
    instance: str
    group_order: int
    round_trip_failures: int
    classes: int
    code_space: int | None  # number of codes decoded when the whole code space was scanned
    code_space_classes: int | None

    @property
    def passed(self) -> bool:
        ok = self.round_trip_failures == 0 and self.classes == self.group_order
        if self.code_space_classes is not None:
            ok = ok and self.code_space_classes == self.group_order
        return ok

    def to_dict(self) -> dict:
        return {
            "instance": self.instance, "group_order": self.group_order,
            "round_trip_failures": self.round_trip_failures, "classes": self.classes,
            "code_space": self.code_space, "code_space_classes": self.code_space_classes,
            "passed": self.passed,
        }


def check_coded_group(table: FiniteGroupTable, scan_limit: int = 5000) -> CodedGroupReport:
    """decode(encode(g)) = g for all g, and the code_eq classes are exactly the group."""
    G = table.group
    CG = CodedGroup(G.sys, G.ring)
    fails = 0
    classes = set()
    for i in range(len(table)):
        g = table.element(i)
        c = CG.encode(g)
        if CG.decode(c) != g:
            fails += 1
        classes.add(c.key)
    n, l = G.sys.n_positive, G.sys.rank
    R = G.ring
    space = R.size ** (3 * n) * len(R.units) ** l
    space_classes = None
    if space <= scan_limit:
        import itertools

        imgs = set()
        for u in itertools.product(range(R.size), repeat=n):
            for h in itertools.product(R.units, repeat=l):
                for v in itertools.product(range(R.size), repeat=n):
                    for u2 in itertools.product(range(R.size), repeat=n):
                        g = decode(G, GaussForm(u, h, v, u2))
                        if g.key not in table.index:
                            fails += 1
                        imgs.add(g.key)
        space_classes = len(imgs)
    else:
        space = None
    return CodedGroupReport(G.name, len(table), fails, len(classes), space, space_classes)


def round_trip_ring(sys: RootSystem, ring) -> tuple[InterpretedRing, RingReport]:
    """R -> coded group over R -> ring interpreted inside it; t -> code of x_delta(t) must be an isomorphism."""
    CG = group_from_ring(sys, ring)
    R = CG.ring
    plan = choose_plan(sys, R.modulus)
    params = {a: CG.x(a, 1) for a in sys.ordered_roots}
    d = plan.carrier
    carrier = [CG.x(d, R.element(t)) for t in range(R.size)]
    ir = interpret_ring(carrier, params, plan)
    rep = RingReport(CG.G.name, "ring-through-codes", d, plan.pair, R.size, True, ir.ring is not None, False, 0, 0, list(ir.failures))
    if ir.ring is not None:
        bij, ab, mb, _ = check_iota(R, ir, lambda t: CG.x(d, R.element(t)))
        rep.bijective, rep.additive_failures, rep.multiplicative_failures = bij, ab, mb
    return ir, rep


# ---------------------------------------------------------------- theta


@dataclass
class ThetaReport:
    instance: str
    group_order: int
    image_size: int
    identity_ok: bool
    homomorphism_failures: int

    @property
    def passed(self) -> bool:
        return self.image_size == self.group_order and self.identity_ok and self.homomorphism_failures == 0

    def to_dict(self) -> dict:
        return {
            "instance": self.instance, "group_order": self.group_order, "image_size": self.image_size,
            "identity_ok": self.identity_ok, "homomorphism_failures": self.homomorphism_failures,
            "passed": self.passed,
        }


class Theta:
    """g -> the element of E_ad(Phi, R') whose Gauss code is g's code pushed through iota."""

    def __init__(self, G: ChevalleyGroup, ir: InterpretedRing):
        self.G = G
        self.ir = ir
        R = G.ring
        d = ir.plan.carrier
        self.iota = np.array([ir.code_of(G.x(d, R.element(t))) for t in range(R.size)], dtype=np.int64)
        self.iota_inv = np.argsort(self.iota)
        self.target = ChevalleyGroup(G.sys, ir.ring)

    def __call__(self, g: GroupElement) -> GroupElement:
        return decode(self.target, gauss_decompose(g).map(self.iota))

    def inverse(self, h: GroupElement) -> GroupElement:
        return decode(self.G, gauss_decompose(h).map(self.iota_inv))


def theta_isomorphism(table: FiniteGroupTable, ir: InterpretedRing | None = None) -> tuple[Theta, ThetaReport]:
    """theta on every element; bijective and multiplicative against every generator, hence an isomorphism."""
    G = table.group
    if ir is None:
        ir, _ = ring_from_group(G, table)
    th = Theta(G, ir)
    n = len(table)
    imgs = np.stack([th(table.element(i)).mat for i in range(n)])
    keys = {m.astype(np.uint8).tobytes() for m in imgs}
    m = th.target.m
    bad = 0
    for gi, g in enumerate(table.generators):
        tg = th(g).mat
        prod = np.matmul(imgs, tg) % m
        bad += int((prod != imgs[table.right_perm[gi]]).any(axis=(1, 2)).sum())
    ident_ok = np.array_equal(imgs[0], np.eye(th.target.D, dtype=np.int64))
    return th, ThetaReport(G.name, n, len(keys), bool(ident_ok), bad)


# ---------------------------------------------------------------- parameter formula


@dataclass
class ParameterReport:
    conjugacy: bool
    commutators: bool
    rings: bool
    decomposition: bool
    witnesses: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.conjugacy and self.commutators and self.rings and self.decomposition


def _orbit_words(table: FiniteGroupTable, start: int, perms: list, limit: int) -> dict:
    word = {start: ()}
    frontier = [start]
    for _ in range(limit):
        nxt = []
        for i in frontier:
            for lab, p in perms:
                j = int(p[i])
                if j not in word:
                    word[j] = (lab,) + word[i]
                    nxt.append(j)
        frontier = nxt
        if not frontier:
            break
    return word


def _diagonal_perms(table: FiniteGroupTable) -> list:
    """Conjugation by adjoint torus elements (outer for E when t is not a suitable power)."""
    G = table.group
    out = []
    for i in range(G.sys.rank):
        for t in G.ring.units:
            if t == G.ring.one:
                continue
            Dm = G.diagonal_matrix(i, t)
            Di = G.diagonal_matrix(i, G.ring.inv(t))
            perm = np.concatenate([table.lookup(np.matmul(np.matmul(Dm, M) % G.m, Di) % G.m) for _, M in table.batch()])
            if (perm < 0).any():
                continue
            out.append((("d", i, G.ring.format(t)), perm))
    return out


def _conjugacy(table: FiniteGroupTable, cand: dict, weyl: dict) -> tuple[bool, dict, bool]:
    """Same-length candidates lie in one orbit under words of length <= 2|Phi| in the w_beta.

    If Weyl words do not suffice, adjoint diagonal elements are allowed as well
    (conjugacy in G_ad); the third return value says whether that was needed.
    """
    sys = table.group.sys
    limit = 2 * len(sys.roots)
    perms = []
    for b, (w, wi) in weyl.items():
        if w not in table:
            return False, {}, False
        perms.append(((b, 1), table.conj_perm_of(table.index_of(w))))
        perms.append(((b, -1), table.conj_perm_of(table.index_of(wi))))
    classes = [[a for a in sys.ordered_roots if sys.is_long(a) == lg] for lg in (True, False)]
    classes = [c for c in classes if c]

    def attempt(perms):
        witnesses = {}
        for roots in classes:
            word = _orbit_words(table, table.index_of(cand[roots[0]]), perms, limit)
            for a in roots:
                j = table.index_of(cand[a])
                if j not in word:
                    return False, witnesses
                witnesses[a] = word[j]
        return True, witnesses

    ok, wit = attempt(perms)
    if ok:
        return True, wit, False
    ok, wit = attempt(perms + _diagonal_perms(table))
    return ok, wit, ok


def _format_label(lab) -> str:
    if lab[0] == "d":
        return f"d{lab[1] + 1}({lab[2]})"
    return f"w{list(lab[0])}^{lab[1]}"


def _commutator_relations(sys: RootSystem, cand: dict) -> bool:
    cc = lie_data(sys).commutator_constants
    for (a, b), terms in cc.items():
        x, y = cand[a], cand[b]
        lhs = x * y * x.inv() * y.inv()
        rhs = None
        for _, r, C in terms:
            f = cand[r] ** C
            rhs = f if rhs is None else rhs * f
        if rhs is None:
            if not lhs.is_identity():
                return False
        elif lhs != rhs:
            return False
    return True


def verify_parameter_formula(table: FiniteGroupTable, candidate: dict, max_carrier: int = 256) -> ParameterReport:
    """The four properties of a parameter tuple, evaluated on the table.

    (1) equal-length entries conjugate by short words in w_beta built from the tuple;
    (2) Chevalley commutator relations among the entries;
    (3) each Z(C(entry)) with the group law and the transported commutator is a
        local ring, all of them isomorphic;
    (4) E = U' T' V' U' with X'_alpha = Z(C(entry)).
    """
    G = table.group
    sys = G.sys
    cand = {a: (table.element(int(c)) if isinstance(c, (int, np.integer)) else c) for a, c in candidate.items()}
    rep = ParameterReport(False, False, False, False)
    weyl = {}
    for b in sys.positive_roots:
        w = cand[b] * cand[neg(b)].inv() * cand[b]
        weyl[b] = (w, w.inv())
    rep.conjugacy, wit, used_diag = _conjugacy(table, cand, weyl)
    if used_diag:
        rep.notes.append("conjugacy needs adjoint diagonal elements (holds in G_ad, not by Weyl words in E)")
    rep.witnesses = {str(list(a)): [_format_label(lab) for lab in w] for a, w in wit.items()}
    rep.commutators = _commutator_relations(sys, cand)

    from .definability import center_of_centralizer

    X = {a: center_of_centralizer(table, table.index_of(cand[a])) for a in sys.ordered_roots}
    char = G.ring.modulus
    rings = []
    ring_ok = True
    for a in sys.ordered_roots:
        plan = make_plan(sys, a, char)
        if plan is None:
            rep.notes.append(f"no unit pairing for carrier {list(a)}; ring not checked")
            continue
        z = np.flatnonzero(X[a])
        if len(z) > max_carrier:
            ring_ok = False
            rep.notes.append(f"carrier for {list(a)} has {len(z)} elements")
            continue
        ir = interpret_ring([table.element(int(i)) for i in z], cand, plan)
        if ir.ring is None:
            ring_ok = False
            rep.notes.append(f"carrier for {list(a)}: {ir.failures[0]}")
            continue
        rings.append(ir.ring)
    if ring_ok and rings:
        ring_ok = all(next(iter(ring_isomorphisms(rings[0], r)), None) is not None for r in rings[1:])
    rep.rings = bool(ring_ok and rings)
    rep.decomposition = _decomposition_covers(table, cand, X)
    return rep


def _decomposition_covers(table: FiniteGroupTable, cand: dict, X: dict) -> bool:
    sys = table.group.sys
    n = len(table)

    def times_set(S: np.ndarray, T: np.ndarray) -> np.ndarray:
        out = np.zeros(n, dtype=bool)
        idx = np.flatnonzero(S)
        for t in np.flatnonzero(T):
            out[table.right_perm_of(int(t))[idx]] = True
        return out

    one = np.zeros(n, dtype=bool)
    one[0] = True
    U = one
    for a in sys.positive_roots:
        U = times_set(U, X[a])
    V = one
    for a in sys.negative_roots:
        V = times_set(V, X[a])
    # torus: w(z) w(x_a(1))^-1 with w(z) = z y z, y in X'_{-a} the element making w carry x_a(1) into X'_{-a}
    hs = []
    for a in sys.positive_roots:
        base = None
        ws = []
        for zi in np.flatnonzero(X[a]):
            z = table.element(int(zi))
            for yi in np.flatnonzero(X[neg(a)]):
                y = table.element(int(yi))
                w = z * y * z
                if X[neg(a)][table.index_of(w * cand[a] * w.inv())]:
                    ws.append(w)
                    if z == cand[a]:
                        base = w
                    break
        if base is None:
            return False
        bi = base.inv()
        hs.extend(table.index_of(w * bi) for w in ws)
    T = table.closure(hs)
    S = times_set(times_set(times_set(U, T), V), U)
    return bool(S.all())


def apply_ring_automorphism(G: ChevalleyGroup, perm: np.ndarray, g: GroupElement) -> GroupElement:
    """Entrywise image of g under a ring automorphism given as a code permutation."""
    return G.from_codes(perm[g.codes])
