"""Irreducible root systems in simple-root coordinates.

A root is a tuple of integers: its coefficients over the simple roots.
The inner product is the symmetrized Cartan form, scaled so that every
squared length is an even integer (short roots of B, C, F, G have length 2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import ProportionalRoots, RankTooSmall

Root = tuple  # tuple[int, ...]

_ADMISSIBLE = {
    "A": lambda l: l >= 2,
    "B": lambda l: l >= 2,
    "C": lambda l: l >= 2,
    "D": lambda l: l >= 4,
    "E": lambda l: l in (6, 7, 8),
    "F": lambda l: l == 4,
    "G": lambda l: l == 2,
}


def gram_matrix(family: str, rank: int) -> list[list[int]]:
    """Gram matrix (alpha_i, alpha_j) of the simple roots (Bourbaki numbering,
    except G2 where alpha_1 is the short root)."""
    l = rank
    B = [[0] * l for _ in range(l)]

    def link(i, j, v):
        B[i][j] = B[j][i] = v

    if family == "A" or family == "D" or family == "E":
        for i in range(l):
            B[i][i] = 2
        if family == "A":
            for i in range(l - 1):
                link(i, i + 1, -1)
        elif family == "D":
            for i in range(l - 2):
                link(i, i + 1, -1)
            link(l - 3, l - 1, -1)
        else:
            link(0, 2, -1)
            link(1, 3, -1)
            for i in range(2, l - 1):
                link(i, i + 1, -1)
    elif family == "B":
        for i in range(l - 1):
            B[i][i] = 4
        B[l - 1][l - 1] = 2
        for i in range(l - 1):
            link(i, i + 1, -2)
    elif family == "C":
        for i in range(l - 1):
            B[i][i] = 2
        B[l - 1][l - 1] = 4
        for i in range(l - 2):
            link(i, i + 1, -1)
        link(l - 2, l - 1, -2)
    elif family == "F":
        B[0][0] = B[1][1] = 4
        B[2][2] = B[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif family == "G":
        B[0][0], B[1][1] = 2, 6
        link(0, 1, -3)
    return B


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    gram: tuple = field(repr=False)
    roots: frozenset = field(repr=False)
    positive_roots: tuple = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def simple_roots(self) -> tuple:
        return self.positive_roots[: self.rank]

    @property
    def negative_roots(self) -> tuple:
        return tuple(neg(a) for a in self.positive_roots)

    @cached_property
    def ordered_roots(self) -> tuple:
        """Positive roots in order, then their negatives in the same order."""
        return self.positive_roots + self.negative_roots

    @cached_property
    def root_index(self) -> dict:
        return {a: i for i, a in enumerate(self.ordered_roots)}

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def dim(self) -> int:
        """Dimension of the adjoint module."""
        return len(self.roots) + self.rank

    def inner(self, a: Root, b: Root) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def norm(self, a: Root) -> int:
        return self.inner(a, a)

    def pairing(self, beta: Root, alpha: Root) -> int:
        """<beta, alpha> = 2 (beta, alpha) / (alpha, alpha)."""
        num = 2 * self.inner(beta, alpha)
        den = self.norm(alpha)
        assert num % den == 0
        return num // den

    def is_root(self, a: Root) -> bool:
        return a in self.roots

    def is_long(self, a: Root) -> bool:
        return self.norm(a) == self._long_norm

    @cached_property
    def _long_norm(self) -> int:
        return max(self.norm(a) for a in self.positive_roots)

    def height(self, a: Root) -> int:
        return sum(a)

    def reflect(self, beta: Root, alpha: Root) -> Root:
        c = self.pairing(beta, alpha)
        return tuple(b - c * a for a, b in zip(alpha, beta))

    @cached_property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @cached_property
    def cartan_matrix(self) -> list[list[int]]:
        s = self.simple_roots
        return [[self.pairing(a, b) for b in s] for a in s]

    def coroot_coeffs(self, alpha: Root) -> tuple:
        """Coefficients of the coroot of alpha over the simple coroots."""
        n = self.norm(alpha)
        out = []
        for i, c in enumerate(alpha):
            num = c * self.gram[i][i]
            assert num % n == 0
            out.append(num // n)
        return tuple(out)


def add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Root) -> Root:
    return tuple(-x for x in a)


def scale(c: int, a: Root) -> Root:
    return tuple(c * x for x in a)


def is_zero(a: Root) -> bool:
    return not any(a)


def order_key(a: Root):
    # height first, then lexicographically larger coefficient vectors first,
    # which keeps alpha_1, ..., alpha_l in their natural order
    return (sum(a), tuple(-x for x in a))


def build_root_system(family: str, rank: int) -> RootSystem:
    family = family.upper()
    if family not in _ADMISSIBLE or rank < 2 or not _ADMISSIBLE[family](rank):
        raise RankTooSmall(f"no irreducible root system {family}{rank} of rank >= 2")
    gram = gram_matrix(family, rank)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]

    def inner(a, b):
        return sum(a[i] * gram[i][j] * b[j] for i in range(rank) for j in range(rank))

    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            for a in simple:
                c = 2 * inner(b, a) // inner(a, a)
                r = tuple(x - c * y for x, y in zip(b, a))
                if r not in roots:
                    roots.add(r)
                    nxt.append(r)
        frontier = nxt
    positive = sorted((r for r in roots if sum(r) > 0), key=order_key)
    return RootSystem(
        family=family,
        rank=rank,
        gram=tuple(tuple(r) for r in gram),
        roots=frozenset(roots),
        positive_roots=tuple(positive),
    )


def parse_system(text: str) -> RootSystem:
    text = text.strip()
    return build_root_system(text[0], int(text[1:]))


EXPECTED_ROOT_COUNT = {
    "A": lambda l: l * (l + 1),
    "B": lambda l: 2 * l * l,
    "C": lambda l: 2 * l * l,
    "D": lambda l: 2 * l * (l - 1),
    "E": lambda l: {6: 72, 7: 126, 8: 240}[l],
    "F": lambda l: 48,
    "G": lambda l: 12,
}


def pairing(sys: RootSystem, beta: Root, alpha: Root) -> int:
    return sys.pairing(beta, alpha)


def root_string(sys: RootSystem, alpha: Root, beta: Root) -> tuple[int, int]:
    """(p, q): how far the alpha-string through beta extends down and up."""
    if beta == alpha or beta == neg(alpha):
        raise ProportionalRoots(f"{beta} is proportional to {alpha}")
    p = 0
    while sub(beta, scale(p + 1, alpha)) in sys.roots:
        p += 1
    q = 0
    while add(beta, scale(q + 1, alpha)) in sys.roots:
        q += 1
    return p, q


def b_set(sys: RootSystem, alpha1: Root) -> frozenset:
    """{beta : alpha1 + beta is neither a root nor zero}."""
    return frozenset(b for b in sys.roots if not is_zero(add(alpha1, b)) and add(alpha1, b) not in sys.roots)


@dataclass(frozen=True)
class Deletion:
    root: Root
    rule: int  # 1: killed by an element of B; 2: killed by an orthogonal torus element
    witness: Root


def deletion_closure(sys: RootSystem, alpha1: Root, exponent: str = "rule") -> tuple[frozenset, list[Deletion]]:
    """Delete every root whose unipotent is forced trivial in the centralizer argument.

    Rule 1 deletes gamma when some beta in B has beta + gamma in Phi or zero.
    Rule 2 deletes gamma when some delta orthogonal to alpha1 has <delta, gamma> odd.
    With exponent="action" rule 2 uses <gamma, delta> instead, the exponent with
    which h_delta(-1) really acts on x_gamma; the two differ for unequal lengths.
    """
    if exponent not in ("rule", "action"):
        raise ValueError(f"exponent must be 'rule' or 'action', not {exponent!r}")
    B = b_set(sys, alpha1)
    B_sorted = [b for b in sys.ordered_roots if b in B]
    deleted = {}
    for g in sorted(sys.roots, key=order_key):
        if g == alpha1:
            continue
        for b in B_sorted:
            s = add(b, g)
            if is_zero(s) or s in sys.roots:
                deleted[g] = Deletion(g, 1, b)
                break
    ortho = [d for d in sys.ordered_roots if sys.inner(d, alpha1) == 0]
    for g in sorted(sys.roots, key=order_key):
        if g == alpha1 or g in deleted:
            continue
        for d in ortho:
            e = sys.pairing(d, g) if exponent == "rule" else sys.pairing(g, d)
            if e % 2:
                deleted[g] = Deletion(g, 2, d)
                break
    trace = [deleted[g] for g in sorted(deleted, key=order_key)]
    return frozenset(deleted), trace


ALL_SMALL_SYSTEMS = (
    [("A", l) for l in range(2, 7)]
    + [("B", l) for l in range(2, 7)]
    + [("C", l) for l in range(3, 7)]
    + [("D", l) for l in range(4, 7)]
    + [("E", 6), ("F", 4), ("G", 2)]
)


def parse_root(text: str, sys: RootSystem | None = None) -> Root:
    from .errors import ParseError

    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError(f"bad root literal {text!r}")
    try:
        r = tuple(int(x) for x in t[1:-1].split(","))
    except ValueError as e:
        raise ParseError(f"bad root literal {text!r}") from e
    if sys is not None and r not in sys.roots:
        raise ParseError(f"{text} is not a root of {sys.name}")
    return r


def format_root(a: Root) -> str:
    return "[" + ",".join(str(x) for x in a) + "]"
