"""Finite commutative local rings.

Every ring is stored as Cayley tables over element codes ``0 .. size-1``.
Each ring is also a free module over Z/m (m = additive exponent) with a chosen
basis, which gives the regular representation ``a -> L(a)`` used by the
group layer to turn matrices over R into integer matrices mod m.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from typing import Callable, Iterable

import numpy as np

from .errors import NonUnitInverse, NoIrreducible, NotPrime, ParseError, RingMismatch


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise NotPrime."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r == 1:
                return p, k
            break
    raise NotPrime(f"{q} is not a prime power")


# ---------------------------------------------------------------- polynomials over F_p


def _poly_mulmod(a, b, mod, p):
    d = len(mod) - 1
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # mod is monic, lowest coefficient first
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for i in range(d + 1):
                prod[k - d + i] = (prod[k - d + i] - c * mod[i]) % p
    return prod[:d]


def _is_irreducible(poly, p):
    """True iff the monic polynomial (lowest coefficient first) is irreducible over F_p."""
    d = len(poly) - 1
    # brute force: no monic factor of degree 1..d//2
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            f = list(tail) + [1]
            # polynomial long division
            r = list(poly)
            for i in range(d, k - 1, -1):
                c = r[i]
                if c:
                    for j in range(k + 1):
                        r[i - k + j] = (r[i - k + j] - c * f[j]) % p
            if not any(r[:k]):
                return False
    return True


def least_irreducible(p: int, d: int) -> list[int]:
    """Least monic irreducible of degree d, comparing coefficients from x^(d-1) down."""
    if d == 1:
        return [0, 1]
    for high_first in itertools.product(range(p), repeat=d):
        poly = list(reversed(high_first)) + [1]
        if poly[0] == 0:
            continue
        if _is_irreducible(poly, p):
            return poly
    raise NoIrreducible(f"no irreducible polynomial of degree {d} over F_{p}")


# ---------------------------------------------------------------- the ring class


class LocalRing:
    """A finite commutative local ring given by its addition and multiplication tables."""

    def __init__(
        self,
        name: str,
        add_table: np.ndarray,
        mul_table: np.ndarray,
        one: int,
        *,
        basis: list[int] | None = None,
        formatter: Callable[[int], str] | None = None,
        parser: Callable[[str], int] | None = None,
        residue_name: str | None = None,
    ):
        self.name = name
        self.size = len(add_table)
        self.add_table = np.asarray(add_table, dtype=np.int64)
        self.mul_table = np.asarray(mul_table, dtype=np.int64)
        if not np.array_equal(self.add_table[0], np.arange(self.size)):
            raise ValueError("code 0 must be the additive identity")
        self.zero = 0
        self.one = one
        self._formatter = formatter
        self._parser = parser
        self._residue_name = residue_name
        n = self.size
        self.neg_table = np.array([int(np.flatnonzero(self.add_table[a] == 0)[0]) for a in range(n)])
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hit = np.flatnonzero(self.mul_table[a] == one)
            if len(hit):
                inv[a] = hit[0]
        self.inv_table = inv
        self.unit_mask = inv >= 0
        self._setup_module(basis)
        self._check_local()

    # -- construction helpers

    def _setup_module(self, basis):
        n = self.size
        order = []
        for a in range(n):
            k, s = 1, a
            while s != 0:
                s = self.add_table[s, a]
                k += 1
            order.append(k if a else 1)
        m = int(np.lcm.reduce(order))
        self.modulus = m
        if basis is None:
            basis = self._find_basis(order)
        self.basis = list(basis)
        d = len(self.basis)
        if m ** d != n:
            raise ValueError(f"{self.name}: additive group is not free over Z/{m}")
        coords = np.zeros((n, d), dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        multiples = [self._multiples(b) for b in self.basis]
        for cs in itertools.product(range(m), repeat=d):
            s = 0
            for i, c in enumerate(cs):
                s = self.add_table[s, multiples[i][c]]
            if seen[s]:
                raise ValueError(f"{self.name}: chosen basis is not independent")
            seen[s] = True
            coords[s] = cs
        self.coords = coords
        self._code_from_coords = {tuple(c): i for i, c in enumerate(coords.tolist())}
        weights = m ** np.arange(d)
        lookup = np.zeros(m ** d, dtype=np.int64)
        lookup[coords @ weights] = np.arange(n)
        self._coord_weights = weights
        self._coord_lookup = lookup
        reg = np.zeros((n, d, d), dtype=np.int64)
        for a in range(n):
            for j, b in enumerate(self.basis):
                reg[a, :, j] = coords[self.mul_table[a, b]]
        self.regular = reg

    def _multiples(self, b):
        out = [0]
        for _ in range(self.modulus - 1):
            out.append(int(self.add_table[out[-1], b]))
        return out

    def _find_basis(self, order):
        m = max(order)
        span = {0}
        basis = []
        while len(span) < self.size:
            for b in range(self.size):
                if order[b] != m or b in span:
                    continue
                mult = self._multiples(b)
                if any(x in span for x in mult[1:]):
                    continue
                new = {int(self.add_table[s, x]) for s in span for x in mult}
                if len(new) == len(span) * m:
                    basis.append(b)
                    span = new
                    break
            else:
                raise ValueError(f"{self.name}: additive group is not free")
        return basis

    def _check_local(self):
        J = np.flatnonzero(~self.unit_mask)
        Jset = set(J.tolist())
        for a in J:
            for b in J:
                if int(self.add_table[a, b]) not in Jset:
                    raise ValueError(f"{self.name} is not local")

    # -- element level API

    def __repr__(self):
        return f"LocalRing({self.name})"

    def __call__(self, n: int) -> "RingElement":
        """The image of the integer n."""
        return RingElement(self, self.from_int(n))

    def element(self, code: int) -> "RingElement":
        return RingElement(self, int(code))

    def elements(self) -> list["RingElement"]:
        return [RingElement(self, c) for c in range(self.size)]

    def from_int(self, n: int) -> int:
        mult = self._multiples(self.one)
        return mult[n % self.modulus]

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        r = int(self.inv_table[a])
        if r < 0:
            raise NonUnitInverse(f"{self.format(a)} is not a unit in {self.name}")
        return r

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = self.one
        for _ in range(e):
            r = int(self.mul_table[r, a])
        return r

    def is_unit(self, a: int) -> bool:
        return bool(self.unit_mask[a])

    def in_radical(self, a: int) -> bool:
        return not self.unit_mask[a]

    @cached_property
    def units(self) -> list[int]:
        return [int(a) for a in np.flatnonzero(self.unit_mask)]

    @cached_property
    def radical(self) -> list[int]:
        return [int(a) for a in np.flatnonzero(~self.unit_mask)]

    def is_integer_unit(self, n: int) -> bool:
        return self.is_unit(self.from_int(n))

    def code_from_coords(self, cs) -> int:
        return self._code_from_coords[tuple(int(c) % self.modulus for c in cs)]

    def codes_from_coords(self, arr: np.ndarray) -> np.ndarray:
        """Vectorised inverse of ``coords`` along the last axis."""
        return self._coord_lookup[(np.asarray(arr) % self.modulus) @ self._coord_weights]

    @property
    def degree(self) -> int:
        return len(self.basis)

    # -- residue field

    @cached_property
    def _residue_data(self):
        if len(self.radical) == 1:
            return self, np.arange(self.size), np.arange(self.size)
        J = self.radical
        rep = np.full(self.size, -1, dtype=np.int64)
        for a in range(self.size):
            if rep[a] < 0:
                coset = [int(self.add_table[a, j]) for j in J]
                r = min(coset)
                for c in coset:
                    rep[c] = r
        transversal = sorted(set(rep.tolist()))
        idx = {t: i for i, t in enumerate(transversal)}
        k = len(transversal)
        add = np.array([[idx[int(rep[self.add_table[a, b]])] for b in transversal] for a in transversal])
        mul = np.array([[idx[int(rep[self.mul_table[a, b]])] for b in transversal] for a in transversal])
        parent_fmt = self.format
        field = LocalRing(
            self._residue_name or f"{self.name}/J",
            add,
            mul,
            idx[int(rep[self.one])],
            formatter=lambda c: parent_fmt(transversal[c]),
        )
        residue = np.array([idx[int(r)] for r in rep])
        lift = np.array(transversal)
        return field, residue, lift

    @property
    def residue_field(self) -> "LocalRing":
        return self._residue_data[0]

    @property
    def residue_map(self) -> np.ndarray:
        return self._residue_data[1]

    @property
    def lift_map(self) -> np.ndarray:
        return self._residue_data[2]

    def residue(self, a: int) -> int:
        return int(self.residue_map[a])

    def lift(self, a: int) -> int:
        return int(self.lift_map[a])

    @property
    def is_field(self) -> bool:
        return len(self.radical) == 1

    # -- literals

    def format(self, a: int) -> str:
        if self._formatter is not None:
            return self._formatter(a)
        return str(a)

    def parse(self, text: str) -> int:
        text = text.strip()
        if self._parser is not None:
            return self._parser(text)
        try:
            return self.from_int(int(text))
        except ValueError as e:
            raise ParseError(f"bad element literal {text!r} for {self.name}") from e

    def equivalent_to(self, other: "LocalRing") -> bool:
        return self.name == other.name and self.size == other.size


class RingElement:
    """Thin operator wrapper around a code; equality is code equality."""

    __slots__ = ("ring", "code")

    def __init__(self, ring: LocalRing, code: int):
        self.ring = ring
        self.code = code

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
            return other.code
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return RingElement(self.ring, self.ring.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return RingElement(self.ring, self.ring.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return RingElement(self.ring, self.ring.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        return RingElement(self.ring, self.ring.mul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.code))

    def __pow__(self, e: int):
        return RingElement(self.ring, self.ring.pow(self.code, e))

    def inv(self):
        return RingElement(self.ring, self.ring.inv(self.code))

    def __truediv__(self, other):
        b = self._coerce(other)
        return RingElement(self.ring, self.ring.mul(self.code, self.ring.inv(b)))

    def is_unit(self):
        return self.ring.is_unit(self.code)

    def in_radical(self):
        return self.ring.in_radical(self.code)

    def residue(self):
        return RingElement(self.ring.residue_field, self.ring.residue(self.code))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring is other.ring and self.code == other.code
        if isinstance(other, int):
            return self.code == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.name, self.code))

    def __int__(self):
        return self.code

    def __repr__(self):
        return self.ring.format(self.code)


def code_of(ring: LocalRing, t) -> int:
    """Accept a RingElement, an integer (mapped through Z -> R) or a literal string."""
    if isinstance(t, RingElement):
        if t.ring is not ring and not t.ring.equivalent_to(ring):
            raise RingMismatch(f"element of {t.ring.name} used with {ring.name}")
        return t.code
    if isinstance(t, (int, np.integer)):
        return ring.from_int(int(t))
    if isinstance(t, str):
        return ring.parse(t)
    raise TypeError(f"cannot interpret {t!r} as an element of {ring.name}")


# ---------------------------------------------------------------- families


def zmod(p: int, k: int = 1) -> LocalRing:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("k >= 1 required")
    n = p ** k
    a = np.arange(n)
    name = f"zmod:{n}" if k > 1 else f"gf:{p}"
    return LocalRing(
        name,
        (a[:, None] + a[None, :]) % n,
        (a[:, None] * a[None, :]) % n,
        1 % n,
        basis=[1],
        residue_name=f"gf:{p}",
    )


def _gf_tables(p: int, d: int):
    mod = least_irreducible(p, d)
    q = p ** d

    def digits(c):
        return [(c // p ** i) % p for i in range(d)]

    def code(ds):
        return sum(x * p ** i for i, x in enumerate(ds))

    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        da = digits(a)
        for b in range(q):
            db = digits(b)
            add[a, b] = code([(x + y) % p for x, y in zip(da, db)])
            mul[a, b] = code(_poly_mulmod(da, db, mod, p))
    return add, mul, mod


def _poly_format(c: int, p: int, d: int, var: str = "x") -> str:
    if d == 1:
        return str(c)
    terms = []
    for i in reversed(range(d)):
        x = (c // p ** i) % p
        if not x:
            continue
        if i == 0:
            terms.append(str(x))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if x == 1 else f"{x}*{mono}")
    return "+".join(terms) or "0"


_TERM = re.compile(r"^\s*(\d*)\s*\*?\s*([a-z])?\s*(?:\^\s*(\d+))?\s*$")


def _poly_parse(text: str, p: int, d: int, var: str) -> list[int]:
    out = [0] * d
    if not text.strip():
        raise ParseError("empty element literal")
    for term in text.replace("-", "+-").split("+"):
        if not term.strip():
            continue
        sign = 1
        term = term.strip()
        if term.startswith("-"):
            sign, term = -1, term[1:]
        m = _TERM.match(term)
        if not m or (not m.group(1) and not m.group(2)):
            raise ParseError(f"bad element literal {text!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            deg = 0
        else:
            if m.group(2) != var:
                raise ParseError(f"unknown symbol {m.group(2)!r} in {text!r}")
            deg = int(m.group(3)) if m.group(3) else 1
        if deg >= d:
            raise ParseError(f"degree too large in {text!r}")
        out[deg] = (out[deg] + sign * coef) % p
    return out


def galois_field(p: int, d: int = 1) -> LocalRing:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if d == 1:
        return zmod(p, 1)
    add, mul, mod = _gf_tables(p, d)
    q = p ** d

    def parse(text):
        ds = _poly_parse(text, p, d, "x")
        return sum(x * p ** i for i, x in enumerate(ds))

    ring = LocalRing(
        f"gf:{q}",
        add,
        mul,
        1,
        basis=[p ** i for i in range(d)],
        formatter=lambda c: _poly_format(c, p, d),
        parser=parse,
        residue_name=f"gf:{q}",
    )
    ring.modulus_poly = mod
    return ring


def dual_numbers(p: int, d: int = 1) -> LocalRing:
    """F_q[e]/(e^2); the element a + b e has code a + q b."""
    base = galois_field(p, d)
    q = base.size
    A, M = base.add_table, base.mul_table
    n = q * q
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        a, b = x % q, x // q
        for y in range(n):
            c, e = y % q, y // q
            add[x, y] = A[a, c] + q * A[b, e]
            mul[x, y] = M[a, c] + q * A[M[a, e], M[b, c]]

    def fmt(x):
        a, b = x % q, x // q
        bf = base.format(b)
        if d > 1 and b and "+" in bf:
            bf = f"({bf})"
        eps = "e" if b == 1 else f"{bf}*e"
        if not b:
            return base.format(a)
        if not a:
            return eps
        return f"{base.format(a)}+{eps}"

    def parse(text):
        t = text.replace(" ", "")
        if not t:
            raise ParseError("empty element literal")
        a_part, b_part = [], []
        depth, cur, parts = 0, "", []
        for ch in t:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "+" and depth == 0:
                parts.append(cur)
                cur = ""
            else:
                cur += ch
        parts.append(cur)
        for part in parts:
            if part.endswith("e"):
                coef = part[:-1].rstrip("*") or "1"
                b_part.append(coef.strip("()"))
            else:
                a_part.append(part)
        a = 0
        for s in a_part:
            a = base.add(a, base.parse(s))
        b = 0
        for s in b_part:
            b = base.add(b, base.parse(s))
        return a + q * b

    return LocalRing(
        f"dual:{q}",
        add,
        mul,
        1,
        basis=[base.basis[i] for i in range(d)] + [q * base.basis[i] for i in range(d)],
        formatter=fmt,
        parser=parse,
        residue_name=f"gf:{q}",
    )


def from_tables(name: str, add_table, mul_table, one: int) -> LocalRing:
    """A ring given only by its tables; basis and residue data are discovered."""
    return LocalRing(name, add_table, mul_table, one)


_DESCRIPTOR = re.compile(r"^(zmod|gf|dual):(\d+)$")


def make_ring(kind) -> LocalRing:
    """Build a ring from ``'zmod:4'``, ``'gf:4'``, ``'dual:2'`` or a tuple like ``('zmod', 2, 2)``."""
    if isinstance(kind, LocalRing):
        return kind
    if isinstance(kind, tuple):
        fam, *args = kind
        if fam in ("zmod", "zmod_pk"):
            return zmod(*args)
        if fam in ("gf", "galois_field"):
            return galois_field(*args)
        if fam in ("dual", "dual_numbers"):
            return dual_numbers(*args)
        raise ParseError(f"unknown ring kind {fam!r}")
    m = _DESCRIPTOR.match(str(kind).strip())
    if not m:
        raise ParseError(f"bad ring descriptor {kind!r}; expected kind ':' integer")
    fam, n = m.group(1), int(m.group(2))
    p, k = prime_power(n)
    if fam == "zmod":
        return zmod(p, k)
    if fam == "gf":
        return galois_field(p, k)
    return dual_numbers(p, k)


def check_required_units(ring: LocalRing, sys) -> bool:
    """2 must be a unit for doubly laced systems and G2, 3 for G2."""
    fam = sys.family
    if fam in ("B", "C", "F", "G") and not ring.is_integer_unit(2):
        return False
    if fam == "G" and not ring.is_integer_unit(3):
        return False
    return True


def required_unit_message(ring: LocalRing, sys) -> str | None:
    if check_required_units(ring, sys):
        return None
    need = "1/3" if sys.family == "G" and ring.is_integer_unit(2) else "1/2"
    return f"{sys.name} over {ring.name} requires {need}"


def ring_isomorphisms(R1: LocalRing, R2: LocalRing) -> Iterable[np.ndarray]:
    """All ring isomorphisms R1 -> R2 as code maps (brute force over images of R1's basis)."""
    n = R1.size
    if R2.size != n or R2.modulus != R1.modulus:
        return
    for images in itertools.product(range(n), repeat=R1.degree):
        mult = [R2._multiples(b) for b in images]
        perm = np.zeros(n, dtype=np.int64)
        for c in range(n):
            s = 0
            for i, x in enumerate(R1.coords[c]):
                s = R2.add(s, mult[i][int(x)])
            perm[c] = s
        if len(set(perm.tolist())) != n or perm[R1.one] != R2.one:
            continue
        if np.array_equal(perm[R1.mul_table], R2.mul_table[perm][:, perm]):
            yield perm


def ring_automorphisms(ring: LocalRing) -> Iterable[np.ndarray]:
    """All ring automorphisms as code permutations."""
    return ring_isomorphisms(ring, ring)
