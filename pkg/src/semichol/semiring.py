"""Commutative semirings as validated Cayley tables, plus the naturals.

A finite semiring stores ``add`` and ``mul`` as ``q x q`` int64 tables over
element indices ``0..q-1``.  The naturals are the single infinite semiring
supported; they answer membership questions (units, negatable elements,
squares) by closed-form oracles and refuse anything that needs enumeration.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import AxiomViolation, InvalidSemiring, MalformedTable, NotEnumerable


class Semiring:
    """Interface shared by :class:`FiniteSemiring` and :class:`Naturals`."""

    zero: int
    one: int
    uri: str
    is_finite: bool

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inverse(self, a):
        """Multiplicative inverse of ``a`` or ``None``."""
        raise NotImplementedError

    def neg(self, a):
        """Additive inverse of ``a`` or ``None``."""
        raise NotImplementedError

    def square_roots(self, a) -> tuple:
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        return self.inverse(a) is not None

    def is_add_invertible(self, a) -> bool:
        return self.neg(a) is not None

    def is_square(self, a) -> bool:
        return bool(self.square_roots(a))

    def preferred_root(self, a):
        """Root used by factorizations: invertible roots first, then lowest index."""
        roots = self.square_roots(a)
        if not roots:
            return None
        units = [r for r in roots if self.is_unit(r)]
        return (units or list(roots))[0]

    def sum(self, items: Iterable):
        acc = self.zero
        for x in items:
            acc = self.add(acc, x)
        return acc

    def name(self, a) -> str:
        raise NotImplementedError

    def parse_element(self, token) -> int:
        raise NotImplementedError

    def check_element(self, a) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class DerivedSets:
    """U(S), V(S) and Q(S) of a finite semiring with their witness maps."""

    inverse: dict[int, int]
    negation: dict[int, int]
    roots: dict[int, tuple[int, ...]]

    @property
    def units(self) -> frozenset[int]:
        return frozenset(self.inverse)

    @property
    def add_invertible(self) -> frozenset[int]:
        return frozenset(self.negation)

    @property
    def squares(self) -> frozenset[int]:
        return frozenset(self.roots)


AXIOMS = (
    "add-associativity",
    "mul-associativity",
    "add-commutativity",
    "mul-commutativity",
    "add-identity",
    "mul-identity",
    "distributivity",
    "annihilation",
)


def find_violations(add, mul, zero: int, one: int) -> list[AxiomViolation]:
    """Every failed axiom instance of the candidate tables, in axiom order.

    Closure is implied by table totality and checked as part of the shape
    validation in :func:`validate_table`.
    """
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    q = add.shape[0]
    idx = np.arange(q)
    a, b, c = np.meshgrid(idx, idx, idx, indexing="ij")
    out: list[AxiomViolation] = []

    def record(name, mask, *coords):
        for w in zip(*(x[mask] for x in coords)):
            out.append(AxiomViolation(name, tuple(int(v) for v in w)))

    record("add-associativity", add[add[a, b], c] != add[a, add[b, c]], a, b, c)
    record("mul-associativity", mul[mul[a, b], c] != mul[a, mul[b, c]], a, b, c)
    a2, b2 = np.meshgrid(idx, idx, indexing="ij")
    record("add-commutativity", (add != add.T) & (a2 < b2), a2, b2)
    record("mul-commutativity", (mul != mul.T) & (a2 < b2), a2, b2)
    record("add-identity", add[zero, idx] != idx, idx)
    record("mul-identity", mul[one, idx] != idx, idx)
    left = (mul[a, add[b, c]] != add[mul[a, b], mul[a, c]])
    right = (mul[add[b, c], a] != add[mul[b, a], mul[c, a]])
    record("distributivity", left | right, a, b, c)
    record("annihilation", (mul[zero, idx] != zero) | (mul[idx, zero] != zero), idx)
    return out


def _check_shape(add, mul, zero, one, names) -> tuple[np.ndarray, np.ndarray]:
    try:
        add_a = np.asarray(add, dtype=np.int64)
        mul_a = np.asarray(mul, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"tables are not rectangular integer arrays: {exc}") from None
    if add_a.ndim != 2 or add_a.shape[0] != add_a.shape[1] or add_a.shape[0] == 0:
        raise MalformedTable(f"add table must be square and nonempty, got shape {add_a.shape}")
    q = add_a.shape[0]
    if mul_a.shape != (q, q):
        raise MalformedTable(f"mul table shape {mul_a.shape} does not match order {q}")
    for label, t in (("add", add_a), ("mul", mul_a)):
        if t.min() < 0 or t.max() >= q:
            raise MalformedTable(f"{label} table has entries outside [0, {q})")
    for label, v in (("zero", zero), ("one", one)):
        if not isinstance(v, (int, np.integer)) or not 0 <= v < q:
            raise MalformedTable(f"{label} must be an element index in [0, {q})")
    if names is not None and (len(names) != q or len(set(names)) != q):
        raise MalformedTable("names must be q distinct strings")
    return add_a, mul_a


class FiniteSemiring(Semiring):
    """A finite commutative semiring given by validated Cayley tables.

    Construct through :func:`validate_table` or the ``make_*`` builders; the
    constructor itself trusts its input.
    """

    is_finite = True

    def __init__(self, add, mul, zero: int, one: int, names: Sequence[str] | None = None, uri: str = "table"):
        self.add_table = np.array(add, dtype=np.int64)
        self.mul_table = np.array(mul, dtype=np.int64)
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)
        self.order = int(self.add_table.shape[0])
        self.zero = int(zero)
        self.one = int(one)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(self.order))
        self._index = {nm: i for i, nm in enumerate(self.names)}
        self.uri = uri
        # per-instance memo for expensive whole-space computations (closures)
        self._memo: dict = {}

    def __repr__(self) -> str:
        return f"FiniteSemiring({self.uri!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def add(self, a, b):
        return int(self.add_table[a, b])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    @cached_property
    def derived(self) -> DerivedSets:
        q = self.order
        inverse = {}
        negation = {}
        roots: dict[int, list[int]] = {}
        for a in range(q):
            inv = np.flatnonzero(self.mul_table[a] == self.one)
            if inv.size:
                inverse[a] = int(inv[0])
            ng = np.flatnonzero(self.add_table[a] == self.zero)
            if ng.size:
                negation[a] = int(ng[0])
        for b in range(q):
            roots.setdefault(int(self.mul_table[b, b]), []).append(b)
        return DerivedSets(inverse, negation, {k: tuple(v) for k, v in sorted(roots.items())})

    def inverse(self, a):
        return self.derived.inverse.get(int(a))

    def neg(self, a):
        return self.derived.negation.get(int(a))

    def square_roots(self, a) -> tuple[int, ...]:
        return self.derived.roots.get(int(a), ())

    @cached_property
    def units(self) -> tuple[int, ...]:
        return tuple(sorted(self.derived.inverse))

    @cached_property
    def add_invertible(self) -> tuple[int, ...]:
        return tuple(sorted(self.derived.negation))

    @cached_property
    def squares(self) -> tuple[int, ...]:
        return tuple(sorted(self.derived.roots))

    @cached_property
    def square_mask(self) -> np.ndarray:
        mask = np.zeros(self.order, dtype=bool)
        mask[list(self.squares)] = True
        return mask

    @property
    def is_ring(self) -> bool:
        return len(self.add_invertible) == self.order

    @property
    def is_antinegative(self) -> bool:
        return self.add_invertible == (self.zero,)

    def name(self, a) -> str:
        return self.names[int(a)]

    def parse_element(self, token) -> int:
        if isinstance(token, bool):
            raise ValueError(f"invalid element {token!r}")
        if isinstance(token, (int, np.integer)):
            return self.check_element(token)
        if isinstance(token, str):
            if token in self._index:
                return self._index[token]
            raise ValueError(f"unknown element name {token!r} for {self.uri}")
        raise ValueError(f"invalid element {token!r}")

    def check_element(self, a) -> int:
        if not 0 <= int(a) < self.order:
            raise ValueError(f"element index {a} outside [0, {self.order})")
        return int(a)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "zero": self.zero,
            "one": self.one,
            "names": list(self.names),
            "add": self.add_table.tolist(),
            "mul": self.mul_table.tolist(),
        }


class Naturals(Semiring):
    """Nonnegative integers with exact arbitrary-precision arithmetic."""

    is_finite = False
    zero = 0
    one = 1
    uri = "nat"

    def __repr__(self) -> str:
        return "Naturals()"

    def __eq__(self, other) -> bool:
        return isinstance(other, Naturals)

    def __hash__(self) -> int:
        return hash("nat")

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def inverse(self, a):
        return 1 if a == 1 else None

    def neg(self, a):
        return 0 if a == 0 else None

    def square_roots(self, a) -> tuple[int, ...]:
        r = math.isqrt(a)
        return (r,) if r * r == a else ()

    @property
    def derived(self):
        raise NotEnumerable("the naturals have no finite carrier")

    def elements(self):
        raise NotEnumerable("the naturals have no finite carrier")

    @property
    def is_antinegative(self) -> bool:
        return True

    @property
    def is_ring(self) -> bool:
        return False

    def name(self, a) -> str:
        return str(a)

    def parse_element(self, token) -> int:
        if isinstance(token, bool):
            raise ValueError(f"invalid element {token!r}")
        if isinstance(token, str):
            if not token.strip().isdigit():
                raise ValueError(f"invalid natural {token!r}")
            token = int(token)
        return self.check_element(token)

    def check_element(self, a) -> int:
        if not isinstance(a, (int, np.integer)) or a < 0:
            raise ValueError(f"{a!r} is not a nonnegative integer")
        return int(a)


def derived_sets(s: Semiring) -> DerivedSets:
    if not s.is_finite:
        raise NotEnumerable("derived sets need a finite carrier; use the per-element oracles")
    return s.derived


def square_roots(s: Semiring, a) -> list:
    return list(s.square_roots(a))


def validate_table(add, mul, zero: int, one: int, names: Sequence[str] | None = None, uri: str = "table") -> FiniteSemiring:
    """Validate candidate Cayley tables and wrap them as a semiring.

    Raises :class:`MalformedTable` on shape problems and
    :class:`InvalidSemiring` listing every failing axiom instance otherwise.
    """
    add_a, mul_a = _check_shape(add, mul, zero, one, names)
    violations = find_violations(add_a, mul_a, int(zero), int(one))
    if violations:
        raise InvalidSemiring(violations)
    return FiniteSemiring(add_a, mul_a, zero, one, names, uri)


# ---------------------------------------------------------------------------
# builders


def make_zn(n: int) -> FiniteSemiring:
    if n < 2:
        raise ValueError("Z_n needs n >= 2")
    i = np.arange(n)
    return validate_table((i[:, None] + i) % n, (i[:, None] * i) % n, 0, 1, uri=f"zn:{n}")


def make_boolean() -> FiniteSemiring:
    return validate_table([[0, 1], [1, 1]], [[0, 0], [0, 1]], 0, 1, uri="bool")


def make_chain_lattice(k: int) -> FiniteSemiring:
    """The chain 0 < 1 < ... < k with max as addition and min as multiplication."""
    if k < 1:
        raise ValueError("chain lattice needs k >= 1")
    i = np.arange(k + 1)
    return validate_table(np.maximum.outer(i, i), np.minimum.outer(i, i), 0, k, uri=f"chain:{k}")


def make_product(s1: FiniteSemiring, s2: FiniteSemiring) -> FiniteSemiring:
    """Direct product with lexicographic pairing: (a, b) has index a*q2 + b."""
    if not (s1.is_finite and s2.is_finite):
        raise ValueError("products are only built from finite semirings")
    q2 = s2.order
    a1 = np.repeat(np.arange(s1.order), q2)
    a2 = np.tile(np.arange(q2), s1.order)
    add = s1.add_table[a1[:, None], a1[None, :]] * q2 + s2.add_table[a2[:, None], a2[None, :]]
    mul = s1.mul_table[a1[:, None], a1[None, :]] * q2 + s2.mul_table[a2[:, None], a2[None, :]]
    names = [f"({s1.names[x]},{s2.names[y]})" for x, y in zip(a1, a2)]
    return validate_table(
        add, mul, s1.zero * q2 + s2.zero, s1.one * q2 + s2.one, names,
        uri=f"product:{_wrap(s1.uri)},{_wrap(s2.uri)}",
    )


def _wrap(uri: str) -> str:
    return f"({uri})" if "," in uri else uri


def _poly_name(bits: int) -> str:
    terms = [t for t, bit in zip(("1", "x", "x^2"), (1, 2, 4)) if bits & bit]
    return "+".join(terms) if terms else "0"


def make_z2x_mod_x3() -> FiniteSemiring:
    """Z_2[x]/(x^3); element a + bx + cx^2 has index a + 2b + 4c."""
    coeffs = [((i >> 0) & 1, (i >> 1) & 1, (i >> 2) & 1) for i in range(8)]

    def product(p, r):
        out = [0, 0, 0]
        for i, pi in enumerate(p):
            for j, rj in enumerate(r):
                if i + j < 3:
                    out[i + j] ^= pi & rj
        return out[0] + 2 * out[1] + 4 * out[2]

    add = [[i ^ j for j in range(8)] for i in range(8)]
    mul = [[product(coeffs[i], coeffs[j]) for j in range(8)] for i in range(8)]
    return validate_table(add, mul, 0, 1, [_poly_name(i) for i in range(8)], uri="z2x3")


def make_naturals() -> Naturals:
    return Naturals()


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _unwrap(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    return text


def from_uri(uri: str) -> Semiring:
    """Build a semiring from ``zn:6``, ``bool``, ``product:zn:2,bool``, ``z2x3``, ``chain:2`` or ``nat``."""
    text = _unwrap(uri)
    head, _, rest = text.partition(":")
    head = head.lower()
    if head == "bool" and not rest:
        return make_boolean()
    if head == "z2x3" and not rest:
        return make_z2x_mod_x3()
    if head == "nat" and not rest:
        return make_naturals()
    if head in ("zn", "chain"):
        try:
            k = int(rest)
        except ValueError:
            raise ValueError(f"bad parameter in semiring uri {uri!r}") from None
        return make_zn(k) if head == "zn" else make_chain_lattice(k)
    if head == "product":
        parts = _split_top(rest)
        if len(parts) != 2:
            raise ValueError(f"product needs exactly two factors: {uri!r}")
        return make_product(from_uri(parts[0]), from_uri(parts[1]))
    raise ValueError(f"unknown semiring uri {uri!r}")


def from_json(data: dict, uri: str = "table") -> FiniteSemiring:
    missing = {"order", "zero", "one", "add", "mul"} - set(data)
    if missing:
        raise MalformedTable(f"semiring file lacks fields {sorted(missing)}")
    s = validate_table(data["add"], data["mul"], data["zero"], data["one"], data.get("names"), uri=uri)
    if s.order != data["order"]:
        raise MalformedTable(f"declared order {data['order']} but tables have order {s.order}")
    return s


def load(ref: str) -> Semiring:
    """Resolve a builder uri or a path to a semiring JSON file."""
    path = Path(ref)
    if path.suffix == ".json" or path.is_file():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise MalformedTable(f"cannot read semiring file {ref}: {exc}") from None
        return from_json(data, uri=str(path))
    return from_uri(ref)


BUILTIN_URIS = ("bool", "zn:2", "zn:3", "zn:4", "zn:6", "product:zn:2,bool", "chain:2", "z2x3")
