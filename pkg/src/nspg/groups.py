"""Concrete finite groups as fully validated Cayley tables over 0-based element indices."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field

import numpy as np

DEFAULT_MAX_ORDER = 256
MAX_SYMMETRIC_DEGREE = 5


def euler_phi(n: int) -> int:
    """Euler totient of n >= 1, by trial-division factorization."""
    if n < 1:
        raise ValueError(f"euler_phi requires n >= 1, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


class FiniteGroup:
    """A finite group given by its Cayley table; element 0 is always the identity.

    Instances are immutable after construction and every structural invariant
    (Latin square, identity at index 0, associativity, two-sided inverses) is
    checked exhaustively when the table is validated.
    """

    __slots__ = ("name", "table", "labels", "_inverse")

    def __init__(self, name: str, table: tuple[tuple[int, ...], ...], labels: tuple[str, ...]):
        validate_cayley_table(table)
        if len(labels) != len(table):
            raise ValueError("label count does not match group order")
        if len(set(labels)) != len(labels):
            raise ValueError("element labels must be pairwise distinct")
        self.name = name
        self.table = table
        self.labels = labels
        self._inverse = tuple(row.index(0) for row in table)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def element_power(self, a: int, k: int) -> int:
        """a**k by repeated table lookup; a**0 is the identity."""
        if not 0 <= a < self.order:
            raise ValueError(f"element index {a} out of range for group of order {self.order}")
        if k < 0:
            raise ValueError("exponent must be non-negative")
        k %= self.element_order(a)
        x = 0
        for _ in range(k):
            x = self.table[x][a]
        return x

    def element_order(self, a: int) -> int:
        """Least k >= 1 with a**k equal to the identity."""
        if not 0 <= a < self.order:
            raise ValueError(f"element index {a} out of range for group of order {self.order}")
        x = a
        k = 1
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def cyclic_subgroup(self, a: int) -> frozenset[int]:
        """The subgroup generated by a single element, as an index set."""
        out = {0}
        x = a
        while x != 0:
            out.add(x)
            x = self.table[x][a]
        return frozenset(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def validate_cayley_table(table: tuple[tuple[int, ...], ...]) -> None:
    """Reject anything that is not a group table with the identity at index 0."""
    n = len(table)
    if n == 0:
        raise ValueError("empty Cayley table")
    if any(len(row) != n for row in table):
        raise ValueError("Cayley table must be square")
    arr = np.asarray(table, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError(f"table entries must lie in [0, {n})")
    ident = np.arange(n)
    # Latin square: every row and column is a permutation of 0..n-1.
    if not (np.sort(arr, axis=1) == ident).all():
        bad = int(np.flatnonzero(~(np.sort(arr, axis=1) == ident).all(axis=1))[0])
        raise ValueError(f"row {bad} is not a permutation of 0..{n - 1}")
    if not (np.sort(arr, axis=0) == ident[:, None]).all():
        bad = int(np.flatnonzero(~(np.sort(arr, axis=0) == ident[:, None]).all(axis=0))[0])
        raise ValueError(f"column {bad} is not a permutation of 0..{n - 1}")
    if not (arr[0] == ident).all() or not (arr[:, 0] == ident).all():
        raise ValueError("element 0 is not a two-sided identity")
    # Exhaustive associativity: (a*b)*c == a*(b*c) for all triples.
    if not np.array_equal(arr[arr], arr[:, arr]):
        raise ValueError("multiplication is not associative")
    # Two-sided inverses (implied by the above, asserted independently).
    for a in range(n):
        b = int(np.flatnonzero(arr[a] == 0)[0])
        if arr[b][a] != 0:
            raise ValueError(f"element {a} has no two-sided inverse")


@dataclass(frozen=True)
class GroupSpec:
    """Constructive description of a test group, parseable from a compact string."""

    family: str
    n: int = 0
    p: int = 0
    k: int = 0
    factors: tuple["GroupSpec", ...] = ()

    def spec_string(self) -> str:
        if self.family == "cyclic":
            return f"Z{self.n}"
        if self.family == "dihedral":
            return f"D{self.n}"
        if self.family == "symmetric":
            return f"S{self.n}"
        if self.family == "quaternion8":
            return "Q8"
        if self.family == "elementary_abelian":
            return f"E({self.p},{self.k})"
        if self.family == "direct_product":
            return "x".join(f.spec_string() for f in self.factors)
        raise ValueError(f"unknown family {self.family!r}")

    def group_order(self) -> int:
        if self.family == "cyclic":
            return self.n
        if self.family == "dihedral":
            return 2 * self.n
        if self.family == "symmetric":
            return math.factorial(self.n)
        if self.family == "quaternion8":
            return 8
        if self.family == "elementary_abelian":
            return self.p**self.k
        if self.family == "direct_product":
            return math.prod(f.group_order() for f in self.factors)
        raise ValueError(f"unknown family {self.family!r}")


_ATOM_RE = re.compile(r"^(?:(Z|D|S)([0-9]+)|Q8|E\(([0-9]+),([0-9]+)\))$")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse the compact grammar: Z12, D4, S4, Q8, E(2,3) and x-products like Z2xZ4."""
    parts = text.split("x")
    if len(parts) > 1:
        if any(not p for p in parts):
            raise ValueError(f"malformed group spec {text!r}")
        return GroupSpec("direct_product", factors=tuple(_parse_atom(p) for p in parts))
    return _parse_atom(text)


def _parse_atom(text: str) -> GroupSpec:
    m = _ATOM_RE.match(text)
    if m is None:
        raise ValueError(f"unrecognized group spec {text!r}")
    if m.group(1) is not None:
        family = {"Z": "cyclic", "D": "dihedral", "S": "symmetric"}[m.group(1)]
        return GroupSpec(family, n=int(m.group(2)))
    if m.group(3) is not None:
        return GroupSpec("elementary_abelian", p=int(m.group(3)), k=int(m.group(4)))
    return GroupSpec("quaternion8")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, int(math.isqrt(p)) + 1):
        if p % d == 0:
            return False
    return True


def make_group(spec: GroupSpec, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build the validated group an explicit spec describes; deterministic per spec."""
    _check_spec(spec, max_order)
    table, labels = _build(spec)
    return FiniteGroup(spec.spec_string(), table, labels)


def _check_spec(spec: GroupSpec, max_order: int) -> None:
    if spec.family == "cyclic" and spec.n < 1:
        raise ValueError("cyclic order must be positive")
    if spec.family == "dihedral" and spec.n < 1:
        raise ValueError("dihedral parameter must be positive")
    if spec.family == "symmetric":
        if spec.n < 1:
            raise ValueError("symmetric degree must be positive")
        if spec.n > MAX_SYMMETRIC_DEGREE:
            raise ValueError(f"symmetric degree {spec.n} exceeds budget {MAX_SYMMETRIC_DEGREE}")
    if spec.family == "elementary_abelian":
        if spec.k < 1:
            raise ValueError("elementary abelian rank must be positive")
        if not _is_prime(spec.p):
            raise ValueError(f"elementary abelian base {spec.p} is not prime")
    if spec.family == "direct_product":
        if len(spec.factors) < 2:
            raise ValueError("direct product needs at least two factors")
        for f in spec.factors:
            _check_spec(f, max_order)
    if spec.group_order() > max_order:
        raise ValueError(f"group order {spec.group_order()} exceeds budget {max_order}")


def _build(spec: GroupSpec) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    if spec.family == "cyclic":
        n = spec.n
        table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return table, tuple(str(i) for i in range(n))
    if spec.family == "dihedral":
        return _build_dihedral(spec.n)
    if spec.family == "symmetric":
        return _build_symmetric(spec.n)
    if spec.family == "quaternion8":
        return _build_quaternion()
    if spec.family == "elementary_abelian":
        return _build_elementary_abelian(spec.p, spec.k)
    if spec.family == "direct_product":
        return _build_product([_build(f) for f in spec.factors])
    raise ValueError(f"unknown family {spec.family!r}")


def _build_dihedral(n: int) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    # Index f*n + j encodes s^f r^j; rotations occupy 0..n-1, reflections n..2n-1.
    size = 2 * n

    def mul(a: int, b: int) -> int:
        f1, j1 = divmod(a, n)
        f2, j2 = divmod(b, n)
        j = (j1 * (-1) ** f2 + j2) % n
        return ((f1 + f2) % 2) * n + j

    table = tuple(tuple(mul(a, b) for b in range(size)) for a in range(size))
    labels = tuple(f"r{j}" for j in range(n)) + tuple(f"s{j}" for j in range(n))
    return table, labels


def _build_symmetric(n: int) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    perms = list(itertools.permutations(range(n)))  # lexicographic, identity first
    index = {p: i for i, p in enumerate(perms)}

    def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(p[q[i]] for i in range(n))

    table = tuple(tuple(index[compose(p, q)] for q in perms) for p in perms)
    labels = tuple("".join(str(v) for v in p) for p in perms)
    return table, labels


def _build_quaternion() -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    # Units ordered 1, i, j, k; index = 2*unit + (0 for +, 1 for -).
    unit_mul = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }

    def mul(a: int, b: int) -> int:
        ua, sa = divmod(a, 2)
        ub, sb = divmod(b, 2)
        u, s = unit_mul[(ua, ub)]
        sign = (-1) ** (sa + sb) * s
        return 2 * u + (0 if sign == 1 else 1)

    table = tuple(tuple(mul(a, b) for b in range(8)) for a in range(8))
    labels = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    return table, labels


def _build_elementary_abelian(p: int, k: int) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    size = p**k

    def digits(x: int) -> tuple[int, ...]:
        out = []
        for _ in range(k):
            x, r = divmod(x, p)
            out.append(r)
        return tuple(reversed(out))

    def undigits(d: tuple[int, ...]) -> int:
        x = 0
        for v in d:
            x = x * p + v
        return x

    def mul(a: int, b: int) -> int:
        return undigits(tuple((u + v) % p for u, v in zip(digits(a), digits(b))))

    table = tuple(tuple(mul(a, b) for b in range(size)) for a in range(size))
    labels = tuple("".join(str(v) for v in digits(x)) for x in range(size))
    return table, labels


def _build_product(
    children: list[tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]],
) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    sizes = [len(t) for t, _ in children]
    total = math.prod(sizes)

    def decode(x: int) -> tuple[int, ...]:
        out = []
        for s in reversed(sizes):
            x, r = divmod(x, s)
            out.append(r)
        return tuple(reversed(out))

    def encode(parts: tuple[int, ...]) -> int:
        x = 0
        for s, v in zip(sizes, parts):
            x = x * s + v
        return x

    def mul(a: int, b: int) -> int:
        pa, pb = decode(a), decode(b)
        return encode(tuple(children[i][0][pa[i]][pb[i]] for i in range(len(sizes))))

    table = tuple(tuple(mul(a, b) for b in range(total)) for a in range(total))
    labels = tuple(
        "(" + ",".join(children[i][1][part] for i, part in enumerate(decode(x))) + ")"
        for x in range(total)
    )
    return table, labels


def from_cayley_table(table, name: str = "custom", labels=None) -> FiniteGroup:
    """Validate an arbitrary square index table as a group, renumbering so the identity is 0."""
    rows = tuple(tuple(int(v) for v in row) for row in table)
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("Cayley table must be a non-empty square array")
    if any(not 0 <= v < n for r in rows for v in r):
        raise ValueError(f"table entries must lie in [0, {n})")
    ident = None
    for e in range(n):
        if all(rows[e][b] == b for b in range(n)) and all(rows[a][e] == a for a in range(n)):
            ident = e
            break
    if ident is None:
        raise ValueError("table has no two-sided identity")
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(labels)
    if ident != 0:
        # Renumber so the identity lands at index 0; other elements keep relative order.
        old_order = [ident] + [x for x in range(n) if x != ident]
        new_of_old = {old: new for new, old in enumerate(old_order)}
        rows = tuple(
            tuple(new_of_old[rows[a][b]] for b in old_order) for a in old_order
        )
        labels = tuple(labels[old] for old in old_order)
    return FiniteGroup(name, rows, labels)
