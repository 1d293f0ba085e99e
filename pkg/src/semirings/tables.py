"""Cayley tables of binary operations on {0, ..., n-1}.

A table is stored flat and row-major: ``entries[x * n + y]`` is ``x . y``.
Permutations act on the right:

    (t ^ s)(x, y) = s(t(s^-1(x), s^-1(y)))

so that ``apply_perm(apply_perm(t, s), r) == apply_perm(t, compose(s, r))``.
"""

from dataclasses import dataclass
from enum import Enum

from .errors import UsageError
from .perms import MAX_ORDER, all_perms


class Mode(str, Enum):
    """Equivalence used when classifying tables."""

    ISO = "iso"
    ISO_OR_ANTI = "iso_or_anti"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"iso": cls.ISO, "anti": cls.ISO_OR_ANTI, "iso_or_anti": cls.ISO_OR_ANTI}
        try:
            return aliases[value]
        except KeyError:
            raise UsageError(f"unknown equivalence mode {value!r}") from None


@dataclass(frozen=True, order=True)
class OpTable:
    n: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_ORDER:
            raise UsageError(f"order must be in [1, {MAX_ORDER}], got {self.n!r}")
        if len(entries) != self.n * self.n:
            raise UsageError(f"expected {self.n * self.n} entries, got {len(entries)}")
        for e in entries:
            if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < self.n:
                raise UsageError(f"entry {e!r} outside [0, {self.n})")

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise UsageError("table must be a non-empty square array")
        return cls(n, tuple(e for r in rows for e in r))

    @classmethod
    def from_function(cls, n, op):
        return cls(n, tuple(op(x, y) for x in range(n) for y in range(n)))

    def __call__(self, x, y):
        return self.entries[x * self.n + y]

    def rows(self):
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __str__(self):
        return ";".join("".join(map(str, r)) for r in self.rows())


def _same_order(a, b):
    if a.n != b.n:
        raise UsageError(f"order mismatch: {a.n} vs {b.n}")


def associativity_witness(t):
    """First triple (x, y, z) with (xy)z != x(yz), or None."""
    n, e = t.n, t.entries
    for x in range(n):
        for y in range(n):
            xy = e[x * n + y]
            for z in range(n):
                if e[xy * n + z] != e[x * n + e[y * n + z]]:
                    return (x, y, z)
    return None


def is_associative(t):
    return associativity_witness(t) is None


def commutativity_witness(t):
    n, e = t.n, t.entries
    for x in range(n):
        for y in range(x + 1, n):
            if e[x * n + y] != e[y * n + x]:
                return (x, y)
    return None


def is_commutative(t):
    return commutativity_witness(t) is None


def is_idempotent(t):
    n = t.n
    return all(t.entries[x * n + x] == x for x in range(n))


LEFT = "left distributivity"
RIGHT = "right distributivity"


def left_distributivity_witness(mul, add):
    """First (x, y, z) with x*(y+z) != x*y + x*z, or None."""
    _same_order(mul, add)
    n, m, a = mul.n, mul.entries, add.entries
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if m[x * n + a[y * n + z]] != a[m[x * n + y] * n + m[x * n + z]]:
                    return (x, y, z)
    return None


def right_distributivity_witness(mul, add):
    """First (x, y, z) with (y+z)*x != y*x + z*x, or None."""
    _same_order(mul, add)
    n, m, a = mul.n, mul.entries, add.entries
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if m[a[y * n + z] * n + x] != a[m[y * n + x] * n + m[z * n + x]]:
                    return (x, y, z)
    return None


def distributes_report(mul, add):
    """The first failing distributive law as ``(law, (x, y, z))``, or None."""
    bad = left_distributivity_witness(mul, add)
    if bad is not None:
        return (LEFT, bad)
    bad = right_distributivity_witness(mul, add)
    if bad is not None:
        return (RIGHT, bad)
    return None


def distributes(mul, add):
    return distributes_report(mul, add) is None


def apply_perm(t, s):
    if len(s) != t.n:
        raise UsageError(f"permutation degree {len(s)} does not match order {t.n}")
    n, e, img = t.n, t.entries, s.images
    inv = [0] * n
    for i, x in enumerate(img):
        inv[x] = i
    return OpTable(n, tuple(img[e[inv[x] * n + inv[y]]] for x in range(n) for y in range(n)))


def transpose(t):
    n, e = t.n, t.entries
    return OpTable(n, tuple(e[y * n + x] for x in range(n) for y in range(n)))


def identity_element(t):
    n, e = t.n, t.entries
    found = [u for u in range(n)
             if all(e[u * n + x] == x and e[x * n + u] == x for x in range(n))]
    assert len(found) <= 1, "two identities in one table"
    return found[0] if found else None


def zero_element(add, mul):
    """Additive identity that also absorbs under multiplication, if any."""
    _same_order(add, mul)
    z = identity_element(add)
    if z is None:
        return None
    n, m = mul.n, mul.entries
    if all(m[x * n + z] == z and m[z * n + x] == z for x in range(n)):
        return z
    return None


def relabelled(entries, n, img, inv):
    """Raw-tuple version of ``apply_perm`` for inner loops."""
    return tuple(img[entries[inv[x] * n + inv[y]]] for x in range(n) for y in range(n))


def canonical_form(t, mode=Mode.ISO):
    """Lexicographically least relabelling of ``t`` and a permutation reaching it.

    In ``iso_or_anti`` mode the relabellings of the transpose compete too;
    when the minimum is only reached through the transpose, the returned
    permutation maps ``transpose(t)`` onto the form.
    """
    mode = Mode.parse(mode)
    n = t.n
    sources = [t.entries]
    if mode is Mode.ISO_OR_ANTI:
        sources.append(transpose(t).entries)
    best = None
    best_perm = None
    for p in all_perms(n):
        img = p.images
        inv = [0] * n
        for i, x in enumerate(img):
            inv[x] = i
        for src in sources:
            cand = relabelled(src, n, img, inv)
            if best is None or cand < best:
                best, best_perm = cand, p
    return OpTable(n, best), best_perm


@dataclass(frozen=True)
class SemiringPair:
    """A validated semiring: (add, mul) satisfying every semiring axiom."""

    add: OpTable
    mul: OpTable

    def __post_init__(self):
        _same_order(self.add, self.mul)
        if not is_associative(self.add) or not is_commutative(self.add):
            raise UsageError("addition is not a commutative semigroup")
        if not is_associative(self.mul):
            raise UsageError("multiplication is not associative")
        bad = distributes_report(self.mul, self.add)
        if bad is not None:
            raise UsageError(f"{bad[0]} fails at {bad[1]}")

    @property
    def n(self):
        return self.add.n

