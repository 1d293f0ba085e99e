"""Permutations of {0, ..., n-1}.

Mappings are written on the right and composed left to right, so
``compose(a, b)`` means "apply a, then b".
"""

from functools import lru_cache
from itertools import permutations

from .errors import UsageError

MAX_ORDER = 8


class Permutation:
    """A bijection on ``range(n)`` stored as its tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise UsageError(f"not a permutation: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n, *cycles):
        """Build from disjoint cycles, e.g. ``from_cycles(3, (0, 1, 2))``."""
        images = list(range(n))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @property
    def n(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x]

    def __len__(self):
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return (len(self.images), self.images) < (len(other.images), other.images)

    def __le__(self, other):
        return self == other or self < other

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def inverse(self):
        return inverse(self)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))


def compose(a, b):
    """Apply ``a`` first, then ``b``."""
    if len(a) != len(b):
        raise UsageError(f"degree mismatch: {len(a)} vs {len(b)}")
    bi = b.images
    return Permutation(bi[x] for x in a.images)


def inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(inv)


def check_order(n):
    if not isinstance(n, int) or not 1 <= n <= MAX_ORDER:
        raise UsageError(f"order must be an integer in [1, {MAX_ORDER}], got {n!r}")


@lru_cache(maxsize=None)
def all_perms(n):
    """All n! permutations of degree n in lexicographic order of images."""
    check_order(n)
    return tuple(Permutation(p) for p in permutations(range(n)))


@lru_cache(maxsize=None)
def perm_index(n):
    """Map from image tuple to position in ``all_perms(n)``."""
    return {p.images: i for i, p in enumerate(all_perms(n))}


@lru_cache(maxsize=8)
def sym_tables(n):
    """Index-level multiplication and inverse tables of Sym(n).

    ``mul[i][j]`` is the index of ``compose(perms[i], perms[j])``. Only
    built for n <= 6; Sym(7) would need 25M entries.
    """
    if n > 6:
        raise UsageError("index tables are only built for degree <= 6")
    perms = [p.images for p in all_perms(n)]
    index = perm_index(n)
    mul = [[index[tuple(b[x] for x in a)] for b in perms] for a in perms]
    inv = []
    for a in perms:
        q = [0] * n
        for i, x in enumerate(a):
            q[x] = i
        inv.append(index[tuple(q)])
    return mul, inv
