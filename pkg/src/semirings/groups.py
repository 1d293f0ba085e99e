"""Explicitly listed permutation groups, table stabilisers and double cosets.

Degrees are at most 8, so every group is kept as a sorted list of its
elements and Sym(n) is simply enumerated.
"""

from collections import deque
from functools import lru_cache
from math import factorial

from .errors import UsageError
from .perms import Permutation, all_perms, compose, inverse, perm_index, sym_tables
from .tables import OpTable, transpose


class PermGroup:
    """A subgroup of Sym(n) given by all of its elements.

    Closure, inverses, the identity and Lagrange's theorem are checked on
    construction.
    """

    __slots__ = ("n", "elements", "_set")

    def __init__(self, n, elements):
        elements = sorted(set(elements))
        for g in elements:
            if len(g) != n:
                raise UsageError(f"element {g!r} does not have degree {n}")
        self.n = n
        self.elements = tuple(elements)
        self._set = frozenset(g.images for g in elements)
        if len(self._set) != len(self.elements):
            raise UsageError("duplicate group elements")
        self._validate()

    def _validate(self):
        n, size = self.n, len(self.elements)
        if tuple(range(n)) not in self._set:
            raise UsageError("group does not contain the identity")
        if factorial(n) % size:
            raise UsageError(f"order {size} does not divide {n}!")
        if size == factorial(n):
            return
        for a in self.elements:
            if inverse(a).images not in self._set:
                raise UsageError(f"{a!r} has no inverse in the group")
            for b in self.elements:
                if tuple(b.images[x] for x in a.images) not in self._set:
                    raise UsageError(f"not closed: {a!r} then {b!r}")

    @classmethod
    def symmetric(cls, n):
        return cls(n, all_perms(n))

    @classmethod
    def trivial(cls, n):
        return cls(n, [Permutation.identity(n)])

    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g.images in self._set

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.n == other.n and self._set == other._set

    def __hash__(self):
        return hash((self.n, self._set))

    def __repr__(self):
        return f"PermGroup(n={self.n}, order={len(self.elements)})"

    def key(self):
        """Hashable identity of the element set."""
        return (self.n, self._set)

    def indices(self):
        """Positions of the elements within ``all_perms(n)``."""
        index = perm_index(self.n)
        return tuple(index[g.images] for g in self.elements)


def _stabiliser(t, targets):
    n, e = t.n, t.entries
    found = []
    for p in all_perms(n):
        img = p.images
        inv = [0] * n
        for i, x in enumerate(img):
            inv[x] = i
        image = tuple(img[e[inv[x] * n + inv[y]]] for x in range(n) for y in range(n))
        if image in targets:
            found.append(p)
    return found


def automorphism_group(t: OpTable) -> PermGroup:
    """Permutations fixing ``t`` under relabelling."""
    return PermGroup(t.n, _stabiliser(t, {t.entries}))


def aut_star_group(t: OpTable) -> PermGroup:
    """Automorphisms together with anti-automorphisms of ``t``."""
    return PermGroup(t.n, _stabiliser(t, {t.entries, transpose(t).entries}))


def group_closure(gens, n=None) -> PermGroup:
    gens = list(gens)
    if n is None:
        if not gens:
            raise UsageError("degree is required when there are no generators")
        n = len(gens[0])
    for g in gens:
        if len(g) != n:
            raise UsageError(f"generator {g!r} does not have degree {n}")
    ident = Permutation.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = compose(a, g)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return PermGroup(n, seen)


@lru_cache(maxsize=65536)
def double_coset_rep_indices(n, h_idx, k_idx):
    """Indices (into ``all_perms(n)``) of the least element of each H g K.

    ``h_idx`` and ``k_idx`` are tuples of indices of the group elements.
    """
    size = factorial(n)
    if len(h_idx) == 1 and len(k_idx) == 1:
        return tuple(range(size))
    if len(h_idx) == size or len(k_idx) == size:
        return (0,)
    if n <= 6:
        mul, _ = sym_tables(n)
    else:
        perms = [p.images for p in all_perms(n)]
        index = perm_index(n)
        mul = None
    marked = bytearray(size)
    reps = []
    for g in range(size):
        if marked[g]:
            continue
        reps.append(g)
        for h in h_idx:
            if mul is not None:
                hg = mul[h][g]
                row = mul[hg]
                for k in k_idx:
                    marked[row[k]] = 1
            else:
                hg = tuple(perms[g][x] for x in perms[h])
                for k in k_idx:
                    marked[index[tuple(perms[k][x] for x in hg)]] = 1
    return tuple(reps)


def double_coset_reps(H: PermGroup, K: PermGroup):
    """Least representative of every double coset H g K in Sym(n), ascending."""
    if H.n != K.n:
        raise UsageError(f"degree mismatch: {H.n} vs {K.n}")
    perms = all_perms(H.n)
    return [perms[i] for i in double_coset_rep_indices(H.n, H.indices(), K.indices())]


def double_coset(H, g, K):
    """The set H g K as a frozenset of permutations."""
    return frozenset(compose(compose(h, g), k) for h in H for k in K)
