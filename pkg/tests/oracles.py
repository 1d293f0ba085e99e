"""Brute-force reference computations shared by the tests.

Nothing here imports the package: tables are plain tuples, relabelling is
written out directly, and classes are found by exhaustive minimisation.
"""

from functools import lru_cache
from itertools import permutations, product


def all_tables(n):
    return product(range(n), repeat=n * n)


def assoc(t, n):
    return all(t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]]
               for x in range(n) for y in range(n) for z in range(n))


def comm(t, n):
    return all(t[x * n + y] == t[y * n + x] for x in range(n) for y in range(n))


def idem(t, n):
    return all(t[x * n + x] == x for x in range(n))


def identity(t, n):
    for e in range(n):
        if all(t[e * n + x] == x and t[x * n + e] == x for x in range(n)):
            return e
    return None


def distributive(m, a, n):
    r = range(n)
    return all(
        m[x * n + a[y * n + z]] == a[m[x * n + y] * n + m[x * n + z]]
        and m[a[y * n + z] * n + x] == a[m[y * n + x] * n + m[z * n + x]]
        for x in r for y in r for z in r
    )


def relabel(t, n, p):
    """Table of x.y -> p(t(p^-1 x, p^-1 y)) with p given as image tuple."""
    out = [0] * (n * n)
    for x in range(n):
        for y in range(n):
            out[p[x] * n + p[y]] = p[t[x * n + y]]
    return tuple(out)


def flip(t, n):
    return tuple(t[y * n + x] for x in range(n) for y in range(n))


@lru_cache(maxsize=None)
def semigroups(n):
    return tuple(t for t in all_tables(n) if assoc(t, n))


def semigroup_classes(n, anti=False, keep=lambda t: True):
    """Canonical (least) representative of every class, sorted."""
    classes = set()
    perms = list(permutations(range(n)))
    for t in semigroups(n):
        if not keep(t):
            continue
        images = [relabel(t, n, p) for p in perms]
        if anti:
            images += [relabel(flip(t, n), n, p) for p in perms]
        classes.add(min(images))
    return sorted(classes)


@lru_cache(maxsize=None)
def labelled_semirings(n):
    sg = semigroups(n)
    adds = [t for t in sg if comm(t, n)]
    return tuple((a, m) for a in adds for m in sg if distributive(m, a, n))


def _has_zero(a, m, n):
    z = identity(a, n)
    return z is not None and all(m[x * n + z] == z == m[z * n + x] for x in range(n))


def semiring_flags(a, m, n):
    return {
        "with_zero": _has_zero(a, m, n),
        "with_one": identity(m, n) is not None,
        "ai": idem(a, n),
        "commutative_mul": comm(m, n),
    }


@lru_cache(maxsize=None)
def semiring_classes(n, anti=False):
    """Map canonical pair -> flags, over all labelled semirings of order n."""
    perms = list(permutations(range(n)))
    classes = {}
    for a, m in labelled_semirings(n):
        images = [(relabel(a, n, p), relabel(m, n, p)) for p in perms]
        if anti:
            mt = flip(m, n)
            images += [(relabel(a, n, p), relabel(mt, n, p)) for p in perms]
        key = min(images)
        if key not in classes:
            classes[key] = semiring_flags(a, m, n)
    return classes


def count_semirings(n, anti=False, **flags):
    return sum(all(f[k] for k, v in flags.items() if v)
               for f in semiring_classes(n, anti).values())
