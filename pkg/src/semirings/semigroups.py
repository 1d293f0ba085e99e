"""Orderly generation of semigroups up to isomorphism (or anti-isomorphism).

Tables are filled cell by cell in row-major order.  Every placement is
checked against associativity for the triples it completes, and against
every relabelling (and, in anti mode, every relabelled transpose) whose
already-determined prefix would be lexicographically smaller.  Completed
tables that survive are exactly the lexicographically least members of
their classes.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapabilityError
from .groups import PermGroup
from .perms import all_perms, check_order
from .tables import Mode, OpTable

UNSET = -1


@dataclass(frozen=True)
class SemigroupConstraint:
    commutative: bool = None
    idempotent: bool = None
    with_identity: bool = None

    def label(self):
        parts = []
        for name in ("commutative", "idempotent", "with_identity"):
            value = getattr(self, name)
            if value is not None:
                parts.append(name if value else f"not_{name}")
        return "+".join(parts) or "all"

    def prunes(self):
        """Whether the constraint shrinks the search enough for order 7."""
        return bool(self.commutative or self.idempotent)


NO_CONSTRAINT = SemigroupConstraint()


@dataclass(frozen=True)
class SemigroupClass:
    table: OpTable
    aut: PermGroup
    aut_star: PermGroup
    commutative: bool
    idempotent: bool
    has_identity: bool


def check_supported(n, c):
    check_order(n)
    if n >= 8 or (n == 7 and not c.prunes()):
        raise CapabilityError(
            f"semigroup census of order {n} with constraint '{c.label()}' is not supported"
        )


def _maps(n, mode):
    """Relabelling maps as (images, source cell for each target cell)."""
    maps = []
    for p in all_perms(n):
        img = p.images
        inv = [0] * n
        for i, x in enumerate(img):
            inv[x] = i
        direct = [inv[x] * n + inv[y] for x in range(n) for y in range(n)]
        if p.is_identity():
            direct = None
        flipped = [inv[y] * n + inv[x] for x in range(n) for y in range(n)]
        if direct is not None:
            maps.append((img, direct))
        if mode is Mode.ISO_OR_ANTI:
            maps.append((img, flipped))
    return maps


def _assoc_ok(t, n, a, b):
    """Check every fully determined triple that uses cell (a, b)."""
    v = t[a * n + b]
    for z in range(n):
        # (a b) z = a (b z)
        left = t[v * n + z]
        if left < 0:
            continue
        bz = t[b * n + z]
        if bz < 0:
            continue
        right = t[a * n + bz]
        if right >= 0 and left != right:
            return False
    for x in range(n):
        # (x a) b = x (a b)
        right = t[x * n + v]
        if right < 0:
            continue
        xa = t[x * n + a]
        if xa < 0:
            continue
        left = t[xa * n + b]
        if left >= 0 and left != right:
            return False
    for x in range(n):
        row = x * n
        for y in range(n):
            if t[row + y] == a:
                # (x y) b with x y = a, against x (y b)
                yb = t[y * n + b]
                if yb >= 0:
                    right = t[row + yb]
                    if right >= 0 and right != v:
                        return False
            if t[row + y] == b:
                # a (x y) with x y = b, against (a x) y
                ax = t[a * n + x]
                if ax >= 0:
                    left = t[ax * n + y]
                    if left >= 0 and left != v:
                        return False
    return True


def _full_assoc_ok(t, n):
    for x in range(n):
        for y in range(n):
            xy = t[x * n + y]
            if xy < 0:
                continue
            for z in range(n):
                left = t[xy * n + z]
                yz = t[y * n + z]
                if left < 0 or yz < 0:
                    continue
                right = t[x * n + yz]
                if right >= 0 and left != right:
                    return False
    return True


def _prefix_minimal(t, maps):
    """False if some map already yields a smaller table on a known prefix."""
    size = len(t)
    for img, src in maps:
        for k in range(size):
            w = t[k]
            s = t[src[k]]
            if w < 0 or s < 0:
                break
            s = img[s]
            if s < w:
                return False
            if s > w:
                break
    return True


def _identity_possible(t, n):
    for e in range(n):
        ok = True
        for x in range(n):
            a = t[e * n + x]
            b = t[x * n + e]
            if (a >= 0 and a != x) or (b >= 0 and b != x):
                ok = False
                break
        if ok:
            return True
    return False


def _leaf(t, n, mode):
    """Canonicity test and stabilisers of a completed associative table."""
    entries = tuple(t)
    flipped = tuple(t[y * n + x] for x in range(n) for y in range(n))
    aut, aut_star = [], []
    for p in all_perms(n):
        img = p.images
        inv = [0] * n
        for i, x in enumerate(img):
            inv[x] = i
        image = tuple(img[entries[inv[x] * n + inv[y]]] for x in range(n) for y in range(n))
        if image < entries:
            return None
        if mode is Mode.ISO_OR_ANTI:
            other = tuple(img[flipped[inv[x] * n + inv[y]]] for x in range(n) for y in range(n))
            if other < entries:
                return None
        if image == entries:
            aut.append(p)
            aut_star.append(p)
        elif image == flipped:
            aut_star.append(p)
    table = OpTable(n, entries)
    return SemigroupClass(
        table=table,
        aut=PermGroup(n, aut),
        aut_star=PermGroup(n, aut_star),
        commutative=entries == flipped,
        idempotent=all(entries[x * n + x] == x for x in range(n)),
        has_identity=_identity_possible(entries, n),
    )


def _accepts(cls, c):
    for flag, value in (("commutative", c.commutative), ("idempotent", c.idempotent),
                        ("has_identity", c.with_identity)):
        if value is not None and getattr(cls, flag) != value:
            return False
    return True


def _generate(n, c, mode):
    maps = _maps(n, mode)
    size = n * n
    t = [UNSET] * size
    if c.idempotent:
        for x in range(n):
            t[x * n + x] = x
    if not _full_assoc_ok(t, n):
        return
    mirror = bool(c.commutative)
    need_identity = bool(c.with_identity)
    free = [k for k in range(size)
            if t[k] == UNSET and not (mirror and k // n > k % n)]

    def place(depth):
        if depth == len(free):
            cls = _leaf(t, n, mode)
            if cls is not None and _accepts(cls, c):
                yield cls
            return
        k = free[depth]
        a, b = divmod(k, n)
        twin = b * n + a if mirror and a != b else None
        for v in range(n):
            t[k] = v
            if twin is not None:
                t[twin] = v
            if (_assoc_ok(t, n, a, b)
                    and (twin is None or _assoc_ok(t, n, b, a))
                    and (not need_identity or _identity_possible(t, n))
                    and _prefix_minimal(t, maps)):
                yield from place(depth + 1)
        t[k] = UNSET
        if twin is not None:
            t[twin] = UNSET

    yield from place(0)


@lru_cache(maxsize=None)
def _classes(n, c, mode):
    return tuple(sorted(_generate(n, c, mode), key=lambda s: s.table.entries))


def semigroup_classes(n, c=NO_CONSTRAINT, mode=Mode.ISO, cache_dir=None):
    """All classes as a tuple, memoised in-process and optionally on disk."""
    mode = Mode.parse(mode)
    check_supported(n, c)
    if cache_dir is not None:
        from .cache import load_or_generate
        return load_or_generate(cache_dir, n, c, mode, lambda: _classes(n, c, mode))
    return _classes(n, c, mode)


def enumerate_semigroups(n, c=NO_CONSTRAINT, mode=Mode.ISO, cache_dir=None):
    """Yield one SemigroupClass per class, ascending by canonical table."""
    yield from semigroup_classes(n, c, mode, cache_dir)


def count_semigroups(n, c=NO_CONSTRAINT, mode=Mode.ISO, cache_dir=None):
    return len(semigroup_classes(n, c, mode, cache_dir))


def semigroup_class(table):
    """Wrap an already canonical associative table with its groups."""
    from .groups import aut_star_group, automorphism_group
    from .tables import identity_element, is_commutative, is_idempotent
    return SemigroupClass(
        table=table,
        aut=automorphism_group(table),
        aut_star=aut_star_group(table),
        commutative=is_commutative(table),
        idempotent=is_idempotent(table),
        has_identity=identity_element(table) is not None,
    )

