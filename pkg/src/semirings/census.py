"""Semiring census by double cosets.

For every additive class A (a commutative semigroup) and multiplicative
class M, the semirings with additive reduct A and multiplicative reduct
isomorphic to M are the tables M^s for s in Sym(n) that distribute over A.
Two of them, M^s and M^r, are isomorphic exactly when s and r lie in the
same double coset Aut(M) \\ Sym(n) / Aut(A), so one representative per
double coset is tested.  Replacing Aut(M) with the group of automorphisms
and anti-automorphisms (and M with one class per iso-or-anti class) counts
up to isomorphism or anti-isomorphism instead.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import CapabilityError, UsageError
from .groups import double_coset_rep_indices
from .perms import all_perms, check_order, compose
from .semigroups import SemigroupConstraint, semigroup_classes
from .tables import (
    LEFT,
    RIGHT,
    Mode,
    OpTable,
    SemiringPair,
    apply_perm,
    associativity_witness,
    commutativity_witness,
    distributes,
    identity_element,
    is_commutative,
    is_idempotent,
    left_distributivity_witness,
    right_distributivity_witness,
    zero_element,
)

log = logging.getLogger(__name__)

# Orders from which a census only runs with long_run=True.
LONG_RUN_ORDER = 6
CHUNK = 20000


@dataclass(frozen=True)
class Filter:
    with_zero: bool = False
    with_one: bool = False
    ai: bool = False
    commutative_mul: bool = False

    def label(self):
        names = [k for k in ("ai", "commutative_mul", "with_zero", "with_one") if getattr(self, k)]
        return "+".join(names) or "none"


@dataclass(frozen=True)
class CensusQuery:
    n: int
    equiv: Mode = Mode.ISO
    filter: Filter = Filter()

    def __post_init__(self):
        object.__setattr__(self, "equiv", Mode.parse(self.equiv))
        if not isinstance(self.n, int) or self.n < 1:
            raise UsageError(f"order must be a positive integer, got {self.n!r}")

    def additive_constraint(self):
        f = self.filter
        return SemigroupConstraint(
            commutative=True,
            idempotent=True if f.ai else None,
            with_identity=True if f.with_zero else None,
        )

    def multiplicative_constraint(self):
        f = self.filter
        return SemigroupConstraint(
            commutative=True if f.commutative_mul else None,
            with_identity=True if f.with_one else None,
        )


@dataclass
class Provenance:
    additive_classes: int = 0
    multiplicative_classes: int = 0
    double_cosets: int = 0
    distributive_hits: int = 0

    def add(self, other):
        self.additive_classes += other.additive_classes
        self.multiplicative_classes += other.multiplicative_classes
        self.double_cosets += other.double_cosets
        self.distributive_hits += other.distributive_hits


@dataclass
class CensusResult:
    query: CensusQuery
    count: int = 0
    pairs: list = None
    provenance: Provenance = field(default_factory=Provenance)


def filter_predicates(add, mul, f):
    if f.ai and not is_idempotent(add):
        return False
    if f.commutative_mul and not is_commutative(mul):
        return False
    if f.with_one and identity_element(mul) is None:
        return False
    if f.with_zero and zero_element(add, mul) is None:
        return False
    return True


def check_capability(q, long_run=False):
    """Raise CapabilityError unless ``q`` can be answered exactly."""
    from .semigroups import check_supported

    try:
        check_order(q.n)
        check_supported(q.n, q.additive_constraint())
        check_supported(q.n, q.multiplicative_constraint())
    except UsageError as exc:
        raise CapabilityError(str(exc)) from None
    if q.n >= LONG_RUN_ORDER and not long_run:
        raise CapabilityError(
            f"order {q.n} census ({q.filter.label()}, {q.equiv.value}) "
            "needs the long-run option"
        )


# -- vectorised helpers ------------------------------------------------------

# Full relabelling stacks are precomputed per multiplicative class when they
# fit in this many bytes; otherwise representatives are relabelled per pair.
PRECOMPUTE_BYTES = 256 * 2**20


def _perm_arrays(n):
    perms = np.array([p.images for p in all_perms(n)], dtype=np.uint8)
    inv = np.argsort(perms, axis=1).astype(np.uint8)
    return perms, inv


def relabel_batch(table, idx, perms, inv):
    """Stack of ``table ^ perms[i]`` for i in ``idx``, flattened to (r, n*n)."""
    n = table.shape[0]
    p, q = perms[idx], inv[idx]
    inner = table[q[:, :, None], q[:, None, :]].reshape(len(idx), n * n)
    return np.take_along_axis(p, inner.astype(np.intp), axis=1)


@lru_cache(maxsize=None)
def _law_blocks(n):
    """Index triples (lhs, rhs_a, rhs_b) of both distributive laws, per block.

    Each block covers one law and one fixed outer factor x, i.e. n*n
    equations, so survivors can be filtered between blocks.
    """
    blocks = []
    for x in range(n):
        for law in (LEFT, RIGHT):
            ys, zs = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
            ys, zs = ys.ravel(), zs.ravel()
            if law is LEFT:
                # x*(y+z) == x*y + x*z
                blocks.append((law, x, ys, zs, x * n + ys, x * n + zs))
            else:
                # (y+z)*x == y*x + z*x
                blocks.append((law, x, ys, zs, ys * n + x, zs * n + x))
    return blocks


def distributive_mask(tables, add):
    """Which stacked multiplication tables distribute over ``add``.

    ``tables`` has shape (C, n, n) or (C, n*n); ``add`` is an (n, n) array.
    """
    add = np.asarray(add)
    n = add.shape[0]
    flat = np.asarray(tables).reshape(len(tables), n * n).astype(np.uint8)
    add_flat = add.ravel().astype(np.uint8)
    alive = np.arange(len(flat))
    for law, x, ys, zs, ra, rb in _law_blocks(n):
        if not len(alive):
            break
        s = add[ys, zs]
        lhs_cols = x * n + s if law is LEFT else s * n + x
        sub = flat[alive]
        lhs = sub[:, lhs_cols]
        rhs = add_flat[sub[:, ra] * np.uint8(n) + sub[:, rb]]
        alive = alive[(lhs == rhs).all(axis=1)]
    mask = np.zeros(len(flat), dtype=bool)
    mask[alive] = True
    return mask


def _to_table(row, n):
    return OpTable(n, tuple(int(v) for v in row))


# -- the sweep ---------------------------------------------------------------

def _classes_for(q, cache_dir):
    adds = semigroup_classes(q.n, q.additive_constraint(), Mode.ISO, cache_dir)
    mul_mode = Mode.ISO if q.equiv is Mode.ISO else Mode.ISO_OR_ANTI
    muls = semigroup_classes(q.n, q.multiplicative_constraint(), mul_mode, cache_dir)
    return adds, muls


class _Sweep:
    """Read-only data shared by every additive class of one census."""

    def __init__(self, q, muls):
        n = self.n = q.n
        self.q = q
        self.muls = muls
        self.perms, self.inv = _perm_arrays(n)
        anti = q.equiv is Mode.ISO_OR_ANTI
        self.h_idx = [(m.aut_star if anti else m.aut).indices() for m in muls]
        self.mul_arrays = [np.array(m.table.rows(), dtype=np.uint8) for m in muls]
        size = len(self.perms)
        self.stack = None
        if len(muls) * size * n * n <= PRECOMPUTE_BYTES:
            every = np.arange(size)
            if muls:
                self.stack = np.concatenate(
                    [relabel_batch(t, every, self.perms, self.inv) for t in self.mul_arrays])
            else:
                self.stack = np.zeros((0, n * n), dtype=np.uint8)
        self.size = size

    def candidates(self, k_idx, prov):
        """Relabelled multiplication tables to test against one additive class."""
        n = self.n
        rows, parts = [], []
        for mi, h_idx in enumerate(self.h_idx):
            prov.multiplicative_classes += 1
            reps = double_coset_rep_indices(n, h_idx, k_idx)
            prov.double_cosets += len(reps)
            reps = np.array(reps, dtype=np.intp)
            if self.stack is not None:
                rows.append(reps + mi * self.size)
            else:
                parts.append(relabel_batch(self.mul_arrays[mi], reps, self.perms, self.inv))
        if self.stack is not None:
            if not rows:
                return self.stack[:0]
            return self.stack[np.concatenate(rows)]
        if not parts:
            return np.zeros((0, n * n), dtype=np.uint8)
        return np.concatenate(parts)

    def run(self, add_cls, emit):
        """Count semirings whose additive reduct is ``add_cls``."""
        n, q = self.n, self.q
        prov = Provenance(additive_classes=1)
        add_table = add_cls.table
        add = np.array(add_table.rows(), dtype=np.uint8)
        cands = self.candidates(add_cls.aut.indices(), prov)
        count = 0
        pairs = [] if emit else None
        for start in range(0, len(cands), CHUNK):
            chunk = cands[start:start + CHUNK]
            hits = np.nonzero(distributive_mask(chunk, add))[0]
            prov.distributive_hits += len(hits)
            for h in hits:
                mul_table = _to_table(chunk[h], n)
                if not filter_predicates(add_table, mul_table, q.filter):
                    continue
                count += 1
                if emit:
                    pairs.append(SemiringPair(add_table, mul_table))
        return count, pairs, prov


_worker_state = {}


def _worker_init(q, cache_dir):
    adds, muls = _classes_for(q, cache_dir)
    _worker_state["adds"] = adds
    _worker_state["sweep"] = _Sweep(q, muls)


def _worker_run(args):
    index, emit = args
    return _worker_state["sweep"].run(_worker_state["adds"][index], emit)


def enumerate_semirings(q, emit=False, threads=1, cache_dir=None, long_run=False):
    """Count (and optionally list) semirings answering ``q``.

    Additive classes are swept outermost, multiplicative classes next and
    double-coset representatives innermost; emitted pairs follow that order.
    With ``threads > 1`` additive classes are farmed out to worker processes
    and merged back in order, so results do not depend on ``threads``.
    """
    check_capability(q, long_run)
    result = CensusResult(query=q, pairs=[] if emit else None)
    adds, muls = _classes_for(q, cache_dir)
    if threads > 1 and len(adds) > 1:
        with ProcessPoolExecutor(max_workers=threads, initializer=_worker_init,
                                 initargs=(q, cache_dir)) as pool:
            parts = list(pool.map(_worker_run, [(i, emit) for i in range(len(adds))]))
    else:
        sweep = _Sweep(q, muls)
        parts = (sweep.run(a, emit) for a in adds)
    for count, pairs, prov in parts:
        result.count += count
        result.provenance.add(prov)
        if emit:
            result.pairs.extend(pairs)
    log.info("census n=%d %s %s: %d", q.n, q.equiv.value, q.filter.label(), result.count)
    return result


def count_semirings(n, equiv=Mode.ISO, **flags):
    return enumerate_semirings(CensusQuery(n, Mode.parse(equiv), Filter(**flags))).count


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    ok: bool
    witness: tuple = None


@dataclass(frozen=True)
class SemiringReport:
    checks: tuple

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def as_dict(self):
        return {
            "valid": self.ok,
            "checks": [
                {"axiom": c.axiom, "ok": c.ok, "witness": list(c.witness) if c.witness else None}
                for c in self.checks
            ],
        }


ADD_ASSOC = "+ associativity"
ADD_COMM = "+ commutativity"
MUL_ASSOC = "× associativity"


def verify_semiring(add, mul):
    """Check each semiring axiom separately, with the first witness of failure."""
    if add.n != mul.n:
        raise UsageError(f"order mismatch: {add.n} vs {mul.n}")
    witnesses = [
        (ADD_ASSOC, associativity_witness(add)),
        (ADD_COMM, commutativity_witness(add)),
        (MUL_ASSOC, associativity_witness(mul)),
        (LEFT, left_distributivity_witness(mul, add)),
        (RIGHT, right_distributivity_witness(mul, add)),
    ]
    return SemiringReport(tuple(AxiomCheck(name, w is None, w) for name, w in witnesses))


def coset_invariance_holds(add, mul, sigma, h, k):
    """distributes(mul^(h s k), add) agrees with distributes(mul^s, add)."""
    moved = apply_perm(mul, compose(compose(h, sigma), k))
    return distributes(moved, add) == distributes(apply_perm(mul, sigma), add)


def census_self_check(q, samples=None, seed=0):
    """Spot-check that distributivity is constant on each double coset.

    With ``samples=None`` every (A, M, s, h, k) is tried; otherwise that
    many random tuples drawn with ``seed``.
    """
    if q.n > 4:
        raise CapabilityError("self-check is limited to order 4")
    adds, muls = _classes_for(q, None)
    anti = q.equiv is Mode.ISO_OR_ANTI
    sym = all_perms(q.n)
    if samples is None:
        for a in adds:
            for m in muls:
                group = m.aut_star if anti else m.aut
                for sigma in sym:
                    for h in group:
                        for k in a.aut:
                            if not coset_invariance_holds(a.table, m.table, sigma, h, k):
                                return False
        return True
    rng = random.Random(seed)
    for _ in range(samples):
        a = rng.choice(adds)
        m = rng.choice(muls)
        group = m.aut_star if anti else m.aut
        sigma = rng.choice(sym)
        h = rng.choice(group.elements)
        k = rng.choice(a.aut.elements)
        if not coset_invariance_holds(a.table, m.table, sigma, h, k):
            return False
    return True

