import random
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from semirings.errors import UsageError
from semirings.groups import (
    PermGroup,
    aut_star_group,
    automorphism_group,
    double_coset,
    double_coset_reps,
    group_closure,
)
from semirings.perms import Permutation, all_perms, compose, inverse
from semirings.tables import OpTable, apply_perm, is_associative

SWAP01 = Permutation.from_cycles(3, (0, 1))
CYCLE = Permutation.from_cycles(3, (0, 1, 2))


def test_compose_convention():
    p = Permutation([2, 0, 1])
    assert compose(p, Permutation.identity(3)) == p
    assert compose(p, inverse(p)).is_identity()
    # (0 1) then (1 2): 0 -> 1 -> 2, 1 -> 0, 2 -> 2 -> 1
    assert compose(SWAP01, Permutation.from_cycles(3, (1, 2))) == Permutation([2, 0, 1])
    with pytest.raises(UsageError):
        compose(p, Permutation.identity(2))


def test_all_perms():
    assert all_perms(1) == (Permutation([0]),)
    assert len(all_perms(3)) == 6
    assert len(all_perms(5)) == 120 and all_perms(5)[0].is_identity()
    assert list(all_perms(4)) == sorted(all_perms(4))
    with pytest.raises(UsageError):
        all_perms(9)
    with pytest.raises(UsageError):
        all_perms(0)


def test_permutation_rejects_non_bijection():
    with pytest.raises(UsageError):
        Permutation([0, 0, 1])


def test_permgroup_validation():
    with pytest.raises(UsageError):
        PermGroup(3, [SWAP01])  # no identity
    with pytest.raises(UsageError):
        PermGroup(3, [Permutation.identity(3), CYCLE])  # not closed


def test_automorphism_group_examples():
    left_zero3 = OpTable.from_function(3, lambda x, y: x)
    assert automorphism_group(left_zero3).order() == 6
    chain = OpTable.from_function(3, max)
    assert automorphism_group(chain).order() == 1
    assert automorphism_group(OpTable(1, (0,))).order() == 1


def test_aut_star_examples():
    chain = OpTable.from_function(3, max)
    assert aut_star_group(chain) == automorphism_group(chain)
    left_zero2 = OpTable.from_function(2, lambda x, y: x)
    assert aut_star_group(left_zero2).order() == 2
    assert aut_star_group(left_zero2) == automorphism_group(left_zero2)


def test_aut_star_index_on_random_semigroups():
    rng = random.Random(7)
    found = 0
    while found < 50:
        n = rng.randint(2, 4)
        t = OpTable(n, tuple(rng.randrange(n) for _ in range(n * n)))
        if not is_associative(t):
            continue
        found += 1
        aut, star = automorphism_group(t), aut_star_group(t)
        assert set(aut) <= set(star)
        assert len(star) // len(aut) in (1, 2) and len(star) % len(aut) == 0


def test_group_closure_examples():
    assert group_closure([], n=3).order() == 1
    assert group_closure([SWAP01, CYCLE]).order() == 6
    assert group_closure([CYCLE]).order() == 3


def test_double_coset_examples():
    sym3 = PermGroup.symmetric(3)
    triv3 = PermGroup.trivial(3)
    assert double_coset_reps(sym3, sym3) == [Permutation.identity(3)]
    assert double_coset_reps(triv3, triv3) == list(all_perms(3))
    h = group_closure([SWAP01])
    reps = double_coset_reps(h, h)
    assert len(reps) == 2
    assert sorted(len(double_coset(h, g, h)) for g in reps) == [2, 4]
    with pytest.raises(UsageError):
        double_coset_reps(sym3, PermGroup.trivial(2))


def _subgroups(n):
    perms = all_perms(n)
    return st.lists(st.sampled_from(perms), max_size=2).map(lambda g: group_closure(g, n=n))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(_subgroups(n), _subgroups(n))))
def test_double_cosets_partition_sym(groups):
    H, K = groups
    n = H.n
    reps = double_coset_reps(H, K)
    seen = set()
    for g in reps:
        coset = double_coset(H, g, K)
        assert min(coset) == g
        assert not (coset & seen)
        seen |= coset
        # |HgK| = |H||K| / |H ∩ g K g^-1|
        conj = {compose(compose(g, k), inverse(g)) for k in K}
        assert len(coset) == len(H) * len(K) // len(set(H) & conj)
    assert len(seen) == factorial(n)
    assert reps == sorted(reps)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n).map(lambda e: OpTable(n, tuple(e))),
    st.permutations(range(n)).map(Permutation))))
def test_stabiliser_conjugation(args):
    t, s = args
    aut = automorphism_group(t)
    moved = automorphism_group(apply_perm(t, s))
    expected = {compose(compose(inverse(s), a), s) for a in aut}
    assert set(moved) == expected
    assert Permutation.identity(t.n) in aut
