import random
from itertools import product

import pytest

from parkgraph.core import MappingFn, RootedTree, identity_mapping, is_parking_function
from parkgraph.enumgen import all_trees, pf_profile
from parkgraph.errors import ContractError, DomainError, SizeError, StructureError
from parkgraph.structure import (
    brute_ordered_count,
    chain_count,
    char_mapping_full,
    char_tree_subtree,
    count_ordered_tree_pfs,
    make_chain,
    make_star,
    predecessor_counts,
    predecessor_relation,
    reallocate,
    relabel,
    root_subtrees,
    star_count,
)


def test_predecessor_counts_examples():
    assert predecessor_counts(identity_mapping(3)).p == (1, 1, 1)
    assert predecessor_counts(MappingFn((2, 3, 3))).p == (1, 2, 3)
    assert predecessor_counts(MappingFn((2, 1))).p == (2, 2)
    pc = predecessor_counts(MappingFn((2, 1)), (1, 1))
    assert pc.q == (2, 2)


def test_reachability_on_tree():
    r = predecessor_relation(make_chain(4))
    assert r.precedes(1, 4) and not r.precedes(4, 1)
    assert r.predecessors(3) == [1, 2, 3]


def test_char_mapping_examples():
    assert char_mapping_full(MappingFn((2, 1)), (1, 1))
    assert not char_mapping_full(identity_mapping(2), (1, 1))
    with pytest.raises(ContractError):
        char_mapping_full(identity_mapping(2), (1,))


def test_char_tree_examples():
    chain = make_chain(3)
    assert not char_tree_subtree(chain, (3, 3))
    assert char_tree_subtree(chain, (1, 2, 3))
    assert not char_tree_subtree(make_star(3), (1, 1, 1))
    with pytest.raises(SizeError):
        char_tree_subtree(make_chain(13), ())


def test_root_subtrees_count():
    # a chain has one root-containing subtree per length; a star has 2^(n-1)
    assert len(root_subtrees(make_chain(5))) == 5
    assert len(root_subtrees(make_star(5))) == 16


def test_characterization_equivalence_n3():
    for t in all_trees(3):
        for m in range(4):
            for s in product(range(1, 4), repeat=m):
                assert char_tree_subtree(t, s) == is_parking_function(t, s)


def test_reallocate_examples():
    assert reallocate(make_chain(3), 1, 2, 3).parent == (3, 3, 0)
    assert reallocate(RootedTree((0, 1, 2)), 3, 2, 1).parent == (0, 1, 1)
    t = make_chain(3)
    assert reallocate(t, 1, 2, 2) == t


def test_reallocate_errors():
    t = make_chain(4)
    with pytest.raises(StructureError):
        reallocate(t, 1, 3, 4)
    with pytest.raises(StructureError):
        reallocate(t, 2, 3, 1)
    with pytest.raises(StructureError):
        reallocate(t, 1, 2, 9)


@pytest.mark.parametrize("n", range(2, 6))
def test_reallocation_towards_leaves_does_not_lose(n):
    # moving a subtree from v down to a descendant w of v never decreases S(T, m)
    checked = 0
    for t in all_trees(n):
        base = pf_profile(t, n)
        kids = t.children()
        r = predecessor_relation(t)
        for v in range(1, n + 1):
            for u in kids[v]:
                for w in r.predecessors(v):
                    if r.precedes(w, u):
                        continue
                    moved = pf_profile(reallocate(t, u, v, w), n)
                    assert all(a >= b for a, b in zip(moved, base))
                    checked += 1
    assert checked > 0


def test_star_and_chain():
    assert make_star(3).parent == (3, 3, 0)
    assert make_chain(3).parent == (2, 3, 0)
    assert make_star(1) == make_chain(1)
    with pytest.raises(DomainError):
        make_star(0)
    for n in range(1, 6):
        for m in range(n + 1):
            assert pf_profile(make_star(n), m)[m] == star_count(n, m)
            assert pf_profile(make_chain(n), m)[m] == chain_count(n, m)


def test_relabel_examples():
    assert relabel(identity_mapping(4), (3, 1, 4, 2)) == identity_mapping(4)
    assert relabel(MappingFn((2, 1)), (2, 1)).succ == (2, 1)
    assert relabel(MappingFn((1, 1)), (2, 1)).succ == (2, 2)
    with pytest.raises(DomainError):
        relabel(identity_mapping(3), (1, 1, 2))


def test_relabel_preserves_counts():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(1, 6)
        f = MappingFn(tuple(rng.randint(1, n) for _ in range(n)))
        sigma = list(range(1, n + 1))
        rng.shuffle(sigma)
        m = min(n, 4)
        assert pf_profile(f, m) == pf_profile(relabel(f, sigma), m)


def test_ordered_examples():
    assert count_ordered_tree_pfs(RootedTree((0,))) == 1
    assert count_ordered_tree_pfs(RootedTree((0, 1))) == 2
    assert count_ordered_tree_pfs(make_chain(3)) == 6
    with pytest.raises(SizeError):
        count_ordered_tree_pfs(make_chain(9))


@pytest.mark.parametrize("n", range(1, 5))
def test_ordered_count_matches_filtering(n):
    for t in all_trees(n):
        assert count_ordered_tree_pfs(t) == brute_ordered_count(t)
