import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parkgraph.core import MappingFn, RootedTree, park
from parkgraph.enumgen import (
    ENV_MAX_BRUTE_N,
    PruferCode,
    all_mappings,
    all_sequences,
    all_trees,
    brute_C_profile,
    brute_F,
    brute_F_profile,
    brute_M,
    brute_M_profile,
    connected,
    count_pf_single,
    pf_profile,
    prufer_decode,
    prufer_encode,
)
from parkgraph.errors import DomainError, SizeError


@pytest.mark.parametrize("n", range(1, 6))
def test_tree_count_and_distinct(n):
    trees = list(all_trees(n))
    assert len(trees) == n ** (n - 1) == len(set(trees))


@pytest.mark.parametrize("n", range(1, 5))
def test_mapping_count(n):
    assert sum(1 for _ in all_mappings(n)) == n ** n


def test_sequences_in_odometer_order():
    assert list(all_sequences(2, 2)) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert list(all_sequences(3, 0)) == [()]


@pytest.mark.parametrize("n", range(1, 6))
def test_prufer_round_trip(n):
    for t in all_trees(n):
        assert prufer_decode(prufer_encode(t)) == t


def test_prufer_code_validation():
    with pytest.raises(DomainError):
        PruferCode(4, (1,), 1)
    with pytest.raises(DomainError):
        PruferCode(3, (4,), 1)


def test_profile_matches_filtering():
    t = RootedTree((3, 3, 0))
    for m in range(4):
        direct = sum(park(t, s).success for s in all_sequences(3, m))
        assert pf_profile(t, m)[m] == direct == count_pf_single(t, m)


def test_small_family_profiles():
    assert brute_F_profile(4) == [64, 256, 960, 3072, 6384]
    assert brute_C_profile(3) == [17, 51, 144, 300]
    assert brute_M(2, 2) == 12 and brute_F(2, 2) == 6


def test_connected_counts():
    # connected mappings on n nodes: 1, 3, 17, 142
    assert [sum(connected(f) for f in all_mappings(n)) for n in range(1, 5)] == [1, 3, 17, 142]


def test_workers_give_same_totals():
    assert brute_M_profile(4, workers=2) == brute_M_profile(4)


def test_cap_and_env_override(monkeypatch):
    monkeypatch.setenv(ENV_MAX_BRUTE_N, "3")
    with pytest.raises(SizeError):
        brute_F_profile(4)
    monkeypatch.setenv(ENV_MAX_BRUTE_N, "nope")
    with pytest.raises(SizeError):
        brute_F_profile(2)
    monkeypatch.delenv(ENV_MAX_BRUTE_N)
    with pytest.raises(SizeError):
        brute_F_profile(6)


def test_sequence_budget():
    with pytest.raises(SizeError):
        count_pf_single(MappingFn(tuple(range(1, 21))), 7)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(1, n), min_size=n, max_size=n)))
def test_profile_is_consistent_with_simulation(succ):
    f = MappingFn(tuple(succ))
    n = f.n
    m = min(n, 3)
    assert pf_profile(f, m)[m] == sum(park(f, s).success for s in all_sequences(n, m))
