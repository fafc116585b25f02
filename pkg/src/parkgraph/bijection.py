"""Bijection between (tree, parking sequence, marked node) and (mapping,
parking sequence).

The forward map follows the path from the marked node ``w`` up to the root and
cuts it at the right-to-left maxima of the driver ranks; every cut segment is
closed into a cycle. Parking paths are unchanged, so the sequence and the
outcome ``pi`` carry over verbatim. Partial sequences (m < n) are first
completed by sending extra drivers to the free nodes in increasing order.
"""

from __future__ import annotations

from typing import Sequence

from .core import ROOT, MappingFn, RootedTree, components, cyclic_nodes, park_mapping, park_tree
from .errors import ContractError, DomainError


def ranks(pi: Sequence[int], n: int | None = None) -> list[int]:
    """``rank[v]`` is the 1-based index of the driver parked on ``v`` (0 if
    nobody parked there). Index 0 of the result is unused."""
    n = len(pi) if n is None else n
    rank = [0] * (n + 1)
    for k, v in enumerate(pi, 1):
        rank[v] = k
    return rank


def _right_to_left_maxima(values: Sequence[int]) -> list[int]:
    best = 0
    picked = []
    for i in range(len(values) - 1, -1, -1):
        if values[i] > best:
            best = values[i]
            picked.append(i)
    return picked[::-1]


def _check_node(w: int, n: int) -> None:
    if isinstance(w, bool) or not isinstance(w, int) or not 1 <= w <= n:
        raise DomainError(f"marked node {w!r} is outside 1..{n}")


def phi(t: RootedTree, prefs: Sequence[int], w: int) -> MappingFn:
    n = t.n
    _check_node(w, n)
    if len(prefs) != n:
        raise ContractError(f"phi needs n = {n} drivers, got {len(prefs)}; use phi_general")
    out = park_tree(t, prefs)
    if not out:
        raise ContractError(f"sequence is not a parking function for the tree (driver {out.failed_driver} fails)")
    rank = ranks(out.pi, n)
    path = t.path_to_root(w)
    succ = list(t.parent)
    prev = w
    for i in _right_to_left_maxima([rank[v] for v in path]):
        v = path[i]
        succ[v - 1] = prev
        prev = t.parent[v - 1]
    return MappingFn(tuple(succ))


def phi_inverse(f: MappingFn, prefs: Sequence[int]) -> tuple[RootedTree, int]:
    n = f.n
    if len(prefs) != n:
        raise ContractError(f"phi_inverse needs n = {n} drivers, got {len(prefs)}")
    out = park_mapping(f, prefs)
    if not out:
        raise ContractError(f"sequence does not park on the mapping (driver {out.failed_driver} fails)")
    rank = ranks(out.pi, n)
    comp = components(f)
    top: dict[int, int] = {}
    for c in cyclic_nodes(f):
        cid = comp[c]
        if cid not in top or rank[c] > rank[top[cid]]:
            top[cid] = c
    heads = sorted(top.values(), key=lambda c: rank[c], reverse=True)
    parent = list(f.succ)
    for c, nxt in zip(heads, heads[1:]):
        parent[c - 1] = f(nxt)
    parent[heads[-1] - 1] = ROOT
    return RootedTree(tuple(parent)), f(heads[0])


def _extend_with_free(prefs: Sequence[int], pi: Sequence[int], n: int) -> tuple[int, ...]:
    taken = set(pi)
    return tuple(prefs) + tuple(v for v in range(1, n + 1) if v not in taken)


def phi_general(t: RootedTree, prefs: Sequence[int], w: int) -> MappingFn:
    """Forward map for m <= n drivers; the sequence itself is returned unchanged
    by the caller, only the mapping is produced."""
    n = t.n
    if len(prefs) > n:
        raise ContractError(f"more drivers ({len(prefs)}) than nodes ({n})")
    out = park_tree(t, prefs)
    if not out:
        raise ContractError(f"sequence is not a parking function for the tree (driver {out.failed_driver} fails)")
    return phi(t, _extend_with_free(prefs, out.pi, n), w)


def phi_general_inverse(f: MappingFn, prefs: Sequence[int]) -> tuple[RootedTree, int]:
    n = f.n
    if len(prefs) > n:
        raise ContractError(f"more drivers ({len(prefs)}) than nodes ({n})")
    out = park_mapping(f, prefs)
    if not out:
        raise ContractError(f"sequence does not park on the mapping (driver {out.failed_driver} fails)")
    return phi_inverse(f, _extend_with_free(prefs, out.pi, n))
