"""Exhaustive generators and brute-force parking-function counts.

Rooted labelled trees come from Prüfer codes (one code per unrooted tree)
times a choice of root. Brute-force counting walks the tree of preference
prefixes depth-first with a single occupancy buffer: a failing prefix is
dropped together with all of its extensions, and the number of surviving
prefixes of length ``m`` is exactly ``S(g, m)``. One walk therefore yields
the whole profile ``S(g, 0), ..., S(g, max_m)``.
"""

from __future__ import annotations

import heapq
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .core import ROOT, Graph, MappingFn, RootedTree, components
from .errors import DomainError, SizeError

ENV_MAX_BRUTE_N = "PARKGRAPH_MAX_BRUTE_N"
DEFAULT_MAX_BRUTE_N = 5
MAX_TREES_N = 7
MAX_MAPPINGS_N = 6
SEQUENCE_BUDGET = 50_000_000


def max_brute_n(default: int = DEFAULT_MAX_BRUTE_N) -> int:
    raw = os.environ.get(ENV_MAX_BRUTE_N)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SizeError(f"{ENV_MAX_BRUTE_N}={raw!r} is not an integer") from None


def _cap(name: str, n: int, default: int) -> None:
    if n < 1:
        raise DomainError(f"{name}: n must be positive, got {n}")
    limit = max_brute_n(default) if os.environ.get(ENV_MAX_BRUTE_N) else default
    if n > limit:
        raise SizeError(f"{name}: n={n} exceeds the exhaustive cap {limit} (set {ENV_MAX_BRUTE_N})")


# --- Prüfer codes ----------------------------------------------------------

@dataclass(frozen=True)
class PruferCode:
    n: int
    code: tuple[int, ...]
    root: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be positive")
        if len(self.code) != max(self.n - 2, 0):
            raise DomainError(f"code length must be {max(self.n - 2, 0)}")
        if any(not 1 <= c <= self.n for c in self.code) or not 1 <= self.root <= self.n:
            raise DomainError("labels must lie in 1..n")


def _prufer_edges(n: int, code) -> list[tuple[int, int]]:
    if n == 1:
        return []
    degree = [1] * (n + 1)
    for c in code:
        degree[c] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for c in code:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, c))
        degree[c] -= 1
        if degree[c] == 1:
            heapq.heappush(leaves, c)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def _orient(n: int, adj: list[list[int]], root: int) -> RootedTree:
    parent = [0] * (n + 1)
    seen = bytearray(n + 1)
    seen[root] = 1
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = 1
                parent[w] = v
                stack.append(w)
    return RootedTree(tuple(parent[1:]))


def _adjacency(n: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def prufer_decode(p: PruferCode) -> RootedTree:
    return _orient(p.n, _adjacency(p.n, _prufer_edges(p.n, p.code)), p.root)


def prufer_encode(t: RootedTree) -> PruferCode:
    n = t.n
    degree = [0] * (n + 1)
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    for v, p in enumerate(t.parent, 1):
        if p != ROOT:
            adj[v].add(p)
            adj[p].add(v)
            degree[v] += 1
            degree[p] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        (nb,) = adj[leaf]
        code.append(nb)
        adj[nb].discard(leaf)
        degree[nb] -= 1
        if degree[nb] == 1:
            heapq.heappush(leaves, nb)
    return PruferCode(n, tuple(code), t.root)


# --- generators ------------------------------------------------------------

def all_trees(n: int) -> Iterator[RootedTree]:
    """Every rooted labelled tree on ``1..n`` exactly once (n^(n-1) of them)."""
    _cap("all_trees", n, MAX_TREES_N)
    for code in product(range(1, n + 1), repeat=max(n - 2, 0)):
        adj = _adjacency(n, _prufer_edges(n, code))
        for root in range(1, n + 1):
            yield _orient(n, adj, root)


def all_mappings(n: int) -> Iterator[MappingFn]:
    _cap("all_mappings", n, MAX_MAPPINGS_N)
    for succ in product(range(1, n + 1), repeat=n):
        yield MappingFn(succ)


def all_sequences(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """All of [n]^m in odometer order."""
    return product(range(1, n + 1), repeat=m)


def connected(f: MappingFn) -> bool:
    comp = components(f)
    return all(c == 1 for c in comp[1:])


# --- counting --------------------------------------------------------------

def _next_array(g: Graph) -> tuple[tuple[int, ...], bool]:
    if isinstance(g, RootedTree):
        return (0,) + g.parent, True
    return (0,) + g.succ, False


def pf_profile(g: Graph, max_m: int) -> list[int]:
    """``[S(g, 0), ..., S(g, max_m)]`` by exhaustive prefix search."""
    nxt, is_tree = _next_array(g)
    n = len(nxt) - 1
    if max_m < 0 or max_m > n:
        raise DomainError(f"need 0 <= m <= n, got m={max_m}, n={n}")
    counts = [0] * (max_m + 1)
    occupied = bytearray(n + 1)
    nodes = range(1, n + 1)

    def target(v):
        if is_tree:
            while occupied[v]:
                v = nxt[v]
                if v == ROOT:
                    return 0
            return v
        for _ in range(n):
            if not occupied[v]:
                return v
            v = nxt[v]
        return 0

    def extend(depth):
        counts[depth] += 1
        if depth == max_m:
            return
        if depth + 1 == max_m:
            counts[max_m] += sum(1 for s in nodes if target(s))
            return
        for s in nodes:
            v = target(s)
            if v:
                occupied[v] = 1
                extend(depth + 1)
                occupied[v] = 0

    extend(0)
    return counts


def count_pf_single(g: Graph, m: int) -> int:
    """S(g, m): number of s in [n]^m that park on ``g``."""
    n = g.n
    if n ** m > SEQUENCE_BUDGET:
        raise SizeError(f"n^m = {n}^{m} exceeds the sequence budget {SEQUENCE_BUDGET}")
    return pf_profile(g, m)[m]


def _sum_profiles(graphs, max_m: int) -> list[int]:
    total = [0] * (max_m + 1)
    for g in graphs:
        for i, c in enumerate(pf_profile(g, max_m)):
            total[i] += c
    return total


def _chunk_profile(args) -> list[int]:
    kind, n, max_m, lo, hi = args
    gen = all_trees(n) if kind == "tree" else all_mappings(n)
    picked = []
    for i, g in enumerate(gen):
        if i >= hi:
            break
        if i >= lo and (kind != "connected" or connected(g)):
            picked.append(g)
    return _sum_profiles(picked, max_m)


def _family_profile(kind: str, n: int, max_m: int, workers: int = 1) -> list[int]:
    _cap(f"brute_{kind}", n, DEFAULT_MAX_BRUTE_N)
    if not 0 <= max_m <= n:
        raise DomainError(f"need 0 <= m <= n, got m={max_m}, n={n}")
    if kind == "tree":
        graphs = all_trees(n)
        size = n ** (n - 1)
    else:
        graphs = all_mappings(n)
        size = n ** n
        if kind == "connected":
            graphs = filter(connected, graphs)
    if workers <= 1:
        return _sum_profiles(graphs, max_m)
    # index ranges over the generator; totals do not depend on scheduling
    step = -(-size // (4 * workers))
    jobs = [(kind, n, max_m, lo, min(lo + step, size)) for lo in range(0, size, step)]
    total = [0] * (max_m + 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_chunk_profile, jobs):
            for i, c in enumerate(part):
                total[i] += c
    return total


def brute_F_profile(n: int, max_m: int | None = None, workers: int = 1) -> list[int]:
    return _family_profile("tree", n, n if max_m is None else max_m, workers)


def brute_M_profile(n: int, max_m: int | None = None, workers: int = 1) -> list[int]:
    return _family_profile("mapping", n, n if max_m is None else max_m, workers)


def brute_C_profile(n: int, max_m: int | None = None, workers: int = 1) -> list[int]:
    return _family_profile("connected", n, n if max_m is None else max_m, workers)


def brute_F(n: int, m: int, workers: int = 1) -> int:
    return brute_F_profile(n, m, workers)[m]


def brute_M(n: int, m: int, workers: int = 1) -> int:
    return brute_M_profile(n, m, workers)[m]


def brute_C(n: int, m: int, workers: int = 1) -> int:
    return brute_C_profile(n, m, workers)[m]
