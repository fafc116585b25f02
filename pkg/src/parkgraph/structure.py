"""Structural characterizations, tree surgery and extremal shapes.

Reachability: ``i <= j`` (written ``i ⪯ j``) when some iterate of ``f`` sends
``i`` to ``j``. For a tree this is "j is i or an ancestor of i".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .core import (
    ROOT,
    Graph,
    MappingFn,
    RootedTree,
    _check_prefs,
    as_mapping,
    park_mapping,
    park_tree,
)
from .errors import ContractError, DomainError, SizeError, StructureError

SUBTREE_LIMIT = 12
ORDERED_LIMIT = 8


@dataclass(frozen=True)
class Reachability:
    """Bitset transitive closure of a functional digraph.

    ``down[i]`` has bit ``j`` set iff ``i ⪯ j``; ``up[j]`` has bit ``i`` set
    iff ``i ⪯ j``.
    """

    n: int
    down: tuple[int, ...]
    up: tuple[int, ...]

    def precedes(self, i: int, j: int) -> bool:
        return bool(self.down[i] >> j & 1)

    def predecessors(self, j: int) -> list[int]:
        mask = self.up[j]
        return [i for i in range(1, self.n + 1) if mask >> i & 1]


def predecessor_relation(g: Graph) -> Reachability:
    f = as_mapping(g)
    n = f.n
    succ = (0,) + f.succ
    down = [0] * (n + 1)
    for i in range(1, n + 1):
        mask = 0
        v = i
        for _ in range(n):
            bit = 1 << v
            if mask & bit:
                break
            mask |= bit
            v = succ[v]
        down[i] = mask
    up = [0] * (n + 1)
    for i in range(1, n + 1):
        mask = down[i]
        for j in range(1, n + 1):
            if mask >> j & 1:
                up[j] |= 1 << i
    return Reachability(n, tuple(down), tuple(up))


@dataclass(frozen=True)
class PredecessorCounts:
    p: tuple[int, ...]  # p[j-1] = #{i : i ⪯ j}
    q: tuple[int, ...]  # q[j-1] = #{k : s_k ⪯ j}


def predecessor_counts(g: Graph, prefs: Sequence[int] = ()) -> PredecessorCounts:
    reach = predecessor_relation(g)
    prefs = _check_prefs(prefs, reach.n)
    hits = [0] * (reach.n + 1)
    for x in prefs:
        hits[x] += 1
    p, q = [], []
    for j in range(1, reach.n + 1):
        preds = reach.predecessors(j)
        p.append(len(preds))
        q.append(sum(hits[i] for i in preds))
    return PredecessorCounts(tuple(p), tuple(q))


def char_mapping_full(g: Graph, prefs: Sequence[int]) -> bool:
    """Parking test for n drivers on n nodes via predecessor counts."""
    n = g.n
    if len(prefs) != n:
        raise ContractError(f"the count criterion needs m = n drivers, got m={len(prefs)}, n={n}")
    pc = predecessor_counts(g, prefs)
    return all(qj >= pj for pj, qj in zip(pc.p, pc.q))


def root_subtrees(t: RootedTree, limit: int = SUBTREE_LIMIT) -> list[int]:
    """Every subtree containing the root, as a bitmask over labels."""
    if t.n > limit:
        raise SizeError(f"subtree enumeration limited to n <= {limit}, got {t.n}")
    kids = t.children()

    def grow(v):
        # each child is either cut off or kept together with one of its subtrees
        options = [1 << v]
        for c in kids[v]:
            below = grow(c)
            options = [base | extra for base in options for extra in [0] + below]
        return options

    return grow(t.root)


def char_tree_subtree(t: RootedTree, prefs: Sequence[int], limit: int = SUBTREE_LIMIT) -> bool:
    """Parking test for trees: no root-containing subtree is over-subscribed."""
    prefs = _check_prefs(prefs, t.n)
    for mask in root_subtrees(t, limit):
        inside = sum(1 for x in prefs if mask >> x & 1)
        if inside > bin(mask).count("1"):
            return False
    return True


def subtree_nodes(t: RootedTree, v: int) -> set[int]:
    kids = t.children()
    out, stack = set(), [v]
    while stack:
        x = stack.pop()
        out.add(x)
        stack.extend(kids[x])
    return out


def reallocate(t: RootedTree, u_root: int, v: int, w: int) -> RootedTree:
    """Detach the subtree hanging from ``v`` at ``u_root`` and hang it below ``w``."""
    n = t.n
    for x in (u_root, v, w):
        if not 1 <= x <= n:
            raise StructureError(f"node {x} is outside 1..{n}")
    if t.parent[u_root - 1] != v:
        raise StructureError(f"{u_root} is not a child of {v}")
    if w in subtree_nodes(t, u_root):
        raise StructureError(f"target {w} lies inside the moved subtree")
    parent = list(t.parent)
    parent[u_root - 1] = w
    return RootedTree(tuple(parent))


def make_star(n: int) -> RootedTree:
    if n < 1:
        raise DomainError("n must be positive")
    return RootedTree((n,) * (n - 1) + (ROOT,))


def make_chain(n: int) -> RootedTree:
    if n < 1:
        raise DomainError("n must be positive")
    return RootedTree(tuple(range(2, n + 1)) + (ROOT,))


def relabel(f: MappingFn, sigma: Sequence[int]) -> MappingFn:
    """The conjugate sigma ∘ f ∘ sigma⁻¹; ``sigma[i-1]`` is the image of ``i``."""
    n = f.n
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{n}")
    out = [0] * n
    for i in range(1, n + 1):
        out[sigma[i - 1] - 1] = sigma[f.succ[i - 1] - 1]
    return MappingFn(tuple(out))


def star_count(n: int, m: int) -> int:
    """Closed form of S(star_n, m)."""
    from .exactcount import falling_factorial

    if m == 0:
        return 1
    return falling_factorial(n, m) + m * (m - 1) // 2 * falling_factorial(n - 1, m - 1)


def chain_count(n: int, m: int) -> int:
    from .exactcount import classic_P

    return classic_P(n, m)


def count_ordered_tree_pfs(t: RootedTree, limit: int = ORDERED_LIMIT) -> int:
    """Parking sequences of n drivers where each driver parks only after every
    proper descendant of its spot is already taken."""
    n = t.n
    if n > limit:
        raise SizeError(f"ordered count limited to n <= {limit}, got {n}")
    parent = (0,) + t.parent
    kids = t.children()
    occupied = bytearray(n + 1)
    # free_below[v] counts unoccupied proper descendants of v
    size = [0] * (n + 1)
    for v in _postorder(t, kids):
        size[v] = 1 + sum(size[c] for c in kids[v])
    free_below = [size[v] - 1 for v in range(n + 1)]

    def count(depth):
        if depth == n:
            return 1
        total = 0
        for s in range(1, n + 1):
            v = s
            while occupied[v]:
                v = parent[v]
                if v == ROOT:
                    break
            if v == ROOT or free_below[v]:
                continue
            occupied[v] = 1
            a = parent[v]
            while a:
                free_below[a] -= 1
                a = parent[a]
            total += count(depth + 1)
            a = parent[v]
            while a:
                free_below[a] += 1
                a = parent[a]
            occupied[v] = 0
        return total

    return count(0)


def _postorder(t: RootedTree, kids) -> list[int]:
    order, stack = [], [t.root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(kids[v])
    return order[::-1]


def brute_ordered_count(t: RootedTree) -> int:
    """Same count by filtering all of [n]^n; independent check for tiny n."""
    n = t.n
    reach = predecessor_relation(t)
    total = 0
    for s in product(range(1, n + 1), repeat=n):
        out = park_tree(t, s)
        if not out:
            continue
        rank = {v: k for k, v in enumerate(out.pi)}
        if all(rank[v] < rank[w]
               for w in range(1, n + 1) for v in reach.predecessors(w) if v != w):
            total += 1
    return total


def is_parking_by_simulation(g: Graph, prefs) -> bool:
    out = park_tree(g, prefs) if isinstance(g, RootedTree) else park_mapping(g, prefs)
    return out.success
