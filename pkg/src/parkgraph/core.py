"""Graph types and the parking procedure.

Nodes are labelled ``1..n``. A :class:`RootedTree` stores the parent of each
label (``0`` marks the root); a :class:`MappingFn` stores the successor of
each label. Both keep their arrays as tuples in label order, so
``tree.parent[v - 1]`` is the parent of ``v``.

Drivers arrive one at a time. A driver tries the preferred node, and while
it is occupied moves along the unique out-edge. In a tree a driver standing
on an occupied root gives up; in a mapping a driver gives up after examining
``n`` nodes, since by then every node reachable from the start has been seen.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import DomainError

ROOT = 0


@dataclass(frozen=True)
class RootedTree:
    parent: tuple[int, ...]

    def __post_init__(self):
        parent = tuple(int(p) for p in self.parent)
        object.__setattr__(self, "parent", parent)
        n = len(parent)
        if n == 0:
            raise DomainError("a tree needs at least one node")
        roots = [v for v, p in enumerate(parent, 1) if p == ROOT]
        if len(roots) != 1:
            raise DomainError(f"expected exactly one root entry, found {len(roots)}")
        for v, p in enumerate(parent, 1):
            if p != ROOT and not 1 <= p <= n:
                raise DomainError(f"parent of {v} is {p}, outside 1..{n}")
        # every node must reach the root; 2 = known good, 1 = on current walk
        state = bytearray(n + 1)
        state[roots[0]] = 2
        for v in range(1, n + 1):
            walk = []
            u = v
            while not state[u]:
                state[u] = 1
                walk.append(u)
                u = parent[u - 1]
            if state[u] == 1:
                raise DomainError(f"node {u} lies on a cycle; parent array is not a tree")
            for u in walk:
                state[u] = 2

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def root(self) -> int:
        return self.parent.index(ROOT) + 1

    def children(self) -> list[list[int]]:
        """Children lists indexed by label (index 0 unused)."""
        kids: list[list[int]] = [[] for _ in range(self.n + 1)]
        for v, p in enumerate(self.parent, 1):
            if p != ROOT:
                kids[p].append(v)
        return kids

    def path_to_root(self, v: int) -> list[int]:
        path = [v]
        while self.parent[v - 1] != ROOT:
            v = self.parent[v - 1]
            path.append(v)
        return path


@dataclass(frozen=True)
class MappingFn:
    succ: tuple[int, ...]

    def __post_init__(self):
        succ = tuple(int(x) for x in self.succ)
        object.__setattr__(self, "succ", succ)
        n = len(succ)
        if n == 0:
            raise DomainError("a mapping needs at least one node")
        for v, x in enumerate(succ, 1):
            if not 1 <= x <= n:
                raise DomainError(f"f({v}) = {x} is outside 1..{n}")

    @property
    def n(self) -> int:
        return len(self.succ)

    def __call__(self, v: int) -> int:
        return self.succ[v - 1]


Graph = Union[RootedTree, MappingFn]


@dataclass(frozen=True)
class ParkOutcome:
    """Result of one parking run.

    ``pi[k-1]`` is the node where driver ``k`` parked. On failure ``pi`` is
    ``None`` and ``failed_driver`` is the 1-based index of the first driver
    who could not park.
    """

    pi: tuple[int, ...] | None = None
    failed_driver: int | None = None

    @property
    def success(self) -> bool:
        return self.failed_driver is None

    def __bool__(self) -> bool:
        return self.success


def identity_mapping(n: int) -> MappingFn:
    return MappingFn(tuple(range(1, n + 1)))


def cycle_mapping(n: int) -> MappingFn:
    return MappingFn(tuple(range(2, n + 1)) + (1,))


def tree_as_mapping(t: RootedTree) -> MappingFn:
    """The mapping obtained by adding a loop at the root."""
    return MappingFn(tuple(v if p == ROOT else p for v, p in enumerate(t.parent, 1)))


def _check_prefs(prefs: Sequence[int], n: int) -> tuple[int, ...]:
    prefs = tuple(prefs)
    for k, x in enumerate(prefs, 1):
        if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= n:
            raise DomainError(f"driver {k} prefers {x!r}, outside 1..{n}")
    return prefs


def park_mapping(f: MappingFn, prefs: Sequence[int]) -> ParkOutcome:
    n = f.n
    prefs = _check_prefs(prefs, n)
    succ = (0,) + f.succ
    occupied = bytearray(n + 1)
    pi = []
    for k, v in enumerate(prefs, 1):
        for _ in range(n):
            if not occupied[v]:
                break
            v = succ[v]
        else:
            return ParkOutcome(failed_driver=k)
        occupied[v] = 1
        pi.append(v)
    return ParkOutcome(pi=tuple(pi))


def park_tree(t: RootedTree, prefs: Sequence[int]) -> ParkOutcome:
    n = t.n
    prefs = _check_prefs(prefs, n)
    parent = (0,) + t.parent
    occupied = bytearray(n + 1)
    pi = []
    for k, v in enumerate(prefs, 1):
        while occupied[v]:
            v = parent[v]
            if v == ROOT:
                return ParkOutcome(failed_driver=k)
        occupied[v] = 1
        pi.append(v)
    return ParkOutcome(pi=tuple(pi))


def park(g: Graph, prefs: Sequence[int]) -> ParkOutcome:
    if isinstance(g, RootedTree):
        return park_tree(g, prefs)
    if isinstance(g, MappingFn):
        return park_mapping(g, prefs)
    raise DomainError(f"cannot park on {type(g).__name__}")


def is_parking_function(g: Graph, prefs: Sequence[int]) -> bool:
    return park(g, prefs).success


def as_mapping(g: Graph) -> MappingFn:
    return tree_as_mapping(g) if isinstance(g, RootedTree) else g


def cyclic_nodes(f: MappingFn) -> list[int]:
    """Nodes lying on a cycle of the functional digraph, in label order."""
    n = f.n
    succ = (0,) + f.succ
    state = [0] * (n + 1)  # 0 unseen, 1 on current walk, 2 done
    cyclic = [False] * (n + 1)
    for start in range(1, n + 1):
        if state[start]:
            continue
        walk = []
        v = start
        while not state[v]:
            state[v] = 1
            walk.append(v)
            v = succ[v]
        if state[v] == 1:
            # closed a new cycle at v
            u = v
            while True:
                cyclic[u] = True
                u = succ[u]
                if u == v:
                    break
        for u in walk:
            state[u] = 2
    return [v for v in range(1, n + 1) if cyclic[v]]


def components(f: MappingFn) -> list[int]:
    """Weak-component id per label (index 0 unused); ids are the smallest
    label of each component."""
    n = f.n
    link = list(range(n + 1))

    def find(x):
        while link[x] != x:
            link[x] = link[link[x]]
            x = link[x]
        return x

    for v, w in enumerate(f.succ, 1):
        a, b = find(v), find(w)
        if a != b:
            if a < b:
                link[b] = a
            else:
                link[a] = b
    return [0] + [find(v) for v in range(1, n + 1)]


# --- JSON ------------------------------------------------------------------

def graph_to_dict(g: Graph) -> dict:
    if isinstance(g, RootedTree):
        return {"kind": "tree", "n": g.n, "parent": list(g.parent)}
    return {"kind": "mapping", "n": g.n, "succ": list(g.succ)}


def graph_from_dict(d) -> Graph:
    if not isinstance(d, dict):
        raise DomainError("graph must be a JSON object")
    kind = d.get("kind")
    key = {"tree": "parent", "mapping": "succ"}.get(kind)
    if key is None:
        raise DomainError(f"unknown graph kind {kind!r}")
    arr = d.get(key)
    if not isinstance(arr, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in arr
    ):
        raise DomainError(f"{kind} needs an integer list {key!r}")
    if "n" in d and d["n"] != len(arr):
        raise DomainError(f"n={d['n']} does not match {key} length {len(arr)}")
    return RootedTree(tuple(arr)) if kind == "tree" else MappingFn(tuple(arr))


def prefs_from_dict(d) -> tuple[int, ...]:
    if not isinstance(d, dict) or not isinstance(d.get("prefs"), list):
        raise DomainError('preferences must look like {"prefs": [...]}')
    prefs = d["prefs"]
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in prefs):
        raise DomainError("preferences must be integers")
    return tuple(prefs)


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def load_graph(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON: {exc}") from None
    return graph_from_dict(data)


def iter_prefs(values: Iterable[str]) -> tuple[int, ...]:
    """Parse preferences from strings such as ``"10,5,14"`` or ``"10 5 14"``."""
    out = []
    for chunk in values:
        for tok in chunk.replace(",", " ").split():
            try:
                out.append(int(tok))
            except ValueError:
                raise DomainError(f"bad preference {tok!r}") from None
    return tuple(out)
