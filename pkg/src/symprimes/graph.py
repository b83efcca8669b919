"""The symmetric-pair graph on primes: components, cliques, m-symmetric counts.

Vertices are the primes up to a limit N (2 included or not per the
convention); edges are symmetric pairs.  Every neighbor of p lies in
(p/2, 2p), so a finite window can only truncate the neighborhoods of
vertices with 2p > N: those are flagged *boundary* and conclusions about
them (isolation, component membership) are suspect because a partner in
(N, 2p) may be missing.  Components can also merge as N grows, so
"outside the component of 3" is always a statement about the window.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import InvalidArgumentError, OutOfRangeError
from .sieve import Tables
from .symmetry import Convention, TABLE_CONVENTION


@dataclass(frozen=True)
class ComponentSummary:
    representative: int  # smallest member
    size: int
    min: int
    max: int
    is_boundary_touching: bool


@dataclass(frozen=True)
class Clique:
    """Pairwise-symmetric primes, ascending; always spans less than a
    factor of two (max < 2 * min), which is why no infinite clique exists."""

    members: tuple[int, ...]


class _UnionFind:
    """Union-find keyed by value; the root is always the smallest member,
    so the final partition is independent of edge insertion order."""

    def __init__(self, items):
        self.parent = {v: v for v in items}

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra


class SymGraph:
    """Adjacency over primes <= limit with symmetric-pair edges."""

    def __init__(self, limit: int, convention: Convention, vertices: list[int],
                 adjacency: dict[int, list[int]]):
        self.limit = limit
        self.convention = convention
        self.vertices = vertices
        self.adjacency = adjacency
        self._components: tuple[list[ComponentSummary], dict[int, int]] | None = None

    def is_vertex(self, p: int) -> bool:
        return p in self.adjacency

    def neighbors(self, p: int) -> list[int]:
        if not self.is_vertex(p):
            raise InvalidArgumentError(f"{p} is not a vertex of the graph to {self.limit}")
        return self.adjacency[p]

    def is_boundary(self, p: int) -> bool:
        """Partners may reach 2p - 1 > limit, so the neighbor list of any
        p > limit/2 may be truncated by the window."""
        return 2 * p > self.limit

    def edge_count(self) -> int:
        return sum(len(v) for v in self.adjacency.values()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each edge once, (p, q) with p < q, ascending."""
        for p in self.vertices:
            for q in self.adjacency[p]:
                if q > p:
                    yield p, q


def build_graph(
    tables: Tables, limit: int, convention: Convention = TABLE_CONVENTION
) -> SymGraph:
    """Enumerate each edge once from its smaller endpoint p via the even
    divisors d of p - 1 with p + d prime and <= limit."""
    if limit < 2:
        raise InvalidArgumentError(f"graph limit must be >= 2, got {limit}")
    if tables.primality.bound < limit:
        raise OutOfRangeError(
            f"graph to {limit} needs primality to {limit}, have {tables.primality.bound}",
            required_bound=limit,
        )
    if tables.factors.bound < max(limit - 1, 2):
        raise OutOfRangeError(
            f"graph to {limit} needs factorizations to {limit - 1}, "
            f"have {tables.factors.bound}",
            required_bound=limit - 1,
        )
    primes = tables.primality.primes_in(2, limit).tolist()
    vertices = [p for p in primes if p != 2 or convention.include_two]
    adjacency: dict[int, list[int]] = {p: [] for p in vertices}
    is_prime = tables.primality.is_prime
    divisors = tables.factors.divisors
    for p in vertices:
        if p == 2:
            if limit >= 3:  # the {2, 3} pair, d = 1
                adjacency[2].append(3)
                adjacency[3].append(2)
            continue
        for d in divisors(p - 1):
            if d & 1:
                continue  # odd d gives an even q; q = 2 is reached from p = 2
            q = p + d
            if q <= limit and is_prime(q):
                adjacency[p].append(q)
                adjacency[q].append(p)
    for lst in adjacency.values():
        lst.sort()
    return SymGraph(limit, convention, vertices, adjacency)


def components(graph: SymGraph) -> tuple[list[ComponentSummary], dict[int, int]]:
    """Union-find partition; isolated vertices are size-1 components.

    Returns the summaries sorted by representative plus a vertex ->
    representative map.
    """
    if graph._components is not None:
        return graph._components
    uf = _UnionFind(graph.vertices)
    for p, q in graph.edges():
        uf.union(p, q)
    members: dict[int, list[int]] = {}
    for v in graph.vertices:
        members.setdefault(uf.find(v), []).append(v)
    summaries = []
    root_map = {}
    for root in sorted(members):
        group = members[root]
        summaries.append(
            ComponentSummary(
                representative=root,
                size=len(group),
                min=group[0],
                max=group[-1],
                is_boundary_touching=any(graph.is_boundary(v) for v in group),
            )
        )
        for v in group:
            root_map[v] = root
    graph._components = (summaries, root_map)
    return graph._components


def component_of(graph: SymGraph, p: int) -> ComponentSummary:
    if not graph.is_vertex(p):
        raise InvalidArgumentError(f"{p} is not a vertex of the graph to {graph.limit}")
    summaries, root_map = components(graph)
    by_root = {s.representative: s for s in summaries}
    return by_root[root_map[p]]


def least_prime_outside_component_of_3(graph: SymGraph) -> Optional[int]:
    """Smallest symmetric prime demonstrably outside 3's component.

    Boundary vertices (2p > limit) are skipped: their neighborhoods may be
    truncated.  A result is a window-relative observation only; components
    can merge as the limit grows.
    """
    if not graph.is_vertex(3):
        return None
    _, root_map = components(graph)
    root3 = root_map[3]
    for p in graph.vertices:
        if (
            root_map[p] != root3
            and graph.adjacency[p]
            and not graph.is_boundary(p)
        ):
            return p
    return None


def _extend_clique(adj_sets, current, candidates, m, out):
    if len(current) == m:
        out.append(Clique(members=tuple(current)))
        return
    need = m - len(current)
    for i, u in enumerate(candidates):
        if len(candidates) - i < need:
            break
        nxt = [w for w in candidates[i + 1 :] if w in adj_sets[u]]
        current.append(u)
        _extend_clique(adj_sets, current, nxt, m, out)
        current.pop()


def find_cliques(graph: SymGraph, m: int, maximal_only: bool = False) -> list[Clique]:
    """All m-cliques (or maximal cliques of size >= m), ascending.

    Each clique is rooted at its smallest member; candidate sets are that
    vertex's upper neighborhood, which the (p, 2p) window keeps tiny, so
    worst-case clique blowup never materializes here.
    """
    if m < 2:
        raise InvalidArgumentError(f"clique size must be >= 2, got {m}")
    adj_sets = {p: set(qs) for p, qs in graph.adjacency.items()}
    out: list[Clique] = []
    if not maximal_only:
        for v in graph.vertices:
            upper = [q for q in graph.adjacency[v] if q > v]
            _extend_clique(adj_sets, [v], upper, m, out)
        out.sort(key=lambda c: c.members)
        return out

    cliques: list[tuple[int, ...]] = []

    def bron_kerbosch(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            if len(r) >= m:
                cliques.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(adj_sets[u] & p))
        for v in sorted(p - adj_sets[pivot]):
            bron_kerbosch(r + [v], p & adj_sets[v], x & adj_sets[v])
            p.remove(v)
            x.add(v)

    bron_kerbosch([], set(graph.vertices), set())
    return [Clique(members=t) for t in sorted(cliques)]


def m_symmetric_count(graph: SymGraph, m: int, x: int) -> int:
    """Primes p <= x belonging to at least one K_m.

    Requires the window to reach 2x so cliques through p <= x cannot be
    truncated (all clique members sit below twice the smallest).
    """
    if m < 2:
        raise InvalidArgumentError(f"clique size must be >= 2, got {m}")
    if graph.limit < 2 * x:
        raise OutOfRangeError(
            f"m-symmetric counting to x={x} needs a graph to 2x = {2 * x}, "
            f"have {graph.limit}",
            required_bound=2 * x,
        )
    if m == 2:
        return sum(1 for p in graph.vertices if p <= x and graph.adjacency[p])
    marked: set[int] = set()
    for clique in find_cliques(graph, m):
        for member in clique.members:
            if member <= x:
                marked.add(member)
    return len(marked)


def adjacency_csv(graph: SymGraph) -> str:
    """Edge list as CSV, one `p,q` line per edge with p < q."""
    lines = ["p,q"]
    lines.extend(f"{p},{q}" for p, q in graph.edges())
    return "\n".join(lines) + "\n"


def components_json(graph: SymGraph) -> str:
    """Component summaries as a JSON document."""
    summaries, _ = components(graph)
    doc = {
        "limit": graph.limit,
        "include_two": graph.convention.include_two,
        "vertex_count": len(graph.vertices),
        "edge_count": graph.edge_count(),
        "components": [
            {
                "representative": s.representative,
                "size": s.size,
                "min": s.min,
                "max": s.max,
                "is_boundary_touching": s.is_boundary_touching,
            }
            for s in summaries
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
