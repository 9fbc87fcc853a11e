"""Maximum matchings, the Gallai-Edmonds decomposition and perfect-matching counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx

from .graphcore import Graph


def _nx_graph(G: Graph, vertices=None) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n) if vertices is None else sorted(vertices))
    keep = None if vertices is None else set(vertices)
    for u, v, _ in G.edges:
        if keep is None or (u in keep and v in keep):
            H.add_edge(u, v)
    return H


def maximum_matching(G: Graph, exclude: int | None = None) -> list[tuple[int, int]]:
    """A maximum-cardinality matching (blossom algorithm), edges as sorted pairs.

    ``exclude`` drops one vertex first.
    """
    verts = [v for v in range(G.n) if v != exclude]
    M = nx.max_weight_matching(_nx_graph(G, verts), maxcardinality=True)
    return sorted(tuple(sorted(e)) for e in M)


def matching_number(G: Graph, exclude: int | None = None) -> int:
    return len(maximum_matching(G, exclude))


def _components(G: Graph, vertices) -> list[list[int]]:
    return [sorted(c) for c in sorted(nx.connected_components(_nx_graph(G, vertices)), key=min)]


@dataclass
class GEDecomposition:
    A: frozenset
    C: frozenset
    D_components: list[list[int]]
    nu: int
    # per D-component: {d: #PM(D_i - d)} and W_i
    near_pm: list[dict[int, int]] = field(default_factory=list)
    W: list[int] = field(default_factory=list)

    @property
    def D(self) -> frozenset:
        return frozenset(v for comp in self.D_components for v in comp)

    def w(self, G: Graph, a: int, i: int) -> int:
        """Ways to close component ``i`` when ``a`` is matched into it."""
        nbrs = G.neighbors(a)
        return sum(c for d, c in self.near_pm[i].items() if d in nbrs)


def gallai_edmonds(G: Graph) -> GEDecomposition:
    """Gallai-Edmonds decomposition via ``nu(G - v) == nu(G)`` tests.

    All structural properties are asserted before returning.
    """
    if G.directed:
        raise ValueError("Gallai-Edmonds needs an undirected graph")
    nu = matching_number(G)
    D = frozenset(v for v in range(G.n) if matching_number(G, v) == nu)
    A = frozenset(u for v in D for u in G.neighbors(v)) - D
    C = frozenset(range(G.n)) - D - A
    comps = _components(G, D)
    ge = GEDecomposition(A, C, comps, nu)
    for comp in comps:
        table, Wi = near_pm_weights(G.induced(comp))
        ge.near_pm.append({comp[j]: c for j, c in table.items()})
        ge.W.append(Wi)
    if C and count_pm_general(G.induced(C)) < 1:
        raise AssertionError("G[C] has no perfect matching")
    k = len(comps)
    if 2 * nu != G.n - k + len(A):
        raise AssertionError("Gallai-Edmonds size identity violated")
    return ge


def near_pm_weights(D: Graph) -> tuple[dict[int, int], int]:
    """Per-vertex deletion counts ``{d: #PM(D - d)}`` and their sum ``W``.

    Raises if ``D`` is not factor-critical.
    """
    if D.n % 2 == 0:
        raise AssertionError(f"component of even order {D.n} is not factor-critical")
    table = {}
    for d in range(D.n):
        c = count_pm_general(D.induced([v for v in range(D.n) if v != d]))
        if c < 1:
            raise AssertionError(f"deleting {D.name(d)} leaves no perfect matching")
        table[d] = c
    return table, sum(table.values())


def count_pm_general(G: Graph) -> int:
    """Number of perfect matchings, branching on the lowest unmatched vertex.

    Subproblems are memoised on the set of remaining vertices.
    """
    if G.n % 2:
        return 0
    if G.n == 0:
        return 1
    adj = [0] * G.n
    for u, v, _ in G.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    @lru_cache(maxsize=None)
    def count(mask: int) -> int:
        if not mask:
            return 1
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        cand = adj[v] & rest
        total = 0
        while cand:
            low = cand & -cand
            total += count(rest & ~low)
            cand ^= low
        return total

    return count((1 << G.n) - 1)
