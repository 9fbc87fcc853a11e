"""Brute-force reference counts.

Deliberately naive and independent of the sieve: plain enumeration over edge
subsets, paths, permutations and partitions.  Size guards raise instead of
running for hours.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .graphcore import Graph


class OracleSizeError(ValueError):
    pass


def _guard(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise OracleSizeError(f"{what}: n={n} exceeds the brute-force limit {limit}")


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _is_spanning_tree(n: int, pairs) -> bool:
    parent = list(range(n))
    for u, v in pairs:
        ru, rv = _find(parent, u), _find(parent, v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True  # n-1 acyclic edges on n vertices


def enum_spanning_trees(G: Graph) -> int:
    """Spanning trees of the underlying multigraph (parallel edges count separately)."""
    _guard(G.n, 10, "spanning trees")
    if G.n == 0:
        return 0
    pairs = [(u, v) for u, v, _ in G.edges]
    return sum(_is_spanning_tree(G.n, S) for S in combinations(pairs, G.n - 1))


def enum_in_arborescences(G: Graph, r: int) -> int:
    """Spanning arborescences in which every vertex but ``r`` has in-degree one."""
    _guard(G.n, 10, "in-arborescences")
    arcs = [(u, v) for u, v, _ in G.edges]
    total = 0
    for S in combinations(arcs, G.n - 1):
        heads = [v for _, v in S]
        if r in heads or len(set(heads)) != G.n - 1:
            continue
        total += _is_spanning_tree(G.n, S)
    return total


def count_ham_paths_bf(G: Graph, s: int, t: int, directed: bool | None = None) -> int:
    """Backtracking count of ``s``-``t`` paths visiting every vertex once."""
    _guard(G.n, 12, "Hamiltonian paths")
    directed = G.directed if directed is None else directed
    adj = [set() for _ in range(G.n)]
    for u, v, _ in G.edges:
        adj[u].add(v)
        if not directed:
            adj[v].add(u)
    if s == t:
        return 0
    seen = [False] * G.n
    seen[s] = True

    def go(v: int, depth: int) -> int:
        if depth == G.n:
            return int(v == t)
        if v == t:
            return 0
        total = 0
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                total += go(w, depth + 1)
                seen[w] = False
        return total

    return go(s, 1)


def has_ham_path_bf(G: Graph, s: int, t: int) -> bool:
    return count_ham_paths_bf(G, s, t) > 0


def _matchings(G: Graph):
    """Yield every matching (as a tuple of edges) of the simple underlying graph."""
    edges = G.simple_edges()

    def rec(i: int, used: int, chosen: list):
        yield tuple(chosen)
        for j in range(i, len(edges)):
            u, v = edges[j]
            bits = (1 << u) | (1 << v)
            if not used & bits:
                chosen.append(edges[j])
                yield from rec(j + 1, used | bits, chosen)
                chosen.pop()

    yield from rec(0, 0, [])


def count_matchings_bf(G: Graph, k: int | str = "perfect") -> int:
    """Matchings of size ``k``, or ``"perfect"`` / ``"maximum"`` matchings."""
    _guard(G.n, 14, "matchings")
    sizes: dict[int, int] = {}
    for M in _matchings(G):
        sizes[len(M)] = sizes.get(len(M), 0) + 1
    if k == "perfect":
        return sizes.get(G.n // 2, 0) if G.n % 2 == 0 else 0
    if k == "maximum":
        return sizes[max(sizes)]
    return sizes.get(int(k), 0)


def maximum_matching_size_bf(G: Graph) -> int:
    _guard(G.n, 14, "matchings")
    return max(len(M) for M in _matchings(G))


def permanent_ryser(B: Sequence[Sequence[int]]) -> int:
    """Permanent by Ryser's inclusion-exclusion over column subsets."""
    n = len(B)
    if any(len(row) != n for row in B):
        raise ValueError("matrix must be square")
    _guard(n, 20, "permanent")
    if n == 0:
        return 1
    total = 0
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        term = 1
        for row in B:
            term *= sum(row[j] for j in cols)
            if not term:
                break
        total += (-1) ** len(cols) * term
    return (-1) ** n * total


def biadjacency(G: Graph, V1: Sequence[int], V2: Sequence[int]) -> list[list[int]]:
    adj = G.adjacency()
    return [[int(v in adj[u]) for v in V2] for u in V1]


def _star_subgraphs(adj: list[set[int]], block: tuple[int, ...]) -> int:
    """Distinct spanning star subgraphs of the vertex set ``block``."""
    if len(block) == 2:
        u, v = block
        return int(v in adj[u])
    return sum(all(w in adj[c] for w in block if w != c) for c in block)


def count_kstar_covers_bf(G: Graph, k: int) -> int:
    """Perfect covers by ``k``-star subgraphs, by exhaustive set partition.

    Stars need not be induced; a block counts once per distinct star subgraph
    it contains (one per valid centre, except ``k = 2`` where both centres
    give the same edge).
    """
    _guard(G.n, 12, "k-star covers")
    if k < 2 or G.n % k:
        raise ValueError(f"k={k} must be >= 2 and divide n={G.n}")
    adj = [set() for _ in range(G.n)]
    for u, v, _ in G.edges:
        adj[u].add(v)
        adj[v].add(u)

    def rec(remaining: tuple[int, ...]) -> int:
        if not remaining:
            return 1
        first, rest = remaining[0], remaining[1:]
        total = 0
        for others in combinations(rest, k - 1):
            ways = _star_subgraphs(adj, (first, *others))
            if ways:
                left = tuple(v for v in rest if v not in others)
                total += ways * rec(left)
        return total

    return rec(tuple(range(G.n)))
