"""Small graph families and seeded random graphs."""

from __future__ import annotations

import random
from itertools import combinations

from .graphcore import Graph


def _g(n, edges, directed=False, part1=None) -> Graph:
    return Graph(n, directed, tuple((u, v, None) for u, v in edges), part1)


def path(n: int) -> Graph:
    return _g(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return _g(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return _g(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return _g(a + b, [(i, a + j) for i in range(a) for j in range(b)], part1=range(a))


def star(leaves: int) -> Graph:
    return _g(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return _g(10, outer + spokes + inner)


def directed_path(n: int) -> Graph:
    return _g(n, [(i, i + 1) for i in range(n - 1)], directed=True)


def directed_cycle(n: int) -> Graph:
    return _g(n, [(i, (i + 1) % n) for i in range(n)], directed=True)


def bidirected(G: Graph) -> Graph:
    arcs = {(u, v) for u, v, _ in G.edges} | {(v, u) for u, v, _ in G.edges}
    return _g(G.n, sorted(arcs), directed=True, part1=G.part1)


def random_graph(n: int, prob: float, rng: random.Random) -> Graph:
    return _g(n, [e for e in combinations(range(n), 2) if rng.random() < prob])


def random_connected_graph(n: int, prob: float, rng: random.Random) -> Graph:
    """Random spanning tree (random attachment) plus independent extra edges."""
    edges = {tuple(sorted((v, rng.randrange(v)))) for v in range(1, n)}
    edges |= {e for e in combinations(range(n), 2) if rng.random() < prob}
    return _g(n, sorted(edges))


def random_bipartite(a: int, b: int, prob: float, rng: random.Random) -> Graph:
    """Parts ``0..a-1`` and ``a..a+b-1``; the bipartition is recorded."""
    edges = [(i, a + j) for i in range(a) for j in range(b) if rng.random() < prob]
    return _g(a + b, edges, part1=range(a))


def random_digraph(n: int, prob: float, rng: random.Random) -> Graph:
    return _g(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < prob], directed=True)


def random_bipartite_digraph(a: int, b: int, prob: float, rng: random.Random) -> Graph:
    arcs = []
    for i in range(a):
        for j in range(b):
            if rng.random() < prob:
                arcs.append((i, a + j))
            if rng.random() < prob:
                arcs.append((a + j, i))
    return _g(a + b, arcs, directed=True, part1=range(a))


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    adj = [set() for _ in range(G.n)]
    for u, v, _ in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n


def family_corpus(max_n: int) -> list[Graph]:
    """Paths, cycles, complete graphs, complete bipartite graphs and stars up to ``max_n`` vertices."""
    out = [path(n) for n in range(2, max_n + 1)]
    out += [cycle(n) for n in range(3, max_n + 1)]
    out += [complete(n) for n in range(2, max_n + 1)]
    out += [complete_bipartite(a, b) for a in range(1, max_n) for b in range(a, max_n + 1 - a)]
    out += [star(k) for k in range(2, max_n)]
    return out


def connected_corpus(max_n: int, n_random: int, seed: int = 0, min_n: int = 3) -> list[Graph]:
    """Connected family graphs plus ``n_random`` random connected graphs of varied density."""
    rng = random.Random(seed)
    out = [G for G in family_corpus(max_n) if is_connected(G)]
    for _ in range(n_random):
        n = rng.randint(min_n, max_n)
        out.append(random_connected_graph(n, rng.choice([0.15, 0.3, 0.5, 0.7]), rng))
    return out


def bipartite_corpus(max_n: int, n_random: int, seed: int = 0, balanced: bool = False) -> list[Graph]:
    """Bipartite graphs with a recorded bipartition; ``balanced`` keeps ``|V1| = |V2|``."""
    rng = random.Random(seed)
    out = [complete_bipartite(a, b) for a in range(1, max_n) for b in range(a, max_n + 1 - a)]
    out += [cycle(n).with_bipartition(range(0, n, 2)) for n in range(4, max_n + 1, 2)]
    out += [path(n).with_bipartition(range(0, n, 2)) for n in range(2, max_n + 1)]
    for _ in range(n_random):
        a = rng.randint(1, max_n // 2)
        b = a if balanced else rng.randint(a, max_n - a)
        out.append(random_bipartite(a, b, rng.choice([0.3, 0.5, 0.7, 0.9]), rng))
    if balanced:
        out = [G for G in out if 2 * len(G.part1) == G.n]
    return out


def digraph_corpus(max_n: int, n_random: int, seed: int = 0) -> list[Graph]:
    rng = random.Random(seed)
    out = [directed_path(n) for n in range(2, max_n + 1)]
    out += [directed_cycle(n) for n in range(2, max_n + 1)]
    out += [bidirected(complete(n)) for n in range(2, max_n + 1)]
    for _ in range(n_random):
        out.append(random_digraph(rng.randint(2, max_n), rng.choice([0.2, 0.35, 0.5, 0.7]), rng))
    return out
