"""Graphs, the auxiliary-graph constructions, and the companion matrices.

Vertices are ``0..n-1``.  Undirected edges are stored with ``tail < head``.
Auxiliary graphs built from an input graph use compact indices and keep the
original vertex ids in ``Graph.names``.

Edge labels are tuples: ``("v", w)`` for a vertex ``w`` of the input graph
and ``("q", i)`` for a synthetic parallel-copy index ``i``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Sequence

import numpy as np

Label = tuple  # ("v", vertex) or ("q", index)
Edge = tuple  # (tail, head, label-or-None)

T_PRIME = "t_prime"
APEX = "apex"


class GraphFormatError(ValueError):
    pass


class NotBipartiteError(ValueError):
    pass


def vertex_label(w: int) -> Label:
    return ("v", w)


def slot_label(i: int) -> Label:
    return ("q", i)


def _edge_key(e: Edge):
    return (e[0], e[1], () if e[2] is None else e[2])


@dataclass(frozen=True)
class Graph:
    """A finite (multi)graph.

    ``edges`` are ``(tail, head, label)`` triples kept sorted by that key, which
    fixes matrix column order.  ``part1`` optionally records one side of a
    bipartition.  ``names[i]`` is the id vertex ``i`` had in the graph this one
    was derived from.
    """

    n: int
    directed: bool
    edges: tuple
    part1: frozenset | None = None
    names: tuple | None = None

    def __post_init__(self):
        norm = []
        for e in self.edges:
            if len(e) == 2:
                u, v, lab = e[0], e[1], None
            else:
                u, v, lab = e
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise GraphFormatError(f"self-loop at {u}")
            if not self.directed and u > v:
                u, v = v, u
            norm.append((int(u), int(v), lab))
        norm.sort(key=_edge_key)
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise GraphFormatError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(norm))
        if self.part1 is not None:
            p1 = frozenset(self.part1)
            if not p1 <= set(range(self.n)):
                raise GraphFormatError("bipartition names vertices out of range")
            for u, v, _ in norm:
                if (u in p1) == (v in p1):
                    raise NotBipartiteError(f"edge ({u}, {v}) does not cross the bipartition")
            object.__setattr__(self, "part1", p1)
        if self.names is not None and len(self.names) != self.n:
            raise ValueError("names must have one entry per vertex")

    @property
    def m(self) -> int:
        return len(self.edges)

    def name(self, v: int) -> Hashable:
        return v if self.names is None else self.names[v]

    def index_of(self, name: Hashable) -> int:
        if self.names is None:
            return name
        return self.names.index(name)

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for a, b, _ in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def out_neighbors(self, v: int) -> set[int]:
        if not self.directed:
            return self.neighbors(v)
        return {b for a, b, _ in self.edges if a == v}

    def in_neighbors(self, v: int) -> set[int]:
        if not self.directed:
            return self.neighbors(v)
        return {a for a, b, _ in self.edges if b == v}

    def adjacency(self) -> list[set[int]]:
        """Out-neighbour sets (plain neighbour sets when undirected)."""
        adj = [set() for _ in range(self.n)]
        for a, b, _ in self.edges:
            adj[a].add(b)
            if not self.directed:
                adj[b].add(a)
        return adj

    def simple_edges(self) -> list[tuple[int, int]]:
        """Distinct (tail, head) pairs, labels dropped."""
        return sorted({(a, b) for a, b, _ in self.edges})

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on ``vertices`` with compact indices; names are the old ids."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[a], pos[b], lab) for a, b, lab in self.edges if a in pos and b in pos]
        part1 = None if self.part1 is None else frozenset(pos[v] for v in keep if v in self.part1)
        names = tuple(self.name(v) for v in keep)
        return Graph(len(keep), self.directed, tuple(edges), part1, names)

    def with_bipartition(self, part1: Iterable[int]) -> "Graph":
        return Graph(self.n, self.directed, self.edges, frozenset(part1), self.names)


def path_graph(n: int) -> Graph:
    return Graph(n, False, tuple((i, i + 1, None) for i in range(n - 1)))


# ---------------------------------------------------------------------------
# text format

def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header ``n m U|D``, ``m`` lines ``u v``, optional ``P ...``."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 3 or head[2] not in ("U", "D"):
        raise GraphFormatError(f"bad header line: {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError(f"bad header line: {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative vertex or edge count")
    directed = head[2] == "D"
    edges = []
    part1 = None
    for ln in lines[1:]:
        tok = ln.split()
        if tok[0] == "P":
            if part1 is not None:
                raise GraphFormatError("more than one P line")
            try:
                part1 = frozenset(int(x) for x in tok[1:])
            except ValueError:
                raise GraphFormatError(f"bad P line: {ln!r}") from None
            continue
        if len(tok) != 2:
            raise GraphFormatError(f"bad edge line: {ln!r}")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphFormatError(f"bad edge line: {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range in {ln!r} (n={n})")
        edges.append((u, v, None))
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, directed, tuple(edges), part1)


def format_graph(G: Graph) -> str:
    lines = [f"{G.n} {G.m} {'D' if G.directed else 'U'}"]
    lines += [f"{u} {v}" for u, v in G.simple_edges()]
    if G.part1 is not None:
        lines.append(" ".join(["P", *map(str, sorted(G.part1))]))
    return "\n".join(lines) + "\n"


def bipartition(G: Graph) -> tuple[frozenset, frozenset]:
    """(part1, part2): the recorded bipartition, else a BFS 2-colouring.

    Each component's smallest vertex goes to part 1.
    """
    if G.part1 is not None:
        return G.part1, frozenset(range(G.n)) - G.part1
    und = [set() for _ in range(G.n)]
    for a, b, _ in G.edges:
        und[a].add(b)
        und[b].add(a)
    color = [-1] * G.n
    for root in range(G.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        dq = deque([root])
        while dq:
            u = dq.popleft()
            for v in und[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    dq.append(v)
                elif color[v] == color[u]:
                    raise NotBipartiteError(f"odd cycle through edge ({u}, {v})")
    p1 = frozenset(v for v in range(G.n) if color[v] == 0)
    return p1, frozenset(range(G.n)) - p1


# ---------------------------------------------------------------------------
# companion matrices

class Companion(Enum):
    INCIDENCE_ORIENTED = "incidence"
    IN_INCIDENCE = "in_incidence"
    LABEL_INDICATOR = "label"


@dataclass(frozen=True)
class CompanionSpec:
    variant: Companion
    rows: tuple  # vertex ids (first two variants) or labels


def companion_for_root(H: Graph, r: int, variant: Companion) -> CompanionSpec:
    return CompanionSpec(variant, tuple(v for v in range(H.n) if v != r))


def incidence_pattern(H: Graph, r: int) -> np.ndarray:
    """Unit-weight oriented incidence: +1 at tail, -1 at head, row ``r`` deleted."""
    rows = [v for v in range(H.n) if v != r]
    pos = {v: i for i, v in enumerate(rows)}
    out = np.zeros((len(rows), H.m), dtype=np.int64)
    for j, (a, b, _) in enumerate(H.edges):
        if a in pos:
            out[pos[a], j] = 1
        if b in pos:
            out[pos[b], j] = -1
    return out


def build_A_r(H: Graph, r: int, weights: Sequence[int], q: int | None = None) -> list[list[int]]:
    """Weighted incidence matrix of ``H`` minus row ``r`` (over F_q when ``q`` is given)."""
    if not 0 <= r < H.n:
        raise ValueError(f"root {r} not a vertex")
    if len(weights) != H.m:
        raise ValueError("one weight per edge required")
    pat = incidence_pattern(H, r)
    out = [[int(pat[i, j]) * int(weights[j]) for j in range(H.m)] for i in range(pat.shape[0])]
    if q is not None:
        out = [[x % q for x in row] for row in out]
    return out


def build_C(H: Graph, spec: CompanionSpec) -> np.ndarray:
    """The 0/+-1 companion matrix, rows ordered as ``spec.rows``."""
    pos = {key: i for i, key in enumerate(spec.rows)}
    out = np.zeros((len(spec.rows), H.m), dtype=np.int64)
    for j, (a, b, lab) in enumerate(H.edges):
        if spec.variant is Companion.INCIDENCE_ORIENTED:
            if a in pos:
                out[pos[a], j] = 1
            if b in pos:
                out[pos[b], j] = -1
        elif spec.variant is Companion.IN_INCIDENCE:
            if b in pos:
                out[pos[b], j] = 1
        else:
            if lab is None:
                raise ValueError(f"edge ({a}, {b}) has no label")
            if lab not in pos:
                raise ValueError(f"label {lab} is not a companion row")
            out[pos[lab], j] = 1
    return out


# ---------------------------------------------------------------------------
# auxiliary graphs

def _contract(G: Graph, V0: frozenset, q: int, extra_names: dict | None = None) -> Graph:
    keep = [v for v in range(G.n) if v not in V0]
    pos = {v: i for i, v in enumerate(keep)}
    edges = set()
    adj_in = [set() for _ in range(G.n)]
    adj_out = [set() for _ in range(G.n)]
    for a, b, _ in G.edges:
        adj_out[a].add(b)
        adj_in[b].add(a)
        if not G.directed:
            adj_out[b].add(a)
            adj_in[a].add(b)
    for w in sorted(V0):
        for u in adj_in[w]:
            for v in adj_out[w]:
                if u == v:
                    continue
                a, b = pos[u], pos[v]
                if not G.directed and a > b:
                    a, b = b, a
                edges.add((a, b, vertex_label(w)))
    for a, b, _ in G.edges:
        if a in pos and b in pos:
            for i in range(1, q + 1):
                edges.add((pos[a], pos[b], slot_label(i)))
    names = tuple((extra_names or {}).get(v, v) for v in keep)
    return Graph(len(keep), G.directed, tuple(edges), None, names)


def square_bipartite(G: Graph, s: int, t: int) -> tuple[Graph, int]:
    """Squared graph on ``V1 + {t'}`` with wedge edges labelled by their ``V2`` middle.

    ``t'`` is a new vertex hung off ``t``; it is materialised as id ``G.n`` and
    named ``"t_prime"`` in the result.  Returns ``(H, index of t' in H)``.
    """
    V1, V2 = bipartition(G)
    if len(V1) != len(V2):
        raise NotBipartiteError(f"unbalanced bipartition: {len(V1)} vs {len(V2)}")
    if s not in V1:
        raise NotBipartiteError(f"s={s} must lie in part 1")
    if t not in V2:
        raise NotBipartiteError(f"t={t} must lie in part 2")
    tp = G.n
    G2 = Graph(G.n + 1, G.directed, G.edges + ((t, tp, None),), None)
    H = _contract(G2, V2, 0, {tp: T_PRIME})
    return H, H.index_of(T_PRIME)


def contract_independent(G: Graph, V0: Iterable[int], s: int, t: int) -> tuple[Graph, int]:
    """Contract an independent set into edge labels; returns ``(H, q)``.

    ``H`` lives on ``V - V0``; every wedge ``u-w-v`` with ``w`` in ``V0`` becomes
    an edge labelled ``w`` and every edge inside ``V - V0`` gets ``q`` labelled
    parallel copies, ``q = |V - V0| - |V0| - 1``.
    """
    V0 = frozenset(V0)
    if not V0 <= set(range(G.n)):
        raise ValueError("V0 names vertices out of range")
    if s in V0 or t in V0:
        raise ValueError("s and t must lie outside V0")
    for a, b, _ in G.edges:
        if a in V0 and b in V0:
            raise ValueError(f"V0 is not independent: edge ({a}, {b})")
    q = (G.n - len(V0)) - len(V0) - 1
    if q < 0:
        raise ValueError(f"|V0|={len(V0)} too large for n={G.n}: q={q} < 0")
    return _contract(G, V0, q), q


def attach_apex(G: Graph, S: Iterable[int], cross: Iterable[int] | None = None) -> tuple[Graph, int]:
    """Add an apex joined to every vertex of ``S``; returns ``(H, apex index)``.

    With ``cross`` given, only edges of ``G`` with exactly one endpoint in
    ``cross`` are kept.
    """
    S = sorted(set(S))
    if any(not 0 <= v < G.n for v in S):
        raise ValueError("S names vertices out of range")
    apex = G.n
    edges = list(G.edges)
    if cross is not None:
        cs = set(cross)
        edges = [e for e in edges if (e[0] in cs) != (e[1] in cs)]
    edges += [(v, apex, None) for v in S]
    base = G.names if G.names is not None else tuple(range(G.n))
    return Graph(G.n + 1, G.directed, tuple(edges), None, base + (APEX,)), apex
