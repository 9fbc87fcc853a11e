"""Sieve instances for each counting and detection problem.

Every ``*_instance`` builder returns a :class:`SieveInstance`; the matching
entry point runs it and post-processes the result.
"""

from __future__ import annotations

from itertools import combinations
from math import prod

from .graphcore import (
    Companion,
    CompanionSpec,
    Graph,
    NotBipartiteError,
    attach_apex,
    bipartition,
    companion_for_root,
    contract_independent,
    square_bipartite,
    vertex_label,
    slot_label,
)
from .matching import count_pm_general, gallai_edmonds
from .sieve import (
    DEFAULT_TRIALS,
    DetectResult,
    EdgeWeight,
    ElemSym,
    Mode,
    Monomial,
    SieveInstance,
    run_count,
    run_detect,
)


def _check_pair(G: Graph, s: int, t: int) -> None:
    if not (0 <= s < G.n and 0 <= t < G.n):
        raise ValueError(f"s={s}, t={t} out of range for n={G.n}")
    if s == t:
        raise ValueError("s and t must differ")


def _require(G: Graph, directed: bool) -> None:
    if G.directed != directed:
        raise ValueError(f"expected a {'directed' if directed else 'undirected'} graph")


def _ends_weight(u: int, v: int, tail_exp: int, head_exp: int) -> EdgeWeight:
    return EdgeWeight({u: tail_exp, v: head_exp})


# ---------------------------------------------------------------------------
# Hamiltonian path counting

def ham_count_instance(G: Graph, s: int, t: int) -> SieveInstance:
    """Edge weight ``x_u x_v``, premultiplier ``x_s x_t``, signs +-1, root ``s``."""
    _check_pair(G, s, t)
    variant = Companion.IN_INCIDENCE if G.directed else Companion.INCIDENCE_ORIENTED
    return SieveInstance(
        H=G,
        r=s,
        cspec=companion_for_root(G, s, variant),
        weights=tuple(_ends_weight(u, v, 1, 1) for u, v, _ in G.edges),
        p=2,
        xvars=tuple(range(G.n)),
        pre=Monomial({s: 1, t: 1}),
    )


def count_ham_paths_undirected(G: Graph, s: int, t: int, seed: int = 0, workers: int = 1) -> int:
    _require(G, False)
    return run_count(ham_count_instance(G, s, t), seed, workers).count


def count_ham_paths_directed(G: Graph, s: int, t: int, seed: int = 0, workers: int = 1) -> int:
    _require(G, True)
    return run_count(ham_count_instance(G, s, t), seed, workers).count


# ---------------------------------------------------------------------------
# Hamiltonian path detection

def _label_rows(H: Graph) -> tuple:
    return tuple(sorted({lab for _, _, lab in H.edges}))


def ham_bip_instance(G: Graph, s: int, t: int) -> SieveInstance:
    """Squared graph on ``V1 + {t'}``; root-of-unity order 2 (undirected) or 3 (directed)."""
    _check_pair(G, s, t)
    H, tp = square_bipartite(G, s, t)
    V1, V2 = bipartition(G)
    rows = tuple(vertex_label(w) for w in sorted(V2))
    hs = H.index_of(s)
    he = 2 if G.directed else 1
    return SieveInstance(
        H=H,
        r=hs,
        cspec=CompanionSpec(Companion.LABEL_INDICATOR, rows),
        weights=tuple(_ends_weight(u, v, 1, he) for u, v, _ in H.edges),
        p=3 if G.directed else 2,
        xvars=tuple(range(H.n)),
        pre=Monomial({hs: 2 if G.directed else 1, tp: 1}),
        mode=Mode.DETECT,
    )


def ham_indep_instance(G: Graph, V0, s: int, t: int) -> SieveInstance:
    """Independent set ``V0`` contracted into labels; ``q`` labelled copies of inner edges."""
    _check_pair(G, s, t)
    H, q = contract_independent(G, V0, s, t)
    rows = tuple(vertex_label(w) for w in sorted(set(V0))) + tuple(slot_label(i) for i in range(1, q + 1))
    hs, ht = H.index_of(s), H.index_of(t)
    he = 2 if G.directed else 1
    return SieveInstance(
        H=H,
        r=hs,
        cspec=CompanionSpec(Companion.LABEL_INDICATOR, rows),
        weights=tuple(_ends_weight(u, v, 1, he) for u, v, _ in H.edges),
        p=3 if G.directed else 2,
        xvars=tuple(range(H.n)),
        pre=Monomial({hs: 2 if G.directed else 1, ht: 1}),
        mode=Mode.DETECT,
    )


def detect_ham_path_bip_undirected(G, s, t, trials=DEFAULT_TRIALS, seed=0, workers=1) -> DetectResult:
    _require(G, False)
    return run_detect(ham_bip_instance(G, s, t), trials, seed, workers)


def detect_ham_path_bip_directed(G, s, t, trials=DEFAULT_TRIALS, seed=0, workers=1) -> DetectResult:
    _require(G, True)
    return run_detect(ham_bip_instance(G, s, t), trials, seed, workers)


def detect_ham_path_indep_undirected(G, V0, s, t, trials=DEFAULT_TRIALS, seed=0, workers=1) -> DetectResult:
    _require(G, False)
    return run_detect(ham_indep_instance(G, V0, s, t), trials, seed, workers)


def detect_ham_path_indep_directed(G, V0, s, t, trials=DEFAULT_TRIALS, seed=0, workers=1) -> DetectResult:
    _require(G, True)
    return run_detect(ham_indep_instance(G, V0, s, t), trials, seed, workers)


# ---------------------------------------------------------------------------
# matchings and covers

def _sides(G: Graph) -> tuple[list[int], list[int]]:
    _require(G, False)
    V1, V2 = bipartition(G)
    return sorted(V1), sorted(V2)


def pm_bipartite_instance(G: Graph) -> SieveInstance:
    V1, V2 = _sides(G)
    if len(V1) != len(V2):
        raise NotBipartiteError(f"unbalanced bipartition: {len(V1)} vs {len(V2)}")
    H, apex = attach_apex(G, V1)
    s1 = set(V1)
    weights = []
    for u, v, _ in H.edges:
        if apex in (u, v):
            weights.append(EdgeWeight({}, (1,)))
        else:
            weights.append(EdgeWeight({u if u in s1 else v: 1}, (0,)))
    return SieveInstance(
        H=H,
        r=apex,
        cspec=companion_for_root(H, apex, Companion.INCIDENCE_ORIENTED),
        weights=tuple(weights),
        p=2,
        xvars=tuple(V1),
        pre=Monomial({u: 1 for u in V1}),
        y_target=(len(V1),),
    )


def count_pm_bipartite(G: Graph, seed: int = 0, workers: int = 1) -> int:
    return run_count(pm_bipartite_instance(G), seed, workers).count


def kmatch_instance(G: Graph, k: int) -> SieveInstance:
    V1, V2 = _sides(G)
    if len(V1) > len(V2):
        V1, V2 = V2, V1
    if not 0 <= k <= len(V1):
        raise ValueError(f"k={k} outside [0, {len(V1)}]")
    H, apex = attach_apex(G, V1 + V2)
    s1 = set(V1)
    weights = []
    for u, v, _ in H.edges:
        if v == apex:
            weights.append(EdgeWeight({}, (1, 0) if u in s1 else (0, 1)))
        else:
            weights.append(EdgeWeight({u if u in s1 else v: 1}, (0, 0)))
    return SieveInstance(
        H=H,
        r=apex,
        cspec=companion_for_root(H, apex, Companion.INCIDENCE_ORIENTED),
        weights=tuple(weights),
        p=2,
        xvars=tuple(V1),
        pre=ElemSym(k, tuple(V1)),
        y_target=(len(V1), len(V2) - k),
    )


def count_k_matchings_bipartite(G: Graph, k: int, seed: int = 0, workers: int = 1) -> int:
    return run_count(kmatch_instance(G, k), seed, workers).count


def kstar_instance(G: Graph, k: int, centres) -> SieveInstance:
    """Stars centred in ``centres``: only centre-to-leaf edges kept, order-``k`` roots."""
    centres = sorted(centres)
    H, apex = attach_apex(G, centres, cross=centres)
    c = set(centres)
    weights = []
    for u, v, _ in H.edges:
        if v == apex:
            weights.append(EdgeWeight({}, (1,)))
        else:
            weights.append(EdgeWeight({u if u in c else v: 1}, (0,)))
    return SieveInstance(
        H=H,
        r=apex,
        cspec=companion_for_root(H, apex, Companion.INCIDENCE_ORIENTED),
        weights=tuple(weights),
        p=k,
        xvars=tuple(centres),
        pre=Monomial({u: 1 for u in centres}),
        y_target=(len(centres),),
    )


def count_kstar_covers(G: Graph, k: int, seed: int = 0, workers: int = 1) -> int:
    """Perfect k-star covers, summed over every choice of the ``n/k`` centres.

    For ``k = 2`` either endpoint of an edge can serve as the centre, so the
    centre-set sum counts each cover ``2**(n/2)`` times; that factor is removed.
    """
    _require(G, False)
    if k < 2:
        raise ValueError("k must be >= 2")
    if G.n % k:
        raise ValueError(f"k={k} does not divide n={G.n}")
    total = 0
    for centres in combinations(range(G.n), G.n // k):
        total += run_count(kstar_instance(G, k, centres), seed, workers).count
    if k == 2:
        div = 2 ** (G.n // 2)
        assert total % div == 0
        total //= div
    return total


def maxmatch_instance(G: Graph, ge=None) -> SieveInstance:
    """Apex over ``A + [k]`` with the near-perfect-matching weights of each D-component."""
    ge = ge or gallai_edmonds(G)
    A = sorted(ge.A)
    k = len(ge.D_components)
    # H-tilde vertices: A first (ids 0..|A|-1), then components, then the apex
    na = len(A)
    apex = na + k
    edges, weights = [], []
    for ia, a in enumerate(A):
        for i in range(k):
            w = ge.w(G, a, i)
            if w:
                edges.append((ia, na + i, None))
                weights.append(EdgeWeight({ia: 1}, (0, 0), w))
    for ia in range(na):
        edges.append((ia, apex, None))
        weights.append(EdgeWeight({}, (1, 0)))
    for i in range(k):
        edges.append((na + i, apex, None))
        weights.append(EdgeWeight({}, (0, 1), ge.W[i]))
    names = tuple(("A", a) for a in A) + tuple(("D", i) for i in range(k)) + ("apex",)
    H = Graph(apex + 1, False, tuple(edges), None, names)
    # Graph sorts its edges; realign weights to that order
    order = {e: w for e, w in zip(edges, weights)}
    weights = tuple(order[e] for e in H.edges)
    return SieveInstance(
        H=H,
        r=apex,
        cspec=companion_for_root(H, apex, Companion.INCIDENCE_ORIENTED),
        weights=weights,
        p=2,
        xvars=tuple(range(na)),
        pre=Monomial({ia: 1 for ia in range(na)}),
        y_target=(na, k - na),
    )


def count_maximum_matchings(G: Graph, seed: int = 0, workers: int = 1) -> int:
    _require(G, False)
    ge = gallai_edmonds(G)
    pm_c = count_pm_general(G.induced(ge.C)) if ge.C else 1
    if not ge.D_components:
        return pm_c
    inst = maxmatch_instance(G, ge)
    return pm_c * run_count(inst, seed, workers).count
