"""Roots-of-unity sieve over the matrix-tree determinant.

An instance describes a multigraph ``H``, a root ``r``, a companion matrix
``C`` and one weight monomial per edge.  The engine sums

    pre(x) * [y^target] det(A_r(x, y, z) C^T)

over every assignment of ``p``-th roots of unity to the sieved variables.
In count mode the sum is reconstructed exactly by CRT over several primes and
divided by ``p**|X|``; in detect mode ``z`` is a random field point and any
nonzero trial is a witness.

Determinants are evaluated in batches: ``A_r C^T`` is linear in the edge
weights, ``sum_e w_e * a_e c_e^T``, so a sparse (entries x edges) structure
matrix turns a batch of weight vectors into a batch of matrices with one
product.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from math import comb, prod
from typing import Mapping

import numpy as np
import scipy.sparse as sp

from .exactring import (
    CrtLedger,
    PrimeField,
    crt_reconstruct,
    det_mod_batch,
    interpolate_coeff,
    interpolate_coeff_2d,
    random_prime_with_root,
)
from .graphcore import Companion, CompanionSpec, Graph, build_C, incidence_pattern

DEFAULT_TRIALS = 20
DEFAULT_BATCH = 4096
PRIME_BITS = 31


class Mode(Enum):
    COUNT = "count"
    DETECT = "detect"


class DivisibilityError(ArithmeticError):
    """The reconstructed sum is not a multiple of p**|X|; always a bug."""


@dataclass(frozen=True)
class EdgeWeight:
    """``scalar * prod x_v**e_v * prod y_j**d_j`` (times ``z**W`` in detect mode)."""

    vertex_exponents: Mapping[int, int] = field(default_factory=dict)
    y_degrees: tuple[int, ...] = ()
    scalar: int = 1


@dataclass(frozen=True)
class Monomial:
    exponents: Mapping[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class ElemSym:
    """Elementary symmetric polynomial of degree ``k`` in ``variables``."""

    k: int
    variables: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.k <= len(self.variables):
            raise ValueError(f"E_{self.k} over {len(self.variables)} variables")


@dataclass(frozen=True)
class SieveInstance:
    H: Graph
    r: int
    cspec: CompanionSpec
    weights: tuple[EdgeWeight, ...]
    p: int
    xvars: tuple[int, ...]
    pre: Monomial | ElemSym = Monomial()
    y_target: tuple[int, ...] = ()
    mode: Mode = Mode.COUNT

    def __post_init__(self):
        m = self.H.n - 1
        if len(self.cspec.rows) != m:
            raise ValueError(f"companion has {len(self.cspec.rows)} rows, need |V(H)|-1 = {m}")
        if not 0 <= self.r < self.H.n:
            raise ValueError(f"root {self.r} is not a vertex of H")
        if len(self.weights) != self.H.m:
            raise ValueError("one weight per edge of H required")
        if self.p < 1:
            raise ValueError("sieve order must be >= 1")
        xs = set(self.xvars)
        if len(xs) != len(self.xvars):
            raise ValueError("duplicate sieved variable")
        ny = len(self.y_target)
        for w in self.weights:
            if not set(w.vertex_exponents) <= xs:
                raise ValueError("edge weight uses an unsieved vertex variable")
            if len(w.y_degrees) != ny:
                raise ValueError("edge y-degree vector does not match y_target")
        if isinstance(self.pre, Monomial):
            if not set(self.pre.exponents) <= xs:
                raise ValueError("premultiplier uses an unsieved variable")
        elif not set(self.pre.variables) <= xs:
            raise ValueError("premultiplier uses an unsieved variable")
        if self.mode is Mode.DETECT and ny:
            raise ValueError("detect mode does not support y-variables")
        if ny > 2:
            raise ValueError("at most two y-variables are supported")

    @property
    def m(self) -> int:
        return self.H.n - 1

    @property
    def n_substitutions(self) -> int:
        return self.p ** len(self.xvars)

    @property
    def sign(self) -> int:
        # with +w at tail, -w at head and the in-incidence companion,
        # det(A_r C^T) = (-1)^m * (in-arborescence polynomial)
        if self.cspec.variant is Companion.IN_INCIDENCE:
            return -1 if self.m % 2 else 1
        return 1

    @cached_property
    def compiled(self) -> "_Compiled":
        return _Compiled(self)


@dataclass
class CountResult:
    count: int
    raw_sum: int
    primes: list[int]
    bound: int


@dataclass
class DetectResult:
    detected: bool
    trials: int
    seed: int
    outcomes: list[bool] = field(default_factory=list)


class _Compiled:
    """Integer arrays derived from an instance, reused across primes and trials."""

    def __init__(self, inst: SieveInstance):
        H, m = inst.H, inst.m
        self.m = m
        self.E = H.m
        A = incidence_pattern(H, inst.r)
        C = build_C(H, inst.cspec)
        # structure[(i*m + j), e] = A[i, e] * C[j, e]
        rows, cols, vals = [], [], []
        for e in range(H.m):
            ai = np.nonzero(A[:, e])[0]
            cj = np.nonzero(C[:, e])[0]
            for i in ai:
                for j in cj:
                    rows.append(i * m + j)
                    cols.append(e)
                    vals.append(int(A[i, e] * C[j, e]))
        self.structure = sp.csr_matrix(
            (np.array(vals, dtype=np.int64), (rows, cols)), shape=(m * m, H.m), dtype=np.int64
        )
        xpos = {v: i for i, v in enumerate(inst.xvars)}
        self.nx = len(inst.xvars)
        self.xexp = np.zeros((H.m, self.nx), dtype=np.int64)
        for e, w in enumerate(inst.weights):
            for v, k in w.vertex_exponents.items():
                self.xexp[e, xpos[v]] = k
        self.ydeg = np.zeros((H.m, len(inst.y_target)), dtype=np.int64)
        for e, w in enumerate(inst.weights):
            self.ydeg[e, :] = w.y_degrees
        self.scalars = [int(w.scalar) for w in inst.weights]
        if isinstance(inst.pre, Monomial):
            self.pre_exp = np.zeros(self.nx, dtype=np.int64)
            for v, k in inst.pre.exponents.items():
                self.pre_exp[xpos[v]] = k
            self.elemsym = None
        else:
            self.pre_exp = None
            self.elemsym = (inst.pre.k, [xpos[v] for v in inst.pre.variables])
        self.p = inst.p
        self.place = inst.p ** np.arange(self.nx, dtype=np.int64)

    def digits(self, start: int, stop: int) -> np.ndarray:
        """Root-index assignments for substitutions ``start..stop-1``; shape (nx, B)."""
        idx = np.arange(start, stop, dtype=np.int64)
        return (idx[None, :] // self.place[:, None]) % self.p

    def y_degree_bounds(self) -> list[int]:
        out = []
        for j in range(self.ydeg.shape[1]):
            col = self.ydeg[:, j]
            out.append(int(min(self.m * col.max(initial=0), col.sum())))
        return out


def _edge_constants(c: _Compiled, q: int, ys: tuple[int, ...], zs: np.ndarray | None) -> np.ndarray:
    out = np.empty(c.E, dtype=np.int64)
    for e in range(c.E):
        val = c.scalars[e] % q
        for j, y in enumerate(ys):
            d = int(c.ydeg[e, j])
            if d:
                val = val * pow(y, d, q) % q
        if zs is not None:
            val = val * int(zs[e]) % q
        out[e] = val
    return out


def _premultiplier(c: _Compiled, J: np.ndarray, roots: np.ndarray, q: int) -> np.ndarray:
    if c.elemsym is None:
        return roots[(c.pre_exp @ J) % c.p]
    k, cols = c.elemsym
    B = J.shape[1]
    e = np.zeros((k + 1, B), dtype=np.int64)
    e[0] = 1
    for col in cols:
        xv = roots[J[col]]
        # e_j <- e_j + x * e_{j-1}, high to low
        for j in range(k, 0, -1):
            e[j] = (e[j] + xv * e[j - 1]) % q
    return e[k]


def _partial_sums(c: _Compiled, fld: PrimeField, consts: np.ndarray, start: int, stop: int) -> np.ndarray:
    """Per-row sums mod q over substitutions ``start..stop-1``; one row of ``consts`` per y point."""
    q = fld.q
    P = consts.shape[0]
    roots = np.array(fld.root_powers(), dtype=np.int64)
    J = c.digits(start, stop)
    B = J.shape[1]
    xpart = roots[(c.xexp @ J) % c.p]  # (E, B)
    w = consts[:, :, None] * xpart[None, :, :] % q  # (P, E, B)
    w = w.transpose(1, 0, 2).reshape(c.E, P * B)
    if c.m == 0:
        dets = np.ones(P * B, dtype=np.int64)
    else:
        mats = (c.structure @ w) % q  # (m*m, P*B)
        dets = det_mod_batch(np.ascontiguousarray(mats.T).reshape(P * B, c.m, c.m), q)
    pre = _premultiplier(c, J, roots, q)
    return (dets.reshape(P, B) * pre[None, :] % q).sum(axis=1) % q


def substitution_sums(
    inst: SieveInstance,
    fld: PrimeField,
    ys: list[tuple[int, ...]] | None = None,
    zs: np.ndarray | None = None,
    start: int = 0,
    stop: int | None = None,
    batch: int = DEFAULT_BATCH,
    workers: int = 1,
) -> list[int]:
    """``sum pre(x) det(A_r C^T)`` mod q over substitutions ``start..stop-1``, one per y point.

    ``ys`` lists the y points (default: the single empty point); ``zs`` gives
    each edge's isolation factor ``z**W(e)`` already evaluated.
    """
    if fld.p != inst.p:
        raise ValueError("field root order does not match the sieve order")
    c = inst.compiled
    ys = [()] if ys is None else ys
    stop = inst.n_substitutions if stop is None else stop
    consts = np.stack([_edge_constants(c, fld.q, y, zs) for y in ys]) if c.E else np.zeros((len(ys), 0), np.int64)
    step = max(1, batch // len(ys))
    chunks = [(a, min(a + step, stop)) for a in range(start, stop, step)]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(lambda ab: _partial_sums(c, fld, consts, *ab), chunks))
    else:
        parts = [_partial_sums(c, fld, consts, a, b) for a, b in chunks]
    total = np.zeros(len(ys), dtype=np.int64)
    for part in parts:
        total = (total + part) % fld.q
    return [int(v) for v in total]


def substitution_sum(inst: SieveInstance, fld: PrimeField, ys: tuple[int, ...] = (), zs=None, **kw) -> int:
    return substitution_sums(inst, fld, [ys], zs, **kw)[0]


def sieve_sum_mod(inst: SieveInstance, fld: PrimeField, workers: int = 1) -> int:
    """The full count-mode sum (y-coefficient extracted) reduced mod ``fld.q``."""
    c = inst.compiled
    q = fld.q
    bounds = c.y_degree_bounds()
    if not bounds:
        return substitution_sum(inst, fld, workers=workers)
    if len(bounds) == 1:
        pts = list(range(bounds[0] + 1))
        vals = substitution_sums(inst, fld, [(y,) for y in pts], workers=workers)
        return interpolate_coeff(pts, vals, inst.y_target[0], q)
    p1, p2 = list(range(bounds[0] + 1)), list(range(bounds[1] + 1))
    flat = substitution_sums(inst, fld, [(a, b) for a in p1 for b in p2], workers=workers)
    grid = [flat[i * len(p2):(i + 1) * len(p2)] for i in range(len(p1))]
    return interpolate_coeff_2d(p1, p2, grid, tuple(inst.y_target), q)


def contract_forced_edges(inst: SieveInstance) -> SieveInstance:
    """Eliminate y-variables whose target degree forces every edge carrying them.

    When all edges with ``y_j`` have degree one in ``y_j``, unit scalar, no
    other variables, number exactly ``y_target[j]`` and form a forest, every
    counted tree contains all of them; the coefficient equals the tree
    polynomial of the contracted graph.  Only valid for the undirected
    incidence companion; other instances are returned unchanged.
    """
    while inst.mode is Mode.COUNT and inst.cspec.variant is Companion.INCIDENCE_ORIENTED:
        for j, target in enumerate(inst.y_target):
            if _forced(inst, j, target):
                inst = _contract(inst, j)
                break
        else:
            return inst
    return inst


def _forced(inst: SieveInstance, j: int, target: int) -> bool:
    F = [e for e, w in enumerate(inst.weights) if w.y_degrees[j]]
    if len(F) != target:
        return False
    for e in F:
        w = inst.weights[e]
        if w.y_degrees[j] != 1 or w.scalar != 1 or any(w.vertex_exponents.values()):
            return False
        if any(d for i, d in enumerate(w.y_degrees) if i != j):
            return False
    parent = list(range(inst.H.n))
    for e in F:
        a, b, _ = inst.H.edges[e]
        ra, rb = _root(parent, a), _root(parent, b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def _root(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _contract(inst: SieveInstance, j: int) -> SieveInstance:
    H = inst.H
    parent = list(range(H.n))
    forced = set()
    for e, w in enumerate(inst.weights):
        if w.y_degrees[j]:
            forced.add(e)
            a, b, _ = H.edges[e]
            parent[_root(parent, a)] = _root(parent, b)
    reps = sorted({_root(parent, v) for v in range(H.n)}, key=lambda r: min(v for v in range(H.n) if _root(parent, v) == r))
    cls = {r: i for i, r in enumerate(reps)}
    new_of = [cls[_root(parent, v)] for v in range(H.n)]
    edges, by_label = [], {}
    for e, (a, b, _) in enumerate(H.edges):
        if e in forced or new_of[a] == new_of[b]:
            continue
        lab = ("e", e)
        edges.append((new_of[a], new_of[b], lab))
        w = inst.weights[e]
        by_label[lab] = EdgeWeight(w.vertex_exponents, w.y_degrees[:j] + w.y_degrees[j + 1:], w.scalar)
    H2 = Graph(len(reps), False, tuple(edges))
    r2 = new_of[inst.r]
    return SieveInstance(
        H=H2,
        r=r2,
        cspec=CompanionSpec(Companion.INCIDENCE_ORIENTED, tuple(v for v in range(H2.n) if v != r2)),
        weights=tuple(by_label[lab] for _, _, lab in H2.edges),
        p=inst.p,
        xvars=inst.xvars,
        pre=inst.pre,
        y_target=inst.y_target[:j] + inst.y_target[j + 1:],
        mode=inst.mode,
    )


def crt_bound(inst: SieveInstance) -> int:
    """A proven bound on ``|S|``: ``p^|X| * C(|E|, m) * Wmax^m * Pmax``."""
    m = inst.m
    wmax = max([abs(w.scalar) for w in inst.weights], default=1) or 1
    wmax = max(wmax, 1)
    pmax = comb(len(inst.pre.variables), inst.pre.k) if isinstance(inst.pre, ElemSym) else 1
    return inst.n_substitutions * comb(inst.H.m, m) * wmax**m * pmax


def run_count(inst: SieveInstance, rng_seed: int = 0, workers: int = 1, reduce: bool = True) -> CountResult:
    """Exact count: CRT-reconstruct the sum, check divisibility by ``p**|X|``, divide.

    ``reduce`` first contracts forced y-edges (see :func:`contract_forced_edges`).
    """
    if inst.mode is not Mode.COUNT:
        raise ValueError("run_count needs a count-mode instance")
    if reduce:
        inst = contract_forced_edges(inst)
    bound = crt_bound(inst)
    ledger = CrtLedger(bound)
    rng = random.Random(rng_seed)
    while not ledger.sufficient():
        fld = random_prime_with_root(inst.p, PRIME_BITS, rng)
        if fld.q in ledger.residues:
            continue
        ledger.add(fld.q, sieve_sum_mod(inst, fld, workers))
    S = crt_reconstruct(ledger)
    div = inst.n_substitutions
    if S % div:
        raise DivisibilityError(f"sum {S} is not divisible by {inst.p}^{len(inst.xvars)}")
    return CountResult(inst.sign * (S // div), S, sorted(ledger.residues), bound)


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed).spawn(trial + 1)[trial])


def detect_trial(inst: SieveInstance, seed: int, trial: int, workers: int = 1) -> bool:
    """One isolation trial: fresh weights in ``[1, 4|E(H)|]``, prime, and ``z`` value."""
    gen = _trial_rng(seed, trial)
    E = inst.H.m
    W = gen.integers(1, 4 * max(E, 1) + 1, size=E)
    fld = random_prime_with_root(inst.p, PRIME_BITS, random.Random(int(gen.integers(1 << 62))))
    rho = int(gen.integers(1, fld.q))
    zs = np.array([pow(rho, int(w), fld.q) for w in W], dtype=np.int64)
    return substitution_sum(inst, fld, (), zs, workers=workers) != 0


def run_detect(
    inst: SieveInstance,
    trials: int = DEFAULT_TRIALS,
    rng_seed: int = 0,
    workers: int = 1,
    stop_early: bool = True,
) -> DetectResult:
    """Repeat isolation trials; detected iff some trial gives a nonzero sum."""
    if inst.mode is not Mode.DETECT:
        raise ValueError("run_detect needs a detect-mode instance")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    outcomes = []
    for i in range(trials):
        outcomes.append(detect_trial(inst, rng_seed, i, workers))
        if outcomes[-1] and stop_early:
            break
    return DetectResult(any(outcomes), len(outcomes), rng_seed, outcomes)
