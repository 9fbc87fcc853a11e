import random

import numpy as np
import pytest

from treesieve import apps
from treesieve import generators as gen
from treesieve import sieve as sv
from treesieve.exactring import random_prime_with_root
from treesieve.graphcore import Companion, CompanionSpec, Graph
from treesieve.sieve import (
    DivisibilityError,
    EdgeWeight,
    ElemSym,
    Mode,
    Monomial,
    SieveInstance,
    contract_forced_edges,
    crt_bound,
    run_count,
    run_detect,
    substitution_sum,
    substitution_sums,
)


def single_edge(pre=Monomial(), p=2) -> SieveInstance:
    H = Graph(2, False, ((0, 1, None),))
    return SieveInstance(
        H, 0, CompanionSpec(Companion.INCIDENCE_ORIENTED, (1,)), (EdgeWeight({0: 1}),), p, (0,), pre
    )


def test_run_count_examples():
    assert run_count(apps.ham_count_instance(gen.path(4), 0, 3)).count == 1
    assert run_count(apps.pm_bipartite_instance(gen.complete_bipartite(3, 3))).count == 6
    assert run_count(apps.ham_count_instance(gen.complete(4), 0, 1)).count == 2


def test_p4_raw_sum_and_bound():
    inst = apps.ham_count_instance(gen.path(4), 0, 3)
    res = run_count(inst)
    assert res.raw_sum == 16
    assert crt_bound(inst) == 16 >= abs(res.raw_sum)


def test_crt_bound_examples():
    assert crt_bound(single_edge()) == 2
    assert crt_bound(single_edge(pre=ElemSym(1, (0,)))) == 2
    G = gen.complete_bipartite(3, 3)
    inst = apps.kmatch_instance(G, 1)
    plain = SieveInstance(inst.H, inst.r, inst.cspec, inst.weights, inst.p, inst.xvars, Monomial(), inst.y_target)
    assert crt_bound(inst) == 3 * crt_bound(plain)


def test_single_edge_count():
    # x_0 has odd degree, so no term survives the sieve
    assert run_count(single_edge()).count == 0
    assert run_count(single_edge(pre=Monomial({0: 1}))).count == 1


def test_seed_independence():
    inst = apps.ham_count_instance(gen.complete(5), 0, 4)
    results = [run_count(inst, rng_seed=s) for s in range(4)]
    assert {r.count for r in results} == {6}
    assert len({tuple(r.primes) for r in results}) > 1


def test_split_sum_linearity():
    rng = random.Random(3)
    for G in (gen.complete(5), gen.petersen(), gen.random_connected_graph(8, 0.4, rng)):
        inst = apps.ham_count_instance(G, 0, 1)
        fld = random_prime_with_root(2, 31, rng)
        N = inst.n_substitutions
        mid = rng.randrange(1, N)
        whole = substitution_sum(inst, fld)
        halves = substitution_sum(inst, fld, stop=mid) + substitution_sum(inst, fld, start=mid)
        assert whole == halves % fld.q
        # batch size and thread count do not change the reduction
        assert substitution_sum(inst, fld, batch=37, workers=3) == whole


def test_y_points_fold_into_batch():
    inst = apps.kmatch_instance(gen.complete_bipartite(2, 3), 1)
    fld = random_prime_with_root(2, 31, random.Random(0))
    ys = [(a, b) for a in range(3) for b in range(4)]
    folded = substitution_sums(inst, fld, ys)
    assert folded == [substitution_sum(inst, fld, y) for y in ys]


def test_reduce_matches_plain_grid():
    rng = random.Random(4)
    graphs = [gen.complete_bipartite(2, 3), gen.random_bipartite(3, 4, 0.6, rng)]
    for G in graphs:
        for k in range(3):
            inst = apps.kmatch_instance(G, k)
            assert run_count(inst).count == run_count(inst, reduce=False).count
    for G in (gen.complete(3), gen.path(5), gen.petersen()):
        inst = apps.maxmatch_instance(G)
        assert run_count(inst).count == run_count(inst, reduce=False).count


def test_contract_forced_edges_drops_variable():
    inst = apps.kmatch_instance(gen.complete_bipartite(3, 3), 2)
    red = contract_forced_edges(inst)
    assert len(red.y_target) < len(inst.y_target)
    assert red.H.n < inst.H.n
    # directed / label companions are left alone
    bip = apps.ham_count_instance(gen.directed_path(3), 0, 2)
    assert contract_forced_edges(bip) is bip


def test_divisibility_is_checked(monkeypatch):
    monkeypatch.setattr(sv, "crt_reconstruct", lambda ledger: 17)
    with pytest.raises(DivisibilityError):
        run_count(apps.ham_count_instance(gen.path(4), 0, 3))


def test_detect_examples():
    C6 = gen.cycle(6).with_bipartition({0, 2, 4})
    assert run_detect(apps.ham_bip_instance(C6, 0, 1)).detected
    res = run_detect(apps.ham_bip_instance(C6, 0, 3), trials=20)
    assert not res.detected and res.trials == 20 and res.outcomes == [False] * 20
    K33 = gen.complete_bipartite(3, 3)
    for s in range(3):
        for t in range(3, 6):
            assert run_detect(apps.ham_bip_instance(K33, s, t)).detected


def test_detect_is_reproducible():
    C6 = gen.cycle(6).with_bipartition({0, 2, 4})
    inst = apps.ham_bip_instance(C6, 0, 1)
    a = run_detect(inst, trials=15, rng_seed=9, stop_early=False)
    b = run_detect(inst, trials=15, rng_seed=9, stop_early=False)
    assert a.outcomes == b.outcomes and a.seed == 9
    assert sv.detect_trial(inst, 9, 7) == a.outcomes[7]


def test_mode_checks():
    C6 = gen.cycle(6).with_bipartition({0, 2, 4})
    with pytest.raises(ValueError):
        run_count(apps.ham_bip_instance(C6, 0, 1))
    with pytest.raises(ValueError):
        run_detect(apps.ham_count_instance(gen.path(3), 0, 2))
    with pytest.raises(ValueError):
        run_detect(apps.ham_bip_instance(C6, 0, 1), trials=0)


def test_instance_validation():
    H = Graph(2, False, ((0, 1, None),))
    cs = CompanionSpec(Companion.INCIDENCE_ORIENTED, (1,))
    w = (EdgeWeight({0: 1}),)
    with pytest.raises(ValueError):
        SieveInstance(H, 0, CompanionSpec(Companion.INCIDENCE_ORIENTED, ()), w, 2, (0,))
    with pytest.raises(ValueError):
        SieveInstance(H, 0, cs, (), 2, (0,))
    with pytest.raises(ValueError):
        SieveInstance(H, 0, cs, w, 2, ())  # weight uses unsieved x_0
    with pytest.raises(ValueError):
        SieveInstance(H, 0, cs, w, 2, (0, 0))
    with pytest.raises(ValueError):
        SieveInstance(H, 0, cs, w, 2, (0,), Monomial({1: 1}))
    with pytest.raises(ValueError):
        SieveInstance(H, 0, cs, (EdgeWeight({0: 1}, (1,)),), 2, (0,), y_target=(1,), mode=Mode.DETECT)
    with pytest.raises(ValueError):
        SieveInstance(H, 0, cs, (EdgeWeight({0: 1}, (1, 1, 1)),), 2, (0,), y_target=(1, 1, 1))
    with pytest.raises(ValueError):
        ElemSym(3, (0, 1))


def test_field_order_must_match():
    inst = apps.ham_count_instance(gen.path(3), 0, 2)
    with pytest.raises(ValueError):
        substitution_sum(inst, random_prime_with_root(3, 31, random.Random(0)))


def test_directed_sign_applied():
    inst = apps.ham_count_instance(gen.directed_path(4), 0, 3)
    assert inst.sign == -1
    assert run_count(inst).count == 1


def test_premultiplier_elemsym_dp():
    inst = apps.kmatch_instance(gen.complete_bipartite(2, 2), 1)
    c = inst.compiled
    q = 101
    roots = np.array([1, q - 1], dtype=np.int64)
    J = c.digits(0, inst.n_substitutions)
    got = sv._premultiplier(c, J, roots, q)
    xs = roots[J]
    want = xs.sum(axis=0) % q  # E_1 is the plain sum
    assert got.tolist() == want.tolist()
