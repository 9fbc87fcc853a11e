# Randomised Hamiltonian path detection in bipartite graphs.
import random

from treesieve import generators as gen
from treesieve.apps import detect_ham_path_bip_undirected, ham_bip_instance
from treesieve.graphcore import square_bipartite
from treesieve.oracle import has_ham_path_bf
from treesieve.sieve import run_detect

C6 = gen.cycle(6).with_bipartition({0, 2, 4})

# %% the squared graph: V1 plus t', one edge per wedge u-w-v, labelled by w
H, tp = square_bipartite(C6, 0, 1)
for a, b, lab in H.edges:
    print(f"  {H.name(a)} -- {H.name(b)}   via {lab[1]}")

# %% yes and no instances
print("0 -> 1:", detect_ham_path_bip_undirected(C6, 0, 1))
print("0 -> 3:", detect_ham_path_bip_undirected(C6, 0, 3))

# %% per-trial success rate on random yes instances (isolation bound is 3/4)
rng = random.Random(1)
hits = total = 0
while total < 200:
    G = gen.random_bipartite(5, 5, 0.5, rng)
    s, t = rng.randrange(5), 5 + rng.randrange(5)
    if not has_ham_path_bf(G, s, t):
        continue
    res = run_detect(ham_bip_instance(G, s, t), trials=20, rng_seed=total, stop_early=False)
    hits += sum(res.outcomes)
    total += res.trials
print(f"per-trial detection rate {hits / total:.3f} over {total} trials")
