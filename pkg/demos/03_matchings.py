# Perfect matchings, k-matchings and maximum matchings.
import random

from treesieve import generators as gen
from treesieve.apps import count_k_matchings_bipartite, count_maximum_matchings, count_pm_bipartite
from treesieve.matching import gallai_edmonds
from treesieve.oracle import biadjacency, count_matchings_bf, permanent_ryser

# %% perfect matchings vs Ryser's permanent
rng = random.Random(4)
G = gen.random_bipartite(6, 6, 0.5, rng)
print("sieve:", count_pm_bipartite(G), " permanent:", permanent_ryser(biadjacency(G, range(6), range(6, 12))))

# %% the matching polynomial of K_{4,4}
K = gen.complete_bipartite(4, 4)
print("k-matchings of K_{4,4}:", [count_k_matchings_bipartite(K, k) for k in range(5)])

# %% Gallai-Edmonds on a graph without a perfect matching
G = gen.random_graph(10, 0.25, random.Random(10))
ge = gallai_edmonds(G)
print(f"nu={ge.nu}  A={sorted(ge.A)}  C={sorted(ge.C)}  D components={ge.D_components}")
print("W_i:", ge.W)
print("maximum matchings: sieve", count_maximum_matchings(G), " brute force", count_matchings_bf(G, "maximum"))
