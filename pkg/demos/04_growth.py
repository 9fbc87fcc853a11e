# How the Hamiltonian path counter scales: the work doubles with every vertex.
import time

from treesieve import generators as gen
from treesieve.apps import count_ham_paths_undirected

for n in range(8, 17, 2):
    G = gen.complete(n)
    t0 = time.perf_counter()
    c = count_ham_paths_undirected(G, 0, 1)
    dt = time.perf_counter() - t0
    print(f"K_{n:<3d} paths 0->1: {c:>15d}   {dt:7.2f}s   (2^n = {2**n})")
