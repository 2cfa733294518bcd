"""Two-color a random partial 2-tree's square and check the result.

    python3 demos/treewidth_demo.py [n] [ell]
"""
import sys
import time

from wdcolor.coloring import certify
from wdcolor.generators import gen_partial_ktree
from wdcolor.tree_extension import color_bounded_treewidth

n = int(sys.argv[1]) if len(sys.argv) > 1 else 5000
ell = int(sys.argv[2]) if len(sys.argv) > 2 else 2
w = 2

gen = gen_partial_ktree(w, n, seed=7)
print(f"graph: n={gen.graph.n} m={gen.graph.m}, decomposition with {gen.rtd.num_nodes} bags")

t = time.perf_counter()
coloring, bound = color_bounded_treewidth(gen.graph, ell, w, gen.rtd)
print(f"colored with m={coloring.m} in {time.perf_counter() - t:.2f}s, guaranteed bound {bound}")
# the guarantee is a worst-case formula; the measured worst is far smaller

rep = certify(gen.graph, coloring, bound)
sizes = sorted((r.size for r in rep.records), reverse=True)
print(f"{len(rep.records)} monochromatic components, largest sizes {sizes[:5]}")
print(f"worst certified weak diameter {rep.max_diameter} (passed={rep.passed})")

