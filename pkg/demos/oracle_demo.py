"""Compare the constructive colorings with the exhaustive optimum on small graphs.

    python3 demos/oracle_demo.py
"""
from wdcolor.coloring import certify
from wdcolor.generators import gen_cycle, gen_grid, gen_path, gen_tree
from wdcolor.oracle import brute_min_weak_diameter
from wdcolor.tree_extension import color_bounded_treewidth
from wdcolor.witness import validate_td

cases = [
    ("path 12", gen_path(12)),
    ("cycle 11", gen_cycle(11)),
    ("tree 14", gen_tree(14, seed=3)),
    ("grid 3x4", gen_grid(3, 4)),
]
print(f"{'graph':10} {'ell':>3} {'optimum':>8} {'ours':>5}")
for name, gen in cases:
    w = validate_td(gen.graph, gen.rtd).width
    for ell in (1, 2):
        best, _ = brute_min_weak_diameter(gen.graph, ell, 2)
        c, _ = color_bounded_treewidth(gen.graph, ell, w, gen.rtd)
        ours = certify(gen.graph, c, float("inf"), exact=True).max_diameter
        print(f"{name:10} {ell:>3} {best:>8} {ours:>5}")
