"""Three-color the power of a grid through its row layering.

    python3 demos/layered_demo.py [rows] [cols] [ell]
"""
import json
import sys

from wdcolor.generators import gen_grid
from wdcolor.layered import color_layered
from wdcolor.witness import layered_width

rows = int(sys.argv[1]) if len(sys.argv) > 1 else 60
cols = int(sys.argv[2]) if len(sys.argv) > 2 else 60
ell = int(sys.argv[3]) if len(sys.argv) > 3 else 2

gen = gen_grid(rows, cols)
print(f"{rows}x{cols} grid, layered width {layered_width(gen.graph, gen.rtd, gen.layering)}")

res = color_layered(gen.graph, ell, gen.rtd, gen.layering)
print(f"escalations: {res.escalations}, claimed bound {res.claimed}, certified worst {res.report.max_diameter}")
print("strip plan:", json.dumps(res.plan.to_json()))

# a small picture of the top-left corner, one character per vertex
for r in range(min(rows, 24)):
    print("".join(".+#"[res.coloring.color[r * cols + c] - 1] for c in range(min(cols, 60))))
