"""From a tree to a verified matrix, on the twelve-vertex tree of Fig. 4.

    python3 demos/figure4_walkthrough.py
"""

import numpy as np

from lintree.lsp_engine import decide_ordered, diminimal_list, enumerate_ordered, format_table
from lintree.realizer import SpectrumTarget, realize
from lintree.tree_model import LinearTreeSpec, diameter, expand, stats
from lintree.verify import parter_witness, verify_realization

np.set_printoptions(precision=4, suppress=True, linewidth=120)

tree = LinearTreeSpec.of([[1, 1], [3, 2], [1, 1]], [0, 0])
g = expand(tree)
st = stats(g)
print(f"{tree}: n={g.n}, diameter {diameter(tree)}, degree-two vertices {st.d2}")

lists = enumerate_ordered(tree)
print(f"{len(lists)} ordered multiplicity lists, longest multiplicity {max(max(L) for L in lists)}")

L = (1, 3, 3, 3, 1, 1)
ok, table = decide_ordered(tree, L)
print(f"\nis {L} achievable? {ok}; certificate:")
print(format_table(table))

dim = diminimal_list(tree)
print(f"\nfewest distinct eigenvalues ({dim.method}): {dim.table.multiplicities}")

target = SpectrumTarget.from_table(table, (1, 2, 3, 4, 5, 7))
res = realize(tree, target)
print(f"\nrealized with eigenvalues {target.eigenvalues}")
print(f"spectral error {res.residual:.2e}, smallest edge {res.min_edge:.3f}, eps {res.eps}")
print(res.matrix)

rep = verify_realization(res.matrix, g, target)
print("\n" + rep.to_text())

for lam, m in zip(target.eigenvalues, target.multiplicities):
    if m >= 2:
        w = parter_witness(res.matrix, g, lam)
        print(f"eigenvalue {lam}: Parter vertex {w.vertex} (degree {w.degree}), "
              f"{m} -> {w.multiplicity_without} after deletion, {len(w.carrying_components)} branches carry it")
