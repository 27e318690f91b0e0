"""The closed formula for the largest multiplicity against two independent counts.

For a linear tree L(T1, s1, ..., Tk) the formula reads l + sum M(Ti), with l
the number of non-empty connecting paths.  Its construction stacks each row's
maximum in one column.  A generalized star with a single arm reaches its
maximum 1 only at non-upward entries, as does every path row, and two such
cells in one column need an upward cell between them.  So the stacking fails
next to a one-arm star.  The path cover number confirms the enumeration.

    python3 demos/max_multiplicity_gap.py
"""

import itertools

import networkx as nx

from lintree.census import linear_specs
from lintree.lsp_engine import decide_ordered, enumerate_ordered, format_table, max_multiplicity
from lintree.tree_model import expand


def path_cover_number(spec):
    g = nx.Graph(list(expand(spec).edges))
    best = 0
    for k in range(g.number_of_nodes()):
        for S in itertools.combinations(g.nodes, k):
            h = g.copy()
            h.remove_nodes_from(S)
            best = max(best, nx.number_connected_components(h) - k)
    return best


for n in (9, 10):
    for spec in linear_specs(n, min_n=n):
        formula = max_multiplicity(spec)
        lists = enumerate_ordered(spec)
        actual = max(max(L) for L in lists)
        if formula != actual:
            print(f"{spec}: formula {formula}, enumerated {actual}, path cover {path_cover_number(spec)}")

spec = next(s for s in linear_specs(9, min_n=9) if str(s) == "L([1,1], 0, [1], 1, [1,1])")
best = max(enumerate_ordered(spec), key=max)
print(f"\na list reaching the true maximum for {spec}: {best}")
print(format_table(decide_ordered(spec, best)[1]))
