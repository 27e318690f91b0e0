"""Exhaustive audit of small trees: every corollary, every tree, one record each."""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

import networkx as nx

from .lsp_engine import (
    TableSearch,
    TheoremViolation,
    augmentation_check,
    augmentations,
    degree_list,
    diminimal_list,
    enumerate_ordered,
    max_multiplicity,
    naive_enumerate,
    ones_bound,
    subdivide_list,
)
from .realizer import RealizationError, SpectrumTarget, realize
from .tree_model import LinearTreeSpec, TreeGraph, diameter, expand, is_linear, stats

__all__ = ["all_trees", "linear_specs", "audit_tree", "run_census"]


def all_trees(n: int):
    """Non-isomorphic trees on ``n`` vertices as :class:`TreeGraph`."""
    if n == 1:
        yield TreeGraph(1, frozenset())
        return
    for G in nx.nonisomorphic_trees(n):
        yield TreeGraph(n, frozenset(G.edges()))


def linear_specs(max_n: int, min_n: int = 2):
    for n in range(min_n, max_n + 1):
        for g in all_trees(n):
            ok, spec = is_linear(g)
            if ok and spec is not None:
                yield spec


def audit_tree(spec: LinearTreeSpec, naive: bool = True, realize_lists: bool = False, cap: int = 13) -> dict:
    """Run every check on one tree and return a JSON-ready record."""
    rec: dict = {"tree": spec.to_json(), "name": str(spec), "n": spec.vertex_count}
    failures = []
    search = TableSearch(spec)
    lists = enumerate_ordered(spec, cap=cap, search=search)
    rec["lists"] = len(lists)
    rec["diameter"] = diameter(spec)
    st = stats(expand(spec))
    rec["d2"] = st.d2

    if naive:
        same = naive_enumerate(spec) == lists
        rec["naive_agrees"] = same
        if not same:
            failures.append("column search and brute force disagree")

    try:
        dl, _ = degree_list(spec)
        rec["degree_list"] = list(dl)
    except TheoremViolation as exc:
        failures.append(str(exc))

    bad_sub = 0
    for L in {tuple(sorted(L, reverse=True)) for L in lists}:
        for j, m in enumerate(L):
            if m >= 2 and (j == 0 or L[j - 1] != m):
                try:
                    subdivide_list(spec, L, j, search=search)
                except TheoremViolation:
                    bad_sub += 1
    rec["subdivision_failures"] = bad_sub
    if bad_sub:
        failures.append(f"{bad_sub} subdivisions not achievable")

    aug = []
    for kind, other in augmentations(spec):
        rep = augmentation_check(spec, other, cap=cap + 1, base_lists=lists)
        aug.append({"kind": kind, "tree": str(other), "ok": rep.ok})
        if not rep.ok:
            failures.append(f"augmentation {kind} -> {other}: missing {rep.lower_missing[:3]} extra {rep.upper_extra[:3]}")
    rec["augmentations"] = aug

    try:
        upper, fewest = ones_bound(spec, lists)
        rec["ones"] = {"bound": upper, "min": fewest}
    except TheoremViolation as exc:
        failures.append(str(exc))

    formula = max_multiplicity(spec)
    actual = max(max(L) for L in lists)
    rec["max_multiplicity"] = {"formula": formula, "enumerated": actual}
    if formula != actual:
        failures.append(f"max multiplicity formula {formula} != enumerated {actual}")

    try:
        dm = diminimal_list(spec)
        rec["diminimal"] = {"method": dm.method, "sums": list(dm.table.sums)}
        if len(dm.table.multiplicities) != rec["diameter"]:
            failures.append("diminimal table has the wrong length")
        if tuple(dm.table.multiplicities) not in set(lists):
            failures.append("diminimal list missing from enumeration")
        target = SpectrumTarget.from_table(dm.table)
        realize(spec, target)
    except (TheoremViolation, RealizationError) as exc:
        failures.append(f"diminimal: {exc}")

    if realize_lists:
        unrealized = []
        for L in lists:
            target = SpectrumTarget.from_list(spec, L)
            for seed in range(5):
                try:
                    realize(spec, target, seed=seed)
                    break
                except RealizationError:
                    continue
            else:
                unrealized.append(list(L))
        rec["unrealized"] = unrealized
        if unrealized:
            failures.append(f"{len(unrealized)} lists could not be realized")

    rec["failures"] = failures
    return rec


def run_census(max_n: int, out_dir, naive_max_n: int = 9, realize_max_n: int = 0, progress=None) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records = []
    nonlinear = Counter()
    for n in range(2, max_n + 1):
        for g in all_trees(n):
            ok, spec = is_linear(g)
            if not ok:
                nonlinear[n] += 1
                continue
            rec = audit_tree(spec, naive=n <= naive_max_n, realize_lists=n <= realize_max_n, cap=max(13, max_n))
            records.append(rec)
            if progress:
                progress(rec)
    records.sort(key=lambda r: (r["n"], r["name"]))
    with open(out / "census.jsonl", "w") as fh:
        for r in records:
            fh.write(json.dumps(r, sort_keys=True) + "\n")
    failed = [{"tree": r["name"], "failures": r["failures"]} for r in records if r["failures"]]
    summary = {
        "max_n": max_n,
        "linear_trees": len(records),
        "nonlinear_trees": {str(k): v for k, v in sorted(nonlinear.items())},
        "trees_with_failures": len(failed),
        "failures": failed,
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary
