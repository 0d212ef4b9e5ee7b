"""Dependency graph, its SCC condensation, and tree/source queries."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .core import Program


@dataclass(frozen=True)
class DepGraph:
    """Atoms of Lett(P) as nodes; ``A -> B`` when A is in the body (positive
    or negative) and B in the head of the same rule."""

    nodes: frozenset[int]
    edges: frozenset[tuple[int, int]]

    @cached_property
    def succ(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in sorted(self.nodes)}
        for a, b in sorted(self.edges):
            out[a].append(b)
        return out


def build_dep_graph(p: Program) -> DepGraph:
    edges = {(a, b) for r in p.rules for a in r.body for b in r.head}
    return DepGraph(p.atoms, frozenset(edges))


def tarjan_scc(nodes: Iterable[int], succ: dict[int, list[int]]) -> list[list[int]]:
    """Iterative Tarjan.  Components come out in reverse topological order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    out.append(comp)
    return out


@dataclass(frozen=True)
class SuperDepGraph:
    """SCC condensation of a :class:`DepGraph`.

    SCC ids follow a topological order: every DAG edge goes from a lower id to
    a higher one, and among SCCs that are ready at the same time the one with
    the smallest atom id comes first.  Sources therefore appear in the order in
    which their atoms were first mentioned in the program text.
    """

    sccs: tuple[frozenset[int], ...]
    dag_edges: frozenset[tuple[int, int]]
    scc_index: dict[int, int]
    preds: tuple[tuple[int, ...], ...]
    ancestors: tuple[frozenset[int], ...]  # SCC ids reaching each SCC, itself included

    @cached_property
    def tree_atoms(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset().union(*(self.sccs[c] for c in anc)) for anc in self.ancestors)

    def scc_id(self, v: int) -> int:
        try:
            return self.scc_index[v]
        except KeyError:
            raise ValueError(f"unknown atom {v}") from None

    def scc_ids_of(self, vs: Iterable[int]) -> frozenset[int]:
        return frozenset(self.scc_id(v) for v in vs)

    def tree_ids(self, vs: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for c in self.scc_ids_of(vs):
            out |= self.ancestors[c]
        return frozenset(out)


def build_super_graph(g: DepGraph) -> SuperDepGraph:
    nodes = sorted(g.nodes)
    comps = tarjan_scc(nodes, g.succ)
    raw_of = {v: i for i, comp in enumerate(comps) for v in comp}
    raw_edges = {(raw_of[a], raw_of[b]) for a, b in g.edges if raw_of[a] != raw_of[b]}

    # Kahn's algorithm keyed by smallest atom for a stable numbering
    indeg = [0] * len(comps)
    out_adj: list[list[int]] = [[] for _ in comps]
    for a, b in raw_edges:
        indeg[b] += 1
        out_adj[a].append(b)
    heap = [(min(comps[c]), c) for c in range(len(comps)) if indeg[c] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, c = heapq.heappop(heap)
        order.append(c)
        for d in out_adj[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                heapq.heappush(heap, (min(comps[d]), d))
    assert len(order) == len(comps), "condensation is not acyclic"
    new_id = {c: i for i, c in enumerate(order)}

    sccs = tuple(frozenset(comps[c]) for c in order)
    edges = frozenset((new_id[a], new_id[b]) for a, b in raw_edges)
    preds: list[list[int]] = [[] for _ in sccs]
    for a, b in sorted(edges):
        preds[b].append(a)
    ancestors: list[frozenset[int]] = []
    for c in range(len(sccs)):
        acc = {c}
        for d in preds[c]:
            acc |= ancestors[d]
        ancestors.append(frozenset(acc))
    scc_index = {v: new_id[raw_of[v]] for v in nodes}
    return SuperDepGraph(sccs, edges, scc_index, tuple(map(tuple, preds)), tuple(ancestors))


def super_graph(p: Program) -> SuperDepGraph:
    return build_super_graph(build_dep_graph(p))


def scc_of(sg: SuperDepGraph, v: int) -> frozenset[int]:
    return sg.sccs[sg.scc_id(v)]


def tree_of(sg: SuperDepGraph, vs: int | Iterable[int]) -> frozenset[int]:
    """All atoms in SCCs from which some ``scc(v)``, v in ``vs``, is reachable."""
    if isinstance(vs, int):
        vs = (vs,)
    out: set[int] = set()
    for c in sg.scc_ids_of(vs):
        out |= sg.tree_atoms[c]
    return frozenset(out)


def sources(sg: SuperDepGraph) -> list[int]:
    return [c for c, ps in enumerate(sg.preds) if not ps]


def is_hcf(p: Program, sg: SuperDepGraph | None = None) -> bool:
    if sg is None:
        sg = super_graph(p)
    for r in p.rules:
        seen = set()
        for a in r.head:
            c = sg.scc_index[a]
            if c in seen:
                return False
            seen.add(c)
    return True


def _q(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def dep_graph_dot(p: Program, g: DepGraph) -> str:
    lines = ["digraph dependency {"]
    for v in sorted(g.nodes):
        lines.append(f"  {_q(p.name(v))};")
    for a, b in sorted(g.edges):
        lines.append(f"  {_q(p.name(a))} -> {_q(p.name(b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def super_graph_dot(p: Program, sg: SuperDepGraph) -> str:
    lines = ["digraph super_dependency {"]
    for c, atoms in enumerate(sg.sccs):
        lines.append(f"  scc{c} [label={_q(p.fmt_set(atoms))}];")
    for a, b in sorted(sg.dag_edges):
        lines.append(f"  scc{a} -> scc{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dep_graph_listing(p: Program, g: DepGraph) -> str:
    """``a -> b, c`` per node, nodes in interning order."""
    lines = []
    for v, ws in g.succ.items():
        targets = ", ".join(p.name(w) for w in ws)
        lines.append(f"{p.name(v)} -> {targets}" if targets else f"{p.name(v)}")
    return "".join(line + "\n" for line in lines)


def super_graph_listing(p: Program, sg: SuperDepGraph) -> str:
    lines = []
    succ: dict[int, list[int]] = {c: [] for c in range(len(sg.sccs))}
    for a, b in sorted(sg.dag_edges):
        succ[a].append(b)
    src = set(sources(sg))
    for c, atoms in enumerate(sg.sccs):
        tag = " (source)" if c in src else ""
        targets = ", ".join(p.fmt_set(sg.sccs[d]) for d in succ[c])
        lines.append(f"{p.fmt_set(atoms)}{tag}" + (f" -> {targets}" if targets else ""))
    return "".join(line + "\n" for line in lines)
