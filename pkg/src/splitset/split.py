"""Splitting sets, g-splitting sets, and uniform-cost search for a smallest
nontrivial splitting set."""
from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import Program
from .graph import SuperDepGraph, is_hcf, sources, super_graph


def is_splitting_set(p: Program, u: Iterable[int]) -> bool:
    u = p.check_atoms(u)
    return all(r.atoms <= u for r in p.rules if not r.head_set.isdisjoint(u))


def is_g_splitting_set(p: Program, u: Iterable[int]) -> bool:
    u = p.check_atoms(u)
    return all(r.body <= u for r in p.rules if not r.head_set.isdisjoint(u))


def bottom(p: Program, u: Iterable[int]) -> Program:
    """Rules whose atoms all lie in ``u`` (b_U(P), also written P_S)."""
    u = frozenset(u)
    return p.subprogram(i for i, r in enumerate(p.rules) if r.atoms <= u)


class GoalKind(enum.Enum):
    NONEMPTY = "nonempty-min-size"
    MUST_CONTAIN = "must-contain"
    BOTTOM_HCF = "bottom-is-hcf"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SplitGoal:
    kind: GoalKind = GoalKind.NONEMPTY
    atoms: frozenset[int] = frozenset()
    predicate: Callable[[Program, frozenset[int]], bool] | None = None

    @classmethod
    def nonempty(cls) -> SplitGoal:
        return cls()

    @classmethod
    def must_contain(cls, atoms: Iterable[int]) -> SplitGoal:
        return cls(GoalKind.MUST_CONTAIN, frozenset(atoms))

    @classmethod
    def bottom_hcf(cls) -> SplitGoal:
        return cls(GoalKind.BOTTOM_HCF)

    @classmethod
    def custom(cls, predicate: Callable[[Program, frozenset[int]], bool]) -> SplitGoal:
        return cls(GoalKind.CUSTOM, predicate=predicate)

    def accepts(self, p: Program, u: frozenset[int]) -> bool:
        """Extra condition checked on states that are already splitting sets."""
        if self.kind is GoalKind.MUST_CONTAIN:
            return self.atoms <= u
        if self.kind is GoalKind.BOTTOM_HCF:
            return is_hcf(bottom(p, u))
        if self.kind is GoalKind.CUSTOM:
            return bool(self.predicate(p, u))
        return True


@dataclass(frozen=True)
class SearchState:
    scc_ids: frozenset[int]
    atoms: frozenset[int]
    path_cost: int
    rule: int | None = None  # 1-based label of the rule whose tree was added; None for a start state

    @property
    def atom_count(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True)
class TraceEvent:
    kind: str  # "expand", "child", "goal", "reject", "skip"
    state: SearchState


@dataclass
class SearchResult:
    found: SearchState | None
    trace: list[TraceEvent] = field(default_factory=list)

    @property
    def atoms(self) -> frozenset[int] | None:
        return None if self.found is None else self.found.atoms

    @property
    def expansions(self) -> int:
        return sum(e.kind == "expand" for e in self.trace)

    def format(self, p: Program) -> str:
        lines = []
        for e in self.trace:
            s = e.state
            via = "source" if s.rule is None else f"rule {s.rule}"
            if e.kind == "expand" and not s.atoms:
                lines.append("expand {} cost=0 initial")
            elif e.kind == "expand":
                lines.append(f"expand {p.fmt_set(s.atoms)} cost={s.path_cost} via {via}")
            elif e.kind == "child":
                lines.append(f"  child {p.fmt_set(s.atoms)} cost={s.path_cost} via {via}")
            elif e.kind == "goal":
                lines.append(f"  goal {p.fmt_set(s.atoms)} size={s.atom_count}")
            elif e.kind == "reject":
                lines.append(f"  reject {p.fmt_set(s.atoms)} (splitting set fails the goal)")
            else:
                lines.append(f"skip {p.fmt_set(s.atoms)} (already expanded)")
        return "".join(line + "\n" for line in lines)


def _violating_rule(p: Program, atoms: frozenset[int]) -> int | None:
    for i, r in enumerate(p.rules):
        if not r.head_set.isdisjoint(atoms) and not r.atoms <= atoms:
            return i
    return None


def successor(p: Program, sg: SuperDepGraph, s: SearchState) -> SearchState | None:
    """Unite ``s`` with tree(r) for the lowest rule r that shows ``s`` is not
    a splitting set, or return None when ``s`` already is one."""
    i = _violating_rule(p, s.atoms)
    if i is None:
        return None
    ids = s.scc_ids | sg.tree_ids(p.rules[i].atoms)
    atoms = s.atoms.union(*(sg.sccs[c] for c in ids - s.scc_ids))
    return SearchState(ids, atoms, s.path_cost + len(atoms) - len(s.atoms), p.numbers[i])


def _start_states(p: Program, sg: SuperDepGraph, goal: SplitGoal) -> list[SearchState]:
    if goal.kind is GoalKind.MUST_CONTAIN and goal.atoms:
        ids = sg.tree_ids(p.check_atoms(goal.atoms))
        starts = [ids]
    else:
        starts = [frozenset(sg.ancestors[c]) for c in sources(sg)]
    out = []
    for ids in starts:
        atoms = frozenset().union(*(sg.sccs[c] for c in ids))
        out.append(SearchState(ids, atoms, len(atoms)))
    return out


def search_splitting_set(p: Program, goal: SplitGoal | None = None,
                         sg: SuperDepGraph | None = None) -> SearchResult:
    """Uniform-cost search from the empty state.

    The frontier is ordered by path cost, which telescopes to the atom count of
    the state.  Equal costs are popped newest first.
    """
    goal = goal or SplitGoal.nonempty()
    sg = sg or super_graph(p)
    result = SearchResult(None)
    trace = result.trace
    tick = itertools.count()
    empty = SearchState(frozenset(), frozenset(), 0)
    trace.append(TraceEvent("expand", empty))
    frontier: list[tuple[int, int, SearchState]] = []
    for s in _start_states(p, sg, goal):
        trace.append(TraceEvent("child", s))
        heapq.heappush(frontier, (s.path_cost, -next(tick), s))
    seen: set[frozenset[int]] = set()
    while frontier:
        _, _, s = heapq.heappop(frontier)
        if s.scc_ids in seen:
            trace.append(TraceEvent("skip", s))
            continue
        seen.add(s.scc_ids)
        trace.append(TraceEvent("expand", s))
        child = successor(p, sg, s)
        if child is None:
            if goal.accepts(p, s.atoms):
                trace.append(TraceEvent("goal", s))
                result.found = s
                return result
            trace.append(TraceEvent("reject", s))
            continue
        trace.append(TraceEvent("child", child))
        heapq.heappush(frontier, (child.path_cost, -next(tick), child))
    return result


def min_splitting_set(p: Program, goal: SplitGoal | None = None,
                      sg: SuperDepGraph | None = None) -> frozenset[int] | None:
    """Smallest nonempty splitting set meeting ``goal``, or None."""
    return search_splitting_set(p, goal, sg).atoms


def min_g_splitting_set(p: Program, sg: SuperDepGraph | None = None) -> frozenset[int] | None:
    """Smallest nonempty g-splitting set.

    The g-splitting condition says every body atom of a rule with a head atom
    in the set is in the set, i.e. the set is closed under predecessors in the
    dependency graph.  The smallest nonempty such set is a smallest source SCC.
    """
    sg = sg or super_graph(p)
    srcs = sources(sg)
    if not srcs:
        return None
    best = min(srcs, key=lambda c: len(sg.sccs[c]))
    return sg.sccs[best]
