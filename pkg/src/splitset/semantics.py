"""Stable models: satisfaction, reduct, brute force, proofs for HCF programs,
Reduce, and split-based evaluation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import Program, Rule
from .graph import is_hcf, super_graph
from .split import bottom, is_g_splitting_set, is_splitting_set

DEFAULT_MAX_ATOMS = 20


class TooManyAtoms(ValueError):
    pass


class NotHCF(ValueError):
    pass


def satisfies(s: Iterable[int], r: Rule) -> bool:
    s = frozenset(s)
    return not r.pos_set <= s or not r.neg_set.isdisjoint(s) or not r.head_set.isdisjoint(s)


def satisfies_body(s: frozenset[int], r: Rule) -> bool:
    return r.pos_set <= s and r.neg_set.isdisjoint(s)


def reduct(p: Program, s: Iterable[int]) -> Program:
    s = frozenset(s)
    keep = [(Rule(r.head, r.pos), n) for r, n in zip(p.rules, p.numbers) if r.neg_set.isdisjoint(s)]
    return p.with_rules([r for r, _ in keep], [n for _, n in keep])


def model_key(p: Program, m: Iterable[int]):
    names = p.names(m)
    return (len(names), names)


def sort_models(p: Program, models: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    """Deduplicate; order by size, then by the sorted list of atom names."""
    return sorted(set(models), key=lambda m: model_key(p, m))


def _masks(p: Program, atoms: list[int]):
    bit = {a: 1 << i for i, a in enumerate(atoms)}

    def m(ids):
        out = 0
        for a in ids:
            out |= bit[a]
        return out

    return [(m(r.head), m(r.pos), m(r.neg)) for r in p.rules]


def _closed(subsets: np.ndarray, rules) -> np.ndarray:
    """Which subsets are closed under the positive rules ``(head, pos)``."""
    ok = np.ones(subsets.shape, dtype=bool)
    for hm, pm in rules:
        ok &= ((subsets & pm) != pm) | ((subsets & hm) != 0)
    return ok


def stable_models_bruteforce(p: Program, max_atoms: int = DEFAULT_MAX_ATOMS) -> list[frozenset[int]]:
    """Every S in 2^Lett(P) that is a minimal set closed under the reduct P^S."""
    atoms = sorted(p.atoms)
    n = len(atoms)
    if n > max_atoms:
        raise TooManyAtoms(f"{n} atoms exceeds the brute-force cap of {max_atoms}")
    masks = _masks(p, atoms)
    every = np.arange(1 << n, dtype=np.int64)
    # S is closed under P^S iff S satisfies every rule of P
    is_model = np.ones(every.shape, dtype=bool)
    for hm, pm, nm in masks:
        is_model &= ((every & pm) != pm) | ((every & nm) != 0) | ((every & hm) != 0)
    found = []
    for s in map(int, np.flatnonzero(is_model)):
        red = [(hm, pm) for hm, pm, nm in masks if not nm & s]
        if _has_smaller_closed(s, red, every):
            continue
        found.append(frozenset(a for i, a in enumerate(atoms) if s >> i & 1))
    return sort_models(p, found)


def _has_smaller_closed(s: int, red, every: np.ndarray) -> bool:
    # cheap pass over S minus one atom before enumerating all subsets
    bits = s
    while bits:
        low = bits & -bits
        bits ^= low
        t = s ^ low
        if all((t & pm) != pm or (t & hm) for hm, pm in red):
            return True
    subs = every[(every & s) == every]
    subs = subs[subs != s]
    return bool(_closed(subs, red).any())


@dataclass(frozen=True)
class ProofTrace:
    """0-based positions of the rules in the proof, first to last."""

    rules: tuple[int, ...]

    def labels(self, p: Program) -> list[int]:
        return [p.numbers[i] for i in self.rules]


def _witness(r: Rule, s: frozenset[int]) -> int | None:
    hit = r.head_set & s
    return next(iter(hit)) if len(hit) == 1 else None


def provable_atoms(p: Program, s: frozenset[int]) -> dict[int, int]:
    """Least fixpoint of the proof construction: atom -> position of the rule
    that first proved it."""
    usable = [(i, r, _witness(r, s)) for i, r in enumerate(p.rules)]
    usable = [(i, r, w) for i, r, w in usable if w is not None and satisfies_body(s, r)]
    marked: dict[int, int] = {}
    changed = True
    while changed:
        changed = False
        for i, r, w in usable:
            if w not in marked and all(b in marked for b in r.pos):
                marked[w] = i
                changed = True
    return marked


def find_proof(p: Program, s: Iterable[int], a: int) -> ProofTrace | None:
    s = frozenset(s)
    if a not in s:
        raise ValueError(f"atom {a} is not in the interpretation")
    marked = provable_atoms(p, s)
    if a not in marked:
        return None
    # every positive body atom of a marking rule was marked earlier, so
    # ordering the needed rules by the round that marked them is a proof
    order = {atom: k for k, atom in enumerate(marked)}
    needed: list[int] = []
    todo = [a]
    done = set()
    while todo:
        x = todo.pop()
        if x in done:
            continue
        done.add(x)
        needed.append(x)
        todo.extend(p.rules[marked[x]].pos)
    needed.sort(key=order.__getitem__)
    return ProofTrace(tuple(marked[x] for x in needed))


def is_proof(p: Program, s: Iterable[int], proof: ProofTrace, a: int | None = None) -> bool:
    """Check the four proof conditions directly."""
    s = frozenset(s)
    if not proof.rules:
        return False
    heads: set[int] = set()
    for i in proof.rules:
        r = p.rules[i]
        w = _witness(r, s)
        if w is None or not satisfies_body(s, r) or not r.pos_set <= heads:
            return False
        heads |= r.head_set
    return a is None or a in p.rules[proof.rules[-1]].head_set


def is_stable_hcf(p: Program, s: Iterable[int], check_hcf: bool = True) -> bool:
    s = frozenset(s)
    if check_hcf and not is_hcf(p):
        raise NotHCF("program is not head-cycle-free")
    if not all(satisfies(s, r) for r in p.rules):
        return False
    return s <= set(provable_atoms(p, s))


def reduce(p: Program, x: Iterable[int], y: Iterable[int]) -> Program:
    """Propagate ``x`` as true and ``y`` as false.

    A rule is dropped if it has a true atom in the head or negative body, or a
    false atom in the positive body.  Surviving rules lose their true positive
    atoms, false head atoms and false negative atoms.
    """
    x, y = frozenset(x), frozenset(y)
    if x & y:
        raise ValueError("true and false atom sets overlap")
    rules, numbers = [], []
    for r, n in zip(p.rules, p.numbers):
        if not (r.head_set.isdisjoint(x) and r.neg_set.isdisjoint(x) and r.pos_set.isdisjoint(y)):
            continue
        rules.append(Rule(tuple(a for a in r.head if a not in y),
                          tuple(a for a in r.pos if a not in x),
                          tuple(a for a in r.neg if a not in y)))
        numbers.append(n)
    return p.with_rules(rules, numbers)


def _compose(p: Program, u: frozenset[int], max_atoms: int) -> list[frozenset[int]]:
    out = []
    for x in stable_models_bruteforce(bottom(p, u), max_atoms):
        top = reduce(p, x, u - x)
        for y in stable_models_bruteforce(top, max_atoms):
            out.append(x | y)
    return sort_models(p, out)


def stable_models_via_split(p: Program, u: Iterable[int],
                            max_atoms: int = DEFAULT_MAX_ATOMS) -> list[frozenset[int]]:
    u = frozenset(u)
    if not is_splitting_set(p, u):
        raise ValueError("not a splitting set")
    return _compose(p, u, max_atoms)


def stable_models_via_gsplit(p: Program, s: Iterable[int],
                             max_atoms: int = DEFAULT_MAX_ATOMS) -> list[frozenset[int]]:
    s = frozenset(s)
    if not is_hcf(p):
        raise NotHCF("program is not head-cycle-free")
    if not is_g_splitting_set(p, s):
        raise ValueError("not a g-splitting set")
    return _compose(p, s, max_atoms)


def stable_models_hcf(p: Program, max_atoms: int = DEFAULT_MAX_ATOMS) -> list[frozenset[int]]:
    """Enumerate subsets and keep those passing :func:`is_stable_hcf`."""
    if not is_hcf(p, super_graph(p)):
        raise NotHCF("program is not head-cycle-free")
    atoms = sorted(p.atoms)
    if len(atoms) > max_atoms:
        raise TooManyAtoms(f"{len(atoms)} atoms exceeds the cap of {max_atoms}")
    out = []
    for bits in range(1 << len(atoms)):
        s = frozenset(a for i, a in enumerate(atoms) if bits >> i & 1)
        if is_stable_hcf(p, s, check_hcf=False):
            out.append(s)
    return sort_models(p, out)
