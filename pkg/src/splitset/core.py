"""Ground disjunctive logic programs: rules, programs and the text format.

A rule is written ``h1 | h2 :- b1, not b2.``; a fact is ``a.``; an integrity
rule is ``:- b.``.  ``%`` starts a comment that runs to the end of the line.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

log = logging.getLogger(__name__)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Rule:
    """One rule.  Each part keeps its textual order, without duplicates."""

    head: tuple[int, ...] = ()
    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()

    @cached_property
    def head_set(self) -> frozenset[int]:
        return frozenset(self.head)

    @cached_property
    def pos_set(self) -> frozenset[int]:
        return frozenset(self.pos)

    @cached_property
    def neg_set(self) -> frozenset[int]:
        return frozenset(self.neg)

    @cached_property
    def body(self) -> frozenset[int]:
        return self.pos_set | self.neg_set

    @cached_property
    def atoms(self) -> frozenset[int]:
        return self.head_set | self.body


def atoms_of_rule(r: Rule) -> frozenset[int]:
    return r.atoms


def _dedup(ids: Iterable[int]) -> tuple[int, ...]:
    return tuple(dict.fromkeys(ids))


@dataclass(frozen=True)
class Program:
    """An ordered list of rules over a shared symbol table.

    ``numbers`` holds the 1-based label of each rule.  Subprograms produced by
    :func:`splitset.split.bottom` or :func:`splitset.semantics.reduce` keep the
    labels and the symbol table of the program they came from, so atom ids stay
    comparable across them.
    """

    symbols: tuple[str, ...] = ()
    rules: tuple[Rule, ...] = ()
    numbers: tuple[int, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.numbers is None:
            object.__setattr__(self, "numbers", tuple(range(1, len(self.rules) + 1)))
        if len(self.numbers) != len(self.rules):
            raise ValueError("one number per rule is required")

    @classmethod
    def from_named(cls, rules: Iterable[tuple[Sequence[str], Sequence[str], Sequence[str]]]) -> Program:
        """Build a program from ``(head, pos, neg)`` name triples, interning
        atoms in order of first occurrence."""
        table: dict[str, int] = {}

        def ids(names):
            return _dedup(table.setdefault(n, len(table)) for n in names)

        built = []
        for head, pos, neg in rules:
            h = ids(head)
            pp = ids(pos)
            built.append(Rule(h, pp, ids(neg)))
        return cls(tuple(table), tuple(built))

    def __len__(self) -> int:
        return len(self.rules)

    @cached_property
    def atoms(self) -> frozenset[int]:
        """Lett(P): every atom that occurs in some rule."""
        out: set[int] = set()
        for r in self.rules:
            out |= r.atoms
        return frozenset(out)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    def atom_id(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown atom {name!r}") from None

    def ids(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.atom_id(n) for n in names)

    def name(self, a: int) -> str:
        return self.symbols[a]

    def names(self, ids: Iterable[int]) -> list[str]:
        return sorted(self.symbols[a] for a in ids)

    def fmt_set(self, ids: Iterable[int]) -> str:
        return "{" + ", ".join(self.names(ids)) + "}"

    def check_atoms(self, ids: Iterable[int]) -> frozenset[int]:
        ids = frozenset(ids)
        unknown = ids - self.atoms
        if unknown:
            raise ValueError(f"atoms not in program: {sorted(unknown)}")
        return ids

    def subprogram(self, keep: Iterable[int]) -> Program:
        """Rules at the given 0-based positions, order and labels kept."""
        keep = list(keep)
        return Program(self.symbols, tuple(self.rules[i] for i in keep),
                       tuple(self.numbers[i] for i in keep))

    def with_rules(self, rules: Sequence[Rule], numbers: Sequence[int]) -> Program:
        return Program(self.symbols, tuple(rules), tuple(numbers))

    def render_rule(self, r: Rule) -> str:
        return render_rule(r, self.symbols)

    def __str__(self) -> str:
        return render_program(self)


def render_rule(r: Rule, symbols: Sequence[str]) -> str:
    head = " | ".join(symbols[a] for a in r.head)
    body = ", ".join([symbols[a] for a in r.pos] + [f"not {symbols[a]}" for a in r.neg])
    if not body:
        return f"{head}." if head else ":-."
    return f"{head} :- {body}." if head else f":- {body}."


def render_program(p: Program, numbered: bool = False) -> str:
    """One rule per line.  With ``numbered`` each line ends in ``% rule N``."""
    lines = []
    for n, r in zip(p.numbers, p.rules):
        text = render_rule(r, p.symbols)
        lines.append(f"{text} % rule {n}" if numbered else text)
    return "".join(line + "\n" for line in lines)


_TOKEN_RE = re.compile(r"\s*(?:(?P<imp>:-)|(?P<atom>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[|,.])|(?P<bad>\S))")


def _tokens(text: str):
    """Yield ``(kind, value, line, col)``; comments are dropped."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0]
        pos = 0
        while True:
            m = _TOKEN_RE.match(line, pos)
            if not m:
                break
            pos = m.end()
            kind = m.lastgroup
            col = m.start(kind) + 1
            if kind == "bad":
                raise ParseError(f"unexpected character {m.group(kind)!r}", lineno, col)
            yield kind, m.group(kind), lineno, col
    yield "eof", "", len(text.splitlines()) + 1, 1


def parse_program(text: str) -> Program:
    toks = list(_tokens(text))
    i = 0
    rules = []

    def peek():
        return toks[i]

    def take(kind, value=None):
        nonlocal i
        k, v, line, col = toks[i]
        if k != kind or (value is not None and v != value):
            want = repr(value) if value else {"imp": "':-'", "atom": "an atom", "sym": "a symbol"}[kind]
            got = "end of input" if k == "eof" else repr(v)
            raise ParseError(f"expected {want}, got {got}", line, col)
        i += 1
        return v

    def atom_list(sep):
        names = [take("atom")]
        while peek()[1] == sep:
            take("sym", sep)
            names.append(take("atom"))
        return names

    def note_dups(names, where):
        if len(set(names)) != len(names):
            log.warning("rule %d: duplicate atom in %s removed", len(rules) + 1, where)

    while peek()[0] != "eof":
        head: list[str] = []
        pos: list[str] = []
        neg: list[str] = []
        if peek()[0] == "atom":
            head = atom_list("|")
            note_dups(head, "head")
            if peek()[1] == ".":
                take("sym", ".")
                rules.append((head, pos, neg))
                continue
        take("imp")
        if peek()[0] == "atom":
            while True:
                name = take("atom")
                if name == "not" and peek()[0] == "atom":
                    neg.append(take("atom"))
                else:
                    pos.append(name)
                if peek()[1] != ",":
                    break
                take("sym", ",")
        note_dups(pos, "positive body")
        note_dups(neg, "negative body")
        take("sym", ".")
        rules.append((head, pos, neg))
    return Program.from_named(rules)


def load_program(path) -> Program:
    with open(path, encoding="utf-8") as f:
        return parse_program(f.read())
