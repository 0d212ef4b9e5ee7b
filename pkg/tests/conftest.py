import random
from pathlib import Path

import pytest

from splitset.core import Program, load_program

FIXTURES = Path(__file__).parent / "fixtures"


def random_program(rng: random.Random, n_atoms: int, n_rules: int, negation: bool = True,
                   empty_heads: bool = True, max_len: int = 4) -> Program:
    """Rules over atoms ``p0..p{n-1}``; each atom goes to head, positive or
    negative body at random."""
    names = [f"p{i}" for i in range(n_atoms)]
    parts = ["h", "b", "n"] if negation else ["h", "b"]
    rules = []
    for _ in range(n_rules):
        picked = rng.sample(names, rng.randint(1, min(max_len, n_atoms)))
        head, pos, neg = [], [], []
        for a in picked:
            {"h": head, "b": pos, "n": neg}[rng.choice(parts)].append(a)
        if not head and not empty_heads:
            head.append(pos.pop() if pos else neg.pop())
        rules.append((head, pos, neg))
    return Program.from_named(rules)


def corpus(seed: int, count: int, max_atoms: int = 12, **kw):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, max_atoms)
        yield random_program(rng, n, rng.randint(1, 2 * n + 2), **kw)


def subsets(atoms):
    atoms = sorted(atoms)
    for bits in range(1 << len(atoms)):
        yield frozenset(a for i, a in enumerate(atoms) if bits >> i & 1)


@pytest.fixture
def ex1():
    return load_program(FIXTURES / "example1.lp")


@pytest.fixture
def ex3():
    return load_program(FIXTURES / "example3.lp")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
