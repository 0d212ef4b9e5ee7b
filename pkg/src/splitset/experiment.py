"""Random 3-atom-per-rule programs and the ratio sweep of minimum splitting-set size."""
from __future__ import annotations

import csv
import enum
import logging
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

import numpy as np

from .core import Program
from .split import min_splitting_set

log = logging.getLogger(__name__)

CSV_HEADER = ["ratio", "mean_min_split", "median_min_split", "samples", "num_vars", "seed"]


class HeadPolicy(str, enum.Enum):
    NONEMPTY = "nonempty"  # the 7 nonempty subsets of the 3 atoms
    ALL8 = "all-8"  # all 8 subsets; an empty head gives an integrity rule


@dataclass(frozen=True)
class GenConfig:
    num_vars: int = 20
    ratio: float = 4.25
    seed: int = 0
    head_policy: HeadPolicy = HeadPolicy.NONEMPTY

    def __post_init__(self):
        if self.num_vars < 3:
            raise ValueError("num_vars must be at least 3")
        if not self.ratio > 0:
            raise ValueError("ratio must be positive")
        object.__setattr__(self, "head_policy", HeadPolicy(self.head_policy))

    @property
    def num_rules(self) -> int:
        # half-up, so 4.25 * 2 gives 9 and not 8
        return math.floor(self.ratio * self.num_vars + 0.5)


def gen_random_program(cfg: GenConfig) -> Program:
    """Each rule takes 3 distinct atoms from ``x1..xN``; a subset of them
    forms the head and the rest the positive body.  No negation."""
    rng = np.random.default_rng(cfg.seed)
    lo = 0 if cfg.head_policy is HeadPolicy.ALL8 else 1
    rules = []
    for _ in range(cfg.num_rules):
        picked = rng.choice(cfg.num_vars, size=3, replace=False)
        mask = int(rng.integers(lo, 8))
        names = [f"x{int(v) + 1}" for v in picked]
        head = [n for k, n in enumerate(names) if mask >> k & 1]
        pos = [n for k, n in enumerate(names) if not mask >> k & 1]
        rules.append((head, pos, ()))
    return Program.from_named(rules)


def program_seed(master: int, point: int, index: int) -> int:
    """64-bit seed for program ``index`` of sweep point ``point``.

    Mixes the three integers with numpy's SeedSequence hash, so every program
    can be regenerated on its own.
    """
    (state,) = np.random.SeedSequence([master, point, index]).generate_state(1, np.uint64)
    return int(state)


def ratio_points(ratio_from: float, ratio_to: float, ratio_step: float) -> list[float]:
    if ratio_from > ratio_to or not ratio_step > 0:
        raise ValueError("need ratio_from <= ratio_to and ratio_step > 0")
    count = math.floor((ratio_to - ratio_from) / ratio_step + 1e-9) + 1
    return [round(ratio_from + k * ratio_step, 10) for k in range(count)]


def min_split_size(cfg: GenConfig) -> int:
    found = min_splitting_set(gen_random_program(cfg))
    return 0 if found is None else len(found)


@dataclass(frozen=True)
class SweepPoint:
    ratio: float
    mean_min_split_size: float
    median_min_split_size: float
    samples: int
    num_vars: int
    seed: int
    head_policy: HeadPolicy = HeadPolicy.NONEMPTY
    sizes: tuple[int, ...] = field(default=(), repr=False)

    def csv_row(self) -> list[str]:
        return [f"{self.ratio:.2f}", f"{self.mean_min_split_size:.4f}",
                f"{self.median_min_split_size:g}", str(self.samples),
                str(self.num_vars), str(self.seed)]


def run_sweep(num_vars: int = 20, ratio_from: float = 2.0, ratio_to: float = 6.0,
              ratio_step: float = 0.25, per_point: int = 100, seed: int = 0,
              head_policy: HeadPolicy | str = HeadPolicy.NONEMPTY,
              jobs: int = 1) -> Iterator[SweepPoint]:
    """Yield one aggregated point per ratio, in increasing ratio order."""
    policy = HeadPolicy(head_policy)
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for k, ratio in enumerate(ratio_points(ratio_from, ratio_to, ratio_step)):
            cfgs = [GenConfig(num_vars, ratio, program_seed(seed, k, j), policy)
                    for j in range(per_point)]
            try:
                sizes = list(pool.map(min_split_size, cfgs) if pool else map(min_split_size, cfgs))
            except Exception:
                log.exception("ratio %.2f aborted", ratio)
                continue
            yield SweepPoint(ratio, statistics.fmean(sizes), statistics.median(sizes),
                             len(sizes), num_vars, seed, policy, tuple(sizes))
    finally:
        if pool:
            pool.shutdown()


def write_sweep_csv(points: Iterable[SweepPoint], out: IO[str]) -> list[SweepPoint]:
    """Write the header, then each row as soon as its point is done."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    done = []
    for pt in points:
        w.writerow(pt.csv_row())
        out.flush()
        done.append(pt)
    return done
