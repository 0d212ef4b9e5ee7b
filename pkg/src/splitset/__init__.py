"""Splitting sets and stable models for ground disjunctive logic programs."""

__version__ = "0.1.0"

from .core import ParseError, Program, Rule, atoms_of_rule, load_program, parse_program, render_program
from .graph import (DepGraph, SuperDepGraph, build_dep_graph, build_super_graph, is_hcf, scc_of,
                    sources, super_graph, tree_of)
from .split import (SearchState, SplitGoal, bottom, is_g_splitting_set, is_splitting_set,
                    min_g_splitting_set, min_splitting_set, search_splitting_set, successor)
from .semantics import (NotHCF, ProofTrace, TooManyAtoms, find_proof, is_stable_hcf, reduce, reduct,
                        satisfies, stable_models_bruteforce, stable_models_via_gsplit,
                        stable_models_via_split)
from .experiment import GenConfig, HeadPolicy, gen_random_program, run_sweep
