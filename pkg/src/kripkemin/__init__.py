"""Depth-bounded bisimulation minimization of pointed Kripke models.

The package builds, compares, and minimizes finite multi-modal Kripke
models.  Its core result is the pair of rooted contractions: quotients
guided by the designated world that are provably world-minimal (and, in the
edge-minimal variant, size-minimal) among all models equivalent to the
input up to a given modal depth.  Partition refinement supplies the
equivalence levels, a direct recursive game and a formula-agreement check
act as independent oracles, and generators plus a CLI round the toolkit
out.
"""

from .bisim import (PartitionSequence, bisimilar, disjoint_union, k_bisimilar,
                    refine, refine_full)
from .contraction import (ContractionResult, RepresentativeStructure,
                          least_representative, redirect_and_delete,
                          representative_structure, rooted_k_contraction,
                          rooted_k_contraction_edge_min, standard_contraction,
                          standard_k_contraction)
from .errors import (BudgetExceededError, InputError, InvalidModelError,
                     KripkeError, NoCandidateError, ParseError,
                     PreconditionError, UnknownReferenceError)
from .generators import gen_chain, gen_figure, gen_random, gen_succinctness_tree
from .logic import (And, Atom, Bot, Box, Diamond, Formula, Not, Or, Top,
                    agree_to_depth, evaluate, modal_depth)
from .model import (NEG_INF, UNREACHABLE, DepthBoundMap, PointedModel,
                    compute_depth_bound, isomorphic, prune_unreachable,
                    restrict)
from .modelio import (export_dot, parse_formula, parse_model, serialize_model,
                      write_text_atomic)
from .oracle import (EnumerationBudget, exhaustive_min_edges,
                     exhaustive_min_worlds, naive_k_bisim)

__version__ = "0.1.0"

__all__ = [
    "And", "Atom", "Bot", "Box", "BudgetExceededError", "ContractionResult",
    "DepthBoundMap", "Diamond", "EnumerationBudget", "Formula", "InputError",
    "InvalidModelError", "KripkeError", "NEG_INF", "NoCandidateError", "Not",
    "Or", "ParseError", "PartitionSequence", "PointedModel",
    "PreconditionError", "RepresentativeStructure", "Top", "UNREACHABLE",
    "UnknownReferenceError", "agree_to_depth", "bisimilar",
    "compute_depth_bound", "disjoint_union", "evaluate", "exhaustive_min_edges",
    "exhaustive_min_worlds", "export_dot", "gen_chain", "gen_figure",
    "gen_random", "gen_succinctness_tree", "isomorphic", "k_bisimilar",
    "least_representative", "modal_depth", "naive_k_bisim", "parse_formula",
    "parse_model", "prune_unreachable", "redirect_and_delete", "refine",
    "refine_full", "representative_structure", "restrict",
    "rooted_k_contraction", "rooted_k_contraction_edge_min",
    "serialize_model", "standard_contraction", "standard_k_contraction",
    "write_text_atomic",
]
