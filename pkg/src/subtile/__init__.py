"""Exact machinery for perfect subdivision tilings.

Public surface: graph core (parsing, constructions, bipartitions), exact
threshold parameters, gadget graphs, subdivision embedding searches, the
perfect-tiling solver with certificates and obstructions, extremal host
constructions, and the seeded absorber-family selection.
"""

from .budget import SearchBudget, default_node_budget
from .certs import (CheckResult, SubdivisionCertificate, TilingCertificate,
                    check_subdivision_certificate)
from .errors import (ConstructionError, EmptyPattern, GraphFormatError,
                     HostTooLarge, InfiniteHcf, NotBipartiteError,
                     PatternTooLarge, PreconditionViolated,
                     SearchBudgetExceeded, SubtileError)
from .exact import INFINITY, Infinity, fmt_frac, ln_upper, parse_frac
from .graphs import (Bipartition, Graph, NotBipartite, bipartition, build,
                     complete, complete_bipartite, cycle, disjoint_union,
                     parse_graph, path, serialize_graph)
from .params import (HatGraph, ParamReport, chi_cr_bipartite, construct_h_star,
                     construct_hat_h, f_value, hat_from_recipe, imbalance_hcf,
                     param_report, threshold_coefficient, xi_star,
                     xi_with_witness)
from .gadgets import (GADGET_KINDS, GadgetGraph, build_gadget, parse_gadget,
                      serialize_gadget, verify_gadget)
from .embed import (AnchoredCount, count_anchored_gadgets,
                    enumerate_bipartite_subdivisions, find_spanning_subdivision,
                    is_subdivision, iter_subdivisions, subdivide_edges)
from .tiling import (DominationResult, ObstructionCertificate, domination,
                     find_perfect_subdivision_tiling,
                     hat_tiling_complete_bipartite, obstruction_certificate,
                     parse_obstruction, serialize_obstruction,
                     validate_obstruction, verify_tiling)
from .extremal import (ExtremalInstance, construct_extremal, serialize_extremal,
                       verify_extremal)
from .absorb import (FamilySelection, SplitMix64, System, build_system,
                     make_system, parse_selection, parse_system, select_family,
                     serialize_selection, serialize_system, verify_family)

__version__ = "0.1.0"
