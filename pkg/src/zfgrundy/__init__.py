"""Forcing sets, domination sequences, and the reductions between them.

The package revolves around one duality: a graph has a domination-style
sequence of length n - k exactly when it has a forcing set of size k under
the matching rule set. Sequences live in :mod:`zfgrundy.sequences`, the rule
engine in :mod:`zfgrundy.rules`, and the treewidth-parameterized exact
solver in :mod:`zfgrundy.dp`. Hardness-reduction generators sit in
:mod:`zfgrundy.reductions`, tree decompositions in :mod:`zfgrundy.treedec`.
"""

from .dp import DPResult, SizeDecision, solve, solve_by_solution_size
from .errors import BudgetError, GuardError, ParseError, ZfError
from .graphs import (Bipartition, Graph, Hypergraph, caterpillar_graph,
                     complete_graph, cycle_graph, gnp_graph, iter_bits,
                     mask_of, neighborhood, parse_graph, parse_hypergraph,
                     path_graph, write_graph, write_hypergraph)
from .reductions import (MccInstance, OsgtdInstance, audit_mcc_reduction,
                         clique_sequence, corona_with_leaves, gd_to_osgtd,
                         has_multicolored_clique,
                         has_one_sided_sequence_of_length, lgd_to_osgtd,
                         mcc_to_osgtd, one_sided_maximum,
                         osgtd_to_cobipartite, osgtd_to_hypergraph,
                         parse_mcc, parse_osgtd, parse_partition,
                         tgd_to_osgtd, write_osgtd, write_partition)
from .rules import (D, ForcingResult, RuleApplication, T, Z, applicable_rules,
                    apply_rule, greedy_closure, is_applicable, is_forcing_set,
                    min_forcing_bruteforce, parse_rules, replay_trace,
                    rules_label)
from .sequences import (GD, LOCALL, LSEQ, TGD, VARIANTS, ZSEQ, CoveringCheck,
                        SequenceCheck, find_sequence_of_length,
                        forcing_to_sequence, max_covering_bruteforce,
                        max_sequence_bruteforce, sequence_to_forcing,
                        variant_ruleset, verify_covering_sequence,
                        verify_sequence)
from .treedec import (NiceTD, TreeDecomposition, exact_treewidth,
                      heuristic_decomposition, make_nice, parse_td,
                      treewidth_at_most, validate_td, write_td)

__version__ = "0.1.0"
