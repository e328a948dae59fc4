"""netcomm: total communicability of sparse networks.

Spectral kernels (Krylov ``exp(A) v``, Gauss-Radau quadrature), degree-moment
bounds on ``1^T exp(A) 1 / n``, communicability-based edge centralities, and
budgeted edge downdate/update/rewire strategies with robustness tracking.
"""

from .graph import (EdgeRef, Graph, GraphError, ModificationRecord,
                    apply_modification, bridges, components, downdate_edge,
                    edge, from_edge_list, is_connected, largest_component,
                    remains_connected_without, update_edge)
from .io import (load_graph, read_edge_list, read_matrix_market,
                 write_edge_list, write_matrix_market)
from .spectral import (DiagEstimate, EigenpairSet, LanczosResult, SpectralError,
                       dense_expm_oracle, diag_expm_estimate, expm_action,
                       lanczos, spectrum_interval, top_eigenpairs)
from .bounds import (BoundsError, BoundsPair, DegreeMoments, SpectrumInterval,
                     degree_moments, downdated_moments, graph_tc_bounds,
                     interval_after, modified_bounds, phi, radau_2x2_value,
                     tc_bounds, updated_moments)
from .centrality import (EdgeRanking, EdgeScore, NodeScores, degree_centrality,
                         edge_score, eigenvector_centrality, node_scores,
                         node_subgraph_centrality, node_total_communicability,
                         rank_edges, total_communicability)
from .heuristics import (CandidateSet, ChanTrace, ModificationPlan,
                         StrategyConfig, build_candidate_set, chan_select,
                         escalate_candidates, optimal_modifications, rewire,
                         select_downdates, select_updates)
from .robustness import (MetricSnapshot, ThermoProfile, estrada_bracket,
                         estrada_index, natural_connectivity, spectral_gap,
                         thermo_profile, track_trajectory)
from .generators import (GenSpec, GeneratorWarning, expected_edge_count,
                         generate, parse_genspec)
from .datasets import (NAMED_DATASETS, DatasetMissingError, load_named,
                       zachary)

__version__ = "0.1.0"
