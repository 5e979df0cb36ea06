"""Exact workbench for Grassmann graphs over finite fields.

Constructs, verifies, classifies, and rigidity-tests isometric embeddings
of Johnson graphs in Grassmann graphs, entirely with exact arithmetic
over GF(q) at desk scale.
"""

from .config import Caps, caps, caps_from_env, set_caps
from .embeddings import (Classification, EmbeddingInstance, IsometryDefect,
                         build_dual_construction, build_sum_construction, classify,
                         clique_independence, clique_types, descend, rebuild,
                         verify_assignment, verify_isometric)
from .errors import (BudgetExhaustedError, CapExceededError, ClassificationError,
                     GrassmannLabError, InternalInvariantError, NotIsometricError,
                     SchemaError, ValidationError)
from .fields import GF
from .grassmannian import (CliqueKind, GrassmannianSpec, adjacent, apartment_from_frame,
                           classify_max_cliques_containing, distance, gaussian_binomial,
                           iter_rref_bases, parabolic_interval, pg_points, star, top)
from .independence import (Ambient, PointSet, SearchResult, canonical_simplex,
                           is_independent, is_m_independent, m_dependency_witness,
                           point_set, search_m_independent, simplex_rank)
from .johnson import (JohnsonAut, identity_aut, johnson_aut_group,
                      johnson_aut_group_order, johnson_distance, johnson_vertices,
                      transposition_aut, vertex_from_indices, vertex_indices)
from .oracle import (CrossValidationReport, OracleResult, SearchConfig, cross_validate,
                     enumerate_apartments, enumerate_embeddings, orbit_closure)
from .rigidity import (ExtensionWitness, NotExtendable, RigidityReport,
                       UnknownExtension, extend_automorphism, induced_by_semilinear,
                       is_rigid, solve_semilinear_mapping)
from .subspaces import (SemilinearMap, Subspace, annihilator, contragredient,
                        identity_map, intersect_many, intersect_subspaces, sum_many,
                        sum_subspaces)

__version__ = "0.1.0"
