"""Chebyshev centers of finite point nets, the Hausdorff metric between
them, a Lobachevsky-plane kernel, and verifiers for the Lipschitz behaviour
of the center map."""

from .chebyshev import ChebResult, cheb, cheb_1d, cheb_oracle, circumball_of_support
from .counterexamples import (
    lemma3_counterexample,
    lemma3_hyperbolic_counterexample,
    lemma3_nonuniform_sequence,
)
from .errors import (
    ChebnetsError,
    DegenerateInputError,
    DimensionError,
    DomainError,
    InconsistencyError,
    ModelError,
    OracleBudgetError,
    SamplingBudgetError,
)
from .geometry import (
    Hyperplane,
    Net,
    Point,
    Ray,
    diameter,
    distance,
    midpoint,
    net_from_json,
    net_to_json,
    point_to_net_distance,
    project_to_hyperplane,
    ray_point,
)
from .hausdorff import alpha, alpha_ball_contains
from .hyperbolic import (
    ORIGIN,
    HyperbolicPoint,
    HyperbolicTriangle,
    h_alpha,
    h_cheb3,
    h_distance,
    h_midpoint,
    hyperbolic_point_from_json,
    hyperbolic_point_to_json,
    minimax_center_search,
    right_triangle,
    right_triangle_identity_check,
)
from .lipschitz import (
    LemmaReport,
    LipschitzSample,
    NeighborhoodSpec,
    default_epsilon,
    estimate_local_lipschitz,
    sample_pair,
)
from .verifiers import (
    lemma4_constant,
    verify_lemma1,
    verify_lemma2,
    verify_lemma4,
    verify_lemma4_random,
    verify_statement1,
    verify_statement2,
)

__version__ = "0.1.0"
