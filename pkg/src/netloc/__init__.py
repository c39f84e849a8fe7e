"""netloc: exact-arithmetic toolkit for location games on metric networks.

Retailers pick points on a network of rational-length edges; consumers shop at
the nearest one. The package computes payoffs and consumer cost exactly,
builds explicit pure Nash equilibria for large player counts, verifies
equilibria with zero tolerance, and reports anarchy/stability ratios.
"""

from .construct import (
    ConstructionPlan,
    build_equilibrium,
    choose_spacing,
    constructed_cost,
    player_threshold,
    players_required,
)
from .efficiency import (
    EfficiencyReport,
    anarchy_bound,
    efficiency_report,
    empirical_optimum,
    equilibrium_cost_bound,
    majorizes,
    opt_lower_bound,
)
from .errors import (
    BelowThresholdError,
    InvalidArgumentError,
    InvalidNetworkError,
    InvalidPointError,
    InvalidProfileError,
    NetlocError,
    NormalizationRequiredError,
    VertexCoverageError,
)
from .examples import (
    NoEquilibrium,
    StarEquilibrium,
    circle_point,
    circle_profiles,
    make_circle,
    make_segment,
    make_star,
    segment_profiles,
    star_equilibrium,
    star_family_interval,
    star_family_profile,
    star_remark_profiles,
)
from .network import (
    Interval,
    Network,
    Point,
    classify_edges,
    degree,
    distance,
    normalize,
    total_measure,
)
from .payoff import (
    AttractionReport,
    HalfInterval,
    HalfIntervalSet,
    Profile,
    attraction,
    consumer_eccentricity,
    direction_mass,
    half_intervals,
    has_vertex_coverage,
    social_cost,
)
from .verify import (
    EquilibriumCertificate,
    PlayerCheck,
    best_response_value,
    check_structural_lemmas,
    deviation_payoff,
    is_nash,
)

__version__ = "0.1.0"
