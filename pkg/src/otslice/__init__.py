"""Numerical toolkit for sliced and max-sliced Wasserstein distances.

Exact 1-d and assignment-based Wasserstein-2 distances, Monte-Carlo sliced
estimators, max-sliced direction search (grid oracle, sphere ascent,
moment separator, logistic surrogate), and reproducible experiment
harnesses: Gaussian mean learning, sample-complexity gap studies, and an
adversarial particle flow.
"""

__version__ = "0.1.0"

from .core import (
    DirectionSet,
    PointCloud,
    Seed,
    SortPermutation,
    UnitDirection,
    project,
    sample_directions,
)
from .discriminator import Discriminator, logistic_ascent, logistic_objective
from .exact_ot import Assignment, w2_exact
from .ot1d import sorted_w2_squared, sorted_wp
from .sliced import Aggregation, SlicedReport, sliced_distance
from .maxsliced import (
    BoundsReport,
    DegenerateDirectionError,
    MaxSlicedResult,
    check_bounds,
    grid_oracle_2d,
    logistic_surrogate_direction,
    moment_separator_direction,
    result_along,
    sphere_ascent,
    sphere_ascent_best_of,
)
from .gaussian_sim import (
    GaussianSimConfig,
    Trajectory,
    projected_w2_gaussian,
    run_simulation,
)
from .flow import (
    FlowConfig,
    TrainingReport,
    eight_gaussian_mixture,
    generator_gradient,
    train,
)
from .complexity import (
    ComplexityConfig,
    GapRow,
    GapTable,
    run_complexity_study,
    sliced_population_value,
)

__all__ = [
    "__version__",
    "Seed",
    "PointCloud",
    "UnitDirection",
    "DirectionSet",
    "SortPermutation",
    "project",
    "sample_directions",
    "sorted_w2_squared",
    "sorted_wp",
    "Assignment",
    "w2_exact",
    "Aggregation",
    "SlicedReport",
    "sliced_distance",
    "Discriminator",
    "logistic_ascent",
    "logistic_objective",
    "MaxSlicedResult",
    "BoundsReport",
    "DegenerateDirectionError",
    "grid_oracle_2d",
    "sphere_ascent",
    "sphere_ascent_best_of",
    "moment_separator_direction",
    "logistic_surrogate_direction",
    "result_along",
    "check_bounds",
    "GaussianSimConfig",
    "Trajectory",
    "projected_w2_gaussian",
    "run_simulation",
    "FlowConfig",
    "TrainingReport",
    "generator_gradient",
    "train",
    "eight_gaussian_mixture",
    "ComplexityConfig",
    "GapRow",
    "GapTable",
    "run_complexity_study",
    "sliced_population_value",
]
