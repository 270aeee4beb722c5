"""Max-sliced Wasserstein-2 distance via direction search.

The max-sliced distance is the largest projected 1-d Wasserstein-2
distance over the unit sphere. Finding the maximizing direction exactly is
hard in general, so four strategies are provided:

* :func:`grid_oracle_2d` — exhaustive angular sweep, 2-d only; the ground
  truth every other strategy is measured against.
* :func:`sphere_ascent` — projected gradient ascent on the sphere; finds a
  local maximum from a given start.
* :func:`moment_separator_direction` — closed form: the normalized
  difference of the cloud means.
* :func:`logistic_surrogate_direction` — the final layer of a logistic
  classifier trained to separate the clouds.

:func:`check_bounds` packages the sandwich
``|mean gap|^2 <= W2^2 along the separator <= max-sliced^2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PointCloud, SeedLike, UnitDirection, as_seed, project, sample_directions
from .discriminator import Discriminator, logistic_ascent
from .ot1d import sorted_w2_squared, sorted_wp

__all__ = [
    "DegenerateDirectionError",
    "MaxSlicedResult",
    "BoundsReport",
    "grid_oracle_2d",
    "sphere_ascent",
    "sphere_ascent_best_of",
    "moment_separator_direction",
    "logistic_surrogate_direction",
    "result_along",
    "check_bounds",
]

GRID_ORACLE = "grid-oracle-2d"
SPHERE_ASCENT = "sphere-ascent"
MOMENT_SEPARATOR = "moment-separator"
LOGISTIC_SURROGATE = "logistic-surrogate"

_GRID_CHUNK_VALUES = 2_000_000  # angle-chunk size cap, in projected values


class DegenerateDirectionError(ValueError):
    """The moment separator is undefined: the cloud means coincide."""


@dataclass(frozen=True)
class MaxSlicedResult:
    """Direction found by a search strategy and the W2 distance along it."""

    direction: UnitDirection
    value: float
    strategy: str
    iterations: int = 0


@dataclass(frozen=True)
class BoundsReport:
    """Sandwich of squared distances: mean gap, separator slice, max slice."""

    lower: float
    mid: float
    upper: float


def _check_pair(left: PointCloud, right: PointCloud) -> None:
    if left.n != right.n:
        raise ValueError(f"clouds must have equal size, got {left.n} and {right.n}")
    if left.dim != right.dim:
        raise ValueError(
            f"clouds must have equal dimension, got {left.dim} and {right.dim}"
        )


def grid_oracle_2d(
    left: PointCloud, right: PointCloud, n_angles: int = 3600
) -> MaxSlicedResult:
    """Exhaustive max-sliced search over a uniform angular grid, 2-d only.

    Evaluates W2 along (cos t, sin t) for ``n_angles`` angles uniform on
    [0, pi) — opposite directions give identical distances, so half the
    circle suffices — and returns the argmax (smallest angle on ties).

    Parameters
    ----------
    left, right : PointCloud
        Equal-size 2-d clouds.
    n_angles : int
        Grid resolution, >= 2. The returned value under-estimates the true
        maximum by at most O((pi / n_angles)^2) * curvature.
    """
    _check_pair(left, right)
    if left.dim != 2:
        raise ValueError(f"the grid oracle is 2-d only, got dimension {left.dim}")
    if n_angles < 2:
        raise ValueError(f"need n_angles >= 2, got {n_angles}")
    n = left.n
    chunk = max(1, _GRID_CHUNK_VALUES // max(n, 1))
    best_val2 = -np.inf
    best_angle = 0.0
    for start in range(0, n_angles, chunk):
        idx = np.arange(start, min(start + chunk, n_angles))
        thetas = idx * (np.pi / n_angles)
        dirs = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)  # (c, 2)
        proj_l = left.points @ dirs.T  # (n, c)
        proj_r = right.points @ dirs.T
        proj_l.sort(axis=0)
        proj_r.sort(axis=0)
        diff = proj_l - proj_r
        vals2 = np.mean(diff * diff, axis=0)
        j = int(np.argmax(vals2))  # first occurrence: smallest angle wins
        if vals2[j] > best_val2:
            best_val2 = float(vals2[j])
            best_angle = float(thetas[j])
    direction = UnitDirection([np.cos(best_angle), np.sin(best_angle)])
    return MaxSlicedResult(direction, float(np.sqrt(best_val2)), GRID_ORACLE, n_angles)


def _matched_diffs(left: PointCloud, right: PointCloud, omega: np.ndarray) -> np.ndarray:
    """Rank-matched point differences under the projection onto omega."""
    order_l = np.argsort(left.points @ omega, kind="stable")
    order_r = np.argsort(right.points @ omega, kind="stable")
    return left.points[order_l] - right.points[order_r]


def sphere_ascent(
    left: PointCloud,
    right: PointCloud,
    init: UnitDirection,
    steps: int = 100,
    rate: float = 0.1,
    reinit_seed: SeedLike = 0,
) -> MaxSlicedResult:
    """Gradient ascent of the projected squared W2 over the unit sphere.

    Each step matches the clouds by projected rank, follows the exact
    gradient of the resulting piecewise-quadratic objective
    ``(2/n) * sum (omega . delta_i) delta_i`` (rank-matched differences
    ``delta_i``), and renormalizes onto the sphere. Returns the best
    direction seen, a local maximum in general. A zero-norm intermediate
    is replaced by a fresh seeded random direction (it still consumes an
    iteration).
    """
    _check_pair(left, right)
    if init.dim != left.dim:
        raise ValueError(
            f"init dimension {init.dim} does not match cloud dimension {left.dim}"
        )
    if steps < 1:
        raise ValueError(f"need steps >= 1, got {steps}")
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    n = left.n
    reinit = as_seed(reinit_seed)
    reinits = 0
    omega = init.components
    best_val2 = -np.inf
    best_omega = omega
    for step in range(steps + 1):
        delta = _matched_diffs(left, right, omega)
        matched_proj = delta @ omega
        val2 = float(np.mean(matched_proj * matched_proj))
        if val2 > best_val2:
            best_val2 = val2
            best_omega = omega
        if step == steps:
            break
        grad = (2.0 / n) * (matched_proj @ delta)
        cand = omega + rate * grad
        norm = np.linalg.norm(cand)
        if norm == 0.0:
            gen = reinit.spawn(reinits).generator()
            cand = gen.standard_normal(left.dim)
            norm = np.linalg.norm(cand)
            reinits += 1
        omega = cand / norm
    return MaxSlicedResult(
        UnitDirection(best_omega), float(np.sqrt(best_val2)), SPHERE_ASCENT, steps
    )


def sphere_ascent_best_of(
    left: PointCloud,
    right: PointCloud,
    restarts: int,
    steps: int = 100,
    rate: float = 0.1,
    seed: SeedLike = 0,
) -> MaxSlicedResult:
    """Best sphere-ascent result over seeded random restarts."""
    if restarts < 1:
        raise ValueError(f"need restarts >= 1, got {restarts}")
    seed = as_seed(seed)
    inits = sample_directions(restarts, left.dim, seed)
    best = None
    total = 0
    for init in inits:
        res = sphere_ascent(left, right, init, steps, rate, reinit_seed=seed.spawn(restarts))
        total += res.iterations
        if best is None or res.value > best.value:
            best = res
    return MaxSlicedResult(best.direction, best.value, SPHERE_ASCENT, total)


def moment_separator_direction(left: PointCloud, right: PointCloud) -> UnitDirection:
    """Normalized difference of the cloud means.

    This is the exact maximizer, over the unit sphere, of the first-moment
    separation ``mean(omega . x, x in left) - mean(omega . x, x in right)``.

    Raises
    ------
    DegenerateDirectionError
        If the means coincide (gap norm <= 1e-12); callers should fall
        back to a seeded random direction.
    """
    _check_pair(left, right)
    gap = left.mean() - right.mean()
    norm = float(np.linalg.norm(gap))
    if norm <= 1e-12:
        raise DegenerateDirectionError(
            f"cloud means coincide (gap norm {norm:.3e}); no separating direction"
        )
    return UnitDirection(gap / norm)


def logistic_surrogate_direction(
    left: PointCloud,
    right: PointCloud,
    feature: Discriminator,
    k: int,
    rate: float,
    grad_clip: float = 100.0,
) -> tuple[UnitDirection, Discriminator]:
    """Approximate maximizing direction from a logistic classifier.

    Runs ``k`` ascent steps of the logistic objective treating ``left`` as
    real and ``right`` as fake, updating the classifier direction (and the
    feature parameters when trainable). The returned direction is the
    classifier's final layer, renormalized after every step.
    """
    _check_pair(left, right)
    if k < 1:
        raise ValueError(f"need k >= 1 ascent steps, got {k}")
    data_dim = feature.data_dim
    if data_dim is not None and data_dim != left.dim:
        raise ValueError(
            f"feature map expects dimension {data_dim}, clouds have {left.dim}"
        )
    if feature.kind == "identity" and feature.feature_dim != left.dim:
        raise ValueError(
            f"identity feature direction has dimension {feature.feature_dim}, "
            f"clouds have {left.dim}"
        )
    disc = logistic_ascent(feature, left.points, right.points, k, rate, grad_clip)
    return disc.omega, disc


def result_along(
    left: PointCloud,
    right: PointCloud,
    direction: UnitDirection,
    strategy: str,
    iterations: int = 0,
) -> MaxSlicedResult:
    """Package a direction with the W2 distance measured along it."""
    value = sorted_wp(project(left, direction), project(right, direction), 2.0)
    return MaxSlicedResult(direction, value, strategy, iterations)


def check_bounds(
    left: PointCloud,
    right: PointCloud,
    upper_strategy: str = GRID_ORACLE,
    n_angles: int = 3600,
    restarts: int = 8,
    steps: int = 100,
    rate: float = 0.1,
    fallback_seed: SeedLike = 0,
) -> BoundsReport:
    """Sandwich of squared distances around the moment-separator slice.

    ``lower`` is the squared norm of the mean gap, ``mid`` the squared W2
    along the moment-separator direction (a seeded random direction when
    the separator is degenerate, in which case ``lower`` is 0), ``upper``
    the squared max-sliced value from ``upper_strategy``. The separator
    direction itself is folded into ``upper``'s maximization — the true
    maximum dominates every evaluated direction, so this only tightens the
    finite search — which keeps ``lower <= mid <= upper`` even when the
    argmax falls between grid angles.
    """
    _check_pair(left, right)
    gap = left.mean() - right.mean()
    try:
        direction = moment_separator_direction(left, right)
        lower = float(gap @ gap)
    except DegenerateDirectionError:
        direction = sample_directions(1, left.dim, as_seed(fallback_seed))[0]
        lower = 0.0
    mid = sorted_w2_squared(project(left, direction), project(right, direction))
    if upper_strategy == GRID_ORACLE:
        upper_result = grid_oracle_2d(left, right, n_angles)
    elif upper_strategy == SPHERE_ASCENT:
        upper_result = sphere_ascent_best_of(
            left, right, restarts, steps, rate, seed=fallback_seed
        )
    else:
        raise ValueError(
            f"unknown upper strategy {upper_strategy!r}; "
            f"expected {GRID_ORACLE!r} or {SPHERE_ASCENT!r}"
        )
    upper = max(upper_result.value**2, mid)
    report = BoundsReport(lower, mid, upper)
    if not (report.lower <= report.mid + 1e-9 and report.mid <= report.upper + 1e-9):
        raise AssertionError(f"bound sandwich violated: {report}")
    return report
