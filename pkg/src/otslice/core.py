"""Shared domain types: point clouds, unit directions, seeded random streams.

Everything here is immutable after construction and safe to share across
threads. Randomness is explicit: every stochastic routine takes a
:class:`Seed`, and distinct ``(root, stream)`` pairs map to independent
counter-based (Philox) substreams, so per-direction draws are bitwise
reproducible regardless of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

__all__ = [
    "Seed",
    "PointCloud",
    "UnitDirection",
    "DirectionSet",
    "SortPermutation",
    "project",
    "sample_directions",
]

#: norm slack tolerated on unit directions
UNIT_NORM_TOL = 1e-9


@dataclass(frozen=True)
class Seed:
    """Key of a deterministic random substream.

    ``root`` identifies the experiment, ``stream`` the substream within it.
    Identical pairs always reproduce the same draws; distinct pairs give
    statistically independent streams (Philox counter-based generator).
    """

    root: int
    stream: int = 0

    def spawn(self, offset: int) -> "Seed":
        """Seed of the substream ``stream + offset`` under the same root."""
        return Seed(self.root, self.stream + offset)

    def generator(self) -> np.random.Generator:
        key = np.array(
            [int(self.root) & 0xFFFFFFFFFFFFFFFF, int(self.stream) & 0xFFFFFFFFFFFFFFFF],
            dtype=np.uint64,
        )
        return np.random.Generator(np.random.Philox(key=key))


SeedLike = Union[Seed, int]


def as_seed(seed: SeedLike) -> Seed:
    if isinstance(seed, Seed):
        return seed
    return Seed(int(seed))


class PointCloud:
    """Finite empirical distribution: ``n`` equal-weight points in ``R^d``.

    Parameters
    ----------
    points : array-like, shape (n, d)
        One point per row. A flat length-n sequence is treated as n points
        in one dimension. Coordinates must be finite.
    """

    __slots__ = ("points",)

    def __init__(self, points):
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2:
            raise ValueError(f"points must be a (n, d) array, got shape {pts.shape}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(f"need n >= 1 points of dimension d >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite (no NaN/inf)")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __setattr__(self, name, value):
        raise AttributeError("PointCloud is immutable")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def mean(self) -> np.ndarray:
        return self.points.mean(axis=0)

    def translate(self, t) -> "PointCloud":
        return PointCloud(self.points + np.asarray(t, dtype=np.float64))

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, PointCloud) and np.array_equal(self.points, other.points)

    def __repr__(self) -> str:
        return f"PointCloud(n={self.n}, dim={self.dim})"


class UnitDirection:
    """Direction on the unit sphere of ``R^d`` (norm within 1e-9 of 1)."""

    __slots__ = ("components",)

    def __init__(self, components):
        vec = np.asarray(components, dtype=np.float64).reshape(-1)
        if vec.size < 1:
            raise ValueError("direction needs at least one component")
        if not np.all(np.isfinite(vec)):
            raise ValueError("direction components must be finite")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise ValueError(f"direction norm {norm!r} is not within {UNIT_NORM_TOL} of 1")
        vec = vec.copy()
        vec.setflags(write=False)
        object.__setattr__(self, "components", vec)

    def __setattr__(self, name, value):
        raise AttributeError("UnitDirection is immutable")

    @classmethod
    def from_vector(cls, vec) -> "UnitDirection":
        """Normalize an arbitrary nonzero vector onto the unit sphere."""
        vec = np.asarray(vec, dtype=np.float64).reshape(-1)
        norm = float(np.linalg.norm(vec))
        if norm <= 0.0 or not np.isfinite(norm):
            raise ValueError("cannot normalize a zero or non-finite vector")
        return cls(vec / norm)

    @property
    def dim(self) -> int:
        return self.components.size

    def __repr__(self) -> str:
        return f"UnitDirection({np.array2string(self.components, precision=4)})"


@dataclass(frozen=True)
class DirectionSet:
    """Ordered collection of unit directions plus how it was generated.

    ``generation`` is one of ``"gaussian-normalized"``, ``"angular-grid"``
    or ``"explicit"``; regenerating with the same seed and parameters yields
    bitwise-identical directions.
    """

    directions: tuple
    seed: Seed = field(default=Seed(0))
    generation: str = "explicit"

    def __post_init__(self):
        dirs = tuple(
            d if isinstance(d, UnitDirection) else UnitDirection(d) for d in self.directions
        )
        if len(dirs) < 1:
            raise ValueError("a DirectionSet needs at least one direction")
        dims = {d.dim for d in dirs}
        if len(dims) != 1:
            raise ValueError(f"directions have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "directions", dirs)

    @classmethod
    def explicit(cls, vectors: Iterable) -> "DirectionSet":
        return cls(tuple(vectors), Seed(0), "explicit")

    @classmethod
    def angular_grid(cls, n_angles: int) -> "DirectionSet":
        """``n_angles`` planar directions (cos t, sin t), t uniform on [0, pi)."""
        if n_angles < 2:
            raise ValueError(f"angular grid needs n_angles >= 2, got {n_angles}")
        thetas = np.arange(n_angles) * (np.pi / n_angles)
        vecs = np.column_stack([np.cos(thetas), np.sin(thetas)])
        return cls(tuple(UnitDirection(v) for v in vecs), Seed(0), "angular-grid")

    @property
    def dim(self) -> int:
        return self.directions[0].dim

    def as_matrix(self) -> np.ndarray:
        """Stack directions into a (k, d) array."""
        return np.stack([d.components for d in self.directions])

    def __len__(self) -> int:
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)

    def __getitem__(self, i) -> UnitDirection:
        return self.directions[i]


@dataclass(frozen=True)
class SortPermutation:
    """Permutation of {0..n-1} sorting a scalar sequence non-decreasingly."""

    indices: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.intp)
        n = idx.size
        if not np.array_equal(np.sort(idx), np.arange(n)):
            raise ValueError("indices are not a permutation of 0..n-1")
        idx = idx.copy()
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @classmethod
    def sorting(cls, values) -> "SortPermutation":
        """Stable sort permutation of ``values`` (ties kept in input order)."""
        vals = np.asarray(values, dtype=np.float64).reshape(-1)
        return cls(np.argsort(vals, kind="stable"))

    def apply(self, values) -> np.ndarray:
        vals = np.asarray(values, dtype=np.float64).reshape(-1)
        if vals.size != self.indices.size:
            raise ValueError(
                f"permutation of length {self.indices.size} cannot reorder {vals.size} values"
            )
        return vals[self.indices]

    def __len__(self) -> int:
        return self.indices.size


def project(cloud: PointCloud, direction: UnitDirection) -> np.ndarray:
    """Project every point of ``cloud`` onto ``direction``.

    Returns the length-n vector of inner products, in point order. This is
    the 1-d marginal of the empirical distribution along the direction.
    """
    if cloud.dim != direction.dim:
        raise ValueError(
            f"cloud dimension {cloud.dim} does not match direction dimension {direction.dim}"
        )
    return cloud.points @ direction.components


def sample_directions(k: int, d: int, seed: SeedLike) -> DirectionSet:
    """Draw ``k`` independent uniform directions on the unit sphere of R^d.

    Direction ``i`` comes from substream ``seed.stream + i``, so any subset
    can be regenerated independently (and in parallel) from the same seed.

    Parameters
    ----------
    k : int
        Number of directions, >= 1.
    d : int
        Ambient dimension, >= 1.
    seed : Seed or int
        Root of the substreams used for the draws.

    Returns
    -------
    DirectionSet
        ``k`` unit vectors obtained by normalizing standard-normal draws.
    """
    if k < 1:
        raise ValueError(f"need k >= 1 directions, got {k}")
    if d < 1:
        raise ValueError(f"need dimension d >= 1, got {d}")
    seed = as_seed(seed)
    dirs = []
    for i in range(k):
        gen = seed.spawn(i).generator()
        vec = gen.standard_normal(d)
        norm = np.linalg.norm(vec)
        while norm == 0.0:  # probability zero in float64, kept for safety
            vec = gen.standard_normal(d)
            norm = np.linalg.norm(vec)
        dirs.append(UnitDirection(vec / norm))
    return DirectionSet(tuple(dirs), seed, "gaussian-normalized")
