"""Linear discriminators: a feature map plus a final projection direction.

The discriminator scores a point ``x`` as ``omega . h(x)`` where ``h`` is
one of three feature maps:

* ``identity``          h(x) = x
* ``fixed-linear``      h(x) = M x          (M frozen)
* ``trainable-affine``  h(x) = A x + b      (A, b learned)

Training maximizes the logistic classification objective

    sum_{x in real} log sigmoid(omega . h(x))
      + sum_{x in fake} log(1 - sigmoid(omega . h(x)))

by gradient ascent over ``omega`` (and ``A``, ``b`` when trainable), with
``omega`` renormalized onto the unit sphere after every step. Gradients
are norm-clipped so separable data never produces a non-finite update.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from scipy.special import expit, log_expit

from .core import Seed, SeedLike, UnitDirection, as_seed

__all__ = ["Discriminator", "logistic_objective", "logistic_ascent"]

IDENTITY = "identity"
FIXED_LINEAR = "fixed-linear"
TRAINABLE_AFFINE = "trainable-affine"
_KINDS = (IDENTITY, FIXED_LINEAR, TRAINABLE_AFFINE)


@dataclass(frozen=True)
class Discriminator:
    """Feature map ``h`` with parameters plus final direction ``omega``.

    ``matrix`` is M (fixed-linear) or A (trainable-affine), ``offset`` is b
    (trainable-affine only). ``omega`` lives in feature space: dimension r
    for linear/affine maps, the data dimension for the identity map.
    """

    kind: str
    omega: UnitDirection
    matrix: Optional[np.ndarray] = None
    offset: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown feature kind {self.kind!r}; expected one of {_KINDS}")
        if self.kind == IDENTITY:
            if self.matrix is not None or self.offset is not None:
                raise ValueError("identity features take no matrix/offset")
            return
        if self.matrix is None:
            raise ValueError(f"{self.kind} features need a matrix")
        mat = np.asarray(self.matrix, dtype=np.float64)
        if mat.ndim != 2 or not np.all(np.isfinite(mat)):
            raise ValueError("feature matrix must be a finite 2-d array")
        if mat.shape[0] != self.omega.dim:
            raise ValueError(
                f"omega dimension {self.omega.dim} does not match feature rows {mat.shape[0]}"
            )
        object.__setattr__(self, "matrix", mat)
        if self.kind == FIXED_LINEAR:
            if self.offset is not None:
                raise ValueError("fixed-linear features take no offset")
            return
        off = np.zeros(mat.shape[0]) if self.offset is None else np.asarray(
            self.offset, dtype=np.float64
        ).reshape(-1)
        if off.shape != (mat.shape[0],) or not np.all(np.isfinite(off)):
            raise ValueError(f"offset must be a finite vector of length {mat.shape[0]}")
        object.__setattr__(self, "offset", off)

    @classmethod
    def initialize(
        cls,
        kind: str,
        data_dim: int,
        feature_dim: Optional[int] = None,
        seed: SeedLike = 0,
    ) -> "Discriminator":
        """Seeded random ``omega`` (and matrix for non-identity maps)."""
        gen = as_seed(seed).generator()
        if kind == IDENTITY:
            return cls(kind, _random_unit(gen, data_dim))
        r = data_dim if feature_dim is None else feature_dim
        mat = gen.standard_normal((r, data_dim)) / np.sqrt(data_dim)
        omega = _random_unit(gen, r)
        if kind == FIXED_LINEAR:
            return cls(kind, omega, mat)
        return cls(kind, omega, mat, np.zeros(r))

    @property
    def data_dim(self) -> Optional[int]:
        return None if self.kind == IDENTITY else self.matrix.shape[1]

    @property
    def feature_dim(self) -> int:
        return self.omega.dim

    def features(self, points: np.ndarray) -> np.ndarray:
        """Map (n, d) points into feature space, shape (n, r)."""
        pts = np.asarray(points, dtype=np.float64)
        if self.kind == IDENTITY:
            return pts
        out = pts @ self.matrix.T
        if self.kind == TRAINABLE_AFFINE:
            out = out + self.offset
        return out

    def scores(self, points: np.ndarray) -> np.ndarray:
        """omega . h(x) for each point."""
        return self.features(points) @ self.omega.components

    def backmap(self) -> np.ndarray:
        """Gradient of ``omega . h(x)`` with respect to x (constant in x)."""
        if self.kind == IDENTITY:
            return self.omega.components
        return self.matrix.T @ self.omega.components


def _random_unit(gen: np.random.Generator, dim: int) -> UnitDirection:
    vec = gen.standard_normal(dim)
    norm = np.linalg.norm(vec)
    while norm == 0.0:
        vec = gen.standard_normal(dim)
        norm = np.linalg.norm(vec)
    return UnitDirection(vec / norm)


def logistic_objective(disc: Discriminator, real: np.ndarray, fake: np.ndarray) -> float:
    """Log-likelihood of classifying ``real`` as 1 and ``fake`` as 0."""
    z_real = disc.scores(real)
    z_fake = disc.scores(fake)
    return float(np.sum(log_expit(z_real)) + np.sum(log_expit(-z_fake)))


def _clipped(grad: np.ndarray, cap: float) -> np.ndarray:
    norm = np.linalg.norm(grad)
    if norm > cap:
        return grad * (cap / norm)
    return grad


def logistic_ascent(
    disc: Discriminator,
    real: np.ndarray,
    fake: np.ndarray,
    steps: int,
    rate: float,
    grad_clip: float = 100.0,
) -> Discriminator:
    """``steps`` gradient-ascent updates of the logistic objective.

    Updates follow the per-sample mean gradient (same maximizers as the
    summed objective, but the step scale is independent of the sample
    count, which keeps the renormalized iterates from overshooting).
    ``omega`` is renormalized to the unit sphere after every step; all
    gradient blocks are norm-clipped at ``grad_clip``, so the returned
    parameters are always finite even on linearly separable data.
    """
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, got {steps}")
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    real = np.asarray(real, dtype=np.float64)
    fake = np.asarray(fake, dtype=np.float64)
    n_real, n_fake = real.shape[0], fake.shape[0]
    for _ in range(steps):
        h_real = disc.features(real)
        h_fake = disc.features(fake)
        omega = disc.omega.components
        w_real = expit(-(h_real @ omega)) / n_real  # 1 - sigmoid(z) on real points
        w_fake = expit(h_fake @ omega) / n_fake  # sigmoid(z) on fake points
        g_omega = _clipped(w_real @ h_real - w_fake @ h_fake, grad_clip)
        cand = omega + rate * g_omega
        norm = np.linalg.norm(cand)
        new_omega = disc.omega if norm == 0.0 else UnitDirection(cand / norm)
        if disc.kind == TRAINABLE_AFFINE:
            g_mat = _clipped(
                np.outer(omega, w_real @ real) - np.outer(omega, w_fake @ fake),
                grad_clip,
            )
            g_off = _clipped((w_real.sum() - w_fake.sum()) * omega, grad_clip)
            disc = replace(
                disc,
                omega=new_omega,
                matrix=disc.matrix + rate * g_mat,
                offset=disc.offset + rate * g_off,
            )
        else:
            disc = replace(disc, omega=new_omega)
    return disc
