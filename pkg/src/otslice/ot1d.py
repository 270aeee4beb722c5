"""Exact 1-d Wasserstein distances between equal-size scalar samples.

For two samples of the same size with uniform weights the optimal transport
plan is the monotone rank-to-rank matching, so the distance reduces to
sorting both samples and averaging the matched differences:

.. math::
    W_p^p(a, b) = \\frac{1}{n} \\sum_i |a_{\\pi_a(i)} - b_{\\pi_b(i)}|^p

with stable sort permutations ``pi_a``, ``pi_b``. Both samples must have
the same length; unequal sizes are rejected rather than interpolated so
the matching stays exact.
"""

from __future__ import annotations

import numpy as np

__all__ = ["sorted_w2_squared", "sorted_wp"]


def _checked(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.size == 0 or b.size == 0:
        raise ValueError("samples must be non-empty")
    if a.size != b.size:
        raise ValueError(f"samples must have equal length, got {a.size} and {b.size}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("sample values must be finite")
    return a, b


def sorted_w2_squared(a, b) -> float:
    """Squared 1-d Wasserstein-2 distance between equal-size samples.

    Parameters
    ----------
    a, b : array-like, shape (n,)
        Scalar samples, each carrying weight 1/n.

    Returns
    -------
    float
        ``(1/n) * sum((sort(a) - sort(b))**2)``, which equals the minimum
        over all bijective matchings of the mean squared difference.
    """
    a, b = _checked(a, b)
    diff = np.sort(a, kind="stable") - np.sort(b, kind="stable")
    return float(np.mean(diff * diff))


def sorted_wp(a, b, p: float = 2.0) -> float:
    """1-d Wasserstein-p distance between equal-size samples.

    Parameters
    ----------
    a, b : array-like, shape (n,)
        Scalar samples, each carrying weight 1/n.
    p : float
        Transport order, >= 1.

    Returns
    -------
    float
        ``[(1/n) * sum(|sort(a) - sort(b)|**p)] ** (1/p)``.
    """
    if p < 1:
        raise ValueError(f"transport order must satisfy p >= 1, got {p}")
    a, b = _checked(a, b)
    diff = np.abs(np.sort(a, kind="stable") - np.sort(b, kind="stable"))
    if p == 2.0:
        return float(np.sqrt(np.mean(diff * diff)))
    if p == 1.0:
        return float(np.mean(diff))
    return float(np.mean(diff**p) ** (1.0 / p))
