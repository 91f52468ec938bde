"""Gauss-Jacobi rules for the weakly singular integrals used across the package."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi


@lru_cache(maxsize=512)
def _rule(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_jacobi(n, a, b)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def jacobi_01(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for int_0^1 (1-x)^a x^b f(x) dx with f smooth.

    The singular endpoint powers are absorbed by the weight, so ``f`` is
    evaluated at interior nodes only.
    """
    x, w = _rule(n, float(a), float(b))
    return (x + 1.0) / 2.0, w * 0.5 ** (a + b + 1.0)
