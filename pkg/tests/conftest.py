import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make oracles importable

from trivml.series import LambdaTriple, MLParams


@pytest.fixture
def rng():
    return np.random.default_rng(90210)


def tame_params(rng, eta_range=(0.5, 2.0)) -> MLParams:
    """Parameter draws on which every backend (series, contour, Talbot) is sound."""
    a, b, g = rng.uniform(0.5, 1.5, 3)
    return MLParams(a, b, g, rng.uniform(1.0, 2.2), rng.uniform(*eta_range))


def tame_lambdas(rng, bound=0.8) -> LambdaTriple:
    return LambdaTriple(*rng.uniform(-bound, bound, 3))
