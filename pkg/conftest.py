import os
import sys

import numpy as np
from pytest import fixture

# Modules live flat at the repository root
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from optimizer import OptimizerConfig  # noqa: E402


@fixture
def rng():
    return np.random.default_rng(1234)


@fixture
def fast_optimizer():
    """Smaller search budget that still lands on Bell-diagonal optima"""
    return OptimizerConfig(restarts=2, iterations=60)
