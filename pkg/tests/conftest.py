import sys
import warnings
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from squeezelab import (OscillatorFrame, SqueezedCoherentSpec,
                        TruncationWarning, squeezed_coherent_vector)


@pytest.fixture(scope="session")
def unit_frame():
    return OscillatorFrame()


@pytest.fixture(scope="session")
def fig1_spec():
    """The animation snapshot parameters: r=2, phi=0, alpha=3+3i."""
    return SqueezedCoherentSpec.from_alpha(2.0, 0.0, 3 + 3j)


@pytest.fixture(scope="session")
def fig1_vector_800(fig1_spec, unit_frame):
    """Engine state for the snapshot spec at a truncation that keeps the
    boundary quiet (the dimension-selection rule lands at 740)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        return squeezed_coherent_vector(fig1_spec, 800, unit_frame)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260809)
