"""
Shared pytest fixtures: puts src/ on the import path and provides seeded
random generators and paths to the sample data files.
"""

import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

DATA_DIR = os.path.join(os.path.dirname(__file__), '..', 'data')


@pytest.fixture
def rng():
    """Fresh seeded generator per test."""
    return np.random.default_rng(20240607)


@pytest.fixture
def data_dir():
    return Path(DATA_DIR).resolve()
