"""Pytest configuration and shared fixtures for the lab tests.

Provides the Isbell witness matrix, small blocks, arithmetic contexts and a click
runner with a clean lab environment.
"""

import os
from fractions import Fraction
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from blab.utils.scalars import Arithmetic

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


@pytest.fixture(autouse=True)
def clean_lab_environment():
  """Drop BLAB_* variables so tests see the configuration defaults."""
  clean = {key: value for key, value in os.environ.items() if not key.startswith('BLAB_')}
  with patch.dict(os.environ, clean, clear=True):
    yield


@pytest.fixture
def isbell3():
  """Isbell witness with blocks of sizes 1, 2 and 3."""
  from blab.topology_lab.witnesses import isbell_matrix

  return isbell_matrix(3)


@pytest.fixture
def exact():
  """Exact arithmetic."""
  return Arithmetic.exact()


@pytest.fixture
def floating():
  """Float arithmetic with the default tolerance."""
  return Arithmetic.floating(1e-9)


@pytest.fixture
def half_block():
  """The 2 x 2 block with every entry 1/2."""
  return [[HALF, HALF], [HALF, HALF]]


@pytest.fixture
def third_block():
  """The 3 x 3 block with every entry 1/3."""
  return [[THIRD] * 3 for _ in range(3)]


@pytest.fixture
def runner():
  """Click test runner."""
  return CliRunner()
