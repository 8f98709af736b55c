"""Tests for report and run configuration models."""

import os
from unittest.mock import patch

import pytest
from pydantic import ValidationError as PydanticValidationError

from blab.models.types import (
  AssertionRecord,
  DecompositionReport,
  RunConfig,
  Sample,
  SeminormReport,
  SuiteReport,
  TermRecord,
  Verdict,
  VerdictKind,
)
from blab.utils.config import DEFAULT_BUDGETS
from blab.utils.scalars import ArithmeticMode


class TestRunConfig:
  """Test RunConfig resolution and validation."""

  def test_defaults(self):
    """Test exact arithmetic, seed 0 and the default budgets."""
    config = RunConfig.from_lab_config()

    assert config.arithmetic == ArithmeticMode.EXACT
    assert config.seed == 0
    assert config.output == 'json'
    assert config.budgets == DEFAULT_BUDGETS
    assert config.arithmetic_context().is_exact

  def test_precedence(self):
    """Test flag over environment over default; None overrides are ignored."""
    env = {'BLAB_SEED': '9', 'BLAB_OUTPUT': 'csv', 'BLAB_BUDGET_SPAN_N': '4'}
    with patch.dict(os.environ, env):
      from_env = RunConfig.from_lab_config(seed=None)
      from_flag = RunConfig.from_lab_config(seed=2, output='json')

    assert (from_env.seed, from_env.output, from_env.budget('span_n')) == (9, 'csv', 4)
    assert (from_flag.seed, from_flag.output) == (2, 'json')

  def test_float_context(self):
    """Test that the float context carries eps_tol."""
    config = RunConfig(arithmetic=ArithmeticMode.FLOAT, eps_tol=1e-6)

    arith = config.arithmetic_context()
    assert not arith.is_exact
    assert arith.tolerance == 1e-6

  def test_validation(self):
    """Test the seed range and positive eps_tol."""
    test_cases = [{'seed': -1}, {'seed': 2**64}, {'eps_tol': 0}, {'output': 'xml'}]
    for values in test_cases:
      with pytest.raises(PydanticValidationError):
        RunConfig(**values)


class TestReports:
  """Test report models."""

  def test_samples_must_increase(self):
    """Test that seminorm samples are strictly increasing in n."""
    verdict = Verdict(kind=VerdictKind.INCONCLUSIVE)
    with pytest.raises(PydanticValidationError):
      SeminormReport(
        label='x', samples=[Sample(n=2, value='0'), Sample(n=2, value='0')], verdict=verdict
      )

  def test_failures(self):
    """Test the failing assertions of a suite report."""
    report = SuiteReport(
      suite='span',
      claim='claim',
      seed=0,
      arithmetic=ArithmeticMode.EXACT,
      assertions=[
        AssertionRecord(name='a', passed=True),
        AssertionRecord(name='b', measured=3, bound=4, passed=False),
      ],
      passed=False,
    )

    assert [record.name for record in report.failures] == ['b']

  def test_decomposition_report(self):
    """Test term records inside a decomposition report and the size bound."""
    term = TermRecord(weight='1/2', permutation=[[1, 2], [2, 1]])
    report = DecompositionReport(
      mode='bvn', arithmetic=ArithmeticMode.EXACT, n=2, terms=[term], residual='0'
    )

    assert report.model_dump(mode='json')['terms'] == [
      {'weight': '1/2', 'permutation': [[1, 2], [2, 1]]}
    ]
    with pytest.raises(PydanticValidationError):
      DecompositionReport(mode='bvn', arithmetic=ArithmeticMode.EXACT, n=0, residual='0')
