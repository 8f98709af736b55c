"""Tests for the operator-topology seminorms and the operator norm."""

import math
from fractions import Fraction

import pytest

from blab.decomposition import FiniteBlock
from blab.exceptions import InconclusiveError, ValidationError
from blab.matrices import CoeffMatrix, FinVector, IdentityTail
from blab.models.types import VerdictKind
from blab.topology_lab.seminorms import (
  build_report,
  decaying_vector,
  geometric_vector,
  op_norm,
  strong_seminorm,
  strongstar_seminorm,
  verdict_for,
  weak_pairing,
)

F = Fraction


class TestSeminorms:
  """Test the weak, strong and strong* seminorms."""

  def test_weak_pairing(self):
    """Test <ux, y> for the identity and a single entry."""
    x = FinVector({1: F(1), 2: F(2)})
    y = FinVector({1: F(3), 2: F(1, 2)})

    assert weak_pairing(CoeffMatrix(tail=IdentityTail(1)), x, y) == 4
    assert weak_pairing(CoeffMatrix({(2, 1): F(1)}), x, y) == F(1, 2)

  def test_strong_is_exact_on_rational_squares(self):
    """Test that ||ux|| stays a Fraction when the root is rational."""
    value = strong_seminorm(CoeffMatrix({(1, 1): F(1, 2)}), FinVector.basis(1))

    assert value == F(1, 2)
    assert isinstance(value, Fraction)

  def test_strongstar_sees_the_adjoint(self):
    """Test that e_1 is killed by u but not by u*."""
    u = CoeffMatrix({(1, 2): F(1)})
    e1 = FinVector.basis(1)

    assert strong_seminorm(u, e1) == 0
    assert strongstar_seminorm(u, e1) == 1

  def test_vectors(self):
    """Test the decaying and geometric test vectors."""
    assert decaying_vector(3).norm_squared() == pytest.approx(0.875)
    assert geometric_vector(3, F(1, 2)) == FinVector({1: F(1, 2), 2: F(1, 4), 3: F(1, 8)})


class TestVerdicts:
  """Test the finite decision rule."""

  def test_verdict_for(self):
    """Test each outcome of the rule."""
    test_cases = [
      ([F(1), F(1, 2), F(0), F(0)], VerdictKind.CONVERGES_TO_ZERO, None),
      ([F(1), F(1, 2), F(1, 4)], VerdictKind.BOUNDED_AWAY, '1/4'),
      ([F(1), F(0), F(1)], VerdictKind.INCONCLUSIVE, None),
      ([], VerdictKind.INCONCLUSIVE, None),
      ([1e-3, 1e-12], VerdictKind.CONVERGES_TO_ZERO, None),
    ]
    for values, kind, bound in test_cases:
      verdict = verdict_for(values, eps_tol=1e-9)
      assert verdict.kind == kind, values
      assert verdict.bound == bound, values

  def test_build_report_sorts_samples(self):
    """Test that samples are ordered by n and formatted."""
    report = build_report('strong', [(2, F(1, 2)), (1, F(1))])

    assert [sample.n for sample in report.samples] == [1, 2]
    assert [sample.value for sample in report.samples] == ['1', '1/2']
    assert report.verdict.kind == VerdictKind.BOUNDED_AWAY
    assert report.verdict.bound == '1/2'

  def test_explicit_verdict_wins(self):
    """Test that a supplied verdict is kept."""
    report = build_report('weak', [(1, F(1))], verdict=verdict_for([F(0)], 1e-9))

    assert report.verdict.kind == VerdictKind.CONVERGES_TO_ZERO


class TestOpNorm:
  """Test the power-iteration operator norm."""

  def test_known_norms(self, half_block):
    """Test blocks with known largest singular value."""
    test_cases = [
      (FiniteBlock([[F(1), F(0)], [F(0), F(1)]]), 1.0),
      (FiniteBlock(half_block), 1.0),
      (FiniteBlock([[F(1), F(1)], [F(0), F(0)]]), math.sqrt(2)),
      (FiniteBlock([[F(1), F(0)], [F(0), F(2)]]), 2.0),
      (FiniteBlock([[0.5, 0.5], [0.5, 0.5]]), 1.0),
    ]
    for block, expected in test_cases:
      assert op_norm(block) == pytest.approx(expected, abs=1e-6)

  def test_zero_block(self):
    """Test that the zero block has norm zero."""
    assert op_norm(FiniteBlock.zeros(3)) == 0.0

  def test_never_below_row_norms(self):
    """Test the row-norm lower bound."""
    block = FiniteBlock([[F(1, 2), F(1, 2), F(0)], [F(0), F(1, 2), F(1, 2)], [F(1, 2), F(0), F(0)]])

    assert op_norm(block) >= math.sqrt(0.5) - 1e-12

  def test_iteration_cap(self, half_block):
    """Test that the cap raises with the last iterate attached."""
    with pytest.raises(InconclusiveError) as exc_info:
      op_norm(FiniteBlock(half_block), max_iterations=1)

    assert exc_info.value.details == {'iterations': 1}
    assert len(exc_info.value.last_iterate) == 2

  def test_rejects_nonpositive_tolerance(self, half_block):
    """Test eps_it validation."""
    with pytest.raises(ValidationError):
      op_norm(FiniteBlock(half_block), eps_it=0)
