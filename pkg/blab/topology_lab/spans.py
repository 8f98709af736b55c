"""Finite span and commutant dimensions, computed by exact rank.

commutant_dimension(m) solves X P = P X for the generators (1 2) and
(1 2 ... m) of the symmetric group: the solutions are span(Id, all-ones), so
the dimension is 2 for m >= 2. span_dimension counts the dimension of the real
span of n x n permutation matrices, (n - 1)^2 + 1, or of the corners of
finitary permutations of [1, 2n], n^2.
"""

import logging
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional

from blab.exceptions import BudgetExceededError, ValidationError
from blab.matrices import (
  CoeffMatrix,
  PartialPermutation,
  all_partial_permutations,
  all_permutations,
  permutation_matrix,
  standard_representation,
)
from blab.topology_lab.witnesses import weak_closure_witness
from blab.truncation import corner
from blab.utils.config import DEFAULT_BUDGETS
from blab.utils.linalg import SparseRow, incremental_rank, nullity

logger = logging.getLogger(__name__)


class SpanVariant(str, Enum):
  """Which family of n x n matrices to span."""

  TAIL_LIFT = 'TailLift'
  CORNER = 'Corner'


def _check_budget(name: str, value: int, cap: Optional[int]) -> None:
  if isinstance(value, bool) or not isinstance(value, int) or value < 1:
    raise ValidationError(f'{name} must be a positive integer, got {value!r}', field=name)
  cap = DEFAULT_BUDGETS[name] if cap is None else cap
  if value > cap:
    raise BudgetExceededError(name, value, cap)


def symmetric_group_generators(m: int) -> List[PartialPermutation]:
  """The transposition (1 2) and the long cycle (1 2 ... m); none for m = 1."""
  if m < 2:
    return []
  generators = [PartialPermutation.from_cycles((1, 2))]
  if m > 2:
    generators.append(PartialPermutation.from_cycles(tuple(range(1, m + 1))))
  return generators


def commutant_equations(m: int) -> List[SparseRow]:
  """Rows X[i, s(j)] - X[s^-1(i), j] = 0 for each generator s, over unknowns X[i, j]."""
  rows: List[SparseRow] = []
  for generator in symmetric_group_generators(m):
    total = {k: generator(k) or k for k in range(1, m + 1)}
    inverse = {image: k for k, image in total.items()}
    for i in range(1, m + 1):
      for j in range(1, m + 1):
        left = (i - 1) * m + total[j] - 1
        right = (inverse[i] - 1) * m + j - 1
        if left != right:
          rows.append({left: Fraction(1), right: Fraction(-1)})
  return rows


def commutant_dimension(m: int, cap: Optional[int] = None) -> int:
  """Dimension of the commutant of the permutation representation of S_m.

  Raises:
      BudgetExceededError: If m exceeds the commutant_m budget.
  """
  _check_budget('commutant_m', m, cap)
  dimension = nullity(commutant_equations(m), m * m)
  logger.debug(f'Commutant of S_{m}: dimension {dimension}')
  return dimension


def _vectorize(u: CoeffMatrix, n: int) -> SparseRow:
  return {(m - 1) * n + k - 1: Fraction(value) for (m, k), value in u.items() if m <= n and k <= n}


def _tail_lift_rows(n: int) -> Iterator[SparseRow]:
  for p in all_permutations(n):
    yield _vectorize(permutation_matrix(p), n)


def _corner_rows(n: int) -> Iterator[SparseRow]:
  # Every partial permutation of [1, n] is the corner of a permutation of [1, 2n]
  for v in all_partial_permutations(n):
    lifted = standard_representation(weak_closure_witness(v, n))
    yield _vectorize(corner(lifted, n), n)


def span_dimension(n: int, variant: SpanVariant, cap: Optional[int] = None) -> int:
  """Dimension of the real span of the chosen family, vectorized in R^{n^2}.

  Raises:
      BudgetExceededError: If n exceeds the span_n budget.
  """
  _check_budget('span_n', n, cap)
  try:
    variant = SpanVariant(variant)
  except ValueError:
    choices = [v.value for v in SpanVariant]
    raise ValidationError(f'variant must be one of {choices}, got {variant!r}', field='variant')
  rows = _tail_lift_rows(n) if variant == SpanVariant.TAIL_LIFT else _corner_rows(n)
  dimension = incremental_rank(rows, n * n)
  logger.debug(f'{variant.value} span at n={n}: dimension {dimension}')
  return dimension


def cycle(length: int) -> PartialPermutation:
  """The cycle (1 2 ... length)."""
  return PartialPermutation.from_cycles(tuple(range(1, length + 1)))


def noncommuting_cycles(k_max: int) -> Dict[str, object]:
  """Check that the cycles (1 ... k + 1), 1 <= k <= k_max, pairwise fail to commute.

  Commutation is tested on the standard representation through matrix products.
  Returns the number of pairs checked and the pairs that do commute.
  """
  if k_max < 1:
    raise ValidationError(f'k_max must be positive, got {k_max}', field='k_max')
  matrices = {k: standard_representation(cycle(k + 1)) for k in range(1, k_max + 1)}
  commuting = [
    [i, j]
    for i, j in combinations(range(1, k_max + 1), 2)
    if matrices[i].compose(matrices[j]) == matrices[j].compose(matrices[i])
  ]
  pairs = k_max * (k_max - 1) // 2
  return {'pairs': pairs, 'commuting': commuting}
