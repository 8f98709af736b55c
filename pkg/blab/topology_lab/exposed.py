"""Exposing functionals for partial permutation matrices.

For a partial permutation u of [1, n] with column support I, the functional

  f(v) = <v x^I, u x^I> - <v x^{I^c}, x^{[1, n]}>,   x^J = sum_{j in J} 2^(-j/2) e_j,

is maximized over the partial permutations of [1, n] exactly at v = u. The
weights 2^(-j/2) are irrational, so everything here runs in floats.
"""

import logging
import math
from typing import Iterable, Optional

from blab.exceptions import BudgetExceededError, ValidationError
from blab.matrices import (
  FinVector,
  PartialPermutation,
  all_partial_permutations,
  all_permutations,
)
from blab.utils.config import DEFAULT_BUDGETS

logger = logging.getLogger(__name__)

HULLS = ('DSS', 'DS')


def weight_vector(indices: Iterable[int]) -> FinVector:
  """x^J = sum_{j in J} 2^(-j/2) e_j."""
  return FinVector({j: 2.0 ** (-j / 2) for j in indices})


def _act(v: PartialPermutation, x: FinVector) -> FinVector:
  return FinVector({image: x[k] for k, image in v if x[k] != 0})


def exposed_functional(u: PartialPermutation, v: PartialPermutation, n: int) -> float:
  """f(v) for the functional exposing u, with I the columns in u's domain."""
  if not u.within(n) or not v.within(n):
    raise ValidationError(f'u and v must act within [1, {n}]', field='n')
  support = set(u.domain)
  x_support = weight_vector(sorted(support))
  x_rest = weight_vector(k for k in range(1, n + 1) if k not in support)
  x_all = weight_vector(range(1, n + 1))
  return float(_act(v, x_support).dot(_act(u, x_support)) - _act(v, x_rest).dot(x_all))


def _candidates(u: PartialPermutation, n: int, hull: str):
  if hull not in HULLS:
    raise ValidationError(f'hull must be one of {HULLS}, got {hull!r}', field='hull')
  if hull == 'DS':
    if not u.is_total_on(n):
      raise ValidationError(f'{u!r} is not a permutation of [1, {n}]', field='u')
    return all_permutations(n)
  return all_partial_permutations(n)


def _check_budget(n: int, cap: Optional[int]) -> None:
  cap = DEFAULT_BUDGETS['exposed_n'] if cap is None else cap
  if n > cap:
    raise BudgetExceededError('exposed_n', n, cap)


def exposed_margin(
  u: PartialPermutation, n: int, hull: str = 'DSS', cap: Optional[int] = None
) -> Optional[float]:
  """min over candidates v != u of f(u) - f(v); None when u is the only candidate.

  Raises:
      BudgetExceededError: If n exceeds the exposed_n budget.
  """
  _check_budget(n, cap)
  candidates = _candidates(u, n, hull)
  peak = exposed_functional(u, u, n)
  margin = math.inf
  for v in candidates:
    if v != u:
      margin = min(margin, peak - exposed_functional(u, v, n))
  return None if margin == math.inf else margin


def exposed_verify(
  u: PartialPermutation,
  n: int,
  hull: str = 'DSS',
  cap: Optional[int] = None,
  eps_tol: float = 1e-9,
) -> bool:
  """Whether f(u) > f(v) + eps_tol for every other candidate v.

  Candidates are the partial permutations of [1, n] (hull='DSS') or the
  permutations of [1, n] (hull='DS', where u must be a permutation).

  Raises:
      BudgetExceededError: If n exceeds the exposed_n budget.
  """
  margin = exposed_margin(u, n, hull, cap)
  verified = margin is None or margin > eps_tol
  if not verified:
    logger.warning(f'{u!r} is not the unique maximizer on [1, {n}] (margin {margin})')
  return verified
