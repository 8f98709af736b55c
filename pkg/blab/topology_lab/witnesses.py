"""Witness objects for closure and convergence claims.

The Isbell matrix (diagonal blocks of sizes 1, 2, 3, ... with block j filled by
1/j) is doubly stochastic, yet every finite convex combination b of p finitary
permutations stays at distance at least sqrt((n - p^2) / n) from it on block n.
Shift permutations, the rank-one shifts and the weak-closure witnesses realise
the convergence statements on finitely supported vectors.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np

from blab.decomposition import ConvexCombination
from blab.exceptions import PTooLargeError, ValidationError
from blab.matrices import (
  ONE,
  ZERO,
  CoeffMatrix,
  FinVector,
  PartialPermutation,
  linear_combination,
  permutation_matrix,
  standard_representation,
)
from blab.models.types import SeminormReport, Verdict, VerdictKind
from blab.topology_lab.seminorms import build_report, strong_seminorm, weak_pairing
from blab.truncation import finitary_lift
from blab.utils.scalars import Arithmetic, Scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IsbellMatrix:
  """Isbell witness truncated to blocks 1..num_blocks."""

  num_blocks: int
  realized: CoeffMatrix

  @property
  def dimension(self) -> int:
    """Size of the finitary lift, n(n+1)/2."""
    return self.num_blocks * (self.num_blocks + 1) // 2

  def block_offset(self, j: int) -> int:
    """Number of indices before block j."""
    return j * (j - 1) // 2

  def block_columns(self, j: int) -> range:
    """Indices of block j (rows and columns coincide)."""
    if not 1 <= j <= self.num_blocks:
      raise ValidationError(
        f'Block {j} does not exist; the matrix has {self.num_blocks} blocks', field='block'
      )
    offset = self.block_offset(j)
    return range(offset + 1, offset + j + 1)

  @cached_property
  def lifted(self) -> CoeffMatrix:
    """The realized blocks followed by the identity tail; doubly stochastic."""
    return finitary_lift(self.realized, self.dimension)


def isbell_matrix(num_blocks: int) -> IsbellMatrix:
  """Blocks of sizes 1..num_blocks, block j filled with 1/j."""
  if isinstance(num_blocks, bool) or not isinstance(num_blocks, int) or num_blocks < 1:
    raise ValidationError(f'num_blocks must be a positive integer, got {num_blocks!r}')
  entries = {}
  for j in range(1, num_blocks + 1):
    offset = j * (j - 1) // 2
    for m in range(offset + 1, offset + j + 1):
      for k in range(offset + 1, offset + j + 1):
        entries[(m, k)] = Fraction(1, j)
  return IsbellMatrix(num_blocks, CoeffMatrix(entries))


@dataclass(frozen=True)
class IsbellGap:
  """Witness x with gap ||(a - b) x||^2 against the bound (n - p^2) / n."""

  witness: FinVector
  gap: Scalar
  bound: Fraction
  witness_kind: str
  free_columns: int


def combination_matrix(b: ConvexCombination) -> CoeffMatrix:
  """sum_j t_j pi(rho_j) for finitary permutations rho_j."""
  return linear_combination([(weight, standard_representation(perm)) for weight, perm in b])


def _difference_column(
  a: CoeffMatrix, b: CoeffMatrix, column: int, arithmetic: Arithmetic
) -> Dict[int, Scalar]:
  """Nonzero entries of column `column` of a - b."""
  entries = dict(a.column(column))
  for m, value in b.column(column).items():
    entries[m] = entries.get(m, ZERO) - value
  return {m: value for m, value in entries.items() if not arithmetic.is_zero(value)}


def _free_column_gap(
  columns: Dict[int, Dict[int, Scalar]], arithmetic: Arithmetic
) -> Tuple[FinVector, Scalar]:
  image: Dict[int, Scalar] = {}
  for entries in columns.values():
    for m, value in entries.items():
      image[m] = image.get(m, ZERO) + value
  gap = FinVector(image).norm_squared() / len(columns)
  scale = arithmetic.sqrt(Fraction(1, len(columns)))
  return FinVector({c: ONE for c in columns}).scale(scale), gap


def _singular_vector_gap(columns: Dict[int, Dict[int, Scalar]]) -> Tuple[FinVector, float]:
  rows = sorted({m for entries in columns.values() for m in entries})
  if not rows:
    return FinVector(), 0.0
  row_index = {m: i for i, m in enumerate(rows)}
  order = sorted(columns)
  matrix = np.zeros((len(rows), len(order)))
  for j, c in enumerate(order):
    for m, value in columns[c].items():
      matrix[row_index[m], j] = float(value)
  _, _, vt = np.linalg.svd(matrix)
  top = vt[0]
  gap = float(np.linalg.norm(matrix @ top) ** 2)
  return FinVector({c: float(top[j]) for j, c in enumerate(order)}), gap


def isbell_gap(
  a: IsbellMatrix, b: ConvexCombination, block: int, b_matrix: Optional[CoeffMatrix] = None
) -> IsbellGap:
  """Witness separating b from the Isbell matrix on the given block.

  When at least n - p^2 columns of the block meet no nonzero of b in the block
  rows, the witness is the normalized indicator of those columns and the gap is
  exact: each block row of (a - b) x then equals sqrt(|C|) / n. Otherwise the
  witness is the top right singular vector of (a - b) on the block columns and
  the columns b maps into the block rows.

  Args:
      a: The Isbell witness.
      b: Convex combination of finitary permutations.
      block: Block size n.
      b_matrix: combination_matrix(b), when the caller already has it.

  Raises:
      PTooLargeError: If p^2 >= n, where the bound is vacuous.
      ValidationError: If the block does not exist or a term is not finitary.
  """
  p = len(b)
  n = block
  if p * p >= n:
    raise PTooLargeError(p, n)
  block_indices = list(a.block_columns(n))
  block_rows = set(block_indices)
  bound = Fraction(n - p * p, n)
  arithmetic = b.arithmetic

  b_matrix = combination_matrix(b) if b_matrix is None else b_matrix
  free = [c for c in block_indices if not block_rows.intersection(b_matrix.column(c))]

  if len(free) >= n - p * p:
    columns = {c: _difference_column(a.lifted, b_matrix, c, arithmetic) for c in free}
    witness, gap = _free_column_gap(columns, arithmetic)
    kind = 'free_columns'
  else:
    feeding = {
      k for (m, k), _ in b_matrix.items() if m in block_rows and k not in block_rows
    }
    columns = {
      c: _difference_column(a.lifted, b_matrix, c, arithmetic)
      for c in block_indices + sorted(feeding)
    }
    witness, gap = _singular_vector_gap(columns)
    kind = 'singular_vector'

  logger.debug(
    f'Isbell block {n}, p={p}: {len(free)} free columns, {kind} gap {float(gap):.6f} '
    f'against bound {float(bound):.6f}'
  )
  return IsbellGap(witness, gap, bound, kind, len(free))


def shift_permutation(n: int) -> PartialPermutation:
  """Block swap k <-> k + n on [1, 2n]; the identity beyond 2n."""
  if isinstance(n, bool) or not isinstance(n, int) or n < 1:
    raise ValidationError(f'n must be a positive integer, got {n!r}', field='n')
  mapping = {k: k + n for k in range(1, n + 1)}
  mapping.update({k: k - n for k in range(n + 1, 2 * n + 1)})
  return PartialPermutation(mapping)


def rank_one_shift(n: int) -> CoeffMatrix:
  """The matrix with a single 1 at (1, n); it maps e_n to e_1."""
  return CoeffMatrix({(1, n): ONE})


def _eventual_zero_verdict(samples: List[Tuple[int, Scalar]], level: int) -> Optional[Verdict]:
  """Exact-zero rule once the sweep reaches the supports; None if it never does."""
  beyond = [value for n, value in samples if n >= level]
  if not beyond:
    return None
  if all(value == 0 for value in beyond):
    return Verdict(kind=VerdictKind.CONVERGES_TO_ZERO)
  return Verdict(kind=VerdictKind.INCONCLUSIVE)


def weak_null_sweep(
  x: FinVector, y: FinVector, max_n: int, eps_tol: float = 1e-9
) -> SeminormReport:
  """<pi(rho_n) x, y> for the shift permutations rho_n, n = 1..max_n.

  Converges to zero exactly once n reaches the supports of x and y.
  """
  samples = [
    (n, weak_pairing(standard_representation(shift_permutation(n)), x, y))
    for n in range(1, max_n + 1)
  ]
  level = max(x.max_index, y.max_index, 1)
  verdict = _eventual_zero_verdict(samples, level)
  return build_report('weak_null', samples, eps_tol, verdict)


def strong_not_strongstar_sweep(
  x: FinVector, max_n: int, eps_tol: float = 1e-9
) -> Tuple[SeminormReport, SeminormReport]:
  """||u_n x|| and ||u_n* e_1|| for the rank-one shifts u_n, n = 1..max_n."""
  e1 = FinVector.basis(1)
  strong = [(n, strong_seminorm(rank_one_shift(n), x)) for n in range(1, max_n + 1)]
  adjoint = [(n, strong_seminorm(rank_one_shift(n).adjoint(), e1)) for n in range(1, max_n + 1)]
  return (
    build_report('strong', strong, eps_tol),
    build_report('strongstar_adjoint', adjoint, eps_tol),
  )


def weak_closure_witness(u: PartialPermutation, n: int) -> PartialPermutation:
  """Permutation of [1, 2n] agreeing with u on its domain.

  The t-th free column of [1, n] goes to n + t and n + t goes to the t-th free
  row, so the block [n + 1, 2n] absorbs what u leaves undefined.
  """
  if not u.within(n):
    raise ValidationError(f'{u!r} does not act within [1, {n}]', field='u')
  free_columns = [k for k in range(1, n + 1) if u(k) is None]
  image = set(u.image)
  free_rows = [m for m in range(1, n + 1) if m not in image]
  mapping = u.mapping
  for t, (column, row) in enumerate(zip(free_columns, free_rows), start=1):
    mapping[column] = n + t
    mapping[n + t] = row
  for t in range(len(free_columns) + 1, n + 1):
    mapping[n + t] = n + t
  return PartialPermutation(mapping)


def weak_closure_sweep(
  u: PartialPermutation, x: FinVector, y: FinVector, max_n: int, eps_tol: float = 1e-9
) -> SeminormReport:
  """|<(pi(w_n) - u) x, y>| for the weak-closure witnesses w_n of u."""
  start = max(u.max_index, 1)
  if max_n < start:
    raise ValidationError(f'max_n={max_n} is below the support of u ({start})', field='max_n')
  target = weak_pairing(permutation_matrix(u), x, y)
  samples = [
    (n, abs(weak_pairing(standard_representation(weak_closure_witness(u, n)), x, y) - target))
    for n in range(start, max_n + 1)
  ]
  level = max(start, x.max_index, y.max_index)
  verdict = _eventual_zero_verdict(samples, level)
  return build_report('weak_closure', samples, eps_tol, verdict)
