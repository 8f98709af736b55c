"""Birkhoff-von Neumann and Mirsky decompositions of finite blocks.

A doubly stochastic block is peeled into permutation matrices along perfect
matchings of its support. A doubly substochastic block A is first completed to
the doubly stochastic block [[A, D_r], [D_c, A^T]], with D_r = diag(1 - row sums)
and D_c = diag(1 - column sums): every top row then sums to rowsum + (1 - rowsum)
and every bottom row j to (1 - colsum_j) + colsum_j, and symmetrically for
columns. Restricting each permutation of the completion to the upper-left corner
gives partial permutations whose convex combination is A.
"""

import logging
from typing import Any, Iterator, List, Optional, Sequence, Tuple

from blab.exceptions import (
  InvariantViolation,
  NotDoublyStochasticError,
  NotSubstochasticError,
  ParseError,
  ValidationError,
)
from blab.matrices import (
  ZERO,
  CoeffMatrix,
  PartialPermutation,
  matrix_from_payload,
)
from blab.truncation import corner, finitary_lift
from blab.utils.matching import perfect_matching
from blab.utils.scalars import Arithmetic, Scalar, format_scalar, parse_scalar

logger = logging.getLogger(__name__)

Term = Tuple[Scalar, PartialPermutation]


class FiniteBlock:
  """Nonnegative n x n block, stored as 0-based dense rows."""

  __slots__ = ('_rows', '_arithmetic')

  def __init__(self, rows: Sequence[Sequence[Scalar]], arithmetic: Optional[Arithmetic] = None):
    n = len(rows)
    if n < 1:
      raise ValidationError('A block needs at least one row', field='rows')
    if any(len(row) != n for row in rows):
      lengths = sorted({len(row) for row in rows})
      raise ValidationError(
        f'Block must be square, got {n} rows of lengths {lengths}', field='rows'
      )
    arith = arithmetic or Arithmetic.infer(value for row in rows for value in row)
    coerced = tuple(tuple(arith.coerce(value) for value in row) for row in rows)
    for i, row in enumerate(coerced):
      for j, value in enumerate(row):
        if arith.lt(value, 0):
          raise NotSubstochasticError(
            f'entry ({i + 1}, {j + 1}) is negative: {format_scalar(value)}'
          )
    self._rows = coerced
    self._arithmetic = arith

  @classmethod
  def from_matrix(cls, u: CoeffMatrix, n: int, arithmetic: Optional[Arithmetic] = None):
    """The corner of u on [1, n] x [1, n]."""
    return cls(corner(u, n).dense(n), arithmetic or u.arithmetic)

  @classmethod
  def zeros(cls, n: int) -> 'FiniteBlock':
    """All-zero n x n block."""
    return cls([[ZERO] * n for _ in range(n)])

  @property
  def n(self) -> int:
    """Block size."""
    return len(self._rows)

  @property
  def rows(self) -> Tuple[Tuple[Scalar, ...], ...]:
    """Coerced rows."""
    return self._rows

  @property
  def arithmetic(self) -> Arithmetic:
    """Arithmetic of the entries."""
    return self._arithmetic

  def entry(self, m: int, k: int) -> Scalar:
    """Entry at 1-based (m, k)."""
    return self._rows[m - 1][k - 1]

  def row_sums(self) -> List[Scalar]:
    """Row sums, first row first."""
    return [sum(row, ZERO) for row in self._rows]

  def col_sums(self) -> List[Scalar]:
    """Column sums, first column first."""
    return [sum((row[j] for row in self._rows), ZERO) for j in range(self.n)]

  def to_matrix(self) -> CoeffMatrix:
    """Zero-tail CoeffMatrix with this block in the corner."""
    return CoeffMatrix(
      {
        (i + 1, j + 1): value
        for i, row in enumerate(self._rows)
        for j, value in enumerate(row)
        if not self._arithmetic.is_zero(value)
      }
    )

  def equals(self, other: 'FiniteBlock') -> bool:
    """Entrywise equality under this block's arithmetic."""
    return self.n == other.n and all(
      self._arithmetic.eq(a, b)
      for row, other_row in zip(self._rows, other._rows)
      for a, b in zip(row, other_row)
    )

  def __eq__(self, other: object) -> bool:
    return isinstance(other, FiniteBlock) and self._rows == other._rows

  def __hash__(self) -> int:
    return hash(self._rows)

  def __repr__(self) -> str:
    return f'FiniteBlock({[[format_scalar(v) for v in row] for row in self._rows]})'

  def to_payload(self) -> dict:
    """Dense rows with formatted entries."""
    return {'rows': [[format_scalar(value) for value in row] for row in self._rows]}


def block_from_payload(payload: Any, exact: bool = True) -> FiniteBlock:
  """Decode a block from dense rows or the sparse zero-tail matrix format.

  Accepted documents: [[...], ...], {"rows": [[...], ...]}, or the matrix format
  {"tail": "zero", "entries": [...], "n": optional size}.

  Raises:
      ParseError: On malformed documents or identity-tail matrices.
  """
  arith = Arithmetic.exact() if exact else Arithmetic.floating()
  if isinstance(payload, dict) and 'rows' in payload:
    payload = payload['rows']
  if isinstance(payload, list):
    if not payload or not all(isinstance(row, list) for row in payload):
      raise ParseError('Dense block must be a non-empty list of rows')
    rows = [[parse_scalar(value, exact) for value in row] for row in payload]
    return FiniteBlock(rows, arith)
  if isinstance(payload, dict) and 'entries' in payload:
    u = matrix_from_payload(payload, exact)
    if u.has_identity_tail:
      raise ParseError('A finite block must use the zero tail')
    n = payload.get('n', u.max_index)
    if isinstance(n, bool) or not isinstance(n, int) or n < 1 or n < u.max_index:
      raise ParseError(f'Block size n={n!r} must be a positive integer covering all entries')
    return FiniteBlock.from_matrix(u, n, arith)
  raise ParseError('Expected dense rows or a matrix document')


class ConvexCombination:
  """Positive weights summing to 1 on distinct partial permutations."""

  __slots__ = ('_terms', '_arithmetic')

  def __init__(self, terms: Sequence[Term], arithmetic: Optional[Arithmetic] = None):
    arith = arithmetic or Arithmetic.infer(weight for weight, _ in terms)
    seen = set()
    for weight, perm in terms:
      if not arith.positive(weight):
        raise ValidationError(f'Weight {format_scalar(weight)} is not positive', field='terms')
      if perm in seen:
        raise ValidationError(f'{perm!r} appears twice', field='terms')
      seen.add(perm)
    total = sum((weight for weight, _ in terms), ZERO)
    if not arith.eq(total, 1):
      raise ValidationError(f'Weights sum to {format_scalar(total)}, not 1', field='terms')
    self._terms: Tuple[Term, ...] = tuple(terms)
    self._arithmetic = arith

  @property
  def terms(self) -> Tuple[Term, ...]:
    """Weighted terms in order."""
    return self._terms

  @property
  def weights(self) -> List[Scalar]:
    """Term weights in order."""
    return [weight for weight, _ in self._terms]

  @property
  def perms(self) -> List[PartialPermutation]:
    """Term permutations in order."""
    return [perm for _, perm in self._terms]

  @property
  def arithmetic(self) -> Arithmetic:
    """Arithmetic of the weights."""
    return self._arithmetic

  def __len__(self) -> int:
    return len(self._terms)

  def __iter__(self) -> Iterator[Term]:
    return iter(self._terms)

  def __eq__(self, other: object) -> bool:
    return isinstance(other, ConvexCombination) and self._terms == other._terms

  def __repr__(self) -> str:
    return f'ConvexCombination({[(format_scalar(w), p) for w, p in self._terms]})'

  def to_payload(self) -> List[dict]:
    """Terms as weight and pair lists."""
    return [
      {'weight': format_scalar(weight), 'permutation': perm.to_pairs()}
      for weight, perm in self._terms
    ]


def bvn_term_bound(n: int) -> int:
  """Upper bound n^2 - 2n + 2 on the number of peeled permutations."""
  return n * n - 2 * n + 2


def _sum_violation(a: FiniteBlock, stochastic: bool) -> Optional[Tuple[str, int, Scalar]]:
  arith = a.arithmetic
  for axis, sums in (('row', a.row_sums()), ('col', a.col_sums())):
    for index, total in enumerate(sums, start=1):
      bad = not arith.eq(total, 1) if stochastic else not arith.le(total, 1)
      if bad:
        return axis, index, total
  return None


def is_doubly_stochastic(a: FiniteBlock) -> bool:
  """True when every row and column sums to one."""
  return _sum_violation(a, stochastic=True) is None


def is_substochastic(a: FiniteBlock) -> bool:
  """True when entries are nonnegative and line sums are at most one."""
  return _sum_violation(a, stochastic=False) is None


def _require_stochastic(a: FiniteBlock) -> None:
  violation = _sum_violation(a, stochastic=True)
  if violation is not None:
    axis, index, total = violation
    label = 'row' if axis == 'row' else 'column'
    raise NotDoublyStochasticError(
      f'{label} {index} sums to {format_scalar(total)}, not 1',
      axis=axis,
      index=index,
      total=format_scalar(total),
    )


def _require_substochastic(a: FiniteBlock) -> None:
  violation = _sum_violation(a, stochastic=False)
  if violation is not None:
    axis, index, total = violation
    label = 'row' if axis == 'row' else 'column'
    raise NotSubstochasticError(
      f'{label} {index} sums to {format_scalar(total)} > 1',
      axis=axis,
      index=index,
      total=format_scalar(total),
    )


def bvn_decompose(a: FiniteBlock, eps_res: float = 1e-9) -> ConvexCombination:
  """Birkhoff-von Neumann decomposition of a doubly stochastic block.

  Repeatedly finds a perfect matching on the support of the residual (entries
  > 0 in exact mode, > eps_res in float mode), peels off the smallest matched
  entry and continues until the residual is exhausted. Matched pairs whose entry
  survives a peel are kept, and the remaining rows scan their candidate columns
  in increasing order, so the result is deterministic. Float weights are
  renormalised to sum to 1.

  Raises:
      NotDoublyStochasticError: If a row or column does not sum to 1.
      InvariantViolation: If the residual support has no perfect matching.
  """
  _require_stochastic(a)
  arith = a.arithmetic
  n = a.n
  threshold = ZERO if arith.is_exact else eps_res
  residual = [list(row) for row in a.rows]
  terms: List[Term] = []
  match: Optional[List[int]] = None

  while True:
    adjacency = [[j for j in range(n) if residual[i][j] > threshold] for i in range(n)]
    if not any(adjacency):
      break
    kept = None
    if match is not None:
      # Pairs whose entry survived the last peel stay matched
      kept = [j if residual[i][j] > threshold else None for i, j in enumerate(match)]
    match = perfect_matching(adjacency, kept)
    if match is None:
      remaining = max(sum(row) for row in residual)
      if not arith.is_exact and remaining <= n * eps_res:
        logger.debug(f'Stopping with residual row mass {remaining:.3e} below tolerance')
        break
      raise InvariantViolation(
        'Residual support of a doubly stochastic block has no perfect matching',
        details={'terms_found': len(terms), 'remaining_row_mass': format_scalar(remaining)},
      )
    weight = min(residual[i][match[i]] for i in range(n))
    for i in range(n):
      residual[i][match[i]] -= weight
    terms.append((weight, PartialPermutation({match[i] + 1: i + 1 for i in range(n)})))

  if not arith.is_exact:
    total = sum(weight for weight, _ in terms)
    terms = [(weight / total, perm) for weight, perm in terms]
  logger.debug(f'BvN decomposition of a {n}x{n} block into {len(terms)} permutations')
  return ConvexCombination(terms, arith)


def mirsky_complete(a: FiniteBlock) -> FiniteBlock:
  """Doubly stochastic 2n x 2n completion [[A, D_r], [D_c, A^T]].

  Raises:
      NotSubstochasticError: If a row or column of a sums to more than 1.
  """
  _require_substochastic(a)
  n = a.n
  row_sums, col_sums = a.row_sums(), a.col_sums()
  rows: List[List[Scalar]] = []
  for i in range(n):
    slack = [ZERO] * n
    slack[i] = 1 - row_sums[i]
    rows.append(list(a.rows[i]) + slack)
  for j in range(n):
    slack = [ZERO] * n
    slack[j] = 1 - col_sums[j]
    rows.append(slack + [a.rows[i][j] for i in range(n)])
  completion = FiniteBlock(rows, a.arithmetic)
  if not is_doubly_stochastic(completion):
    raise InvariantViolation('Completion of a substochastic block is not doubly stochastic')
  return completion


def _merge_terms(terms: Sequence[Term]) -> List[Term]:
  merged: dict = {}
  for weight, perm in terms:
    merged[perm] = merged.get(perm, ZERO) + weight
  return [(weight, perm) for perm, weight in merged.items()]


def restrict_combination(c: ConvexCombination, n: int) -> ConvexCombination:
  """Restrict every term to [1, n] and merge terms that coincide there."""
  merged = _merge_terms([(weight, perm.restrict(n)) for weight, perm in c])
  return ConvexCombination(merged, c.arithmetic)


def mirsky_decompose(a: FiniteBlock, eps_res: float = 1e-9) -> ConvexCombination:
  """Convex combination of partial permutations of [1, n] equal to a.

  Raises:
      NotSubstochasticError: If a row or column of a sums to more than 1.
  """
  completion = bvn_decompose(mirsky_complete(a), eps_res)
  restricted = restrict_combination(completion, a.n)
  logger.debug(
    f'Mirsky decomposition: {len(completion)} permutations of the completion, '
    f'{len(restricted)} partial permutations after merging'
  )
  return restricted


def finitary_decompose(u: CoeffMatrix, n: int, eps_res: float = 1e-9) -> ConvexCombination:
  """Finitary permutations whose combination is finitary_lift(u, n).

  Each term is total on [1, n]; as a finitary permutation it is the identity
  beyond n, matching the identity tail of the lift.

  Raises:
      NotDoublyStochasticError: If the lift of u at level n is not doubly stochastic.
  """
  lifted = finitary_lift(u, n)
  violations = lifted.diagnostics(stochastic=True)
  if violations:
    first = violations[0]
    raise NotDoublyStochasticError(
      f'Finitary lift at level {n} is not doubly stochastic: {first.message}',
      axis={'row_sum': 'row', 'col_sum': 'col'}.get(first.kind),
      index=first.row if first.kind == 'row_sum' else first.col,
      total=str(first.value),
    )
  return bvn_decompose(FiniteBlock.from_matrix(u, n), eps_res)


def reconstruct(c: ConvexCombination, n: int) -> FiniteBlock:
  """The block sum of t_j * matrix(P_j) on [1, n]."""
  rows: List[List[Scalar]] = [[ZERO] * n for _ in range(n)]
  for weight, perm in c:
    if not perm.within(n):
      raise ValidationError(f'{perm!r} does not act within [1, {n}]', field='n')
    for k, image in perm:
      rows[image - 1][k - 1] += weight
  return FiniteBlock(rows, c.arithmetic)


def is_extreme(a: FiniteBlock) -> bool:
  """Whether a is an extreme point of the substochastic block polytope.

  Exactly the {0, 1} blocks are extreme: an entry strictly inside (0, 1) puts a
  in the interior of a segment.

  Raises:
      NotSubstochasticError: If a is not doubly substochastic.
  """
  _require_substochastic(a)
  arith = a.arithmetic
  return all(arith.is_zero(value) or arith.eq(value, 1) for row in a.rows for value in row)
