"""Exact rational linear algebra on sparse rows.

Rows are dicts {column: Fraction} with 0-based columns. Elimination runs in
sympy's DomainMatrix over QQ, so ranks and solutions are exact.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

SparseRow = Dict[int, Fraction]


def _to_qq(value) -> object:
  value = Fraction(value)
  return QQ(value.numerator, value.denominator)


def _from_qq(value) -> Fraction:
  return Fraction(int(value.numerator), int(value.denominator))


def to_domain_matrix(rows: Sequence[SparseRow], num_cols: int) -> DomainMatrix:
  """Sparse DomainMatrix over QQ with one row per dict."""
  data = {}
  for i, row in enumerate(rows):
    converted = {j: _to_qq(value) for j, value in row.items() if value != 0}
    if converted:
      data[i] = converted
  return DomainMatrix(data, (len(rows), num_cols), QQ)


def row_reduce(rows: Sequence[SparseRow], num_cols: int) -> Tuple[List[SparseRow], Tuple[int, ...]]:
  """Reduced row echelon form: the nonzero rows and the pivot columns."""
  if not rows or num_cols == 0:
    return [], ()
  reduced, pivots = to_domain_matrix(rows, num_cols).rref()
  data = reduced.to_sparse().rep
  nonzero = [
    {j: _from_qq(value) for j, value in sorted(data[i].items())}
    for i in sorted(data)
    if data[i]
  ]
  return nonzero, tuple(pivots)


def exact_rank(rows: Sequence[SparseRow], num_cols: int) -> int:
  """Rank of the row set over QQ."""
  if not rows or num_cols == 0:
    return 0
  return to_domain_matrix(rows, num_cols).rank()


def nullity(rows: Sequence[SparseRow], num_cols: int) -> int:
  """Dimension of the null space {x : rows . x = 0} in QQ^num_cols."""
  return num_cols - exact_rank(rows, num_cols)


def incremental_rank(
  rows: Iterable[SparseRow], num_cols: int, cap: Optional[int] = None, chunk_size: int = 64
) -> int:
  """Rank of a (possibly long) stream of rows, reduced chunk by chunk.

  The echelon basis found so far is carried between chunks. Stops early once the
  rank reaches cap (default num_cols), the largest possible value.
  """
  cap = num_cols if cap is None else min(cap, num_cols)
  basis: List[SparseRow] = []
  chunk: List[SparseRow] = []
  consumed = 0

  for row in rows:
    chunk.append(row)
    consumed += 1
    if len(chunk) >= chunk_size:
      basis, _ = row_reduce(basis + chunk, num_cols)
      chunk = []
      if len(basis) >= cap:
        logger.debug(f'Rank reached its cap {cap} after {consumed} rows')
        return len(basis)
  if chunk:
    basis, _ = row_reduce(basis + chunk, num_cols)
  return len(basis)


def solve_unique(rows: Sequence[SparseRow], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
  """The unique solution of the square system rows . x = rhs, or None if singular."""
  n = len(rows)
  augmented = [dict(row) for row in rows]
  for row, value in zip(augmented, rhs):
    if value != 0:
      row[n] = Fraction(value)
  reduced, pivots = row_reduce(augmented, n + 1)
  if pivots != tuple(range(n)):
    return None
  solution = [Fraction(0)] * n
  for row in reduced:
    pivot = min(row)
    solution[pivot] = row.get(n, Fraction(0))
  return solution
