"""Exact vertex enumeration for the doubly substochastic polytope.

The polytope {X in R^{n x n} : X >= 0, row sums <= 1, column sums <= 1} is kept in
H-representation A x <= b over the vectorised entries x[i * n + j]. A point is a
vertex when n^2 linearly independent constraints are tight at it, so choosing
every n^2-subset of constraints, solving exactly and keeping feasible solutions
enumerates all vertices. Only small n is tractable.
"""

import itertools
import logging
from fractions import Fraction
from typing import List, Set, Tuple

from blab.exceptions import ValidationError
from blab.utils.linalg import SparseRow, solve_unique

logger = logging.getLogger(__name__)

Vertex = Tuple[Tuple[Fraction, ...], ...]


def substochastic_constraints(n: int) -> List[Tuple[SparseRow, Fraction]]:
  """Rows (a, b) of A x <= b: -x_v <= 0, then row sums, then column sums."""
  one = Fraction(1)
  constraints = [({v: -one}, Fraction(0)) for v in range(n * n)]
  constraints += [({i * n + j: one for j in range(n)}, one) for i in range(n)]
  constraints += [({i * n + j: one for i in range(n)}, one) for j in range(n)]
  return constraints


def _feasible(constraints: List[Tuple[SparseRow, Fraction]], x: List[Fraction]) -> bool:
  return all(sum(coef * x[v] for v, coef in row.items()) <= bound for row, bound in constraints)


def _vacuous(chosen: Tuple[int, ...], n: int) -> bool:
  """A tight sum constraint whose every variable is also forced to zero."""
  zeroed = {c for c in chosen if c < n * n}
  for c in chosen:
    if c < n * n:
      continue
    line = c - n * n
    cells = (
      [line * n + j for j in range(n)] if line < n else [i * n + (line - n) for i in range(n)]
    )
    if all(cell in zeroed for cell in cells):
      return True
  return False


def substochastic_vertices(n: int) -> Set[Vertex]:
  """All vertices of the n x n doubly substochastic polytope, as tuples of rows."""
  if n < 1:
    raise ValidationError(f'Block size must be positive, got {n}', field='n')
  constraints = substochastic_constraints(n)
  dimension = n * n
  vertices: Set[Vertex] = set()
  bases = 0

  for chosen in itertools.combinations(range(len(constraints)), dimension):
    if _vacuous(chosen, n):
      continue
    bases += 1
    x = solve_unique([constraints[c][0] for c in chosen], [constraints[c][1] for c in chosen])
    if x is None or not _feasible(constraints, x):
      continue
    vertices.add(tuple(tuple(x[i * n : (i + 1) * n]) for i in range(n)))

  logger.info(f'Enumerated {len(vertices)} vertices for n={n} from {bases} candidate bases')
  return vertices
