"""Corner and border truncations, the finitary lift and approximation gaps.

corner(u, n) keeps the entries with m, k <= n; border(u, n) keeps those with
m <= n or k <= n; finitary_lift(u, n) is the corner completed by the identity
from n + 1 on. The gap functions measure how far a truncation is from u on given
finitely supported vectors, exactly.
"""

import math
from typing import Optional

from blab.exceptions import ValidationError
from blab.matrices import CoeffMatrix, FinVector, IdentityTail
from blab.utils.scalars import Arithmetic, Scalar


def _level(n: int) -> int:
  if isinstance(n, bool) or not isinstance(n, int) or n < 1:
    raise ValidationError(f'Truncation level must be a positive integer, got {n!r}', field='n')
  return n


def corner(u: CoeffMatrix, n: int) -> CoeffMatrix:
  """Zero-tail matrix agreeing with u on [1, n] x [1, n]."""
  n = _level(n)
  return CoeffMatrix(
    {(m, k): value for (m, k), value in u.materialize(n).items() if m <= n and k <= n}
  )


def border(u: CoeffMatrix, n: int) -> CoeffMatrix:
  """Zero-tail matrix agreeing with u on rows <= n and columns <= n.

  The tail diagonal outside the border is dropped; diagonal tail entries with
  index <= n are kept as explicit entries.
  """
  n = _level(n)
  return CoeffMatrix(
    {(m, k): value for (m, k), value in u.materialize(n).items() if m <= n or k <= n}
  )


def far_block(u: CoeffMatrix, n: int) -> CoeffMatrix:
  """u - border(u, n): the part of u with m > n and k > n, tail included."""
  n = _level(n)
  far = {(m, k): value for (m, k), value in u.items() if m > n and k > n}
  if not u.has_identity_tail:
    return CoeffMatrix(far)
  return CoeffMatrix(far, IdentityTail(max(u.tail.start, n + 1)))


def finitary_lift(u: CoeffMatrix, n: int) -> CoeffMatrix:
  """corner(u, n) with the identity tail from n + 1."""
  return CoeffMatrix(corner(u, n).entries, IdentityTail(_level(n) + 1))


def border_strong_gap(
  u: CoeffMatrix, x: FinVector, n: int, arithmetic: Optional[Arithmetic] = None
) -> Scalar:
  """||(u - border(u, n)) x||."""
  gap = far_block(u, n).apply(x)
  return gap.norm(arithmetic or Arithmetic.infer([*u.entries.values(), *x.coords.values()]))


def corner_weak_gap(u: CoeffMatrix, x: FinVector, y: FinVector, n: int) -> Scalar:
  """|<(u - corner(u, n)) x, y>|."""
  return abs(u.apply(x).dot(y) - corner(u, n).apply(x).dot(y))


def shifted_vector(x: FinVector, n: int) -> FinVector:
  """The tail shift x^(n) with x^(n)_k = x_{n+k} for k >= 1."""
  n = _level(n)
  return FinVector({k - n: value for k, value in x.items() if k > n})


def weak_gap_bound(x: FinVector, y: FinVector, n: int, norm_bound: Scalar = 1) -> float:
  """Upper bound ||u|| (||x^(n)|| ||y|| + ||x|| ||y^(n)||) for corner_weak_gap."""
  x_tail = math.sqrt(shifted_vector(x, n).norm_squared())
  y_tail = math.sqrt(shifted_vector(y, n).norm_squared())
  x_norm = math.sqrt(x.norm_squared())
  y_norm = math.sqrt(y.norm_squared())
  return float(norm_bound) * (x_tail * y_norm + x_norm * y_tail)


def vanishing_level(u: CoeffMatrix, x: FinVector, y: Optional[FinVector] = None) -> int:
  """Level from which the exact gaps on x (and y) vanish.

  For the strong gap: the largest index of x and of any explicit row of its
  columns. For the weak gap also y's support and u's explicit cross entries.
  """
  support = set(x.support)
  rows = [m for (m, k), _ in u.items() if k in support]
  level = max([x.max_index, *rows], default=0)
  if y is not None:
    level = max(level, y.max_index, u.max_index)
  return max(level, 1)

