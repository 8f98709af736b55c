"""Finitely describable infinite matrices, partial permutations and vectors.

A CoeffMatrix is a finite map of explicit entries over N+ x N+ plus a tail mode.
Under ZeroTail every unstored entry is 0. Under IdentityTail(start) every unstored
entry with both indices >= start follows the identity, and no explicit entry may
sit in that region. Matrices are canonical: zeros are never stored and an identity
tail is lowered as far as the explicit entries allow, so two matrices are equal
exactly when their entry maps and tails are equal.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from blab.exceptions import ParseError, TailConflictError, ValidationError
from blab.models.types import MatrixClass, Violation
from blab.utils.scalars import Arithmetic, Scalar, format_scalar, parse_scalar

logger = logging.getLogger(__name__)

Position = Tuple[int, int]

ZERO = Fraction(0)
ONE = Fraction(1)


def _check_index(value: Any, name: str) -> int:
  if isinstance(value, bool) or not isinstance(value, int) or value < 1:
    raise ValidationError(f'{name} must be a positive integer, got {value!r}', field=name)
  return value


@dataclass(frozen=True)
class ZeroTail:
  """Every unstored entry is zero."""

  def to_payload(self) -> str:
    """Tail document."""
    return 'zero'


@dataclass(frozen=True)
class IdentityTail:
  """Unstored entries (m, k) with m, k >= start equal the identity's."""

  start: int = 1

  def __post_init__(self):
    _check_index(self.start, 'identity_from')

  def covers(self, m: int, k: int) -> bool:
    """True when the identity tail covers (m, k)."""
    return m >= self.start and k >= self.start

  def to_payload(self) -> Dict[str, int]:
    """Tail document."""
    return {'identity_from': self.start}


TailMode = Union[ZeroTail, IdentityTail]
ZERO_TAIL = ZeroTail()


class FinVector:
  """Finitely supported real vector over N+."""

  __slots__ = ('_coords',)

  def __init__(self, coords: Optional[Mapping[int, Scalar]] = None):
    cleaned = {}
    for k, value in (coords or {}).items():
      _check_index(k, 'index')
      if value != 0:
        cleaned[k] = value
    self._coords: Dict[int, Scalar] = dict(sorted(cleaned.items()))

  @classmethod
  def basis(cls, k: int) -> 'FinVector':
    """The standard basis vector e_k."""
    return cls({k: ONE})

  @classmethod
  def from_values(cls, values: Sequence[Scalar]) -> 'FinVector':
    """Vector whose k-th coordinate is values[k - 1]."""
    return cls({k: value for k, value in enumerate(values, start=1)})

  @property
  def coords(self) -> Dict[int, Scalar]:
    """Nonzero coordinates by index."""
    return dict(self._coords)

  @property
  def support(self) -> Tuple[int, ...]:
    """Indices with a nonzero coordinate, sorted."""
    return tuple(self._coords)

  @property
  def max_index(self) -> int:
    """Largest index in the support, 0 when empty."""
    return max(self._coords, default=0)

  @property
  def arithmetic(self) -> Arithmetic:
    """Arithmetic of the coordinates."""
    return Arithmetic.infer(self._coords.values())

  def __getitem__(self, k: int) -> Scalar:
    return self._coords.get(k, ZERO)

  def items(self) -> Iterator[Tuple[int, Scalar]]:
    """Nonzero coordinates in index order."""
    return iter(self._coords.items())

  def dot(self, other: 'FinVector') -> Scalar:
    """Real inner product."""
    shared = (k for k in self._coords if k in other._coords)
    return sum((self._coords[k] * other._coords[k] for k in shared), ZERO)

  def norm_squared(self) -> Scalar:
    """Squared Euclidean norm."""
    return sum((value * value for value in self._coords.values()), ZERO)

  def norm(self, arithmetic: Optional[Arithmetic] = None) -> Scalar:
    """Euclidean norm, exact when the squared norm is a rational square."""
    return (arithmetic or self.arithmetic).sqrt(self.norm_squared())

  def scale(self, factor: Scalar) -> 'FinVector':
    """Multiply every coordinate by factor."""
    return FinVector({k: factor * value for k, value in self._coords.items()})

  def restrict(self, n: int) -> 'FinVector':
    """Coordinates 1..n only."""
    return FinVector({k: value for k, value in self._coords.items() if k <= n})

  def __add__(self, other: 'FinVector') -> 'FinVector':
    coords = dict(self._coords)
    for k, value in other._coords.items():
      coords[k] = coords.get(k, ZERO) + value
    return FinVector(coords)

  def __sub__(self, other: 'FinVector') -> 'FinVector':
    return self + other.scale(-1)

  def __eq__(self, other: object) -> bool:
    return isinstance(other, FinVector) and self._coords == other._coords

  def __hash__(self) -> int:
    return hash(tuple(self._coords.items()))

  def __repr__(self) -> str:
    return f'FinVector({self._coords})'

  def to_payload(self) -> Dict[str, Any]:
    """Coordinates as [index, value] pairs."""
    return {'coords': [[k, format_scalar(value)] for k, value in self._coords.items()]}


def _lower_identity_tail(entries: Dict[Position, Scalar], tail: TailMode) -> TailMode:
  """Absorb explicit unit diagonal entries just below the tail start into the tail."""
  while isinstance(tail, IdentityTail) and tail.start > 1:
    s = tail.start - 1
    if entries.get((s, s)) != 1:
      break
    if any((m == s and k >= s or k == s and m >= s) and (m, k) != (s, s) for m, k in entries):
      break
    del entries[(s, s)]
    tail = IdentityTail(s)
  return tail


class CoeffMatrix:
  """Finitely supported real-coefficient matrix over N+ x N+ with a tail mode."""

  def __init__(
    self, entries: Optional[Mapping[Position, Scalar]] = None, tail: TailMode = ZERO_TAIL
  ):
    if not isinstance(tail, (ZeroTail, IdentityTail)):
      raise ValidationError(f'Unknown tail mode {tail!r}', field='tail')
    cleaned: Dict[Position, Scalar] = {}
    for (m, k), value in (entries or {}).items():
      _check_index(m, 'row')
      _check_index(k, 'col')
      if value == 0:
        continue
      if isinstance(tail, IdentityTail) and tail.covers(m, k):
        raise TailConflictError(tail.start, (m, k))
      cleaned[(m, k)] = value
    self._tail = _lower_identity_tail(cleaned, tail)
    self._entries: Dict[Position, Scalar] = dict(sorted(cleaned.items()))

  @property
  def entries(self) -> Dict[Position, Scalar]:
    """Explicit nonzero entries."""
    return dict(self._entries)

  @property
  def tail(self) -> TailMode:
    """Pattern of the unlisted entries."""
    return self._tail

  @property
  def has_identity_tail(self) -> bool:
    """True for an identity tail."""
    return isinstance(self._tail, IdentityTail)

  def items(self) -> Iterator[Tuple[Position, Scalar]]:
    """Explicit entries in row-major order."""
    return iter(self._entries.items())

  def __len__(self) -> int:
    return len(self._entries)

  @cached_property
  def _by_column(self) -> Dict[int, Dict[int, Scalar]]:
    columns: Dict[int, Dict[int, Scalar]] = {}
    for (m, k), value in self._entries.items():
      columns.setdefault(k, {})[m] = value
    return columns

  @cached_property
  def _by_row(self) -> Dict[int, Dict[int, Scalar]]:
    rows: Dict[int, Dict[int, Scalar]] = {}
    for (m, k), value in self._entries.items():
      rows.setdefault(m, {})[k] = value
    return rows

  @property
  def max_index(self) -> int:
    """Largest row or column index of an explicit entry (0 when there are none)."""
    return max((max(m, k) for m, k in self._entries), default=0)

  @property
  def extent(self) -> int:
    """Smallest B such that beyond [1, B] only the pure tail remains."""
    tail_edge = self._tail.start - 1 if self.has_identity_tail else 0
    return max(self.max_index, tail_edge)

  @property
  def arithmetic(self) -> Arithmetic:
    """Arithmetic of the entries."""
    return Arithmetic.infer(self._entries.values())

  def coefficient(self, m: int, k: int) -> Scalar:
    """The entry a_{mk}, honouring the tail."""
    _check_index(m, 'row')
    _check_index(k, 'col')
    value = self._entries.get((m, k))
    if value is not None:
      return value
    if m == k and self.has_identity_tail and self._tail.covers(m, k):
      return ONE
    return ZERO

  def column(self, k: int) -> Dict[int, Scalar]:
    """Nonzero entries of column k, including the tail diagonal."""
    column = dict(self._by_column.get(k, {}))
    if self.has_identity_tail and self._tail.covers(k, k):
      column[k] = ONE
    return column

  def row(self, m: int) -> Dict[int, Scalar]:
    """Nonzero entries of row m, including the tail diagonal."""
    row = dict(self._by_row.get(m, {}))
    if self.has_identity_tail and self._tail.covers(m, m):
      row[m] = ONE
    return row

  def row_sum(self, m: int) -> Scalar:
    """Sum of row m, tail included."""
    return sum(self.row(m).values(), ZERO)

  def col_sum(self, k: int) -> Scalar:
    """Sum of column k, tail included."""
    return sum(self.column(k).values(), ZERO)

  def classify(self, arithmetic: Optional[Arithmetic] = None) -> MatrixClass:
    """Classify as Permutation, PS, DS, DSS_strict or Other (first match wins)."""
    arith = arithmetic or self.arithmetic
    values = list(self._entries.values())
    indices = range(1, self.extent + 1)
    sums = [self.row_sum(m) for m in indices] + [self.col_sum(k) for k in indices]

    nonnegative = all(not arith.lt(value, 0) for value in values)
    substochastic = nonnegative and all(arith.le(total, 1) for total in sums)
    # Beyond the extent rows and columns sum to 1 under an identity tail, to 0 otherwise
    stochastic = (
      substochastic and self.has_identity_tail and all(arith.eq(total, 1) for total in sums)
    )
    zero_one = all(arith.eq(value, 1) for value in values)

    if zero_one and substochastic:
      return MatrixClass.PERMUTATION if stochastic else MatrixClass.PS
    if stochastic:
      return MatrixClass.DS
    if substochastic:
      return MatrixClass.DSS_STRICT
    return MatrixClass.OTHER

  def diagnostics(
    self, arithmetic: Optional[Arithmetic] = None, stochastic: bool = False
  ) -> List[Violation]:
    """Every negative entry and every row/column sum above 1.

    With stochastic=True, row/column sums below 1 within the extent are reported too.
    """
    arith = arithmetic or self.arithmetic
    violations = [
      _violation('negative_entry', value, row=m, col=k)
      for (m, k), value in self._entries.items()
      if arith.lt(value, 0)
    ]
    for index in range(1, self.extent + 1):
      for kind, total in (('row_sum', self.row_sum(index)), ('col_sum', self.col_sum(index))):
        if not arith.le(total, 1) or (stochastic and not arith.eq(total, 1)):
          violations.append(_violation(kind, total, index=index))
    return violations

  def apply(self, x: FinVector) -> FinVector:
    """The vector ux; finite because x is finitely supported."""
    result: Dict[int, Scalar] = {}
    for k, xk in x.items():
      for m, value in self.column(k).items():
        result[m] = result.get(m, ZERO) + value * xk
    return FinVector(result)

  def adjoint(self) -> 'CoeffMatrix':
    """Transpose; the tail is preserved."""
    return CoeffMatrix({(k, m): value for (m, k), value in self._entries.items()}, self._tail)

  def materialize(self, bound: int) -> Dict[Position, Scalar]:
    """Explicit entries plus tail diagonal entries up to index bound."""
    entries = dict(self._entries)
    if self.has_identity_tail:
      for j in range(self._tail.start, bound + 1):
        entries[(j, j)] = ONE
    return entries

  def compose(self, other: 'CoeffMatrix') -> 'CoeffMatrix':
    """Matrix product self * other."""
    bound = max(self.extent, other.extent)
    right_rows: Dict[int, Dict[int, Scalar]] = {}
    for (j, k), value in other.materialize(bound).items():
      right_rows.setdefault(j, {})[k] = value

    product: Dict[Position, Scalar] = {}
    for (m, j), left in self.materialize(bound).items():
      for k, right in right_rows.get(j, {}).items():
        product[(m, k)] = product.get((m, k), ZERO) + left * right

    tail = (
      IdentityTail(bound + 1) if self.has_identity_tail and other.has_identity_tail else ZERO_TAIL
    )
    return CoeffMatrix(product, tail)

  def dense(self, n: int) -> List[List[Scalar]]:
    """Rows of the upper-left n x n corner, 0-based lists."""
    return [[self.coefficient(m, k) for k in range(1, n + 1)] for m in range(1, n + 1)]

  def __eq__(self, other: object) -> bool:
    return (
      isinstance(other, CoeffMatrix)
      and self._tail == other._tail
      and self._entries == other._entries
    )

  def __hash__(self) -> int:
    return hash((self._tail, tuple(self._entries.items())))

  def __repr__(self) -> str:
    return f'CoeffMatrix({self._entries}, tail={self._tail})'

  def to_payload(self) -> Dict[str, Any]:
    """Matrix document."""
    return matrix_to_payload(self)


def _violation(
  kind: str,
  value: Scalar,
  row: Optional[int] = None,
  col: Optional[int] = None,
  index: Optional[int] = None,
) -> Violation:
  shown = format_scalar(value)
  if kind == 'negative_entry':
    message = f'entry ({row}, {col}) is negative: {shown}'
  elif kind == 'row_sum':
    row = index
    message = f'row {index} sums to {shown}'
  else:
    col = index
    message = f'column {index} sums to {shown}'
  return Violation(kind=kind, row=row, col=col, value=shown, message=message)


def partial_sum_violation(u: CoeffMatrix, n: Optional[int] = None) -> Optional[Violation]:
  """First certificate that u is outside the weak closure of the substochastic matrices.

  A negative entry, or a row or column whose partial sum over [1, n] exceeds 1.
  n defaults to the extent of u.
  """
  arith = u.arithmetic
  n = u.extent if n is None else _check_index(n, 'n')
  corner = {(m, k): value for (m, k), value in u.materialize(n).items() if m <= n and k <= n}
  for (m, k), value in corner.items():
    if arith.lt(value, 0):
      return _violation('negative_entry', value, row=m, col=k)
  row_sums: Dict[int, Scalar] = {}
  col_sums: Dict[int, Scalar] = {}
  for (m, k), value in corner.items():
    row_sums[m] = row_sums.get(m, ZERO) + value
    col_sums[k] = col_sums.get(k, ZERO) + value
  for index in range(1, n + 1):
    if not arith.le(row_sums.get(index, ZERO), 1):
      return _violation('row_sum', row_sums[index], index=index)
    if not arith.le(col_sums.get(index, ZERO), 1):
      return _violation('col_sum', col_sums[index], index=index)
  return None


def linear_combination(terms: Sequence[Tuple[Scalar, CoeffMatrix]]) -> CoeffMatrix:
  """Sum of coef * matrix over the terms.

  Raises:
      ValidationError: If the identity-tail coefficients total neither 0 nor 1.
  """
  bound = max((u.extent for _, u in terms), default=0)
  arith = Arithmetic.infer([coef for coef, _ in terms])
  entries: Dict[Position, Scalar] = {}
  tail_weight: Scalar = ZERO
  for coef, u in terms:
    if u.has_identity_tail:
      tail_weight += coef
    for position, value in u.materialize(bound).items():
      entries[position] = entries.get(position, ZERO) + coef * value

  if arith.is_zero(tail_weight):
    tail: TailMode = ZERO_TAIL
  elif arith.eq(tail_weight, 1):
    tail = IdentityTail(bound + 1)
  else:
    raise ValidationError(
      f'Identity tails combine with total weight {format_scalar(tail_weight)}, not 0 or 1',
      field='terms',
    )
  if not arith.is_exact:
    entries = {position: value for position, value in entries.items() if not arith.is_zero(value)}
  return CoeffMatrix(entries, tail)


def blend(u: CoeffMatrix, w: CoeffMatrix, t: Scalar) -> CoeffMatrix:
  """The convex blend t*u + (1 - t)*w for t in [0, 1]."""
  if not 0 <= t <= 1:
    raise ValidationError(f'Blend weight must lie in [0, 1], got {t}', field='t')
  return linear_combination([(t, u), (1 - t, w)])


class PartialPermutation:
  """Finite partial injection on N+, read as column k -> row p(k)."""

  __slots__ = ('_map',)

  def __init__(
    self, mapping: Optional[Union[Mapping[int, int], Iterable[Tuple[int, int]]]] = None
  ):
    pairs = mapping.items() if isinstance(mapping, Mapping) else (mapping or [])
    cleaned: Dict[int, int] = {}
    preimage: Dict[int, int] = {}
    for k, image in pairs:
      _check_index(k, 'domain')
      _check_index(image, 'image')
      if cleaned.get(k, image) != image:
        raise ValidationError(f'{k} is mapped to both {cleaned[k]} and {image}', field='map')
      if preimage.get(image, k) != k:
        raise ValidationError(
          f'Not injective: {preimage[image]} and {k} both map to {image}', field='map'
        )
      cleaned[k] = image
      preimage[image] = k
    self._map: Dict[int, int] = dict(sorted(cleaned.items()))

  @classmethod
  def identity(cls, n: int) -> 'PartialPermutation':
    """Identity on {1..n}."""
    return cls({k: k for k in range(1, n + 1)})

  @classmethod
  def from_cycles(cls, *cycles: Sequence[int]) -> 'PartialPermutation':
    """Permutation from disjoint cycles, e.g. from_cycles((1, 2, 3))."""
    mapping: Dict[int, int] = {}
    for cycle in cycles:
      for position, k in enumerate(cycle):
        if k in mapping:
          raise ValidationError(f'Cycles are not disjoint at {k}', field='cycles')
        mapping[k] = cycle[(position + 1) % len(cycle)]
    return cls(mapping)

  @property
  def mapping(self) -> Dict[int, int]:
    """Domain index to image index."""
    return dict(self._map)

  @property
  def domain(self) -> Tuple[int, ...]:
    """Sorted domain."""
    return tuple(self._map)

  @property
  def image(self) -> Tuple[int, ...]:
    """Sorted image."""
    return tuple(sorted(self._map.values()))

  @property
  def max_index(self) -> int:
    """Largest index in the domain or image, 0 when empty."""
    return max((max(pair) for pair in self._map.items()), default=0)

  def __call__(self, k: int) -> Optional[int]:
    return self._map.get(k)

  def __len__(self) -> int:
    return len(self._map)

  def __iter__(self) -> Iterator[Tuple[int, int]]:
    return iter(self._map.items())

  def inverse(self) -> 'PartialPermutation':
    """Inverse map from the image back to the domain."""
    return PartialPermutation({image: k for k, image in self._map.items()})

  def compose(self, other: 'PartialPermutation') -> 'PartialPermutation':
    """Partial composition self o other, defined where both steps are."""
    return PartialPermutation(
      {k: self._map[mid] for k, mid in other._map.items() if mid in self._map}
    )

  def compose_finitary(self, other: 'PartialPermutation') -> 'PartialPermutation':
    """Composition of finitary permutations, both read as identity off their supports."""
    support = set(self._map) | set(self._map.values())
    support |= set(other._map) | set(other._map.values())
    return PartialPermutation(
      {k: self._map.get(other._map.get(k, k), other._map.get(k, k)) for k in support}
    )

  def restrict(self, n: int) -> 'PartialPermutation':
    """Pairs with both k and p(k) in [1, n]."""
    return PartialPermutation({k: image for k, image in self._map.items() if k <= n and image <= n})

  def within(self, n: int) -> bool:
    """True when the domain and image lie in {1..n}."""
    return self.max_index <= n

  def is_total_on(self, n: int) -> bool:
    """Whether this is a permutation of [1, n]."""
    block = tuple(range(1, n + 1))
    return self.domain == block and self.image == block

  def permutes_support(self) -> bool:
    """Whether the domain and image are the same set (a finitary permutation)."""
    return set(self._map) == set(self._map.values())

  def to_pairs(self) -> List[List[int]]:
    """Mapping as sorted [k, m] pairs."""
    return [[k, image] for k, image in self._map.items()]

  def __eq__(self, other: object) -> bool:
    return isinstance(other, PartialPermutation) and self._map == other._map

  def __hash__(self) -> int:
    return hash(tuple(self._map.items()))

  def __repr__(self) -> str:
    return f'PartialPermutation({self._map})'


def all_permutations(n: int) -> Iterator[PartialPermutation]:
  """Permutations of [1, n] in lexicographic order."""
  block = range(1, n + 1)
  for images in itertools.permutations(block):
    yield PartialPermutation(zip(block, images))


def all_partial_permutations(n: int) -> Iterator[PartialPermutation]:
  """Partial permutations of [1, n], by size, then domain, then images."""
  block = range(1, n + 1)
  for size in range(n + 1):
    for domain in itertools.combinations(block, size):
      for images in itertools.permutations(block, size):
        yield PartialPermutation(zip(domain, images))


def count_partial_permutations(n: int) -> int:
  """Number of partial permutations of {1..n}."""
  return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def permutation_matrix(p: PartialPermutation, tail: TailMode = ZERO_TAIL) -> CoeffMatrix:
  """Matrix with entries (p(k), k) -> 1 and the given tail.

  Raises:
      TailConflictError: If p's domain or range reaches the identity-tail region.
  """
  if isinstance(tail, IdentityTail):
    for k, image in p:
      if k >= tail.start or image >= tail.start:
        raise TailConflictError(tail.start, (image, k))
  return CoeffMatrix({(image, k): ONE for k, image in p}, tail)


def standard_representation(p: PartialPermutation) -> CoeffMatrix:
  """pi(p) for a finitary permutation p, identity off its support."""
  if not p.permutes_support():
    raise ValidationError(f'{p!r} does not permute its support', field='permutation')
  bound = p.max_index
  total = PartialPermutation({k: p(k) or k for k in range(1, bound + 1)})
  return permutation_matrix(total, IdentityTail(bound + 1))


def _parse_index(raw: Any, name: str) -> int:
  if isinstance(raw, bool) or not isinstance(raw, int) or raw < 1:
    raise ParseError(f'{name} must be a positive integer, got {raw!r}')
  return raw


def _parse_tail(raw: Any) -> TailMode:
  if raw == 'zero':
    return ZERO_TAIL
  if isinstance(raw, dict) and set(raw) == {'identity_from'}:
    return IdentityTail(_parse_index(raw['identity_from'], 'identity_from'))
  raise ParseError(f'tail must be "zero" or {{"identity_from": s}}, got {raw!r}')


def matrix_from_payload(payload: Any, exact: bool = True) -> CoeffMatrix:
  """Decode the matrix JSON format.

  Args:
      payload: {"tail": "zero" | {"identity_from": s}, "entries": [[m, k, value], ...]}.
      exact: Parse values as Fractions when True, floats otherwise.

  Raises:
      ParseError: On malformed documents or duplicate positions.
  """
  if not isinstance(payload, dict):
    raise ParseError('Matrix document must be a JSON object')
  tail = _parse_tail(payload.get('tail', 'zero'))
  raw_entries = payload.get('entries', [])
  if not isinstance(raw_entries, list):
    raise ParseError('entries must be a list of [m, k, value] triples')

  entries: Dict[Position, Scalar] = {}
  for raw in raw_entries:
    if not isinstance(raw, list) or len(raw) != 3:
      raise ParseError(f'Malformed entry {raw!r}; expected [m, k, value]')
    position = (_parse_index(raw[0], 'row'), _parse_index(raw[1], 'col'))
    if position in entries:
      raise ParseError(f'Duplicate entry at {position}')
    entries[position] = parse_scalar(raw[2], exact)
  return CoeffMatrix(entries, tail)


def matrix_to_payload(u: CoeffMatrix) -> Dict[str, Any]:
  """Matrix document for the CLI and tools."""
  return {
    'tail': u.tail.to_payload(),
    'entries': [[m, k, format_scalar(value)] for (m, k), value in u.items()],
  }


def vector_from_payload(payload: Any, exact: bool = True) -> FinVector:
  """Decode the vector JSON format {"coords": [[k, value], ...]}."""
  if not isinstance(payload, dict) or not isinstance(payload.get('coords'), list):
    raise ParseError('Vector document must be {"coords": [[k, value], ...]}')
  coords: Dict[int, Scalar] = {}
  for raw in payload['coords']:
    if not isinstance(raw, list) or len(raw) != 2:
      raise ParseError(f'Malformed coordinate {raw!r}; expected [k, value]')
    k = _parse_index(raw[0], 'index')
    if k in coords:
      raise ParseError(f'Duplicate coordinate {k}')
    coords[k] = parse_scalar(raw[1], exact)
  return FinVector(coords)


def vector_to_payload(x: FinVector) -> Dict[str, Any]:
  """Vector document with formatted coordinates."""
  return x.to_payload()
