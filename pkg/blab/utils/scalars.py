"""Scalar arithmetic in exact rational or tolerant float mode."""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Union

from blab.exceptions import ParseError

Scalar = Union[Fraction, float, int]


class ArithmeticMode(str, Enum):
  """Global arithmetic mode."""

  EXACT = 'exact'
  FLOAT = 'float'


def is_exact_value(value: Any) -> bool:
  """Whether a value is an exact rational (int or Fraction, not bool)."""
  return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def parse_scalar(value: Any, exact: bool = True) -> Scalar:
  """Parse a JSON scalar: a number or a rational string like '3/7'.

  Args:
      value: The raw JSON value.
      exact: Parse into a Fraction when True, otherwise into a float.

  Raises:
      ParseError: If the value is not a finite real number.
  """
  if isinstance(value, bool) or not isinstance(value, (int, float, str, Fraction)):
    raise ParseError(f'Expected a number or rational string, got {value!r}')
  try:
    if isinstance(value, float):
      if not math.isfinite(value):
        raise ParseError(f'Non-finite value {value!r}')
      # Decimal literal, not the binary expansion of the float
      parsed = Fraction(repr(value))
    else:
      parsed = Fraction(value)
  except (ValueError, ZeroDivisionError) as e:
    raise ParseError(f'Cannot parse scalar {value!r}: {e}') from e
  return parsed if exact else float(parsed)


def format_scalar(value: Scalar) -> Union[str, float]:
  """Render a scalar for JSON: exact values as 'p/q' strings, floats unchanged."""
  if is_exact_value(value):
    return str(Fraction(value))
  return float(value)


def exact_sqrt(value: Fraction) -> Union[Fraction, None]:
  """Square root of a nonnegative rational when it is rational, else None."""
  value = Fraction(value)
  if value < 0:
    return None
  num, den = value.numerator, value.denominator
  root_num, root_den = math.isqrt(num), math.isqrt(den)
  if root_num * root_num == num and root_den * root_den == den:
    return Fraction(root_num, root_den)
  return None


@dataclass(frozen=True)
class Arithmetic:
  """Comparison and coercion rules for one arithmetic mode.

  In exact mode comparisons are exact; in float mode equality and ordering use
  the tolerance eps_tol.
  """

  mode: ArithmeticMode = ArithmeticMode.EXACT
  eps_tol: float = 1e-9

  @classmethod
  def exact(cls) -> 'Arithmetic':
    """Exact rational arithmetic."""
    return cls(ArithmeticMode.EXACT)

  @classmethod
  def floating(cls, eps_tol: float = 1e-9) -> 'Arithmetic':
    """Float arithmetic with tolerance eps_tol."""
    return cls(ArithmeticMode.FLOAT, eps_tol)

  @classmethod
  def infer(cls, values: Iterable[Any], eps_tol: float = 1e-9) -> 'Arithmetic':
    """Exact when every value is an exact rational, float otherwise."""
    if all(is_exact_value(v) for v in values):
      return cls.exact()
    return cls.floating(eps_tol)

  @property
  def is_exact(self) -> bool:
    """True in exact mode."""
    return self.mode == ArithmeticMode.EXACT

  @property
  def tolerance(self) -> Scalar:
    """Comparison tolerance, zero in exact mode."""
    return 0 if self.is_exact else self.eps_tol

  def coerce(self, value: Any) -> Scalar:
    """Convert a value into this mode's scalar type."""
    if isinstance(value, str) or (self.is_exact and isinstance(value, float)):
      return parse_scalar(value, self.is_exact)
    return Fraction(value) if self.is_exact else float(value)

  def is_zero(self, value: Scalar) -> bool:
    """Zero within tolerance."""
    return abs(value) <= self.tolerance

  def eq(self, a: Scalar, b: Scalar) -> bool:
    """Equal within tolerance."""
    return abs(a - b) <= self.tolerance

  def le(self, a: Scalar, b: Scalar) -> bool:
    """a <= b within tolerance."""
    return a <= b + self.tolerance

  def lt(self, a: Scalar, b: Scalar) -> bool:
    """a < b by more than the tolerance."""
    return a < b - self.tolerance

  def positive(self, value: Scalar) -> bool:
    """Strictly above the tolerance."""
    return value > self.tolerance

  def sqrt(self, value: Scalar) -> Scalar:
    """Square root; exact when the mode is exact and the root is rational."""
    if self.is_exact and is_exact_value(value):
      root = exact_sqrt(value)
      if root is not None:
        return root
    return math.sqrt(max(float(value), 0.0))

  def format(self, value: Scalar) -> Union[str, float]:
    """Format a value for reports."""
    return format_scalar(value)
