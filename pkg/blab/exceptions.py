"""Custom exceptions for the Birkhoff lab.

Every exception carries a stable error code, a process exit code and a details dict,
so the CLI can turn any failure into a structured error payload.
"""

from typing import Any, Dict, Optional


class LabException(Exception):
  """Base exception class for all lab exceptions."""

  def __init__(
    self,
    message: str,
    exit_code: int = 1,
    error_code: Optional[str] = None,
    details: Optional[Dict[str, Any]] = None,
  ):
    super().__init__(message)
    self.message = message
    self.exit_code = exit_code
    self.error_code = error_code or self.__class__.__name__
    self.details = details or {}


class ParseError(LabException):
  """Raised when an input document cannot be parsed."""

  def __init__(self, message: str, source: Optional[str] = None):
    details = {}
    if source:
      details['source'] = source
    super().__init__(message=message, exit_code=2, error_code='PARSE_ERROR', details=details)


class ValidationError(LabException):
  """Raised when parameters or preconditions are invalid."""

  def __init__(
    self,
    message: str,
    field: Optional[str] = None,
    error_code: str = 'VALIDATION_ERROR',
    details: Optional[Dict[str, Any]] = None,
  ):
    details = dict(details or {})
    if field:
      details['field'] = field
    super().__init__(message=message, exit_code=2, error_code=error_code, details=details)


class TailConflictError(ValidationError):
  """Raised when explicit entries overlap the identity-tail region."""

  def __init__(self, start: int, position: tuple):
    super().__init__(
      f'Entry at {position} lies inside the identity tail starting at {start}',
      error_code='TAIL_CONFLICT',
      details={'tail_start': start, 'position': list(position)},
    )


class PTooLargeError(ValidationError):
  """Raised when a convex combination has too many terms for the block bound."""

  def __init__(self, terms: int, block: int):
    super().__init__(
      f'Bound is vacuous: {terms} terms squared is at least block size {block}',
      field='perms',
      error_code='P_TOO_LARGE',
      details={'terms': terms, 'block': block},
    )


class ConfigurationError(LabException):
  """Raised when configuration is invalid or missing."""

  def __init__(self, message: str, config_key: Optional[str] = None):
    details = {}
    if config_key:
      details['config_key'] = config_key
    super().__init__(
      message=message, exit_code=2, error_code='CONFIGURATION_ERROR', details=details
    )


class InputOutputError(LabException):
  """Raised when an input file cannot be read or an output cannot be written."""

  def __init__(self, message: str, path: str):
    super().__init__(
      message=message, exit_code=3, error_code='IO_ERROR', details={'path': path}
    )


class _SumViolationError(LabException):
  def __init__(
    self,
    message: str,
    error_code: str,
    axis: Optional[str] = None,
    index: Optional[int] = None,
    total: Optional[str] = None,
  ):
    details: Dict[str, Any] = {}
    if axis is not None:
      details['axis'] = axis
      details['index'] = index
      details['sum'] = total
    super().__init__(message=message, exit_code=4, error_code=error_code, details=details)


class NotDoublyStochasticError(_SumViolationError):
  """Raised when a block required to be doubly stochastic is not."""

  def __init__(
    self,
    message: str,
    axis: Optional[str] = None,
    index: Optional[int] = None,
    total: Optional[str] = None,
  ):
    super().__init__(message, 'NOT_DOUBLY_STOCHASTIC', axis, index, total)


class NotSubstochasticError(_SumViolationError):
  """Raised when a block required to be doubly substochastic is not."""

  def __init__(
    self,
    message: str,
    axis: Optional[str] = None,
    index: Optional[int] = None,
    total: Optional[str] = None,
  ):
    super().__init__(message, 'NOT_SUBSTOCHASTIC', axis, index, total)


class BudgetExceededError(LabException):
  """Raised when a request exceeds a brute-force budget cap."""

  def __init__(self, budget: str, requested: int, cap: int):
    super().__init__(
      message=f'{budget}={requested} exceeds the budget cap {cap}',
      exit_code=5,
      error_code='BUDGET_EXCEEDED',
      details={'budget': budget, 'requested': requested, 'cap': cap},
    )


class AssertionFailure(LabException):
  """Raised when a verification suite finds a failing assertion."""

  def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
    super().__init__(
      message=message, exit_code=1, error_code='ASSERTION_FAILED', details=details
    )


class InvariantViolation(LabException):
  """Raised when an internal invariant fails, e.g. no perfect matching on DS input."""

  def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
    super().__init__(
      message=message, exit_code=1, error_code='INVARIANT_VIOLATION', details=details
    )


class InconclusiveError(LabException):
  """Raised when an iterative computation stops at its cap without converging."""

  def __init__(self, message: str, last_iterate: Any = None, iterations: int = 0):
    super().__init__(
      message=message,
      exit_code=1,
      error_code='INCONCLUSIVE',
      details={'iterations': iterations},
    )
    self.last_iterate = last_iterate
