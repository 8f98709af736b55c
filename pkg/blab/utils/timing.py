"""Operation timing for lab computations.

Timings go to the 'blab.timing' logger only; reports never contain them, so runs
with the same configuration stay byte-identical.
"""

import json
import logging
import time
from typing import Any, Dict, Optional

TIMING_LOGGER = 'blab.timing'


def categorize_performance(duration_ms: float, budget_ms: float) -> str:
  """Bucket a duration relative to the operation's budget."""
  if duration_ms > budget_ms * 4:
    return 'CRITICAL_SLOW'
  if duration_ms > budget_ms * 2:
    return 'SLOW'
  if duration_ms > budget_ms:
    return 'MODERATE'
  if duration_ms > budget_ms / 4:
    return 'ACCEPTABLE'
  return 'FAST'


class OperationTimer:
  """Context manager for timing a named operation."""

  def __init__(self, operation_name: str, budget_ms: float = 1000.0, **context: Any):
    self.operation_name = operation_name
    self.budget_ms = budget_ms
    self.context = context
    self.logger = logging.getLogger(TIMING_LOGGER)
    self.start_ns: Optional[int] = None
    self.duration_ms: Optional[float] = None
    self.category: Optional[str] = None

  def __enter__(self) -> 'OperationTimer':
    self.start_ns = time.perf_counter_ns()
    self.logger.debug(f'{self.operation_name} - START', extra={'context': self.context})
    return self

  def __exit__(self, exc_type, exc_val, exc_tb) -> bool:
    duration_ns = time.perf_counter_ns() - self.start_ns
    self.duration_ms = duration_ns / 1e6
    self.category = categorize_performance(self.duration_ms, self.budget_ms)

    if exc_type is not None:
      self.logger.error(
        f'{self.operation_name} - FAILED after {self.duration_ms:.1f}ms: {exc_val}'
      )
    else:
      level = logging.WARNING if self.duration_ms > self.budget_ms else logging.INFO
      self.logger.log(
        level,
        f'{self.operation_name} - COMPLETE in {self.duration_ms:.1f}ms [{self.category}]',
      )

    timing_data: Dict[str, Any] = {
      'operation': self.operation_name,
      'duration_ms': round(self.duration_ms, 3),
      'budget_ms': self.budget_ms,
      'category': self.category,
      'success': exc_type is None,
      **self.context,
    }
    if exc_type is not None:
      timing_data['error'] = str(exc_val)
    self.logger.debug(f'TIMING {json.dumps(timing_data, sort_keys=True, default=str)}')
    return False
