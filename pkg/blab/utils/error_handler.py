"""Error payloads for the command line.

Every failure is turned into a standardized payload
{"error": {"message", "code", "details"}, "exit_code"} and logged, so the CLI can
print it and exit with the documented code.
"""

import logging
import traceback
from typing import Any, Dict, Optional

from blab.exceptions import LabException
from blab.utils.config import get_config

logger = logging.getLogger(__name__)

INTERNAL_ERROR_EXIT = 1


def build_error_payload(exc: Exception, debug: Optional[bool] = None) -> Dict[str, Any]:
  """Build a standardized error payload for an exception."""
  if debug is None:
    debug = get_config().debug

  if isinstance(exc, LabException):
    return {
      'error': {
        'message': exc.message,
        'code': exc.error_code,
        'details': exc.details,
      },
      'exit_code': exc.exit_code,
    }

  error_details: Dict[str, Any] = {}
  if debug:
    error_details = {
      'error_type': type(exc).__name__,
      'error_message': str(exc),
      'traceback': traceback.format_exception(type(exc), exc, exc.__traceback__),
    }
    message = f'{type(exc).__name__}: {exc}'
  else:
    message = 'An unexpected error occurred'

  return {
    'error': {
      'message': message,
      'code': 'INTERNAL_ERROR',
      'details': error_details,
    },
    'exit_code': INTERNAL_ERROR_EXIT,
  }


def log_error(exc: Exception, command: str, exit_code: int) -> None:
  """Log an error at a severity matching its kind."""
  error_details = {
    'command': command,
    'exit_code': exit_code,
    'error_type': type(exc).__name__,
    'error_message': str(exc),
  }

  if isinstance(exc, LabException):
    # Input and parameter problems are the caller's; the rest are findings
    if exc.exit_code in (2, 3):
      logger.warning(f'Input error: {exc.message}', extra=error_details)
    else:
      logger.error(f'Lab error: {exc.message}', extra=error_details, exc_info=False)
  else:
    logger.error(f'Unexpected error: {exc}', extra=error_details, exc_info=True)
