"""Command-line entry point for the Birkhoff lab.

Commands:
    blab classify FILE [--float]
    blab decompose FILE --mode bvn|mirsky [--exact|--float]
    blab verify SUITE [--blocks N] [--perms p] [--trials T] [--max-n N] [--max-m M]
                      [--seed S] [--out json|csv]

Reports go to stdout; logs and error payloads go to stderr. Exit codes: 0 pass,
1 failed assertion or inconclusive verdict, 2 parse or validation error, 3 I/O
error, 4 not doubly (sub)stochastic, 5 budget exceeded.
"""

import functools
import json
import logging
import sys
from typing import Any, Callable, Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from blab.decomposition import (
  FiniteBlock,
  block_from_payload,
  bvn_decompose,
  mirsky_decompose,
  reconstruct,
)
from blab.exceptions import InputOutputError, InvariantViolation, ParseError
from blab.matrices import ZERO, matrix_from_payload
from blab.models.types import (
  ClassificationReport,
  DecompositionReport,
  MatrixClass,
  RunConfig,
  TermRecord,
)
from blab.suites import SUITES, run_suite
from blab.utils.config import get_config
from blab.utils.error_handler import build_error_payload, log_error
from blab.utils.reports import render, to_json
from blab.utils.scalars import ArithmeticMode, Scalar, format_scalar
from blab.utils.timing import OperationTimer

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool = False) -> None:
  """Send logs to stderr through rich; DEBUG with BLAB_DEBUG, INFO with --verbose."""
  if get_config().debug:
    level = logging.DEBUG
  elif verbose:
    level = logging.INFO
  else:
    level = logging.WARNING
  logging.basicConfig(
    level=level,
    format='%(message)s',
    datefmt='[%X]',
    handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
    force=True,
  )


def handle_errors(command: str) -> Callable:
  """Turn lab and unexpected errors into a JSON payload on stderr and an exit code."""

  def decorator(func: Callable) -> Callable:
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
      try:
        return func(*args, **kwargs)
      except (click.ClickException, click.exceptions.Exit, click.exceptions.Abort):
        raise
      except Exception as exc:
        payload = build_error_payload(exc)
        log_error(exc, command, payload['exit_code'])
        click.echo(to_json(payload), err=True)
        sys.exit(payload['exit_code'])

    return wrapper

  return decorator


def verbose_option(func: Callable) -> Callable:
  """Add the --verbose flag."""
  return click.option('--verbose', '-v', is_flag=True, help='Log progress at INFO level.')(func)


def read_document(path: str) -> Any:
  """Load a JSON document.

  Raises:
      InputOutputError: If the file cannot be read.
      ParseError: If the file is not valid JSON.
  """
  try:
    with open(path, 'r') as f:
      text = f.read()
  except OSError as e:
    raise InputOutputError(f'Cannot read {path}: {e.strerror or e}', path) from e
  try:
    return json.loads(text)
  except json.JSONDecodeError as e:
    raise ParseError(f'Invalid JSON in {path}: {e.msg} at line {e.lineno}', path) from e


def _mode(use_float: bool) -> ArithmeticMode:
  return ArithmeticMode.FLOAT if use_float else ArithmeticMode.EXACT


def _residual(a: FiniteBlock, b: FiniteBlock) -> Scalar:
  return max(
    (abs(x - y) for row_a, row_b in zip(a.rows, b.rows) for x, y in zip(row_a, row_b)),
    default=ZERO,
  )


@click.group()
@click.version_option(package_name='birkhoff-lab')
def cli() -> None:
  """Numerical lab for infinite doubly stochastic matrices."""


@cli.command()
@click.argument('path', metavar='FILE')
@click.option('--float', 'use_float', is_flag=True, help='Classify with float tolerance.')
@verbose_option
@handle_errors('classify')
def classify(path: str, use_float: bool, verbose: bool) -> None:
  """Classify the matrix in FILE as Permutation, PS, DS, DSS_strict or Other.

  FILE holds a matrix document {"tail": ..., "entries": [[m, k, value], ...]}.
  """
  configure_logging(verbose)
  config = RunConfig.from_lab_config(arithmetic=_mode(use_float))
  arith = config.arithmetic_context()
  u = matrix_from_payload(read_document(path), exact=not use_float)

  matrix_class = u.classify(arith)
  diagnostics = u.diagnostics(arith) if matrix_class == MatrixClass.OTHER else []
  report = ClassificationReport(
    matrix_class=matrix_class,
    arithmetic=config.arithmetic,
    extent=u.extent,
    diagnostics=diagnostics,
  )
  logger.info(f'{path}: {matrix_class.value} with {len(diagnostics)} violations')
  click.echo(to_json(report))


@cli.command()
@click.argument('path', metavar='FILE')
@click.option(
  '--mode',
  type=click.Choice(['bvn', 'mirsky']),
  required=True,
  help='bvn for doubly stochastic blocks, mirsky for doubly substochastic ones.',
)
@click.option('--exact/--float', 'exact', default=True, help='Rational or float arithmetic.')
@verbose_option
@handle_errors('decompose')
def decompose(path: str, mode: str, exact: bool, verbose: bool) -> None:
  """Decompose the block in FILE into (partial) permutations.

  The combination is rebuilt and compared with the input before it is printed.
  """
  configure_logging(verbose)
  config = RunConfig.from_lab_config(arithmetic=_mode(not exact))
  eps_res = get_config().eps_res
  a = block_from_payload(read_document(path), exact)

  with OperationTimer(f'decompose.{mode}', budget_ms=5000.0, n=a.n):
    if mode == 'bvn':
      combination = bvn_decompose(a, eps_res)
    else:
      combination = mirsky_decompose(a, eps_res)

  residual = _residual(reconstruct(combination, a.n), a)
  if not (residual == 0 if exact else residual <= eps_res):
    raise InvariantViolation(
      f'Decomposition does not reproduce the input: residual {format_scalar(residual)}',
      details={'residual': format_scalar(residual), 'n': a.n},
    )

  report = DecompositionReport(
    mode=mode,
    arithmetic=config.arithmetic,
    n=a.n,
    terms=[TermRecord(**term) for term in combination.to_payload()],
    residual=format_scalar(residual),
  )
  logger.info(f'{mode} decomposition of a {a.n} x {a.n} block: {len(combination)} terms')
  click.echo(to_json(report))


@cli.command()
@click.argument('suite', type=click.Choice(sorted(SUITES)))
@click.option('--blocks', type=int, help='Number of Isbell blocks (isbell).')
@click.option('--perms', type=int, help='Permutations per convex combination (isbell).')
@click.option('--trials', type=int, help='Random trials.')
@click.option('--max-n', 'max_n', type=int, help='Largest size or truncation level.')
@click.option('--max-m', 'max_m', type=int, help='Largest symmetric group degree (commutant).')
@click.option('--seed', type=click.IntRange(0, 2**64 - 1), help='Seed; defaults to BLAB_SEED.')
@click.option('--out', 'output', type=click.Choice(['json', 'csv']), help='Report format.')
@verbose_option
@handle_errors('verify')
def verify(
  suite: str,
  blocks: Optional[int],
  perms: Optional[int],
  trials: Optional[int],
  max_n: Optional[int],
  max_m: Optional[int],
  seed: Optional[int],
  output: Optional[str],
  verbose: bool,
) -> None:
  """Run a verification SUITE and print its report.

  Exits 1 when any assertion fails, including inconclusive verdicts.
  """
  configure_logging(verbose)
  config = RunConfig.from_lab_config(seed=seed, output=output)
  report = run_suite(
    suite,
    config,
    blocks=blocks,
    perms=perms,
    trials=trials,
    max_n=max_n,
    max_m=max_m,
  )
  click.echo(render(report, config.output), nl=False)
  if not report.passed:
    failures = report.failures
    logger.error(
      f'Suite {suite} failed {len(failures)} assertions, first: {failures[0].name}',
      extra={'input': failures[0].input},
    )
    sys.exit(1)


def main() -> None:
  """Console script entry point."""
  cli()


if __name__ == '__main__':
  main()
