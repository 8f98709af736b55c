#!/usr/bin/env python3
"""Run a single convergence sweep and print its samples and verdict."""

import argparse
import sys
from typing import List, Optional

from rich.console import Console
from rich.table import Table

from blab.exceptions import LabException
from blab.matrices import PartialPermutation
from blab.models.types import SeminormReport
from blab.topology_lab import (
  decaying_vector,
  strong_not_strongstar_sweep,
  weak_closure_sweep,
  weak_null_sweep,
)
from blab.utils.config import get_config
from blab.utils.random_inputs import random_partial_permutation, random_vector, suite_rng
from blab.utils.reports import to_csv, to_json

console = Console()

SWEEPS = ['weak_null', 'strong', 'strongstar_adjoint', 'weak_closure']


def run_sweep(
  sweep: str, max_n: int, size: int, seed: int, eps_tol: float, u: Optional[PartialPermutation]
) -> SeminormReport:
  """Sample one sweep; random vectors and maps come from the seed."""
  rng = suite_rng(f'sweep.{sweep}', seed)
  if sweep in ('strong', 'strongstar_adjoint'):
    strong, adjoint = strong_not_strongstar_sweep(decaying_vector(size), max_n, eps_tol)
    return strong if sweep == 'strong' else adjoint
  x, y = random_vector(rng, size), random_vector(rng, size)
  if sweep == 'weak_null':
    return weak_null_sweep(x, y, max_n, eps_tol)
  u = u if u is not None else random_partial_permutation(rng, size)
  return weak_closure_sweep(u, x, y, max_n, eps_tol)


def render_table(report: SeminormReport) -> Table:
  """Samples as a rich table, verdict in the caption."""
  verdict = report.verdict.kind.value
  if report.verdict.bound is not None:
    verdict += f' (>= {report.verdict.bound})'
  table = Table(show_header=True, header_style='bold magenta', caption=f'Verdict: {verdict}')
  table.add_column('n', style='cyan', justify='right')
  table.add_column('value', style='green', justify='right')
  for sample in report.samples:
    table.add_row(str(sample.n), str(sample.value))
  return table


def _parse_map(raw: str) -> PartialPermutation:
  """Parse '1:2,3:3' into a partial permutation."""
  pairs = [item.split(':') for item in raw.split(',') if item]
  return PartialPermutation({int(k): int(m) for k, m in pairs})


def main(argv: Optional[List[str]] = None) -> int:
  """Run a convergence sweep."""
  parser = argparse.ArgumentParser(
    description='Sample a seminorm sweep n = 1..max_n and apply the verdict rule',
    formatter_class=argparse.RawDescriptionHelpFormatter,
    epilog="""
Sweeps:
  weak_null           <pi(rho_n) x, y> for the shift permutations rho_n
  strong              ||u_n x|| for the rank-one shifts u_n and a decaying x
  strongstar_adjoint  ||u_n* e_1||, which stays 1
  weak_closure        |<(pi(w_n) - u) x, y>| for the weak-closure witnesses of u

Examples:
  python tools/seminorm_sweep.py weak_null --max-n 12
  python tools/seminorm_sweep.py weak_closure --map 1:2 --size 3 --json
    """,
  )
  parser.add_argument('sweep', choices=SWEEPS, help='Sweep to run')
  parser.add_argument('--max-n', type=int, default=20, help='Largest level (default: 20)')
  parser.add_argument('--size', type=int, default=4, help='Support of x and y (default: 4)')
  parser.add_argument('--seed', type=int, help='Seed (defaults to BLAB_SEED)')
  parser.add_argument('--map', help='Partial permutation for weak_closure, e.g. 1:2,2:1')
  output = parser.add_mutually_exclusive_group()
  output.add_argument('--json', action='store_true', help='Output the report as JSON')
  output.add_argument('--csv', action='store_true', help='Output the samples as CSV')

  args = parser.parse_args(argv)

  try:
    config = get_config()
    seed = args.seed if args.seed is not None else config.seed
    u = _parse_map(args.map) if args.map else None
    report = run_sweep(args.sweep, args.max_n, args.size, seed, config.eps_tol, u)

    if args.json:
      print(to_json(report))
    elif args.csv:
      print(to_csv(report), end='')
    else:
      console.print(render_table(report))
    return 0

  except LabException as e:
    console.print(f'Error: {e.message}', style='red')
    return e.exit_code
  except ValueError as e:
    console.print(f'Error: invalid --map {args.map!r}: {e}', style='red')
    return 2


if __name__ == '__main__':
  sys.exit(main())
