#!/usr/bin/env python3
"""Export a truncated Isbell witness matrix as a matrix JSON document."""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from rich.console import Console
from rich.table import Table

from blab.exceptions import LabException
from blab.matrices import matrix_to_payload
from blab.topology_lab import isbell_matrix

console = Console(stderr=True)


def build_summary(num_blocks: int) -> Table:
  """Table of the blocks: index range and constant entry."""
  a = isbell_matrix(num_blocks)
  table = Table(show_header=True, header_style='bold magenta')
  table.add_column('Block', style='cyan', justify='right')
  table.add_column('Indices', style='green')
  table.add_column('Entry', style='yellow', justify='right')
  for j in range(1, num_blocks + 1):
    offset = a.block_offset(j)
    table.add_row(str(j), f'{offset + 1}..{offset + j}', f'1/{j}')
  return table


def main(argv: Optional[List[str]] = None) -> int:
  """Export the Isbell matrix with blocks 1..N."""
  parser = argparse.ArgumentParser(
    description='Export the Isbell witness matrix (block j of size j filled with 1/j)',
    formatter_class=argparse.RawDescriptionHelpFormatter,
    epilog="""
Examples:
  # Zero-tail matrix with blocks 1..5 on stdout
  python tools/export_isbell_matrix.py 5

  # Doubly stochastic lift (identity tail) written to a file, ready for `blab classify`
  python tools/export_isbell_matrix.py 5 --lifted --output isbell5.json

  # Block summary only
  python tools/export_isbell_matrix.py 5 --summary
    """,
  )
  parser.add_argument('num_blocks', type=int, help='Number of blocks N')
  parser.add_argument(
    '--lifted', action='store_true', help='Append the identity tail after the last block'
  )
  parser.add_argument('--output', help='Write the document to this file instead of stdout')
  parser.add_argument('--summary', action='store_true', help='Print a block table instead')

  args = parser.parse_args(argv)

  try:
    if args.summary:
      Console().print(build_summary(args.num_blocks))
      return 0

    a = isbell_matrix(args.num_blocks)
    document = matrix_to_payload(a.lifted if args.lifted else a.realized)
    text = json.dumps(document, indent=2)
    if args.output:
      Path(args.output).write_text(text + '\n')
      console.print(f'Wrote {len(document["entries"])} entries to {args.output}', style='green')
    else:
      print(text)
    return 0

  except LabException as e:
    console.print(f'Error: {e.message}', style='red')
    return e.exit_code
  except OSError as e:
    console.print(f'Error: cannot write {args.output}: {e}', style='red')
    return 3


if __name__ == '__main__':
  sys.exit(main())
