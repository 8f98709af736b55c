"""Augmenting-path bipartite matching on small support graphs."""

from typing import List, Optional, Sequence

Matching = List[Optional[int]]


def maximum_matching(
  adjacency: Sequence[Sequence[int]],
  num_cols: int,
  initial: Optional[Sequence[Optional[int]]] = None,
) -> Matching:
  """Maximum bipartite matching by repeated augmenting-path search.

  Rows are processed in increasing order. Each row first takes its first free
  candidate column and only searches for an augmenting path when none is free,
  so the result is deterministic. A partial matching passed as `initial` is
  kept and only its free rows are searched from.

  Args:
      adjacency: adjacency[r] lists the columns (0-based) adjacent to row r.
      num_cols: Number of columns.
      initial: initial[r] = column already matched to row r, or None. Every
          matched pair must be an edge of the graph.

  Returns:
      match_of_row[r] = matched column, or None.
  """
  row_of_col: Matching = [None] * num_cols
  free_rows = list(range(len(adjacency)))
  if initial is not None:
    for row, col in enumerate(initial):
      if col is not None:
        row_of_col[col] = row
    free_rows = [row for row, col in enumerate(initial) if col is None]

  def search(row: int, seen: List[bool]) -> bool:
    for col in adjacency[row]:
      if not seen[col]:
        seen[col] = True
        if row_of_col[col] is None or search(row_of_col[col], seen):
          row_of_col[col] = row
          return True
    return False

  for row in free_rows:
    free = next((col for col in adjacency[row] if row_of_col[col] is None), None)
    if free is not None:
      row_of_col[free] = row
    else:
      search(row, [False] * num_cols)

  match_of_row: Matching = [None] * len(adjacency)
  for col, row in enumerate(row_of_col):
    if row is not None:
      match_of_row[row] = col
  return match_of_row


def perfect_matching(
  adjacency: Sequence[Sequence[int]], initial: Optional[Sequence[Optional[int]]] = None
) -> Optional[List[int]]:
  """A perfect matching of a square bipartite graph, or None if there is none."""
  n = len(adjacency)
  match = maximum_matching(adjacency, n, initial)
  if any(col is None for col in match):
    return None
  return [col for col in match if col is not None]
