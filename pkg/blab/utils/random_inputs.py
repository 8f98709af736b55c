"""Seeded generators for randomized trials.

Every suite draws from its own stream: the suite name is hashed into the seed,
so adding a suite never perturbs the inputs of another.
"""

import hashlib
import math
import random
from fractions import Fraction
from typing import List, Tuple

from blab.matrices import CoeffMatrix, FinVector, PartialPermutation

Rows = List[List[Fraction]]


def suite_rng(suite: str, seed: int) -> random.Random:
  """Deterministic PRNG for one suite and seed."""
  digest = hashlib.sha256(f'{suite}:{seed}'.encode()).digest()
  return random.Random(int.from_bytes(digest[:8], 'big'))


def random_weights(rng: random.Random, count: int, denominator: int = 12) -> List[Fraction]:
  """count positive rational weights summing to exactly 1."""
  raw = [rng.randint(1, denominator) for _ in range(count)]
  total = sum(raw)
  return [Fraction(value, total) for value in raw]


def random_permutation(rng: random.Random, n: int) -> PartialPermutation:
  """Uniform permutation of [1, n]."""
  images = list(range(1, n + 1))
  rng.shuffle(images)
  return PartialPermutation(zip(range(1, n + 1), images))


def random_partial_permutation(rng: random.Random, n: int) -> PartialPermutation:
  """Random partial permutation of [1, n]."""
  size = rng.randint(0, n)
  domain = sorted(rng.sample(range(1, n + 1), size))
  images = rng.sample(range(1, n + 1), size)
  return PartialPermutation(zip(domain, images))


def random_distinct_permutations(
  rng: random.Random, count: int, n: int
) -> List[PartialPermutation]:
  """count distinct permutations of [1, n]; requires count <= n!."""
  chosen: List[PartialPermutation] = []
  while len(chosen) < count:
    candidate = random_permutation(rng, n)
    if candidate not in chosen:
      chosen.append(candidate)
  return chosen


def random_combination(
  rng: random.Random, terms: int, n: int, denominator: int = 12
) -> List[Tuple[Fraction, PartialPermutation]]:
  """Weighted distinct permutations of [1, n] with weights summing to 1."""
  weights = random_weights(rng, terms, denominator)
  return list(zip(weights, random_distinct_permutations(rng, terms, n)))


def random_substochastic_rows(
  rng: random.Random, n: int, denominator: int = 12, density: float = 0.6
) -> Rows:
  """Random rational doubly substochastic n x n block.

  Entries are sampled nonnegative, then violating rows and columns are rescaled
  until every sum is at most 1. Rescaling never increases a sum, so at most n
  passes are needed.
  """
  rows = [[_sparse_entry(rng, denominator, density) for _ in range(n)] for _ in range(n)]
  for _ in range(n):
    changed = False
    for row in rows:
      total = sum(row)
      if total > 1:
        row[:] = [value / total for value in row]
        changed = True
    for j in range(n):
      total = sum(row[j] for row in rows)
      if total > 1:
        for row in rows:
          row[j] = row[j] / total
        changed = True
    if not changed:
      break
  return rows


def random_doubly_stochastic_rows(rng: random.Random, n: int, terms: int = 3) -> Rows:
  """Random rational doubly stochastic block as a mixture of permutations."""
  rows = [[Fraction(0)] * n for _ in range(n)]
  for weight, p in random_combination(rng, min(terms, math.factorial(n)), n):
    for k, image in p:
      rows[image - 1][k - 1] += weight
  return rows


def rows_to_matrix(rows: Rows) -> CoeffMatrix:
  """Zero-tail matrix from 0-based rows."""
  return CoeffMatrix(
    {(m + 1, k + 1): value for m, row in enumerate(rows) for k, value in enumerate(row)}
  )


def random_vector(rng: random.Random, size: int, denominator: int = 12) -> FinVector:
  """Random rational vector with coordinates in [-1, 1] on [1, size]."""
  return FinVector(
    {k: Fraction(rng.randint(-denominator, denominator), denominator) for k in range(1, size + 1)}
  )


def _sparse_entry(rng: random.Random, denominator: int, density: float) -> Fraction:
  if rng.random() < density:
    return Fraction(rng.randint(1, denominator), denominator)
  return Fraction(0)
