"""Seminorms of the weak, strong and strong* operator topologies.

Seminorm sweeps record (n, value) samples and close with a finite decision
rule: ConvergesToZero when the last quarter of the samples is below eps_tol,
BoundedAway(c) when every sample is at least c = min(samples) > eps_tol,
Inconclusive otherwise.
"""

import logging
import math
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from blab.decomposition import FiniteBlock
from blab.exceptions import InconclusiveError, ValidationError
from blab.matrices import CoeffMatrix, FinVector
from blab.models.types import Sample, SeminormReport, Verdict, VerdictKind
from blab.utils.scalars import Arithmetic, Scalar, format_scalar

logger = logging.getLogger(__name__)


def weak_pairing(u: CoeffMatrix, x: FinVector, y: FinVector) -> Scalar:
  """<ux, y>."""
  return u.apply(x).dot(y)


def strong_seminorm(
  u: CoeffMatrix, x: FinVector, arithmetic: Optional[Arithmetic] = None
) -> Scalar:
  """||ux||."""
  ux = u.apply(x)
  return ux.norm(arithmetic or Arithmetic.infer([*u.entries.values(), *x.coords.values()]))


def strongstar_seminorm(
  u: CoeffMatrix, x: FinVector, arithmetic: Optional[Arithmetic] = None
) -> Scalar:
  """max(||ux||, ||u* x||)."""
  return max(strong_seminorm(u, x, arithmetic), strong_seminorm(u.adjoint(), x, arithmetic))


def decaying_vector(length: int) -> FinVector:
  """sum_{k <= length} 2^(-k/2) e_k, in floats."""
  return FinVector({k: 2.0 ** (-k / 2) for k in range(1, length + 1)})


def geometric_vector(length: int, ratio: Scalar) -> FinVector:
  """sum_{k <= length} ratio^k e_k, exact for rational ratios."""
  return FinVector({k: ratio**k for k in range(1, length + 1)})


def verdict_for(values: Sequence[Scalar], eps_tol: float) -> Verdict:
  """Apply the sweep decision rule to the sampled values."""
  if not values:
    return Verdict(kind=VerdictKind.INCONCLUSIVE)
  tail = values[-math.ceil(len(values) / 4) :]
  if all(abs(value) < eps_tol for value in tail):
    return Verdict(kind=VerdictKind.CONVERGES_TO_ZERO)
  bound = min(values)
  if bound > eps_tol:
    return Verdict(kind=VerdictKind.BOUNDED_AWAY, bound=format_scalar(bound))
  return Verdict(kind=VerdictKind.INCONCLUSIVE)


def build_report(
  label: str,
  samples: Iterable[Tuple[int, Scalar]],
  eps_tol: float = 1e-9,
  verdict: Optional[Verdict] = None,
) -> SeminormReport:
  """SeminormReport from (n, value) samples, sorted by n."""
  ordered = sorted(samples, key=lambda sample: sample[0])
  values = [value for _, value in ordered]
  return SeminormReport(
    label=label,
    samples=[Sample(n=n, value=format_scalar(value)) for n, value in ordered],
    verdict=verdict or verdict_for(values, eps_tol),
  )


def _lower_bounds(matrix: np.ndarray, witness: Optional[np.ndarray]) -> float:
  bound = max(
    float(np.max(np.linalg.norm(matrix, axis=1), initial=0.0)),
    float(np.max(np.linalg.norm(matrix, axis=0), initial=0.0)),
  )
  if witness is not None:
    size = float(np.linalg.norm(witness))
    if size > 0:
      bound = max(bound, float(np.linalg.norm(matrix @ witness)) / size)
  return bound


def op_norm(
  a: FiniteBlock,
  eps_it: float = 1e-12,
  max_iterations: int = 10000,
  witness: Optional[Sequence[float]] = None,
) -> float:
  """Largest singular value of a by power iteration on a^T a.

  Starts from the normalized all-ones vector and stops when the eigenvalue
  estimate changes by at most eps_it relative to itself. The result is never
  below the row and column norms of a, nor below ||a w|| / ||w|| for a
  supplied witness w.

  Raises:
      InconclusiveError: If the iteration cap is reached first; carries the last iterate.
  """
  if eps_it <= 0:
    raise ValidationError(f'eps_it must be positive, got {eps_it}', field='eps_it')
  matrix = np.array([[float(value) for value in row] for row in a.rows], dtype=float)
  gram = matrix.T @ matrix
  witness_vector = None if witness is None else np.asarray(witness, dtype=float)
  vector = np.ones(a.n) / math.sqrt(a.n)
  estimate = 0.0

  for iteration in range(1, max_iterations + 1):
    image = gram @ vector
    size = float(np.linalg.norm(image))
    if size == 0.0:
      return _lower_bounds(matrix, witness_vector)
    converged = abs(size - estimate) <= eps_it * size
    estimate = size
    vector = image / size
    if converged:
      logger.debug(f'Power iteration converged after {iteration} steps')
      return max(math.sqrt(estimate), _lower_bounds(matrix, witness_vector))

  raise InconclusiveError(
    f'Power iteration did not converge within {max_iterations} iterations',
    last_iterate=vector.tolist(),
    iterations=max_iterations,
  )
