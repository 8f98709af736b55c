"""Verification suites behind `blab verify`.

Each suite checks one mathematical claim over seeded random and exhaustive
inputs and returns a SuiteReport listing every assertion with its measured value
and bound. Random inputs come from suite_rng(suite, seed), so a suite's inputs
depend only on its own name and the seed, and reports carry no timings: the same
RunConfig always produces the same report.
"""

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from blab.decomposition import (
  ConvexCombination,
  FiniteBlock,
  bvn_decompose,
  bvn_term_bound,
  is_extreme,
  is_substochastic,
  mirsky_complete,
  mirsky_decompose,
  reconstruct,
  restrict_combination,
)
from blab.exceptions import BudgetExceededError, InconclusiveError, PTooLargeError, ValidationError
from blab.matrices import (
  FinVector,
  all_partial_permutations,
  all_permutations,
  blend,
  count_partial_permutations,
  permutation_matrix,
)
from blab.models.types import (
  AssertionRecord,
  MatrixClass,
  RunConfig,
  SeminormReport,
  SuiteReport,
  VerdictKind,
)
from blab.topology_lab import (
  SpanVariant,
  build_report,
  combination_matrix,
  commutant_dimension,
  decaying_vector,
  exposed_margin,
  isbell_gap,
  isbell_matrix,
  noncommuting_cycles,
  op_norm,
  span_dimension,
  strong_not_strongstar_sweep,
  weak_closure_sweep,
  weak_null_sweep,
)
from blab.truncation import border_strong_gap, corner_weak_gap, finitary_lift, weak_gap_bound
from blab.utils.config import get_config
from blab.utils.polytope import substochastic_vertices
from blab.utils.random_inputs import (
  random_combination,
  random_doubly_stochastic_rows,
  random_partial_permutation,
  random_substochastic_rows,
  random_vector,
  rows_to_matrix,
  suite_rng,
)
from blab.utils.scalars import Arithmetic, format_scalar
from blab.utils.timing import OperationTimer

logger = logging.getLogger(__name__)

SUBSTOCHASTIC_CLASSES = {
  MatrixClass.DSS_STRICT,
  MatrixClass.DS,
  MatrixClass.PS,
  MatrixClass.PERMUTATION,
}
STOCHASTIC_CLASSES = {MatrixClass.DS, MatrixClass.PERMUTATION}


@dataclass
class SuiteContext:
  """Run configuration, PRNG and parameters of one suite run, plus its findings."""

  config: RunConfig
  rng: random.Random
  params: Dict[str, int]
  assertions: List[AssertionRecord] = field(default_factory=list)
  reports: List[SeminormReport] = field(default_factory=list)

  @property
  def arithmetic(self) -> Arithmetic:
    """Arithmetic for this run."""
    return self.config.arithmetic_context()

  @property
  def eps_tol(self) -> float:
    """Comparison tolerance for verdicts."""
    return self.config.eps_tol

  def within_budget(self, budget: str, value: int) -> None:
    """Raise BudgetExceededError when value is over the named cap."""
    cap = self.config.budget(budget)
    if value > cap:
      raise BudgetExceededError(budget, value, cap)

  def check(
    self, name: str, passed: bool, measured: Any = None, bound: Any = None, **inputs: Any
  ) -> bool:
    """Record one assertion."""
    record = AssertionRecord(
      name=name, input=inputs, measured=measured, bound=bound, passed=bool(passed)
    )
    self.assertions.append(record)
    if not record.passed:
      logger.warning(
        f'Assertion {name} failed: measured {measured}, bound {bound}', extra={'input': inputs}
      )
    return record.passed

  def expect_verdict(self, report: SeminormReport, expected: VerdictKind, **inputs: Any) -> bool:
    """Attach a seminorm report; an Inconclusive or unexpected verdict fails."""
    self.reports.append(report)
    return self.check(
      f'{report.label}_verdict',
      report.verdict.kind == expected,
      measured=report.verdict.kind.value,
      bound=expected.value,
      **inputs,
    )


@dataclass(frozen=True)
class Suite:
  """A registered verification suite."""

  name: str
  claim: str
  defaults: Dict[str, int]
  budget_ms: float
  body: Callable[[SuiteContext], None]


SUITES: Dict[str, Suite] = {}


def suite(name: str, claim: str, budget_ms: float = 10000.0, **defaults: int):
  """Register a suite body under name with its claim and default parameters."""

  def register(body: Callable[[SuiteContext], None]) -> Callable[[SuiteContext], None]:
    SUITES[name] = Suite(name, claim, defaults, budget_ms, body)
    return body

  return register


def run_suite(
  name: str, config: Optional[RunConfig] = None, **overrides: Optional[int]
) -> SuiteReport:
  """Run one suite and return its report.

  Args:
      name: Suite name, one of SUITES.
      config: Run configuration; defaults to the environment.
      **overrides: Parameter values replacing the suite defaults; None is ignored.

  Raises:
      ValidationError: On unknown suites, parameters the suite does not take, or
          non-positive values.
      BudgetExceededError: If a parameter exceeds its budget cap.
  """
  if name not in SUITES:
    raise ValidationError(f'Unknown suite {name!r}; choose from {sorted(SUITES)}', field='suite')
  suite = SUITES[name]
  config = config or RunConfig.from_lab_config()
  given = {key: value for key, value in overrides.items() if value is not None}
  unknown = sorted(set(given) - set(suite.defaults))
  if unknown:
    raise ValidationError(
      f'Suite {name} does not take {unknown}; it takes {sorted(suite.defaults)}', field=unknown[0]
    )
  params = {**suite.defaults, **given}
  for key, value in params.items():
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
      raise ValidationError(f'{key} must be a positive integer, got {value!r}', field=key)

  context = SuiteContext(config, suite_rng(name, config.seed), params)
  with OperationTimer(f'verify.{name}', budget_ms=suite.budget_ms, seed=config.seed, **params):
    suite.body(context)

  report = SuiteReport(
    suite=name,
    claim=suite.claim,
    seed=config.seed,
    arithmetic=config.arithmetic,
    parameters=params,
    assertions=context.assertions,
    reports=context.reports,
    passed=all(record.passed for record in context.assertions),
  )
  logger.info(
    f'Suite {name}: {len(report.assertions) - len(report.failures)}/{len(report.assertions)} '
    f'assertions passed'
  )
  return report


def _as_float(value: Any) -> float:
  return float(Fraction(value)) if isinstance(value, str) else float(value)


def _bits_rows(bits) -> List[List[int]]:
  return [list(bits[0:3]), list(bits[3:6]), list(bits[6:9])]


def _vector(x: FinVector, arithmetic: Arithmetic) -> FinVector:
  return FinVector({k: arithmetic.coerce(value) for k, value in x.items()})


@suite(
  'isbell',
  'On block n of the Isbell matrix a, every convex combination b of p finitary '
  'permutations admits a unit vector x with ||(a - b) x||^2 >= (n - p^2) / n',
  budget_ms=10000.0,
  blocks=10,
  perms=2,
  trials=100,
)
def _isbell(context: SuiteContext) -> None:
  blocks, p, trials = (context.params[key] for key in ('blocks', 'perms', 'trials'))
  context.within_budget('blocks', blocks)
  context.within_budget('trials', trials)
  sizes = [n for n in range(1, blocks + 1) if p * p < n]
  if not sizes:
    raise PTooLargeError(p, blocks)

  a = isbell_matrix(blocks)
  support = a.dimension + blocks
  smallest = next(s for s in itertools.count(1) if math.factorial(s) >= p)
  worst: Dict[int, tuple] = {}
  for trial in range(trials):
    size = context.rng.randint(smallest, max(smallest, support))
    b = ConvexCombination(random_combination(context.rng, p, size))
    b_matrix = combination_matrix(b)
    for n in sizes:
      gap = isbell_gap(a, b, n, b_matrix)
      if n not in worst or float(gap.gap) < float(worst[n][1].gap):
        worst[n] = (trial, gap, b)

  for n in sizes:
    trial, gap, b = worst[n]
    passed = float(gap.gap) >= float(gap.bound) - context.eps_tol
    inputs: Dict[str, Any] = {'block': n, 'trial': trial, 'witness_kind': gap.witness_kind}
    if not passed:
      inputs['combination'] = b.to_payload()
    context.check(
      'isbell_gap',
      passed,
      measured=format_scalar(gap.gap),
      bound=format_scalar(gap.bound),
      **inputs,
    )


@suite(
  'topology',
  'Shift permutations converge weakly to zero; rank-one shifts converge strongly '
  'but not strongly* to zero; weak-closure witnesses converge weakly to partial '
  'permutations; truncations of substochastic matrices converge strongly and '
  'weakly; the cycles (1 ... k + 1) pairwise fail to commute',
  budget_ms=10000.0,
  max_n=50,
)
def _topology(context: SuiteContext) -> None:
  max_n = context.params['max_n']
  if max_n < 4:
    raise ValidationError(f'topology needs max_n >= 4, got {max_n}', field='max_n')
  rng = context.rng
  eps = context.eps_tol
  length = min(20, max_n // 2)
  size = min(6, max_n // 2)

  strong, adjoint = strong_not_strongstar_sweep(decaying_vector(length), max_n, eps)
  context.expect_verdict(strong, VerdictKind.CONVERGES_TO_ZERO, length=length)
  tail = max(_as_float(sample.value) for sample in strong.samples if sample.n > length)
  context.check('strong_tail', tail < 1e-3, measured=tail, bound=1e-3, length=length)
  context.expect_verdict(adjoint, VerdictKind.BOUNDED_AWAY)
  ones = all(_as_float(sample.value) == 1.0 for sample in adjoint.samples)
  context.check('strongstar_adjoint_unit', ones, measured=adjoint.verdict.bound, bound='1')

  x, y = random_vector(rng, size), random_vector(rng, size)
  context.expect_verdict(weak_null_sweep(x, y, max_n, eps), VerdictKind.CONVERGES_TO_ZERO)

  u = random_partial_permutation(rng, size)
  x, y = random_vector(rng, size), random_vector(rng, size)
  context.expect_verdict(
    weak_closure_sweep(u, x, y, max_n, eps),
    VerdictKind.CONVERGES_TO_ZERO,
    u=u.to_pairs(),
  )

  a = rows_to_matrix(random_substochastic_rows(rng, size))
  x, y = random_vector(rng, size), random_vector(rng, size)
  levels = range(1, max_n + 1)
  strong_gaps = [(n, border_strong_gap(a, x, n)) for n in levels]
  weak_gaps = [(n, corner_weak_gap(a, x, y, n)) for n in levels]
  context.expect_verdict(
    build_report('border_strong', strong_gaps, eps), VerdictKind.CONVERGES_TO_ZERO
  )
  context.expect_verdict(build_report('corner_weak', weak_gaps, eps), VerdictKind.CONVERGES_TO_ZERO)
  excess = max(float(gap) - weak_gap_bound(x, y, n) for n, gap in weak_gaps)
  context.check('corner_weak_bound', excess <= eps, measured=excess, bound=eps)

  k_max = min(max_n, 8)
  cycles = noncommuting_cycles(k_max)
  context.check(
    'noncommuting_cycles',
    not cycles['commuting'],
    measured=len(cycles['commuting']),
    bound=0,
    k_max=k_max,
    pairs=cycles['pairs'],
  )


@suite(
  'exposed',
  'For a partial permutation u of [1, n] with column support I, the functional '
  'v -> <v x^I, u x^I> - <v x^(I^c), x>, x^J = sum_{j in J} 2^(-j/2) e_j, peaks '
  'uniquely at v = u among partial permutations, and among permutations when u is one',
  budget_ms=60000.0,
  max_n=4,
)
def _exposed(context: SuiteContext) -> None:
  max_n = context.params['max_n']
  context.within_budget('exposed_n', max_n)
  cap = context.config.budget('exposed_n')
  for n in range(1, max_n + 1):
    for hull, family in (('DSS', all_partial_permutations), ('DS', all_permutations)):
      margins: List[float] = []
      counterexamples = []
      count = 0
      for u in family(n):
        count += 1
        margin = exposed_margin(u, n, hull, cap)
        if margin is None:
          continue
        margins.append(margin)
        if margin <= context.eps_tol:
          counterexamples.append(u.to_pairs())
      inputs: Dict[str, Any] = {'n': n, 'hull': hull, 'maps': count}
      if counterexamples:
        inputs['counterexample'] = counterexamples[0]
      context.check(
        'unique_maximizer',
        not counterexamples,
        measured=min(margins, default=None),
        bound=context.eps_tol,
        **inputs,
      )


@suite(
  'commutant',
  'The commutant of the permutation representation of S_m is spanned by the '
  'identity and the all-ones matrix: dimension 1 for m = 1 and 2 for m >= 2',
  budget_ms=5000.0,
  max_m=8,
)
def _commutant(context: SuiteContext) -> None:
  max_m = context.params['max_m']
  context.within_budget('commutant_m', max_m)
  cap = context.config.budget('commutant_m')
  for m in range(1, max_m + 1):
    dimension = commutant_dimension(m, cap)
    expected = 1 if m == 1 else 2
    context.check('commutant_dimension', dimension == expected, dimension, expected, m=m)


@suite(
  'span',
  'The n x n permutation matrices span a space of dimension (n - 1)^2 + 1, while '
  'the n x n corners of finitary permutations span all n x n matrices',
  budget_ms=30000.0,
  max_n=6,
)
def _span(context: SuiteContext) -> None:
  max_n = context.params['max_n']
  context.within_budget('span_n', max_n)
  cap = context.config.budget('span_n')
  expected_by_variant = {
    SpanVariant.TAIL_LIFT: lambda n: (n - 1) ** 2 + 1,
    SpanVariant.CORNER: lambda n: n * n,
  }
  for variant, expected_for in expected_by_variant.items():
    for n in range(1, max_n + 1):
      dimension = span_dimension(n, variant, cap)
      expected = expected_for(n)
      context.check(
        'span_dimension', dimension == expected, dimension, expected, variant=variant.value, n=n
      )


@suite(
  'contraction',
  'Doubly substochastic matrices are contractions; a {0, 1} matrix has norm at '
  'most 1 exactly when it is a partial permutation matrix; the doubly '
  'substochastic and doubly stochastic matrices are convex',
  budget_ms=30000.0,
  trials=1000,
  max_n=6,
)
def _contraction(context: SuiteContext) -> None:
  trials, max_n = context.params['trials'], context.params['max_n']
  context.within_budget('trials', trials)
  context.within_budget('decompose_n', max_n)
  rng = context.rng
  arith = context.arithmetic
  eps = context.eps_tol
  lab = get_config()
  norm_trials = min(trials, 50)

  worst_ratio, worst_trial = None, None
  norm_failures: List[int] = []
  inconclusive: List[int] = []
  for trial in range(trials):
    n = rng.randint(1, max_n)
    a = FiniteBlock(random_substochastic_rows(rng, n), arith)
    x = _vector(random_vector(rng, n), arith)
    if x.norm_squared() != 0:
      ratio = a.to_matrix().apply(x).norm_squared() / x.norm_squared()
      if worst_ratio is None or ratio > worst_ratio:
        worst_ratio, worst_trial = ratio, trial
    if trial < norm_trials:
      row_norm = max(math.sqrt(sum(float(v) ** 2 for v in row)) for row in a.rows)
      try:
        norm = op_norm(a, lab.eps_it, lab.max_iterations)
      except InconclusiveError:
        inconclusive.append(trial)
        continue
      if not row_norm - eps <= norm <= 1 + eps:
        norm_failures.append(trial)

  context.check(
    'contraction',
    worst_ratio is None or arith.le(worst_ratio, 1),
    measured=None if worst_ratio is None else format_scalar(worst_ratio),
    bound='1',
    trial=worst_trial,
  )
  context.check(
    'op_norm_bounds',
    not norm_failures and not inconclusive,
    measured=len(norm_failures) + len(inconclusive),
    bound=0,
    trials=norm_trials,
    failures=norm_failures[:5],
    inconclusive=inconclusive[:5],
  )

  agreements = 0
  disagreements = []
  for bits in itertools.product((0, 1), repeat=9):
    a = FiniteBlock(_bits_rows(bits), arith)
    try:
      small = op_norm(a, lab.eps_it, lab.max_iterations) <= 1 + eps
    except InconclusiveError:
      small = None
    if small is not None and small == is_substochastic(a):
      agreements += 1
    else:
      disagreements.append(_bits_rows(bits))
  context.check(
    'zero_one_norm',
    agreements == 512,
    measured=agreements,
    bound=512,
    counterexample=disagreements[0] if disagreements else None,
  )

  blend_failures = {'dss': [], 'ds': []}
  for trial in range(min(trials, 200)):
    n = rng.randint(1, max_n)
    t = Fraction(rng.randint(0, 12), 12)
    u = FiniteBlock(random_substochastic_rows(rng, n), arith).to_matrix()
    w = FiniteBlock(random_substochastic_rows(rng, n), arith).to_matrix()
    if blend(u, w, arith.coerce(t)).classify(arith) not in SUBSTOCHASTIC_CLASSES:
      blend_failures['dss'].append(trial)
    u = finitary_lift(FiniteBlock(random_doubly_stochastic_rows(rng, n), arith).to_matrix(), n)
    w = finitary_lift(FiniteBlock(random_doubly_stochastic_rows(rng, n), arith).to_matrix(), n)
    if blend(u, w, arith.coerce(t)).classify(arith) not in STOCHASTIC_CLASSES:
      blend_failures['ds'].append(trial)
  for kind, failures in blend_failures.items():
    context.check(f'blend_{kind}', not failures, len(failures), 0, trials=failures[:5])


@suite(
  'extremality',
  'The vertices of the n x n doubly substochastic polytope are exactly the partial '
  'permutation matrices, and a substochastic block is extreme exactly when its '
  'decomposition into partial permutations has a single term',
  budget_ms=30000.0,
  max_n=3,
  trials=200,
)
def _extremality(context: SuiteContext) -> None:
  max_n, trials = context.params['max_n'], context.params['trials']
  context.within_budget('vertex_n', max_n)
  context.within_budget('trials', trials)
  for n in range(1, max_n + 1):
    vertices = substochastic_vertices(n)
    expected = {
      FiniteBlock.from_matrix(permutation_matrix(p), n).rows for p in all_partial_permutations(n)
    }
    context.check(
      'vertices_are_partial_permutations',
      vertices == expected,
      measured=len(vertices),
      bound=count_partial_permutations(n),
      n=n,
    )
    rejected = [vertex for vertex in vertices if not is_extreme(FiniteBlock(vertex))]
    context.check('vertices_extreme', not rejected, len(rejected), 0, n=n)

  rng = context.rng
  arith = context.arithmetic
  mismatches: List[int] = []
  for trial in range(trials):
    n = rng.randint(1, 6)
    if trial % 2:
      a = FiniteBlock.from_matrix(permutation_matrix(random_partial_permutation(rng, n)), n, arith)
    else:
      a = FiniteBlock(random_substochastic_rows(rng, n), arith)
    if is_extreme(a) != (len(mirsky_decompose(a, get_config().eps_res)) == 1):
      mismatches.append(trial)
  context.check(
    'extreme_iff_single_term', not mismatches, len(mismatches), 0, trials=mismatches[:5]
  )


@suite(
  'decomposition',
  'Every doubly substochastic block is a convex combination of partial permutation '
  'matrices, recovered exactly from the Birkhoff-von Neumann decomposition of its '
  'doubly stochastic completion, which has at most m^2 - 2m + 2 terms at size m',
  budget_ms=30000.0,
  trials=500,
  max_n=12,
)
def _decomposition(context: SuiteContext) -> None:
  trials, max_n = context.params['trials'], context.params['max_n']
  context.within_budget('trials', trials)
  context.within_budget('decompose_n', max_n)
  rng = context.rng
  arith = context.arithmetic
  eps_res = get_config().eps_res

  round_trip_failures: List[int] = []
  worst_fill, worst_trial = Fraction(0), None
  for trial in range(trials):
    n = rng.randint(1, max_n)
    a = FiniteBlock(random_substochastic_rows(rng, n), arith)
    full = bvn_decompose(mirsky_complete(a), eps_res)
    restricted = restrict_combination(full, n)
    if not reconstruct(restricted, n).equals(a):
      round_trip_failures.append(trial)
    fill = Fraction(len(full), bvn_term_bound(2 * n))
    if worst_trial is None or fill > worst_fill:
      worst_fill, worst_trial = fill, trial

  context.check(
    'round_trip',
    not round_trip_failures,
    measured=len(round_trip_failures),
    bound=0,
    trials=round_trip_failures[:5],
  )
  context.check(
    'bvn_term_bound',
    worst_fill <= 1,
    measured=format_scalar(worst_fill),
    bound='1',
    trial=worst_trial,
  )
