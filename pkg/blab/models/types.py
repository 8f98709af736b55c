"""Common type definitions for the Birkhoff lab.

Report and configuration models shared by the lab modules, the verification
suites and the CLI. Numeric fields hold already-formatted values: exact scalars
as 'p/q' strings, float scalars as floats.
"""

from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from blab.utils.config import DEFAULT_BUDGETS, LabConfig, get_config
from blab.utils.scalars import Arithmetic, ArithmeticMode

FormattedScalar = Union[str, float]


class MatrixClass(str, Enum):
  """Classification of a finitely describable infinite matrix."""

  DS = 'DS'
  DSS_STRICT = 'DSS_strict'
  PS = 'PS'
  PERMUTATION = 'Permutation'
  OTHER = 'Other'


class Violation(BaseModel):
  """A single reason a matrix fails to be doubly (sub)stochastic."""

  kind: Literal['negative_entry', 'row_sum', 'col_sum']
  row: Optional[int] = None
  col: Optional[int] = None
  value: FormattedScalar
  message: str


class VerdictKind(str, Enum):
  """Outcome of the finite decision rule applied to a seminorm sweep."""

  CONVERGES_TO_ZERO = 'ConvergesToZero'
  BOUNDED_AWAY = 'BoundedAway'
  INCONCLUSIVE = 'Inconclusive'


class Verdict(BaseModel):
  """Verdict with the lower bound when bounded away from zero."""

  kind: VerdictKind
  bound: Optional[FormattedScalar] = None


class Sample(BaseModel):
  """One (n, value) sample of a seminorm sweep."""

  n: int = Field(..., ge=1)
  value: FormattedScalar


class SeminormReport(BaseModel):
  """Named sequence of seminorm samples plus a verdict."""

  label: str
  samples: List[Sample] = Field(default_factory=list)
  verdict: Verdict

  @field_validator('samples')
  @classmethod
  def _strictly_increasing(cls, samples: List[Sample]) -> List[Sample]:
    for previous, current in zip(samples, samples[1:]):
      if current.n <= previous.n:
        raise ValueError(f'samples must be strictly increasing in n: {previous.n}, {current.n}')
    return samples


class AssertionRecord(BaseModel):
  """One checked assertion of a verification suite."""

  name: str
  input: Dict[str, Any] = Field(default_factory=dict)
  measured: Any = None
  bound: Any = None
  passed: bool


class SuiteReport(BaseModel):
  """Machine-readable report of one verification suite run."""

  suite: str
  claim: str
  seed: int
  arithmetic: ArithmeticMode
  parameters: Dict[str, Any] = Field(default_factory=dict)
  assertions: List[AssertionRecord] = Field(default_factory=list)
  reports: List[SeminormReport] = Field(default_factory=list)
  passed: bool

  @property
  def failures(self) -> List[AssertionRecord]:
    """Assertions that did not hold."""
    return [record for record in self.assertions if not record.passed]


class ClassificationReport(BaseModel):
  """Output of `blab classify`."""

  matrix_class: MatrixClass
  arithmetic: ArithmeticMode
  extent: int = Field(..., ge=0)
  diagnostics: List[Violation] = Field(default_factory=list)


class TermRecord(BaseModel):
  """One weighted (partial) permutation of a decomposition."""

  weight: FormattedScalar
  permutation: List[List[int]]


class DecompositionReport(BaseModel):
  """Output of `blab decompose`: the terms and the round-trip residual."""

  mode: Literal['bvn', 'mirsky']
  arithmetic: ArithmeticMode
  n: int = Field(..., ge=1)
  terms: List[TermRecord] = Field(default_factory=list)
  residual: FormattedScalar


class RunConfig(BaseModel):
  """Resolved configuration of a CLI run."""

  arithmetic: ArithmeticMode = ArithmeticMode.EXACT
  eps_tol: float = Field(1e-9, gt=0)
  seed: int = Field(0, ge=0, lt=2**64)
  output: Literal['json', 'csv'] = 'json'
  budgets: Dict[str, int] = Field(default_factory=lambda: dict(DEFAULT_BUDGETS))

  @classmethod
  def from_lab_config(cls, config: Optional[LabConfig] = None, **overrides: Any) -> 'RunConfig':
    """Build a RunConfig from the environment, letting non-None overrides win."""
    config = config or get_config()
    values: Dict[str, Any] = {
      'eps_tol': config.eps_tol,
      'seed': config.seed,
      'output': config.output,
      'budgets': config.budgets,
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    return cls(**values)

  def arithmetic_context(self) -> Arithmetic:
    """Arithmetic for this run."""
    return Arithmetic(self.arithmetic, self.eps_tol)

  def budget(self, name: str) -> int:
    """Cap for a brute-force budget."""
    return self.budgets[name]
