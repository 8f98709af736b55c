"""Operator-topology seminorms, witness objects and finite span computations."""

from blab.topology_lab.exposed import exposed_functional, exposed_margin, exposed_verify
from blab.topology_lab.seminorms import (
  build_report,
  decaying_vector,
  op_norm,
  strong_seminorm,
  strongstar_seminorm,
  weak_pairing,
)
from blab.topology_lab.spans import (
  SpanVariant,
  commutant_dimension,
  noncommuting_cycles,
  span_dimension,
)
from blab.topology_lab.witnesses import (
  IsbellMatrix,
  combination_matrix,
  isbell_gap,
  isbell_matrix,
  rank_one_shift,
  shift_permutation,
  strong_not_strongstar_sweep,
  weak_closure_sweep,
  weak_closure_witness,
  weak_null_sweep,
)

__all__ = [
  'IsbellMatrix',
  'SpanVariant',
  'build_report',
  'combination_matrix',
  'commutant_dimension',
  'decaying_vector',
  'exposed_functional',
  'exposed_margin',
  'exposed_verify',
  'isbell_gap',
  'isbell_matrix',
  'noncommuting_cycles',
  'op_norm',
  'rank_one_shift',
  'shift_permutation',
  'span_dimension',
  'strong_not_strongstar_sweep',
  'strong_seminorm',
  'strongstar_seminorm',
  'weak_closure_sweep',
  'weak_closure_witness',
  'weak_null_sweep',
  'weak_pairing',
]
