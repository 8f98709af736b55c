"""Tests for matrix representation, classification and algebra."""

import random
from fractions import Fraction

import pytest

from blab.exceptions import ParseError, TailConflictError, ValidationError
from blab.matrices import (
  ZERO_TAIL,
  CoeffMatrix,
  FinVector,
  IdentityTail,
  PartialPermutation,
  all_partial_permutations,
  all_permutations,
  blend,
  count_partial_permutations,
  linear_combination,
  matrix_from_payload,
  matrix_to_payload,
  partial_sum_violation,
  permutation_matrix,
  standard_representation,
  vector_from_payload,
)
from blab.models.types import MatrixClass
from blab.utils.scalars import Arithmetic

IDENTITY = CoeffMatrix(tail=IdentityTail(1))
ZERO = CoeffMatrix()


def random_finitary_permutation(rng: random.Random, size: int) -> PartialPermutation:
  images = list(range(1, size + 1))
  rng.shuffle(images)
  return PartialPermutation(zip(range(1, size + 1), images))


class TestCoeffMatrix:
  """Test construction and canonical form."""

  def test_zeros_are_not_stored(self):
    """Test canonical sparsity."""
    u = CoeffMatrix({(1, 1): Fraction(0), (1, 2): Fraction(1)})

    assert u.entries == {(1, 2): 1}
    assert u == CoeffMatrix({(1, 2): Fraction(1)})

  def test_entries_inside_identity_tail_are_rejected(self):
    """Test that explicit entries may not overlap the identity tail."""
    with pytest.raises(TailConflictError):
      CoeffMatrix({(3, 4): Fraction(1, 2)}, IdentityTail(3))

  def test_cross_entries_beside_tail_are_allowed(self):
    """Test that entries with one index below the tail start are kept."""
    u = CoeffMatrix({(5, 1): Fraction(1, 2)}, IdentityTail(2))

    assert u.coefficient(5, 1) == Fraction(1, 2)
    assert u.coefficient(5, 5) == 1
    assert u.row_sum(5) == Fraction(3, 2)

  def test_identity_tail_is_lowered(self):
    """Test that explicit unit diagonals below the tail start merge into the tail."""
    u = CoeffMatrix({(1, 1): Fraction(1), (2, 2): Fraction(1)}, IdentityTail(3))

    assert u == IDENTITY
    assert u.tail == IdentityTail(1)

  def test_identity_tail_lowering_stops_at_cross_entries(self):
    """Test that lowering stops when row or column s has other tail-side entries."""
    u = CoeffMatrix({(2, 2): Fraction(1, 2), (1, 1): Fraction(1)}, IdentityTail(3))

    assert u.tail == IdentityTail(3)

  def test_invalid_indices(self):
    """Test that non-positive indices are rejected."""
    for position in [(0, 1), (1, -2), (1.5, 1)]:
      with pytest.raises(ValidationError):
        CoeffMatrix({position: Fraction(1)})


class TestCoefficient:
  """Test coefficient lookup."""

  def test_identity_tail(self):
    """Test the identity tail from 1."""
    assert IDENTITY.coefficient(7, 7) == 1
    assert IDENTITY.coefficient(7, 6) == 0

  def test_stored_entry(self):
    """Test a stored entry under a zero tail."""
    assert CoeffMatrix({(1, 2): Fraction(1)}).coefficient(1, 2) == 1

  def test_isbell_block_entry(self, isbell3):
    """Test an entry of the second Isbell block."""
    assert isbell3.lifted.coefficient(2, 3) == Fraction(1, 2)


class TestSums:
  """Test row and column sums."""

  def test_row_sums(self, isbell3):
    """Test the documented row sums."""
    assert isbell3.lifted.row_sum(4) == 1
    assert ZERO.row_sum(1) == 0
    assert CoeffMatrix({(1, 1): 0.4, (1, 5): 0.7}).row_sum(1) == pytest.approx(1.1)

  def test_col_sum_with_identity_tail(self):
    """Test that tail columns report 1 plus cross entries."""
    u = CoeffMatrix({(1, 4): Fraction(1, 3)}, IdentityTail(2))

    assert u.col_sum(4) == Fraction(4, 3)
    assert u.col_sum(9) == 1


class TestClassify:
  """Test matrix classification."""

  def test_documented_examples(self, isbell3):
    """Test the classification examples."""
    assert CoeffMatrix({(1, 2): Fraction(1)}).classify() == MatrixClass.PS
    assert isbell3.lifted.classify() == MatrixClass.DS
    assert CoeffMatrix({(1, 1): 0.5, (1, 2): 0.6}).classify() == MatrixClass.OTHER

  def test_zero_tail_is_never_ds(self, isbell3):
    """Test that a zero tail caps the class at DSS_strict."""
    assert isbell3.realized.classify() == MatrixClass.DSS_STRICT

  def test_precedence(self):
    """Test Permutation > PS > DS > DSS_strict > Other."""
    swap = PartialPermutation({1: 2, 2: 1})
    test_cases = [
      (IDENTITY, MatrixClass.PERMUTATION),
      (permutation_matrix(swap, IdentityTail(3)), MatrixClass.PERMUTATION),
      (ZERO, MatrixClass.PS),
      (permutation_matrix(PartialPermutation({1: 1}), IdentityTail(3)), MatrixClass.PS),
      (CoeffMatrix({(1, 1): Fraction(1, 2)}), MatrixClass.DSS_STRICT),
      (CoeffMatrix({(1, 1): Fraction(-1)}), MatrixClass.OTHER),
    ]

    for u, expected in test_cases:
      assert u.classify() == expected, f'Failed for {u!r}'

  def test_float_classification_uses_tolerance(self):
    """Test that float round-off does not break DS membership."""
    third = 1.0 / 3.0
    entries = {(m, k): third for m in range(1, 4) for k in range(1, 4)}
    u = CoeffMatrix(entries, IdentityTail(4))

    assert u.classify(Arithmetic.floating(1e-9)) == MatrixClass.DS

  def test_diagnostics(self):
    """Test the violation list for an Other matrix."""
    u = CoeffMatrix({(1, 1): 0.5, (1, 2): 0.6, (2, 2): -0.1})
    kinds = [(v.kind, v.row, v.col) for v in u.diagnostics()]

    assert ('negative_entry', 2, 2) in kinds
    assert ('row_sum', 1, None) in kinds

  def test_stochastic_diagnostics_report_deficits(self):
    """Test that deficits are reported on request."""
    u = CoeffMatrix({(1, 1): Fraction(1, 2)}, IdentityTail(2))
    violations = u.diagnostics(stochastic=True)

    assert [(v.kind, v.value) for v in violations] == [('row_sum', '1/2'), ('col_sum', '1/2')]


class TestApply:
  """Test the matrix action on finitely supported vectors."""

  def test_transposition(self):
    """Test that the swap of {1,2} maps e_1 to e_2."""
    swap = permutation_matrix(PartialPermutation({1: 2, 2: 1}), IdentityTail(3))

    assert swap.apply(FinVector.basis(1)) == FinVector.basis(2)

  def test_zero_matrix(self):
    """Test that the zero matrix annihilates everything."""
    assert ZERO.apply(FinVector.from_values([1, 2, 3])) == FinVector()

  def test_isbell_column(self, isbell3):
    """Test column 2 of the Isbell matrix."""
    half = Fraction(1, 2)
    assert isbell3.lifted.apply(FinVector.basis(2)) == FinVector({2: half, 3: half})

  def test_identity_tail_contributes_x(self):
    """Test the tail contribution x_m."""
    u = CoeffMatrix({(1, 2): Fraction(1)}, IdentityTail(3))

    assert u.apply(FinVector({2: Fraction(1), 5: Fraction(3)})) == FinVector({1: 1, 5: 3})


class TestAdjoint:
  """Test transposition."""

  def test_examples(self):
    """Test the documented adjoint examples."""
    swap = permutation_matrix(PartialPermutation({1: 2, 2: 1}), IdentityTail(3))

    assert swap.adjoint() == swap
    assert CoeffMatrix({(1, 5): Fraction(1)}).adjoint() == CoeffMatrix({(5, 1): Fraction(1)})

  def test_adjoint_of_cycle_is_inverse(self):
    """Test pi(rho)* = pi(rho^-1) for rho = (1 2 3)."""
    rho = PartialPermutation.from_cycles((1, 2, 3))

    assert standard_representation(rho).adjoint() == standard_representation(rho.inverse())


class TestPermutationMatrix:
  """Test permutation_matrix and the standard representation."""

  def test_examples(self):
    """Test the documented examples."""
    empty = PartialPermutation()

    assert permutation_matrix(empty, ZERO_TAIL) == ZERO
    assert permutation_matrix(empty, IdentityTail(1)) == IDENTITY
    swap = permutation_matrix(PartialPermutation({1: 2, 2: 1}), IdentityTail(3))
    assert swap.entries == {(1, 2): 1, (2, 1): 1}
    assert swap.tail == IdentityTail(3)

  def test_overlap_with_tail_is_rejected(self):
    """Test that domain or range may not reach the tail region."""
    with pytest.raises(TailConflictError):
      permutation_matrix(PartialPermutation({1: 3}), IdentityTail(3))

  def test_classes(self):
    """Test PS for zero tail and Permutation for total maps with identity tail."""
    rng = random.Random(11)
    for _ in range(20):
      size = rng.randint(1, 6)
      rho = random_finitary_permutation(rng, size)

      assert permutation_matrix(rho, ZERO_TAIL).classify() == MatrixClass.PS
      assert permutation_matrix(rho, IdentityTail(size + 1)).classify() == MatrixClass.PERMUTATION

  def test_standard_representation_requires_permutation_of_support(self):
    """Test that a non-closed partial map is rejected."""
    with pytest.raises(ValidationError):
      standard_representation(PartialPermutation({1: 2}))


class TestCompose:
  """Test matrix products."""

  def test_inverse_law(self):
    """Test pi(rho) pi(rho^-1) = identity."""
    rho = PartialPermutation.from_cycles((1, 4, 2), (3, 5))
    product = standard_representation(rho).compose(standard_representation(rho.inverse()))

    assert product == IDENTITY

  def test_zero_annihilates(self, isbell3):
    """Test zero * u = zero."""
    assert ZERO.compose(isbell3.lifted) == ZERO

  def test_transposition_product(self):
    """Test pi((1 2)) pi((2 3)) = pi((1 2) o (2 3))."""
    a = PartialPermutation.from_cycles((1, 2))
    b = PartialPermutation.from_cycles((2, 3))

    expected = standard_representation(a.compose_finitary(b))
    assert standard_representation(a).compose(standard_representation(b)) == expected
    assert a.compose_finitary(b) == PartialPermutation({1: 2, 2: 3, 3: 1})

  def test_homomorphism_and_unitarity(self):
    """Test the homomorphism and unitarity laws on random finitary permutations."""
    rng = random.Random(5)
    for _ in range(30):
      rho = random_finitary_permutation(rng, rng.randint(1, 7))
      nu = random_finitary_permutation(rng, rng.randint(1, 7))
      pi_rho, pi_nu = standard_representation(rho), standard_representation(nu)

      assert pi_rho.compose(pi_nu) == standard_representation(rho.compose_finitary(nu))
      assert pi_rho.adjoint().compose(pi_rho) == IDENTITY


class TestLinearCombination:
  """Test blends and linear combinations."""

  def test_blend_of_ds_is_ds(self, isbell3):
    """Test convexity of DS under blending."""
    swap = permutation_matrix(PartialPermutation({1: 2, 2: 1}), IdentityTail(3))
    mixed = blend(isbell3.lifted, swap, Fraction(1, 3))

    assert mixed.classify() == MatrixClass.DS
    assert mixed.coefficient(1, 1) == Fraction(1, 3)
    assert mixed.coefficient(2, 1) == Fraction(2, 3)

  def test_tail_weights_must_be_zero_or_one(self):
    """Test that a half identity tail is not representable."""
    with pytest.raises(ValidationError):
      linear_combination([(Fraction(1, 2), IDENTITY)])

  def test_difference_of_identity_tails_is_finite(self):
    """Test that opposite identity tails cancel to a zero tail."""
    swap = standard_representation(PartialPermutation.from_cycles((1, 2)))
    diff = linear_combination([(1, swap), (-1, IDENTITY)])

    assert diff.tail == ZERO_TAIL
    assert diff.entries == {(1, 1): -1, (1, 2): 1, (2, 1): 1, (2, 2): -1}

  def test_blend_weight_range(self):
    """Test that blend weights outside [0, 1] are rejected."""
    with pytest.raises(ValidationError):
      blend(ZERO, ZERO, Fraction(3, 2))


class TestPartialSumViolation:
  """Test the finite partial sum certificate."""

  def test_violations(self):
    """Test detection of excess partial sums and negative entries."""
    assert partial_sum_violation(CoeffMatrix({(1, 1): 0.5, (1, 3): 0.6}), 2) is None
    over = partial_sum_violation(CoeffMatrix({(1, 1): 0.5, (1, 3): 0.6}), 3)
    assert (over.kind, over.row) == ('row_sum', 1)
    negative = partial_sum_violation(CoeffMatrix({(2, 1): Fraction(-1)}))
    assert (negative.kind, negative.row, negative.col) == ('negative_entry', 2, 1)

  def test_ds_has_no_violation(self, isbell3):
    """Test that DS matrices have no certificate."""
    assert partial_sum_violation(isbell3.lifted, 10) is None


class TestPartialPermutation:
  """Test the partial permutation algebra."""

  def test_injectivity(self):
    """Test that non-injective maps are rejected."""
    with pytest.raises(ValidationError):
      PartialPermutation({1: 3, 2: 3})

  def test_inverse_and_restrict(self):
    """Test inverse and restriction."""
    p = PartialPermutation({1: 4, 2: 1, 3: 2})

    assert p.inverse() == PartialPermutation({4: 1, 1: 2, 2: 3})
    assert p.restrict(3) == PartialPermutation({2: 1, 3: 2})
    assert p.max_index == 4
    assert not p.is_total_on(3)
    assert PartialPermutation.identity(3).is_total_on(3)

  def test_enumeration_counts(self):
    """Test enumeration sizes against the closed-form count."""
    for n, expected in [(1, 2), (2, 7), (3, 34), (4, 209)]:
      partials = list(all_partial_permutations(n))
      assert len(partials) == expected == count_partial_permutations(n)
      assert len(set(partials)) == expected
    assert len(list(all_permutations(4))) == 24

  def test_enumeration_order_starts_with_empty_map(self):
    """Test the deterministic enumeration order."""
    first = list(all_partial_permutations(2))[:3]

    assert first == [
      PartialPermutation(),
      PartialPermutation({1: 1}),
      PartialPermutation({1: 2}),
    ]


class TestPayloads:
  """Test the matrix and vector JSON formats."""

  def test_matrix_payload(self):
    """Test decoding and encoding a matrix."""
    payload = {'tail': {'identity_from': 3}, 'entries': [[1, 2, '1/2'], [2, 1, 0.5]]}
    u = matrix_from_payload(payload)

    assert u.coefficient(1, 2) == Fraction(1, 2)
    assert u.coefficient(2, 1) == Fraction(1, 2)
    assert matrix_to_payload(u) == {
      'tail': {'identity_from': 3},
      'entries': [[1, 2, '1/2'], [2, 1, '1/2']],
    }

  def test_float_mode_payload(self):
    """Test float parsing."""
    u = matrix_from_payload({'tail': 'zero', 'entries': [[1, 1, '1/4']]}, exact=False)

    assert u.coefficient(1, 1) == 0.25
    assert matrix_to_payload(u)['entries'] == [[1, 1, 0.25]]

  def test_malformed_matrix_payloads(self):
    """Test that malformed documents raise ParseError."""
    bad_payloads = [
      [],
      {'tail': 'ones', 'entries': []},
      {'tail': {'identity_from': 0}, 'entries': []},
      {'entries': [[1, 2]]},
      {'entries': [[0, 1, 1]]},
      {'entries': [[1, 1, 'x']]},
      {'entries': [[1, 1, 1], [1, 1, 2]]},
    ]

    for payload in bad_payloads:
      with pytest.raises(ParseError):
        matrix_from_payload(payload)

  def test_vector_payload(self):
    """Test decoding a vector."""
    x = vector_from_payload({'coords': [[3, '2/3'], [1, 1]]})

    assert x == FinVector({1: Fraction(1), 3: Fraction(2, 3)})
    assert x.to_payload() == {'coords': [[1, '1'], [3, '2/3']]}
    with pytest.raises(ParseError):
      vector_from_payload({'coords': [[1]]})


class TestFinVector:
  """Test vector arithmetic."""

  def test_norms(self):
    """Test exact and float norms."""
    x = FinVector.from_values([Fraction(3), Fraction(4)])

    assert x.norm() == 5
    assert x.norm_squared() == 25
    assert FinVector({1: 1.0, 2: 1.0}).norm() == pytest.approx(2**0.5)

  def test_arithmetic(self):
    """Test addition, subtraction and dot products."""
    x = FinVector({1: Fraction(1), 2: Fraction(2)})
    y = FinVector({2: Fraction(1), 3: Fraction(5)})

    assert x.dot(y) == 2
    assert (x - x) == FinVector()
    assert (x + y)[2] == 3
    assert x.restrict(1) == FinVector.basis(1)
