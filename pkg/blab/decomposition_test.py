"""Tests for the Birkhoff-von Neumann and Mirsky decompositions."""

import itertools
import random
from fractions import Fraction

import pytest

from blab.decomposition import (
  ConvexCombination,
  FiniteBlock,
  block_from_payload,
  bvn_decompose,
  bvn_term_bound,
  finitary_decompose,
  is_doubly_stochastic,
  is_extreme,
  is_substochastic,
  mirsky_complete,
  mirsky_decompose,
  reconstruct,
)
from blab.exceptions import (
  NotDoublyStochasticError,
  NotSubstochasticError,
  ParseError,
  ValidationError,
)
from blab.matrices import (
  CoeffMatrix,
  IdentityTail,
  PartialPermutation,
  all_partial_permutations,
  all_permutations,
)
from blab.utils.random_inputs import random_doubly_stochastic_rows, random_substochastic_rows

F = Fraction
HALF = F(1, 2)
IDENTITY_2 = PartialPermutation.identity(2)
SWAP = PartialPermutation({1: 2, 2: 1})
EMPTY = PartialPermutation()


def pp_rows(p, n):
  rows = [[F(0)] * n for _ in range(n)]
  for k, image in p:
    rows[image - 1][k - 1] = F(1)
  return rows


class TestFiniteBlock:
  """Test block construction and conversion."""

  def test_sums_and_matrix(self, half_block):
    """Test row/column sums and the zero-tail matrix."""
    block = FiniteBlock(half_block)

    assert block.n == 2
    assert block.row_sums() == [1, 1]
    assert block.col_sums() == [1, 1]
    assert block.to_matrix() == CoeffMatrix({(m, k): HALF for m in (1, 2) for k in (1, 2)})

  def test_from_matrix_takes_the_corner(self, isbell3):
    """Test that the Isbell corner of size 3 becomes a dense block."""
    block = FiniteBlock.from_matrix(isbell3.lifted, 3)

    assert block.rows == ((1, 0, 0), (0, HALF, HALF), (0, HALF, HALF))

  def test_rejects_bad_shapes_and_negatives(self):
    """Test the square and nonnegative invariants."""
    with pytest.raises(ValidationError):
      FiniteBlock([[F(1), F(0)]])
    with pytest.raises(ValidationError):
      FiniteBlock([])
    with pytest.raises(NotSubstochasticError):
      FiniteBlock([[F(-1, 2)]])

  def test_payload_formats(self):
    """Test dense, wrapped and sparse block documents."""
    dense = block_from_payload([['1/2', '1/2'], ['1/2', '1/2']])
    wrapped = block_from_payload({'rows': [['1/2', '1/2'], ['1/2', '1/2']]})
    sparse = block_from_payload({'tail': 'zero', 'entries': [[1, 1, '1/2']], 'n': 2})

    assert dense == wrapped
    assert sparse.rows == ((HALF, 0), (0, 0))
    assert dense.to_payload() == {'rows': [['1/2', '1/2'], ['1/2', '1/2']]}

  def test_payload_errors(self):
    """Test malformed block documents."""
    test_cases = [
      {'tail': {'identity_from': 1}, 'entries': []},
      {'tail': 'zero', 'entries': [[3, 1, 1]], 'n': 2},
      [],
      'rows',
    ]
    for payload in test_cases:
      with pytest.raises(ParseError):
        block_from_payload(payload)

  def test_float_payload(self):
    """Test that float mode parses into floats."""
    block = block_from_payload([[0.5, 0.5], [0.5, 0.5]], exact=False)

    assert block.rows[0][0] == 0.5
    assert not block.arithmetic.is_exact


class TestConvexCombination:
  """Test the convex combination invariants."""

  def test_rejects_invalid_terms(self):
    """Test nonpositive weights, bad totals and repeated permutations."""
    test_cases = [
      [(F(0), IDENTITY_2), (F(1), SWAP)],
      [(HALF, IDENTITY_2), (F(1, 3), SWAP)],
      [(HALF, SWAP), (HALF, SWAP)],
    ]
    for terms in test_cases:
      with pytest.raises(ValidationError):
        ConvexCombination(terms)

  def test_payload(self):
    """Test the weight/pairs payload."""
    c = ConvexCombination([(HALF, IDENTITY_2), (HALF, SWAP)])

    assert c.to_payload() == [
      {'weight': '1/2', 'permutation': [[1, 1], [2, 2]]},
      {'weight': '1/2', 'permutation': [[1, 2], [2, 1]]},
    ]


class TestBvnDecompose:
  """Test the Birkhoff-von Neumann peeling."""

  def test_documented_examples(self, half_block, third_block):
    """Test identity, the 1/2 block and the 1/3 block."""
    assert bvn_decompose(FiniteBlock(pp_rows(PartialPermutation.identity(3), 3))).terms == (
      (1, PartialPermutation.identity(3)),
    )
    assert bvn_decompose(FiniteBlock(half_block)).terms == ((HALF, IDENTITY_2), (HALF, SWAP))

    third = bvn_decompose(FiniteBlock(third_block))
    assert third.weights == [F(1, 3)] * 3
    assert third.perms == [
      PartialPermutation.identity(3),
      PartialPermutation({1: 3, 2: 1, 3: 2}),
      PartialPermutation({1: 2, 2: 3, 3: 1}),
    ]
    assert reconstruct(third, 3) == FiniteBlock(third_block)

  def test_oracle_over_s3(self, third_block):
    """Test that the 1/3 decomposition uses only elements of S_3 and reconstructs."""
    c = bvn_decompose(FiniteBlock(third_block))

    assert set(c.perms) <= set(all_permutations(3))
    assert sum(c.weights) == 1

  def test_random_blocks(self):
    """Test round trip, totality and the term bound on random DS blocks."""
    rng = random.Random(5)
    for _ in range(40):
      n = rng.randint(1, 6)
      block = FiniteBlock(random_doubly_stochastic_rows(rng, n, terms=rng.randint(1, 5)))
      c = bvn_decompose(block)

      assert reconstruct(c, n) == block
      assert len(c) <= bvn_term_bound(n)
      assert all(perm.is_total_on(n) for perm in c.perms)
      assert all(weight > 0 for weight in c.weights)

  def test_not_doubly_stochastic(self):
    """Test the offending row is reported."""
    with pytest.raises(NotDoublyStochasticError) as exc_info:
      bvn_decompose(FiniteBlock([[HALF, F(0)], [F(0), F(1)]]))

    assert exc_info.value.details == {'axis': 'row', 'index': 1, 'sum': '1/2'}

  def test_float_mode(self):
    """Test float decomposition within tolerance."""
    block = FiniteBlock([[0.3, 0.7], [0.7, 0.3]])
    c = bvn_decompose(block)

    assert len(c) == 2
    assert reconstruct(c, 2).equals(block)
    assert abs(sum(c.weights) - 1) < 1e-12


class TestMirsky:
  """Test the doubly stochastic completion and the Mirsky decomposition."""

  def test_complete_examples(self):
    """Test the documented completions."""
    test_cases = [
      ([[F(0)]], ((0, 1), (1, 0))),
      ([[F(1)]], ((1, 0), (0, 1))),
      ([[HALF]], ((HALF, HALF), (HALF, HALF))),
    ]
    for rows, expected in test_cases:
      assert mirsky_complete(FiniteBlock(rows)).rows == expected

  def test_completion_is_doubly_stochastic(self):
    """Test random completions."""
    rng = random.Random(12)
    for _ in range(30):
      block = FiniteBlock(random_substochastic_rows(rng, rng.randint(1, 6)))

      assert is_doubly_stochastic(mirsky_complete(block))

  def test_decompose_examples(self):
    """Test zero, [[1/2]] and permutation blocks."""
    assert mirsky_decompose(FiniteBlock.zeros(3)).terms == ((1, EMPTY),)
    assert mirsky_decompose(FiniteBlock([[HALF]])).terms == (
      (HALF, PartialPermutation({1: 1})),
      (HALF, EMPTY),
    )
    swap = FiniteBlock(pp_rows(SWAP, 2))
    assert mirsky_decompose(swap).terms == ((1, SWAP),)

  def test_round_trip_and_extremality(self):
    """Test exact round trip and is_extreme <=> single term on random blocks."""
    rng = random.Random(77)
    for _ in range(60):
      n = rng.randint(1, 7)
      block = FiniteBlock(random_substochastic_rows(rng, n))
      c = mirsky_decompose(block)

      assert reconstruct(c, n) == block
      assert is_extreme(block) == (len(c) == 1)
      assert all(perm.within(n) for perm in c.perms)

  def test_extreme_points_decompose_to_themselves(self):
    """Test that every partial permutation block is its own decomposition."""
    for p in all_partial_permutations(3):
      block = FiniteBlock(pp_rows(p, 3))

      assert is_extreme(block)
      assert mirsky_decompose(block).terms == ((1, p),)

  def test_not_substochastic(self):
    """Test that an overfull column is rejected."""
    with pytest.raises(NotSubstochasticError) as exc_info:
      mirsky_decompose(FiniteBlock([[F(3, 5), F(0)], [F(3, 5), F(0)]]))

    assert exc_info.value.details['axis'] == 'col'
    assert exc_info.value.exit_code == 4


class TestIsExtreme:
  """Test extremality."""

  def test_examples(self, half_block):
    """Test the documented examples."""
    assert is_extreme(FiniteBlock(pp_rows(SWAP, 2)))
    assert not is_extreme(FiniteBlock(half_block))
    assert is_extreme(FiniteBlock.zeros(2))

  def test_requires_substochastic(self):
    """Test the precondition."""
    with pytest.raises(NotSubstochasticError):
      is_extreme(FiniteBlock([[F(1), F(1)], [F(0), F(0)]]))

  def test_brute_force_on_zero_one_blocks(self):
    """Test that the substochastic {0, 1} blocks are exactly the partial permutations."""
    expected = {FiniteBlock(pp_rows(p, 2)) for p in all_partial_permutations(2)}
    found = set()
    for bits in itertools.product([F(0), F(1)], repeat=4):
      block = FiniteBlock([list(bits[:2]), list(bits[2:])])
      if is_substochastic(block) and is_extreme(block):
        found.add(block)

    assert found == expected


class TestFinitaryDecompose:
  """Test the finitary hull decomposition."""

  def test_isbell_lift(self, isbell3):
    """Test that the lift of the Isbell matrix is a combination of finitary permutations."""
    c = finitary_decompose(isbell3.lifted, 6)

    assert reconstruct(c, 6) == FiniteBlock.from_matrix(isbell3.lifted, 6)
    assert all(perm.is_total_on(6) for perm in c.perms)

  def test_rejects_non_stochastic_corner(self, isbell3):
    """Test that cutting through a block is not doubly stochastic."""
    with pytest.raises(NotDoublyStochasticError):
      finitary_decompose(isbell3.lifted, 2)

  def test_identity(self):
    """Test the identity at any level."""
    assert finitary_decompose(CoeffMatrix(tail=IdentityTail(1)), 3).terms == (
      (1, PartialPermutation.identity(3)),
    )
