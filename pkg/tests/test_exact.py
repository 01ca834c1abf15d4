"""Tests for the exact-arithmetic toolkit: dual numbers and combinatorics."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellsuper.exact import (
    DualRational,
    aut_size,
    compositions,
    koszul_sign,
    ordered_shuffles,
    partitions,
    rational,
    set_partitions,
    shuffles,
    vec_add,
    vec_factorial,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=40)
small_rationals = st.fractions(min_value=-60, max_value=60, max_denominator=12)


class TestRational:
    def test_accepts_int_str_fraction(self):
        assert rational(3) == Fraction(3)
        assert rational("13/2") == Fraction(13, 2)
        assert rational(Fraction(5, 4)) == Fraction(5, 4)

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            rational(1.5)


class TestDualRational:
    def test_arithmetic_truncates_eps_squared(self):
        x = DualRational(Fraction(2), Fraction(3))
        y = DualRational(Fraction(5), Fraction(-1))
        assert x + y == DualRational(Fraction(7), Fraction(2))
        assert x - y == DualRational(Fraction(-3), Fraction(4))
        # (2+3e)(5-e) = 10 + 13e, the 3*(-1) e^2 term vanishes.
        assert x * y == DualRational(Fraction(10), Fraction(13))

    def test_lexicographic_order(self):
        assert DualRational(1, 5) < DualRational(2, 0)
        assert DualRational(2, -1) < DualRational(2, 0) < DualRational(2, 1)
        assert max(DualRational(3, 0), DualRational(3, -7)) == DualRational(3, 0)

    @given(
        a=rationals, b=small_rationals, c=rationals, d=small_rationals,
    )
    @settings(deadline=None)
    def test_order_matches_small_epsilon_limit(self, a, b, c, d):
        """Dual order agrees with evaluating eps at a sufficiently tiny value."""
        x = DualRational(a, b)
        y = DualRational(c, d)
        delta = Fraction(1, 10 ** 9)
        if x < y:
            assert x.approx(delta) < y.approx(delta)
        elif y < x:
            assert y.approx(delta) < x.approx(delta)
        else:
            assert x.approx(delta) == y.approx(delta)

    @given(a=rationals, b=rationals, c=rationals, d=rationals)
    @settings(deadline=None)
    def test_ring_commutativity(self, a, b, c, d):
        x = DualRational(a, b)
        y = DualRational(c, d)
        assert x + y == y + x
        assert x * y == y * x

    def test_of_coercion(self):
        assert DualRational.of(3) == DualRational(Fraction(3), Fraction(0))
        assert DualRational.of("1/2") == DualRational(Fraction(1, 2), Fraction(0))


class TestVectors:
    def test_vec_add(self):
        assert vec_add((1, 2), (3, 4), (0, 1)) == (4, 7)

    def test_vec_factorial(self):
        assert vec_factorial((3, 2)) == 12
        assert vec_factorial((0, 0)) == 1
        assert vec_factorial((4,)) == 24


class TestPartitions:
    def test_counts_match_partition_function(self):
        # Number of partitions of n for n = 1..10.
        expected = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
        for n, count in enumerate(expected, start=1):
            assert len(list(partitions(n))) == count

    def test_parts_descending_and_sum(self):
        for part in partitions(8):
            assert sum(part) == 8
            assert list(part) == sorted(part, reverse=True)

    def test_max_part_filter(self):
        assert list(partitions(4, max_part=2)) == [(2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_trivial(self):
        assert list(partitions(0)) == [()]
        assert list(partitions(1)) == [(1,)]


class TestCompositions:
    @given(total=st.integers(0, 9), length=st.integers(1, 4))
    @settings(deadline=None)
    def test_count_is_binomial(self, total, length):
        combos = list(compositions(total, length))
        assert len(combos) == math.comb(total + length - 1, length - 1)
        assert len(set(combos)) == len(combos)
        for c in combos:
            assert len(c) == length and sum(c) == total and min(c) >= 0


class TestAutSize:
    def test_examples(self):
        assert aut_size((1, 1, 1)) == 6
        assert aut_size((2, 1, 1)) == 2
        assert aut_size((3, 2, 1)) == 1
        assert aut_size(()) == 1

    def test_works_on_any_hashable_labels(self):
        assert aut_size(("x", "x", "y")) == 2


class TestShuffles:
    @given(p=st.integers(0, 4), q=st.integers(0, 4))
    @settings(deadline=None)
    def test_count_is_binomial(self, p, q):
        result = shuffles(p, q)
        assert len(result) == math.comb(p + q, p)
        for sigma in result:
            left, right = sigma[:p], sigma[p:]
            assert sorted(left) == list(left)
            assert sorted(right) == list(right)
            assert sorted(sigma) == list(range(p + q))

    def test_small_example(self):
        assert shuffles(1, 1) == ((0, 1), (1, 0))


class TestOrderedShuffles:
    def test_requires_ascending_sizes(self):
        with pytest.raises(ValueError):
            ordered_shuffles((2, 1))

    def test_distinct_sizes_count(self):
        # Multinomial coefficient 4!/(1!3!) = 4.
        assert len(ordered_shuffles((1, 3))) == 4

    def test_equal_sizes_divide_by_block_symmetry(self):
        # Multinomial 4!/(2!2!) = 6, divided by 2! block swaps = 3.
        result = ordered_shuffles((2, 2))
        assert len(result) == 3
        # Block containing position 0 always comes first.
        for arrangement in result:
            assert arrangement[0] == 0

    @given(sizes=st.lists(st.integers(1, 3), min_size=1, max_size=3))
    @settings(deadline=None)
    def test_counting_identity(self, sizes):
        """|ordered shuffles| * prod(multiplicity!) == multinomial coefficient."""
        sizes = tuple(sorted(sizes))
        total = sum(sizes)
        multinomial = math.factorial(total)
        for s in sizes:
            multinomial //= math.factorial(s)
        sym = aut_size(sizes)
        assert len(ordered_shuffles(sizes)) * sym == multinomial

    def test_each_block_ascending(self):
        for arrangement in ordered_shuffles((1, 2, 2)):
            blocks = (arrangement[0:1], arrangement[1:3], arrangement[3:5])
            for block in blocks:
                assert list(block) == sorted(block)
            assert sorted(arrangement) == list(range(5))


class TestSetPartitions:
    def test_counts_match_bell_numbers(self):
        expected = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203}
        for n, bell in expected.items():
            assert len(list(set_partitions(n))) == bell

    def test_blocks_cover_and_are_canonical(self):
        for blocks in set_partitions(4):
            seen = sorted(i for block in blocks for i in block)
            assert seen == [0, 1, 2, 3]
            mins = [block[0] for block in blocks]
            assert mins == sorted(mins)
            for block in blocks:
                assert list(block) == sorted(block)


class TestKoszulSign:
    def test_identity_is_plus_one(self):
        assert koszul_sign((0, 1, 2), (1, 1, 1)) == 1

    def test_swap_of_two_odds(self):
        assert koszul_sign((1, 0), (1, 1)) == -1

    def test_swap_with_an_even_letter(self):
        assert koszul_sign((1, 0), (0, 1)) == 1
        assert koszul_sign((1, 0), (1, 0)) == 1

    def test_three_odd_reversal(self):
        # Reversing three odd letters needs three adjacent transpositions.
        assert koszul_sign((2, 1, 0), (1, 1, 1)) == -1

    @given(n=st.integers(1, 5), data=st.data())
    @settings(deadline=None)
    def test_composition_rule(self, n, data):
        """Sign of a permutation composed from two is the product of signs when
        all letters are odd (standard sign homomorphism)."""
        perm = data.draw(st.permutations(range(n)))
        degrees = tuple(1 for _ in range(n))
        inversions = sum(
            1
            for s in range(n)
            for t in range(s + 1, n)
            if perm[s] > perm[t]
        )
        assert koszul_sign(tuple(perm), degrees) == (-1) ** inversions

    def test_mixed_degrees(self):
        # Word (odd, even, odd): moving letter 2 past letter 1 is free,
        # past letter 0 costs a sign.
        assert koszul_sign((2, 0, 1), (1, 0, 1)) == -1
        assert koszul_sign((1, 0, 2), (1, 0, 1)) == 1
