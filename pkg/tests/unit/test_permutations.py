"""
Unit tests for permutations and their text forms.
"""
import unittest

from hyperdet.exceptions import PermutationError
from hyperdet.hypergraph.permutations import Permutation, all_permutations


class TestPermutation(unittest.TestCase):
    """Tests for the Permutation class."""

    def test_parse_cycle_notation(self):
        """Cycle notation is 1-based and fixes unmentioned points."""
        perm = Permutation.parse("(1 2 3)(4 5)", n=6)
        self.assertEqual(perm.one_based, [2, 3, 1, 5, 4, 6])
        self.assertEqual(perm.cycle_notation(), "(1 2 3)(4 5)")

    def test_parse_compact_cycle(self):
        self.assertEqual(Permutation.parse("(123)").one_based, [2, 3, 1])
        self.assertEqual(Permutation.parse("(23)", n=3).one_based, [1, 3, 2])

    def test_parse_size_inferred(self):
        perm = Permutation.parse("(1 3)")
        self.assertEqual(len(perm), 3)
        self.assertEqual(perm.one_based, [3, 2, 1])

    def test_parse_identity(self):
        self.assertTrue(Permutation.parse("id", n=4).is_identity())
        self.assertTrue(Permutation.parse("()", n=2).is_identity())
        with self.assertRaises(PermutationError):
            Permutation.parse("id")

    def test_parse_image_arrays(self):
        """Bracketed and bare image arrays give the same permutation."""
        self.assertEqual(Permutation.parse("[2,3,1]"), Permutation.parse("2 3 1"))
        self.assertEqual(Permutation.parse("[2, 3, 1]").cycle_notation(), "(1 2 3)")

    def test_parse_errors(self):
        """Malformed text and non-bijections are rejected."""
        for text in ("(1 2", "(1 2)x", "[1,1,2]", "[a,b]", "(1 2)(2 3)"):
            with self.subTest(text=text):
                with self.assertRaises(PermutationError):
                    Permutation.parse(text)
        with self.assertRaises(PermutationError):
            Permutation.parse("(1 4)", n=3)
        with self.assertRaises(PermutationError):
            Permutation.parse("[2,1]", n=3)

    def test_composition_applies_right_factor_first(self):
        p = Permutation.parse("(1 2)", n=3)
        q = Permutation.parse("(2 3)", n=3)
        # (p * q)(v) = p(q(v)): 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        self.assertEqual((p * q).one_based, [2, 3, 1])

    def test_inverse(self):
        perm = Permutation.parse("(1 2 3 4)")
        self.assertTrue((perm * perm.inverse()).is_identity())
        self.assertEqual(perm.inverse().cycle_notation(), "(1 4 3 2)")

    def test_canonical_cycles(self):
        """Cycles are led by their minimum and sorted by leader, fixed points included."""
        perm = Permutation.from_one_based([3, 2, 5, 1, 4])
        self.assertEqual(perm.cycles, ((0, 2, 4, 3), (1,)))
        self.assertEqual(perm.cycle_notation(), "(1 3 5 4)")

    def test_sign(self):
        self.assertEqual(Permutation.identity(4).sign(), 1)
        self.assertEqual(Permutation.transposition(0, 3, 4).sign(), -1)
        self.assertEqual(Permutation.parse("(1 2 3)").sign(), 1)
        self.assertEqual(Permutation.parse("(1 2 3 4)").sign(), -1)

    def test_all_permutations_lexicographic(self):
        images = [p.one_based for p in all_permutations(3)]
        self.assertEqual(
            images,
            [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]],
        )
        self.assertEqual(len(list(all_permutations(0))), 1)


if __name__ == "__main__":
    unittest.main()
