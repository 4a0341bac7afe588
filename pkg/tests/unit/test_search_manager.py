"""
Unit tests for the SearchManager class.
"""
import random
import unittest

from hyperdet.config import EngineConfig
from hyperdet.exceptions import BudgetExceededError, MatrixFormatError
from hyperdet.hypergraph.matrices import exact_determinant, parse_matrix
from hyperdet.hypergraph.models import IncidenceStructure
from hyperdet.hypergraph.permutations import Permutation
from hyperdet.hypergraph.search import (
    SearchManager,
    candidate_rows,
    candidate_structure,
    class_balance,
    free_bits,
)
from tests.fixtures.matrices import ALL_PLUS3, HADAMARD4, WORKED3, MAXDET


class SearchTestCase(unittest.TestCase):
    def setUp(self):
        self.manager = SearchManager(config=EngineConfig())


class TestCandidates(unittest.TestCase):
    """Tests for the candidate index encoding."""

    def test_index_zero_is_all_plus(self):
        self.assertEqual(candidate_rows(3, 0), ALL_PLUS3)

    def test_bit_positions(self):
        # bit (k-2)(n-1) + (l-2) flips entry (k, l)
        self.assertEqual(candidate_rows(3, 1), [[1, 1, 1], [1, -1, 1], [1, 1, 1]])
        self.assertEqual(candidate_rows(3, 0b1001), WORKED3)
        self.assertEqual(candidate_rows(3, 0b0100), [[1, 1, 1], [1, 1, 1], [1, -1, 1]])

    def test_every_candidate_is_standardized(self):
        for index in range(2 ** free_bits(3)):
            self.assertTrue(candidate_structure(3, index).is_standardized())
        self.assertEqual(candidate_rows(1, 0), [[1]])

    def test_class_balance(self):
        self.assertEqual(class_balance(WORKED3), (5, 1))
        self.assertEqual(class_balance(ALL_PLUS3), (0, 0))


class TestExhaustiveSearch(SearchTestCase):
    """Tests for exhaustive_maxdet."""

    def test_known_maxima(self):
        for n, expected in MAXDET.items():
            result = self.manager.exhaustive_maxdet(n)
            self.assertEqual(result.best_magnitude, expected, n)
            self.assertEqual(result.visited, 2 ** ((n - 1) ** 2))
            self.assertTrue(result.within_bound)
            self.assertTrue(result.cross_check)
            self.assertFalse(result.heuristic)
            for witness in result.witnesses:
                self.assertEqual(abs(exact_determinant(witness)), expected)

    def test_hadamard_orders_meet_bound(self):
        self.assertTrue(self.manager.exhaustive_maxdet(2).meets_bound)
        self.assertTrue(self.manager.exhaustive_maxdet(4).meets_bound)
        self.assertFalse(self.manager.exhaustive_maxdet(3).meets_bound)

    def test_witnesses(self):
        three = self.manager.exhaustive_maxdet(3)
        self.assertEqual(three.witness_count, 6)
        self.assertIn(IncidenceStructure.from_rows(WORKED3), three.witnesses)
        self.assertIn(three.neg_count_id, (1, 5))
        self.assertIn(IncidenceStructure.from_rows(HADAMARD4), self.manager.exhaustive_maxdet(4).witnesses)
        self.assertEqual(self.manager.exhaustive_maxdet(2).witnesses, [IncidenceStructure.from_rows([[1, 1], [1, -1]])])

    def test_every_witness_counts_through_identity_class(self):
        """Each witness recovers best_magnitude from its identity class alone."""
        for n in range(1, 5):
            result = self.manager.exhaustive_maxdet(n)
            for witness in result.witnesses:
                report = self.manager.det_magnitude_single_class(witness, Permutation.identity(n))
                self.assertEqual(report.magnitude, result.best_magnitude, witness.entries)
                self.assertTrue(report.identities_hold)

    def test_witnesses_ascend_by_index(self):
        witnesses = self.manager.exhaustive_maxdet(3).witnesses
        indices = [
            sum(1 << (k * 2 + l) for k in range(2) for l in range(2) if w.entries[k + 1][l + 1] == -1)
            for w in witnesses
        ]
        self.assertEqual(indices, sorted(indices))

    def test_seed_does_not_change_result(self):
        first = self.manager.exhaustive_maxdet(4, seed=0)
        second = self.manager.exhaustive_maxdet(4, seed=99)
        self.assertEqual(first.witnesses, second.witnesses)
        self.assertTrue(second.cross_check)

    def test_workers_do_not_change_result(self):
        parallel = SearchManager(config=EngineConfig(workers=8)).exhaustive_maxdet(4)
        self.assertEqual(parallel.to_payload(), self.manager.exhaustive_maxdet(4).to_payload())

    def test_cap_refusal(self):
        manager = SearchManager(config=EngineConfig(exhaustive_cap=3))
        with self.assertRaises(BudgetExceededError) as ctx:
            manager.exhaustive_maxdet(4)
        self.assertEqual(ctx.exception.required, 2**9)
        self.assertEqual(ctx.exception.budget, 2**4)

    def test_invalid_size(self):
        with self.assertRaises(MatrixFormatError):
            self.manager.exhaustive_maxdet(0)


class TestLocalSearch(SearchTestCase):
    """Tests for local_search_maxdet."""

    def test_full_budget_finds_optimum(self):
        three = self.manager.local_search_maxdet(3, seed=1, budget=16)
        self.assertEqual(three.best_magnitude, 4)
        self.assertEqual(three.visited, 16)
        four = self.manager.local_search_maxdet(4, seed=2, budget=512)
        self.assertEqual(four.best_magnitude, 16)

    def test_zero_budget_returns_seed(self):
        seed = 7
        result = self.manager.local_search_maxdet(4, seed=seed, budget=0)
        start = random.Random(seed).getrandbits(free_bits(4))
        self.assertEqual(result.visited, 1)
        self.assertEqual(result.witnesses, [candidate_structure(4, start)])

    def test_marked_heuristic(self):
        result = self.manager.local_search_maxdet(5, seed=3, budget=200)
        self.assertTrue(result.heuristic)
        self.assertEqual(result.note, "heuristic: not proven optimal")
        self.assertLessEqual(result.visited, 200)
        self.assertLessEqual(result.best_magnitude, MAXDET[5])
        self.assertTrue(result.within_bound)

    def test_deterministic_for_seed(self):
        first = self.manager.local_search_maxdet(5, seed=11, budget=300)
        second = self.manager.local_search_maxdet(5, seed=11, budget=300)
        self.assertEqual(first.to_payload(), second.to_payload())

    def test_classes_objective(self):
        result = self.manager.local_search_maxdet(3, seed=5, budget=16, objective="classes")
        self.assertEqual(result.best_magnitude, 4)
        self.assertEqual(result.minus_classes, 1)
        self.assertEqual(result.objective, "classes")

    def test_rejected_arguments(self):
        with self.assertRaises(MatrixFormatError):
            self.manager.local_search_maxdet(1, seed=0, budget=10)
        with self.assertRaises(MatrixFormatError):
            self.manager.local_search_maxdet(3, seed=0, budget=-1)
        with self.assertRaises(MatrixFormatError):
            self.manager.local_search_maxdet(3, seed=0, budget=10, objective="volume")


class TestForcedSignExperiment(SearchTestCase):
    """Tests for forced_sign_experiment."""

    def test_size_two(self):
        report = self.manager.forced_sign_experiment(2)
        self.assertEqual(report.exhaustive_max, 2)
        self.assertEqual([row.sign for row in report.rows], [1, -1])
        self.assertEqual([row.magnitude for row in report.rows], [2, 0])
        self.assertTrue(report.any_uniform_attains_max)

    def test_size_three(self):
        report = self.manager.forced_sign_experiment(3)
        self.assertEqual(report.rows[0].matrix, "1 1 1\n1 -1 1\n1 -1 -1")
        self.assertEqual(report.rows[1].matrix, "1 1 1\n1 1 -1\n1 -1 1")
        self.assertTrue(all(row.attains_max for row in report.rows))
        self.assertEqual([row.minus_classes for row in report.rows], [1, 1])
        self.assertIn("n=3", report.note)

    def test_magnitudes_match_matrices(self):
        report = self.manager.forced_sign_experiment(4)
        self.assertEqual(report.exhaustive_max, 16)
        for row in report.rows:
            self.assertEqual(row.magnitude, abs(exact_determinant(parse_matrix(row.matrix))))
            self.assertEqual(row.attains_max, row.magnitude == 16)

    def test_cap_refusal(self):
        with self.assertRaises(BudgetExceededError):
            SearchManager(config=EngineConfig(exhaustive_cap=2)).forced_sign_experiment(3)


if __name__ == "__main__":
    unittest.main()
