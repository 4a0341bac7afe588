"""
Unit tests for the ReconstructionManager class.
"""
import itertools
import random
import unittest

from hyperdet.config import EngineConfig
from hyperdet.exceptions import InvalidContributorError, NotStandardizedError
from hyperdet.hypergraph.models import IncidenceStructure, SignProbe
from hyperdet.hypergraph.permutations import Permutation
from hyperdet.hypergraph.reconstruction import ReconstructionManager, digon_probe, three_cycle_probe
from hyperdet.hypergraph.search import candidate_structure
from tests.fixtures.matrices import SIGNED4, HADAMARD4, WORKED3, WORKED3_PROBE


def random_standardized(rng, n):
    return IncidenceStructure.from_rows(
        [[1] * n] + [[1] + [rng.choice((1, -1)) for _ in range(n - 1)] for _ in range(n - 1)]
    )


class ReconstructionTestCase(unittest.TestCase):
    def setUp(self):
        self.manager = ReconstructionManager(config=EngineConfig())


class TestProbes(ReconstructionTestCase):
    """Tests for probe permutations and probe_signs."""

    def test_probe_permutations(self):
        self.assertEqual(digon_probe(1, 3, 4), Permutation.parse("(1 3)", n=4))
        self.assertEqual(three_cycle_probe(2, 3, 3), Permutation.parse("(1 3 2)"))
        self.assertEqual(three_cycle_probe(2, 4, 4).images, (3, 0, 2, 1))

    def test_worked_three_by_three(self):
        probe = self.manager.probe_signs(IncidenceStructure.from_rows(WORKED3))
        self.assertEqual(probe.to_payload(), WORKED3_PROBE)
        self.assertEqual(probe.size, 4)

    def test_single_vertex(self):
        probe = self.manager.probe_signs(IncidenceStructure.from_rows([[1]]))
        self.assertEqual(probe.to_payload(), {"n": 1, "s1k": [], "skl": [], "s1kl": []})

    def test_not_standardized(self):
        with self.assertRaises(NotStandardizedError) as ctx:
            self.manager.probe_signs(IncidenceStructure.from_rows(SIGNED4))
        self.assertEqual(ctx.exception.details["first_row"], [-1, 1, -1, 1])


class TestReconstruct(ReconstructionTestCase):
    """Tests for reconstruct and the round trips."""

    def test_worked_three_by_three(self):
        rebuilt = self.manager.reconstruct(SignProbe.model_validate(WORKED3_PROBE))
        self.assertEqual(rebuilt, IncidenceStructure.from_rows(WORKED3))

    def test_small_probes(self):
        all_plus = SignProbe(n=3, s1k=[-1, -1], skl=[(2, 3, -1)], s1kl=[(2, 3, 1)])
        self.assertEqual(self.manager.reconstruct(all_plus).entries, ((1, 1, 1),) * 3)
        two = SignProbe(n=2, s1k=[1], skl=[], s1kl=[])
        self.assertEqual(self.manager.reconstruct(two).entries, ((1, 1), (1, -1)))

    def test_hadamard_round_trip(self):
        report = self.manager.round_trip(structure=IncidenceStructure.from_rows(HADAMARD4))
        self.assertTrue(report.probe_round_trip)
        self.assertTrue(report.matrix_round_trip)
        self.assertEqual(report.matrix, "1 1 1 1\n1 -1 1 -1\n1 1 -1 -1\n1 -1 -1 1")

    def test_every_probe_pattern_of_size_three(self):
        """The (n-1)^2 probe signs and the free entries are in bijection."""
        seen = set()
        for s12, s13, s23, t23 in itertools.product((1, -1), repeat=4):
            probe = SignProbe(n=3, s1k=[s12, s13], skl=[(2, 3, s23)], s1kl=[(2, 3, t23)])
            report = self.manager.round_trip(probe=probe)
            self.assertTrue(report.probe_round_trip)
            self.assertIsNone(report.matrix_round_trip)
            seen.add(report.matrix)
        self.assertEqual(len(seen), 16)

    def test_every_standardized_four_by_four(self):
        for index in range(2**9):
            structure = candidate_structure(4, index)
            rebuilt = self.manager.reconstruct(self.manager.probe_signs(structure))
            self.assertEqual(rebuilt, structure)

    def test_random_five_by_five(self):
        rng = random.Random(53)
        for _ in range(500):
            structure = random_standardized(rng, 5)
            report = self.manager.round_trip(structure=structure)
            self.assertTrue(report.matrix_round_trip)
            self.assertTrue(report.probe_round_trip)

    def test_round_trip_needs_input(self):
        with self.assertRaises(InvalidContributorError):
            self.manager.round_trip()


class TestProbeIdentities(ReconstructionTestCase):
    """Tests for probe_identity_check."""

    def test_examples(self):
        for rows in (WORKED3, HADAMARD4, [[1, 1], [1, 1]]):
            report = self.manager.probe_identity_check(IncidenceStructure.from_rows(rows))
            self.assertTrue(report.all_hold, rows)
            self.assertTrue(report.single_cycle_rule)

    def test_random_five_by_five(self):
        rng = random.Random(59)
        for _ in range(50):
            self.assertTrue(self.manager.probe_identity_check(random_standardized(rng, 5)).all_hold)

    def test_not_standardized(self):
        with self.assertRaises(NotStandardizedError):
            self.manager.probe_identity_check(IncidenceStructure.from_rows(SIGNED4))


if __name__ == "__main__":
    unittest.main()
