"""
Maximum-determinant search over standardized n-full orientations.

Candidate ``i`` of size n sets free entry (k, l), k, l >= 2, to -1 iff bit
``(k - 2) * (n - 1) + (l - 2)`` of ``i`` is set; the first row and column stay
+1. Index 0 is the all-+1 matrix.
"""

import itertools
import logging
import random
from functools import partial
from math import factorial
from typing import Literal

from ..exceptions import BudgetExceededError, MatrixFormatError
from .client import chunked_ranges
from .contributors import tally_tail_map
from .matrices import bareiss_determinant, exact_determinant
from .models import (
    ForcedSignReport,
    ForcedSignRow,
    IncidenceStructure,
    SearchResult,
    SignProbe,
    TailClassId,
    matrix_text,
)
from .permutations import Permutation
from .reconstruction import ReconstructionManager

# Configure logging
logger = logging.getLogger("hyperdet")
progress_logger = logging.getLogger("hyperdet.progress")

Objective = Literal["oracle", "classes"]

HEURISTIC_NOTE = "heuristic: not proven optimal"


def free_bits(n: int) -> int:
    return (n - 1) * (n - 1)


def candidate_rows(n: int, index: int) -> list[list[int]]:
    """The standardized candidate with the given index, as fresh lists."""
    width = n - 1
    rows = [[1] * n]
    for k in range(width):
        base = k * width
        rows.append([1] + [-1 if (index >> (base + l)) & 1 else 1 for l in range(width)])
    return rows


def candidate_structure(n: int, index: int) -> IncidenceStructure:
    return IncidenceStructure.from_rows(candidate_rows(n, index))


def candidate_magnitude(n: int, index: int) -> int:
    return abs(bareiss_determinant(candidate_rows(n, index)))


def _scan_range(n: int, progress_interval: int, bounds: tuple[int, int]) -> tuple[int, list[int]]:
    """Best |det| in [start, stop) and every index attaining it, ascending."""
    start, stop = bounds
    best = -1
    indices: list[int] = []
    for index in range(start, stop):
        magnitude = candidate_magnitude(n, index)
        if magnitude > best:
            best = magnitude
            indices = [index]
        elif magnitude == best:
            indices.append(index)
        if (index + 1) % progress_interval == 0:
            progress_logger.info(f"n={n}: {index + 1} candidates scanned, best so far in this range {best}")
    return best, indices


def class_balance(rows: list[list[int]] | tuple[tuple[int, ...], ...]) -> tuple[int, int]:
    """Numbers of positive and negative edge-monic classes."""
    frozen = tuple(tuple(row) for row in rows)
    plus = minus = 0
    for identifier in itertools.permutations(range(len(frozen))):
        pos, neg = tally_tail_map(frozen, identifier)
        if pos > neg:
            plus += 1
        elif neg > pos:
            minus += 1
    return plus, minus


class SearchManager(ReconstructionManager):
    """Exhaustive and local maximum-determinant search."""

    def _require_cap(self, operation: str, n: int) -> int:
        if n < 1:
            raise MatrixFormatError("n must be at least 1")
        candidates = 2 ** free_bits(n)
        if n > self.config.exhaustive_cap:
            logger.warning(f"{operation} refused: n={n} is above the exhaustive cap {self.config.exhaustive_cap}")
            raise BudgetExceededError(operation, candidates, 2 ** free_bits(self.config.exhaustive_cap))
        return candidates

    def exhaustive_maxdet(self, n: int, seed: int = 0) -> SearchResult:
        """
        Scan all 2^((n-1)^2) standardized candidates with the exact oracle.

        One witness, picked with ``seed``, is re-checked through the
        single-class contributor count.

        Raises:
            BudgetExceededError: If n is above the configured exhaustive cap.
        """
        candidates = self._require_cap("exhaustive_maxdet", n)
        ranges = [(r.start, r.stop) for r in chunked_ranges(candidates, self.config.workers * 4)]
        scans = self._map_chunks(partial(_scan_range, n, self.config.progress_interval), ranges)

        best = max(magnitude for magnitude, _ in scans)
        indices = [index for magnitude, found in scans if magnitude == best for index in found]
        witnesses = [candidate_structure(n, index) for index in indices]
        logger.info(f"n={n}: best |det| {best}, {len(witnesses)} witnesses out of {candidates}")

        chosen = random.Random(seed).choice(witnesses)
        check = self.det_magnitude_single_class(chosen, Permutation.identity(n))
        return SearchResult(
            n=n,
            best_magnitude=best,
            witnesses=witnesses,
            witness_count=len(witnesses),
            visited=candidates,
            candidates=candidates,
            hadamard_bound=n**n,
            within_bound=best * best <= n**n,
            meets_bound=best * best == n**n,
            seed=seed,
            neg_count_id=check.tally["neg"],
            cross_check=check.magnitude == best,
        )

    def local_search_maxdet(
        self,
        n: int,
        seed: int,
        budget: int,
        objective: Objective = "oracle",
    ) -> SearchResult:
        """
        Steepest-ascent hill climbing over single-entry flips of the free block.

        ``budget`` caps distinct candidate evaluations; the seed candidate is
        always evaluated. At a local maximum the climb restarts from an
        unvisited candidate, so a budget of 2^((n-1)^2) reaches the optimum.
        Neighbour ties go to the least index.

        The ``classes`` objective scores plus_classes - minus_classes, which
        equals |det| on nonsingular matrices and 0 on singular ones.
        """
        if n < 2:
            raise MatrixFormatError("Local search needs n >= 2")
        if budget < 0:
            raise MatrixFormatError("budget must be non-negative")
        if objective not in ("oracle", "classes"):
            raise MatrixFormatError(f"Unknown objective {objective!r}")
        if objective == "classes":
            self._check_budget("local_search_maxdet", factorial(n) ** 2)

        bits = free_bits(n)
        candidates = 2**bits
        rng = random.Random(seed)
        scores: dict[int, int] = {}

        def evaluate(index: int) -> int:
            if index not in scores:
                if objective == "oracle":
                    scores[index] = candidate_magnitude(n, index)
                else:
                    plus, minus = class_balance(candidate_rows(n, index))
                    scores[index] = plus - minus
            return scores[index]

        current = rng.getrandbits(bits)
        evaluate(current)
        limit = min(budget, candidates)
        while len(scores) < limit:
            neighbours = []
            for bit in range(bits):
                if len(scores) >= limit:
                    break
                neighbour = current ^ (1 << bit)
                evaluate(neighbour)
                neighbours.append(neighbour)
            better = [i for i in neighbours if scores[i] > scores[current]]
            if better:
                current = max(better, key=lambda i: (scores[i], -i))
                continue
            if len(scores) >= limit:
                break
            # local maximum: restart from the first unvisited index at or after a random one
            restart = rng.getrandbits(bits)
            while restart in scores:
                restart = (restart + 1) % candidates
            current = restart
            evaluate(current)

        best_index = max(scores, key=lambda i: (scores[i], -i))
        winner = candidate_structure(n, best_index)
        tally = self.class_tally(winner, TailClassId.from_identifier(Permutation.identity(n)))
        magnitude = abs(exact_determinant(winner))
        minus_classes = None
        if objective == "classes":
            _, minus_classes = class_balance(winner.entries)
        return SearchResult(
            n=n,
            best_magnitude=magnitude,
            witnesses=[winner],
            witness_count=1,
            visited=len(scores),
            candidates=candidates,
            hadamard_bound=n**n,
            within_bound=magnitude * magnitude <= n**n,
            meets_bound=magnitude * magnitude == n**n,
            heuristic=True,
            note=HEURISTIC_NOTE,
            seed=seed,
            objective=objective,
            neg_count_id=tally.neg_count,
            minus_classes=minus_classes,
        )

    def forced_sign_experiment(self, n: int) -> ForcedSignReport:
        """
        Reconstruct the matrix of each uniform probe pattern and compare its
        |det| with the exhaustive maximum. Reports data for this n only.
        """
        self._require_cap("forced_sign_experiment", n)
        maximum = self.exhaustive_maxdet(n).best_magnitude
        pairs = [(k, l) for k in range(2, n + 1) for l in range(k + 1, n + 1)]
        count_classes = factorial(n) ** 2 <= self.config.budget

        rows = []
        for sign in (1, -1):
            probe = SignProbe(
                n=n,
                s1k=[sign] * (n - 1),
                skl=[(k, l, sign) for k, l in pairs],
                s1kl=[(k, l, sign) for k, l in pairs],
            )
            matrix = self.reconstruct(probe)
            magnitude = abs(exact_determinant(matrix))
            rows.append(
                ForcedSignRow(
                    sign=sign,
                    matrix=matrix_text(matrix),
                    magnitude=magnitude,
                    attains_max=magnitude == maximum,
                    minus_classes=class_balance(matrix.entries)[1] if count_classes else None,
                )
            )
        return ForcedSignReport(
            n=n,
            exhaustive_max=maximum,
            rows=rows,
            any_uniform_attains_max=any(row.attains_max for row in rows),
            note=f"Observation at n={n} only; no general claim.",
        )

