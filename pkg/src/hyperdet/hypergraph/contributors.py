"""
Contributor enumeration over n-full oriented hypergraphs.

A contributor is a tail map plus a permutation. Vertex v leaves along its
tail-incidence (v, t(v)) and enters perm(v) along (perm(v), t(v)); the sign
of that adjacency is -sigma(tail) * sigma(head). Each permutation cycle is a
component whose sign is the product of its adjacency signs, and the
contributor sign is (-1) ** (number of positive components).

Classes are streamed permutation by permutation and never materialized.
Worker functions are module level so they can be shipped to a process pool.
"""

import itertools
import logging
import time
from collections import Counter
from collections.abc import Iterator, Sequence
from functools import partial
from math import comb, factorial
from typing import Any, Optional

from ..exceptions import IdentityCheckError, InvalidContributorError, PermutationError
from .client import EngineClient, flatten
from .matrices import bareiss_determinant, derived_matrices, exact_determinant
from .models import (
    AdjacencyInversePair,
    AllClassesReport,
    ClassTally,
    ComponentSign,
    Contributor,
    ContributorSign,
    GeneralHostExploration,
    HeadClassesReport,
    IncidenceStructure,
    LaplacianAudit,
    NonMonicReport,
    PairingWitness,
    SingleClassReport,
    TailClassId,
    TransversalReport,
)
from .permutations import Permutation, all_permutations

# Configure logging
logger = logging.getLogger("hyperdet")

Rows = tuple[tuple[int, ...], ...]


def fast_contributor_sign(rows: Rows, tail_map: Sequence[int], images: Sequence[int]) -> int:
    """(-1) ** pc for a contributor known to be valid; no component detail."""
    n = len(images)
    seen = [False] * n
    positive = 0
    for start in range(n):
        if seen[start]:
            continue
        product = 1
        v = start
        while not seen[v]:
            seen[v] = True
            edge = tail_map[v]
            product *= -rows[v][edge] * rows[images[v]][edge]
            v = images[v]
        if product > 0:
            positive += 1
    return -1 if positive & 1 else 1


def tally_tail_map(rows: Rows, tail_map: Sequence[int]) -> tuple[int, int]:
    """(positive, negative) contributor counts of one tail class of an n-full host."""
    pos = neg = 0
    for images in itertools.permutations(range(len(tail_map))):
        if fast_contributor_sign(rows, tail_map, images) > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg


def census_tail_map(rows: Rows, tail_map: Sequence[int]) -> tuple[int, int, int]:
    """
    (positive, negative, transposition) contributor counts of one tail class.

    Transposition contributors have one 2-cycle and backsteps everywhere else.
    """
    pos = neg = transpositions = 0
    for images in itertools.permutations(range(len(tail_map))):
        if fast_contributor_sign(rows, tail_map, images) > 0:
            pos += 1
        else:
            neg += 1
        if sum(1 for v, w in enumerate(images) if v != w) == 2:
            transpositions += 1
    return pos, neg, transpositions


def _tally_chunk(rows: Rows, tail_maps: Sequence[tuple[int, ...]]) -> list[tuple[int, int]]:
    return [tally_tail_map(rows, t) for t in tail_maps]


def _timed_census(rows: Rows, tail_map: tuple[int, ...]) -> tuple[int, int, int, float]:
    started = time.perf_counter()
    pos, neg, transpositions = census_tail_map(rows, tail_map)
    return pos, neg, transpositions, time.perf_counter() - started


def _timed_census_chunk(rows: Rows, tail_maps: Sequence[tuple[int, ...]]) -> list[tuple[int, int, int, float]]:
    return [_timed_census(rows, t) for t in tail_maps]


def closed_form_class_sum(rows: Rows, tail_map: Sequence[int]) -> int:
    """
    Class sum from the tail-product identity.

    The sum equals prod_v sigma(v, t(v)) times the determinant of the matrix
    whose column v is column t(v) of H; repeated tail edges give 0.
    """
    n = len(tail_map)
    tail_product = 1
    for v, edge in enumerate(tail_map):
        tail_product *= rows[v][edge]
    columns = [[rows[u][tail_map[v]] for v in range(n)] for u in range(n)]
    return tail_product * bareiss_determinant(columns)


def witness_pair(tail_map: Sequence[int]) -> Optional[tuple[int, int]]:
    """Lexicographically least v < w sharing a tail edge, or None for edge-monic maps."""
    n = len(tail_map)
    for v in range(n):
        for w in range(v + 1, n):
            if tail_map[v] == tail_map[w]:
                return v, w
    return None


def pairing_audit(rows: Rows, tail_map: tuple[int, ...]) -> dict[str, Any]:
    """
    Pair every permutation pi with pi * (v w) for the witness pair (v, w).

    Case 1 pairs have {pi(v), pi(w)} = {v, w}: one member closes v and w into a
    2-cycle through their shared edge, the other has backsteps at both. All
    other pairs are Case 2 and must carry opposite signs.
    """
    pair = witness_pair(tail_map)
    if pair is None:
        raise InvalidContributorError("Pairing needs a non-edge-monic tail map")
    v, w = pair
    n = len(tail_map)
    case1_signs: list[tuple[int, int]] = []
    case2_pairs = 0
    case2_cancel = True
    pair_total = 0
    class_sum = 0
    for images in itertools.permutations(range(n)):
        partner = list(images)
        partner[v], partner[w] = images[w], images[v]
        partner_images = tuple(partner)
        sign = fast_contributor_sign(rows, tail_map, images)
        class_sum += sign
        partner_sign = fast_contributor_sign(rows, tail_map, partner_images)
        pair_total += sign + partner_sign
        if partner_images < images:
            continue
        if {images[v], images[w]} == {v, w}:
            if images[v] == w:
                case1_signs.append((sign, partner_sign))
            else:
                case1_signs.append((partner_sign, sign))
        else:
            case2_pairs += 1
            if sign + partner_sign != 0:
                case2_cancel = False
    return {
        "tail_map": [e + 1 for e in tail_map],
        "v": v + 1,
        "w": w + 1,
        "class_sum": class_sum,
        "case1_pairs": len(case1_signs),
        "case2_pairs": case2_pairs,
        "case1_signs": case1_signs,
        "case2_cancel": case2_cancel,
        "pair_total": pair_total,
    }


def _pairing_chunk(rows: Rows, tail_maps: Sequence[tuple[int, ...]]) -> list[dict[str, Any]]:
    return [pairing_audit(rows, t) for t in tail_maps]


def _general_class(rows: Rows, tail_map: tuple[int, ...]) -> tuple[int, int]:
    """(contributor count, signed sum) of a tail class on a host that need not be full."""
    count = total = 0
    for images in itertools.permutations(range(len(tail_map))):
        if all(rows[images[v]][edge] != 0 for v, edge in enumerate(tail_map)):
            count += 1
            total += fast_contributor_sign(rows, tail_map, images)
    return count, total


class ContributorManager(EngineClient):
    """
    Enumerates contributors and tail-equivalence classes.

    Every operation needs an n-full host except ``explore_nonmonic_general``.
    """

    def contributor_sign(self, structure: IncidenceStructure, contributor: Contributor) -> ContributorSign:
        """
        Sign of a contributor with its component decomposition.

        Raises:
            InvalidContributorError: If a tail- or head-incidence is a zero entry
                or the maps do not fit the host.
        """
        rows = structure.entries
        n = structure.n_vertices
        if contributor.n != n or len(contributor.perm) != n:
            raise InvalidContributorError(f"Contributor size {contributor.n} does not match host size {n}")
        for v, edge in enumerate(contributor.tail_map):
            if not 0 <= edge < structure.n_edges:
                raise InvalidContributorError(f"Tail edge {edge + 1} of vertex {v + 1} does not exist")
            head = contributor.perm[v]
            if rows[v][edge] == 0 or rows[head][edge] == 0:
                raise InvalidContributorError(
                    f"Adjacency v{v + 1} -> v{head + 1} through e{edge + 1} uses a zero entry",
                    details={"vertex": v + 1, "head": head + 1, "edge": edge + 1},
                )

        components = []
        positive = 0
        for cycle in contributor.perm.cycles:
            sign = 1
            for v in cycle:
                edge = contributor.tail_map[v]
                sign *= -rows[v][edge] * rows[contributor.perm[v]][edge]
            if sign > 0:
                positive += 1
            components.append(
                ComponentSign(
                    cycle=tuple(v + 1 for v in cycle),
                    length=len(cycle),
                    sign=sign,
                    backstep=len(cycle) == 1,
                )
            )
        return ContributorSign(
            **contributor.to_payload(),
            sign=-1 if positive % 2 else 1,
            positive_components=positive,
            components=components,
        )

    def enumerate_tail_class(
        self, structure: IncidenceStructure, class_id: TailClassId
    ) -> Iterator[tuple[Permutation, int]]:
        """
        Stream (permutation, sign) over a tail class in lexicographic order.

        Raises:
            NotFullError: If the host is not n-full.
        """
        n = self._require_full(structure, "enumerate_tail_class")
        tail_map = self._validated_tail_map(class_id, n)
        rows = structure.entries
        for perm in all_permutations(n):
            yield perm, fast_contributor_sign(rows, tail_map, perm.images)

    def class_tally(self, structure: IncidenceStructure, class_id: TailClassId) -> ClassTally:
        """Positive/negative counts and signed sum of one tail class."""
        n = self._require_full(structure, "class_tally")
        tail_map = self._validated_tail_map(class_id, n)
        self._check_budget("class_tally", factorial(n))
        started = time.perf_counter()
        pos, neg, transpositions = census_tail_map(structure.entries, tail_map)
        elapsed = time.perf_counter() - started
        logger.debug(f"Class {class_id.tail_map}: +{pos} -{neg} in {elapsed:.6f}s")
        return ClassTally(
            class_id=class_id,
            pos_count=pos,
            neg_count=neg,
            signed_sum=pos - neg,
            closed_form_sum=closed_form_class_sum(structure.entries, tail_map),
            transpositions=transpositions,
            elapsed_seconds=elapsed if self.config.record_timings else None,
        )

    def laplacian_det_via_contributors(self, structure: IncidenceStructure) -> LaplacianAudit:
        """
        det(L) as the signed count of all n^n * n! contributors.

        Raises:
            BudgetExceededError: If n^n * n! exceeds the budget; nothing runs.
        """
        n = self._require_full(structure, "laplacian_det_via_contributors")
        expected = n**n * factorial(n)
        self._check_budget("laplacian_det_via_contributors", expected)

        tail_maps = list(itertools.product(range(n), repeat=n))
        rows = structure.entries
        tallies = flatten(self._map_chunks(partial(_tally_chunk, rows), self._split(tail_maps)))

        edge_monic_sum = non_edge_monic_sum = visited = 0
        for tail_map, (pos, neg) in zip(tail_maps, tallies):
            visited += pos + neg
            if len(set(tail_map)) == n:
                edge_monic_sum += pos - neg
            else:
                non_edge_monic_sum += pos - neg
        total = edge_monic_sum + non_edge_monic_sum

        laplacian, _, _ = derived_matrices(structure)
        det_l = exact_determinant(laplacian)
        det_h = exact_determinant(structure)
        agreement = total == det_l == det_h * det_h and visited == expected
        if not agreement:
            logger.error(f"Contributor sum {total} disagrees with det(L) = {det_l}, det(H)^2 = {det_h ** 2}")
        return LaplacianAudit(
            n=n,
            laplacian_det=total,
            visited=visited,
            expected_visits=expected,
            edge_monic_sum=edge_monic_sum,
            non_edge_monic_sum=non_edge_monic_sum,
            oracle_det_l=det_l,
            oracle_det_h=det_h,
            agreement=agreement,
        )

    def verify_nonmonic_zero(self, structure: IncidenceStructure) -> NonMonicReport:
        """
        Check that every non-edge-monic class sums to zero, with the pairing audit.

        Raises:
            NotFullError: If the host is not n-full.
            BudgetExceededError: If the paired enumeration exceeds the budget.
        """
        n = self._require_full(structure, "verify_nonmonic_zero")
        expected_classes = n**n - factorial(n)
        self._check_budget("verify_nonmonic_zero", 2 * expected_classes * factorial(n))

        tail_maps = [t for t in itertools.product(range(n), repeat=n) if len(set(t)) < n]
        audits = flatten(
            self._map_chunks(partial(_pairing_chunk, structure.entries), self._split(tail_maps))
        )
        witnesses = [PairingWitness(**audit) for audit in audits]
        nonzero = [w.tail_map for w in witnesses if w.class_sum != 0]
        pairing_holds = all(
            w.case2_cancel
            and w.pair_total == 0
            and all(a + b == 0 for a, b in w.case1_signs)
            for w in witnesses
        )
        if nonzero:
            logger.error(f"{len(nonzero)} non-edge-monic classes do not vanish")
        return NonMonicReport(
            n=n,
            classes_checked=len(witnesses),
            expected_classes=expected_classes,
            all_zero=not nonzero,
            nonzero_classes=nonzero,
            pairing_holds=pairing_holds,
            pairing_witness=witnesses,
        )

    def det_magnitude_single_class(self, structure: IncidenceStructure, alpha: Permutation) -> SingleClassReport:
        """|det H| from the single edge-monic class with identifier alpha."""
        n = self._require_full(structure, "det_magnitude_single_class")
        if len(alpha) != n:
            raise PermutationError(f"Identifier has size {len(alpha)}, host has size {n}")
        tally = self.class_tally(structure, TailClassId.from_identifier(alpha))
        magnitude = abs(tally.signed_sum)
        det_h = exact_determinant(structure)
        identities = _count_identities(tally.signed_sum, tally.pos_count, tally.neg_count, factorial(n))
        return SingleClassReport(
            n=n,
            identifier=alpha.one_based,
            magnitude=magnitude,
            tally=tally.to_report(),
            oracle_det_h=det_h,
            matches_det=magnitude == abs(det_h),
            identities=identities,
            identities_hold=all(value == magnitude for value in identities.values()),
        )

    def class_tallies_all(self, structure: IncidenceStructure) -> AllClassesReport:
        """
        Tally all n! edge-monic classes and check the class-count identities.

        When det H = 0 every class sums to 0 and the identities are not
        applicable; the report flags the unmet precondition instead.
        """
        n = self._require_full(structure, "class_tallies_all")
        self._check_budget("class_tallies_all", factorial(n) ** 2)

        identifiers = [perm.images for perm in all_permutations(n)]
        rows = structure.entries
        counts = flatten(self._map_chunks(partial(_timed_census_chunk, rows), self._split(identifiers)))
        tallies = [
            ClassTally(
                class_id=TailClassId.from_zero_based(identifier),
                pos_count=pos,
                neg_count=neg,
                signed_sum=pos - neg,
                closed_form_sum=closed_form_class_sum(rows, identifier),
                transpositions=transpositions,
                elapsed_seconds=elapsed if self.config.record_timings else None,
            )
            for identifier, (pos, neg, transpositions, elapsed) in zip(identifiers, counts)
        ]
        plus = sum(1 for t in tallies if t.signed_sum > 0)
        minus = sum(1 for t in tallies if t.signed_sum < 0)
        zero = len(tallies) - plus - minus
        digons = comb(n, 2)
        transpositions_hold = all(t.transpositions == digons for t in tallies)
        if not transpositions_hold:
            logger.error(f"A class does not hold exactly {digons} transposition contributors")
        det_h = exact_determinant(structure)
        laplacian, _, _ = derived_matrices(structure)
        det_l = exact_determinant(laplacian)
        total = sum(t.signed_sum for t in tallies)
        magnitude = abs(det_h)

        identities: dict[str, int] = {}
        if det_h != 0:
            identities = {
                "plus - minus": plus - minus,
                "n! - 2*minus": factorial(n) - 2 * minus,
                "2*plus - n!": 2 * plus - factorial(n),
            }
            identities_hold = all(value == magnitude for value in identities.values())
        else:
            identities_hold = zero == len(tallies)
            logger.info("Singular matrix: class-count identities do not apply")

        return AllClassesReport(
            n=n,
            tallies=[t.to_report() for t in tallies],
            plus_classes=plus,
            minus_classes=minus,
            zero_classes=zero,
            oracle_det_h=det_h,
            det_magnitude=magnitude,
            total=total,
            oracle_det_l=det_l,
            total_matches_det_l=total == det_l,
            precondition_met=det_h != 0,
            identities=identities,
            identities_hold=identities_hold,
            transpositions_per_class=digons,
            transpositions_hold=transpositions_hold,
        )

    def adjacency_inverse_pair(
        self, structure: IncidenceStructure, alpha: Permutation, beta: Permutation
    ) -> AdjacencyInversePair:
        """
        The adjacency-inverse pair between the classes with identifiers alpha and beta.

        The member of the alpha class follows V -alpha-> E -beta^-1-> V, so its
        permutation is beta^-1 alpha; its reversal in the beta class has
        permutation alpha^-1 beta. alpha == beta gives the all-backstep
        contributor on both sides.
        """
        n = self._require_full(structure, "adjacency_inverse_pair")
        if len(alpha) != n or len(beta) != n:
            raise PermutationError(f"Identifiers must have size {n}")
        in_alpha = Contributor(tail_map=alpha.images, perm=beta.inverse() * alpha)
        in_beta = Contributor(tail_map=beta.images, perm=alpha.inverse() * beta)
        if in_alpha.adjacency_inverse() != in_beta:
            raise IdentityCheckError(
                "Composition rule did not produce adjacency-inverses",
                details={"alpha": alpha.one_based, "beta": beta.one_based},
            )
        sign_alpha = self.contributor_sign(structure, in_alpha)
        sign_beta = self.contributor_sign(structure, in_beta)
        return AdjacencyInversePair(
            alpha=alpha.one_based,
            beta=beta.one_based,
            in_alpha=sign_alpha,
            in_beta=sign_beta,
            same_adjacencies=in_alpha.adjacencies() == in_beta.adjacencies(),
            equal_signs=sign_alpha.sign == sign_beta.sign,
        )

    def head_class_from_tail_class(self, structure: IncidenceStructure, alpha: Permutation) -> TransversalReport:
        """
        Reverse every contributor of the alpha class.

        The reversals share one set of head-incidences (a head-equivalence
        class) and meet every edge-monic tail class exactly once.
        """
        n = self._require_full(structure, "head_class_from_tail_class")
        if len(alpha) != n:
            raise PermutationError(f"Identifier has size {len(alpha)}, host has size {n}")
        self._check_budget("head_class_from_tail_class", 2 * factorial(n))

        originals = [Contributor(tail_map=alpha.images, perm=perm) for perm in all_permutations(n)]
        reversals = [c.adjacency_inverse() for c in originals]
        head_sets = {c.head_incidences() for c in reversals}
        identifiers = [c.tail_map for c in reversals]
        reversed_signs = [self.contributor_sign(structure, c) for c in reversals]
        original_signs = [fast_contributor_sign(structure.entries, c.tail_map, c.perm.images) for c in originals]
        return TransversalReport(
            alpha=alpha.one_based,
            contributors=reversed_signs,
            identifiers_hit=[[e + 1 for e in t] for t in identifiers],
            shared_head_incidences=len(head_sets) == 1,
            is_transversal=(
                all(len(set(t)) == n for t in identifiers)
                and len(set(identifiers)) == factorial(n)
            ),
            sign_multiset_matches=Counter(original_signs) == Counter(s.sign for s in reversed_signs),
        )

    def head_classes_all(self, structure: IncidenceStructure) -> HeadClassesReport:
        """Transversal check for every identifier."""
        n = self._require_full(structure, "head_classes_all")
        self._check_budget("head_classes_all", 2 * factorial(n) ** 2)
        summaries = []
        for alpha in all_permutations(n):
            report = self.head_class_from_tail_class(structure, alpha)
            summaries.append(
                {
                    "alpha": report.alpha,
                    "shared_head_incidences": report.shared_head_incidences,
                    "is_transversal": report.is_transversal,
                    "sign_multiset_matches": report.sign_multiset_matches,
                }
            )
        return HeadClassesReport(
            n=n,
            classes=summaries,
            all_hold=all(
                s["shared_head_incidences"] and s["is_transversal"] and s["sign_multiset_matches"]
                for s in summaries
            ),
        )

    def explore_nonmonic_general(self, structure: IncidenceStructure) -> GeneralHostExploration:
        """
        Class sums on an incidence-simple host that need not be full.

        Tails range over incident edges and heads stay inside the tail edge.
        Whether non-edge-monic classes vanish here is reported as data only.
        """
        n = structure.n_vertices
        if n == 0:
            raise InvalidContributorError("The host has no vertices")
        rows = structure.entries
        incident = [[e for e in range(structure.n_edges) if rows[v][e] != 0] for v in range(n)]
        class_count = 1
        for edges in incident:
            class_count *= len(edges)
        self._check_budget("explore_nonmonic_general", class_count * factorial(n))

        classes = []
        visited = total = vanishing = nonvanishing = 0
        for tail_map in itertools.product(*incident):
            count, class_sum = _general_class(rows, tail_map)
            visited += count
            total += class_sum
            edge_monic = len(set(tail_map)) == n
            if not edge_monic:
                if class_sum == 0:
                    vanishing += 1
                else:
                    nonvanishing += 1
            classes.append(
                {
                    "tail_map": [e + 1 for e in tail_map],
                    "edge_monic": edge_monic,
                    "contributors": count,
                    "sum": class_sum,
                }
            )
        laplacian, _, _ = derived_matrices(structure)
        det_l = exact_determinant(laplacian)
        return GeneralHostExploration(
            n_vertices=n,
            n_edges=structure.n_edges,
            visited=visited,
            contributor_sum=total,
            oracle_det_l=det_l,
            agreement=total == det_l,
            classes=classes,
            nonmonic_vanishing=vanishing,
            nonmonic_nonvanishing=nonvanishing,
            note="Exploratory: counts of vanishing classes on this host only, not a general claim.",
        )

    @staticmethod
    def _validated_tail_map(class_id: TailClassId, n: int) -> tuple[int, ...]:
        tail_map = class_id.zero_based
        if len(tail_map) != n or any(not 0 <= e < n for e in tail_map):
            raise InvalidContributorError(
                f"Tail map {list(class_id.tail_map)} does not fit a {n}-full host"
            )
        return tail_map


def _count_identities(signed_sum: int, pos: int, neg: int, order: int) -> dict[str, int]:
    """Positive/negative count forms of |class sum|, mirrored for negative sums."""
    if signed_sum >= 0:
        return {"n! - 2*neg": order - 2 * neg, "2*pos - n!": 2 * pos - order}
    return {"n! - 2*pos": order - 2 * pos, "2*neg - n!": 2 * neg - order}
