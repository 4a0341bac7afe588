"""
Facade class that gives the command line and the tool server one entry point.
"""

import logging
from typing import Any, Optional

from ..config import EngineConfig
from ..exceptions import BudgetExceededError
from ..report_types import CommandReport
from .contributors import ContributorManager
from .matrices import derived_matrices, exact_determinant
from .models import IncidenceStructure, SignProbe
from .permutations import Permutation
from .search import Objective, SearchManager
from .transforms import TransformManager

# Configure logging
logger = logging.getLogger("hyperdet")

DEFAULT_LOCAL_EVALUATIONS = 2**16


class DeterminantEngine:
    """
    Facade that integrates every engine operation.

    Each command method runs the operations behind one subcommand and folds
    their identity checks into a single ``checks_passed`` flag.
    """

    def __init__(self, config: Optional[EngineConfig] = None):
        """
        Initialize the engine facade.

        Args:
            config: Engine configuration. If None, it will be created from
                environment variables.
        """
        if config is None:
            config = EngineConfig.from_env()
        self.config = config
        self.contributors = ContributorManager(config=config)
        self.transforms = TransformManager(config=config)
        # search extends reconstruction, which extends the contributor engine
        self.search = SearchManager(config=config)
        self.reconstruction = self.search

    def det(self, structure: IncidenceStructure) -> CommandReport:
        """Oracle determinants plus the contributor count of det(L) when it fits the budget."""
        try:
            det_h = exact_determinant(structure)
            laplacian, _, _ = derived_matrices(structure)
            payload: dict[str, Any] = {
                "n": structure.size,
                "det_h": det_h,
                "det_l": exact_determinant(laplacian),
            }
            if not structure.is_full():
                payload["contributors"] = {"skipped": True, "reason": "not n-full"}
                return CommandReport("det", payload)
            try:
                audit = self.contributors.laplacian_det_via_contributors(structure)
            except BudgetExceededError as e:
                payload["contributors"] = {"skipped": True, "required": e.required, "budget": e.budget}
                return CommandReport("det", payload, checks_passed=True, budget_required=e.required)
            payload["contributors"] = audit.to_payload()
            payload["agreement"] = audit.agreement
            return CommandReport("det", payload, checks_passed=audit.agreement)
        except Exception as e:
            self.contributors._handle_error(e, "det")

    def classes(
        self,
        structure: IncidenceStructure,
        alpha: Optional[Permutation] = None,
        beta: Optional[Permutation] = None,
        transversal: bool = False,
    ) -> CommandReport:
        """
        Class tallies: all edge-monic classes, or the class ``alpha`` alone.

        With ``beta`` the adjacency-inverse pair between the two classes is
        reported; with ``transversal`` the head-class check runs for every
        identifier.
        """
        try:
            if transversal:
                report = self.contributors.head_classes_all(structure)
                return CommandReport("classes", report.to_payload(), report.all_hold)
            if alpha is not None and beta is not None:
                pair = self.contributors.adjacency_inverse_pair(structure, alpha, beta)
                return CommandReport("classes", pair.to_payload(), pair.same_adjacencies and pair.equal_signs)
            if alpha is not None:
                single = self.contributors.det_magnitude_single_class(structure, alpha)
                closed_form_ok = single.tally.get("closed_form_sum") == single.tally["sum"]
                return CommandReport(
                    "classes",
                    single.to_payload(),
                    single.matches_det and single.identities_hold and closed_form_ok,
                )
            every = self.contributors.class_tallies_all(structure)
            closed_form_ok = all(t.get("closed_form_sum") == t["sum"] for t in every.tallies)
            return CommandReport(
                "classes",
                every.to_payload(),
                every.identities_hold and every.total_matches_det_l and every.transpositions_hold and closed_form_ok,
            )
        except Exception as e:
            self.contributors._handle_error(e, "classes")

    def verify(self, structure: IncidenceStructure, general: bool = False) -> CommandReport:
        """Non-edge-monic vanishing with the pairing audit, or the exploratory general-host run."""
        try:
            if general:
                exploration = self.contributors.explore_nonmonic_general(structure)
                return CommandReport("verify", exploration.to_payload(), exploration.agreement)
            report = self.contributors.verify_nonmonic_zero(structure)
            return CommandReport("verify", report.to_payload(), report.all_zero and report.pairing_holds)
        except Exception as e:
            self.contributors._handle_error(e, "verify")

    def reduce(self, structure: IncidenceStructure) -> CommandReport:
        """Standardization, H', the 2^(n-1) identity and the fundamental bouquet."""
        try:
            reduction = self.transforms.reduce(structure)
            bouquet = self.transforms.fundamental_bouquet_signs(structure)
            payload = reduction.to_payload()
            payload["identity"] = f"{reduction.lhs} = 2^{reduction.n - 1} · {abs(reduction.det_h_prime)}"
            payload["bouquet"] = bouquet.to_payload()
            passed = (
                reduction.relation_check
                and reduction.entry_rule_matches_pivot
                and bouquet.lemma_check
                and bouquet.negation_invariant
            )
            return CommandReport("reduce", payload, passed)
        except Exception as e:
            self.transforms._handle_error(e, "reduce")

    def probe(self, structure: IncidenceStructure) -> CommandReport:
        """Probe signs of a standardized matrix with both round trips and the product identities."""
        try:
            trip = self.reconstruction.round_trip(structure=structure)
            identities = self.reconstruction.probe_identity_check(structure)
            payload = trip.to_payload()
            payload["identities"] = identities.to_payload()
            passed = trip.probe_round_trip and bool(trip.matrix_round_trip) and identities.all_hold
            return CommandReport("probe", payload, passed)
        except Exception as e:
            self.reconstruction._handle_error(e, "probe")

    def reconstruct(self, probe: SignProbe) -> CommandReport:
        try:
            trip = self.reconstruction.round_trip(probe=probe)
            return CommandReport("reconstruct", trip.to_payload(), trip.probe_round_trip)
        except Exception as e:
            self.reconstruction._handle_error(e, "reconstruct")

    def search_maxdet(
        self,
        n: int,
        local: bool = False,
        seed: int = 0,
        budget: Optional[int] = None,
        objective: Objective = "oracle",
    ) -> CommandReport:
        """Exhaustive search, or the seeded local search when ``local`` is set."""
        try:
            if local:
                evaluations = budget if budget is not None else DEFAULT_LOCAL_EVALUATIONS
                result = self.search.local_search_maxdet(n, seed, evaluations, objective)
                return CommandReport("search", result.to_payload(), result.within_bound)
            result = self.search.exhaustive_maxdet(n, seed)
            return CommandReport("search", result.to_payload(), result.within_bound and bool(result.cross_check))
        except Exception as e:
            self.search._handle_error(e, "search")

    def experiment(self, n: int) -> CommandReport:
        try:
            report = self.search.forced_sign_experiment(n)
            return CommandReport("experiment", report.to_payload())
        except Exception as e:
            self.search._handle_error(e, "experiment")
