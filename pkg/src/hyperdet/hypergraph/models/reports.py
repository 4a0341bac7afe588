"""
Pydantic models for engine reports.

Every report serializes to JSON through ``to_payload``; payloads carry no
timestamps so identical inputs give identical bytes.
"""

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from .contributor import ClassTally, ContributorSign
from .structure import IncidenceStructure


def matrix_text(structure: IncidenceStructure) -> str:
    return "\n".join(" ".join(str(value) for value in row) for row in structure.entries)


class Report(BaseModel):
    """Base class for JSON-serializable reports."""

    def to_payload(self) -> dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)


class LaplacianAudit(Report):
    """det(L) summed over contributors, checked against the exact oracle."""

    n: int
    laplacian_det: int
    visited: int
    expected_visits: int
    edge_monic_sum: int
    non_edge_monic_sum: int
    oracle_det_l: int
    oracle_det_h: int
    agreement: bool


class PairingWitness(Report):
    """The transposition pairing of one non-edge-monic class."""

    tail_map: list[int]
    v: int
    w: int
    class_sum: int
    case1_pairs: int
    case2_pairs: int
    case1_signs: list[tuple[int, int]] = Field(
        default_factory=list, description="(2-cycle member sign, double-backstep member sign)"
    )
    case2_cancel: bool
    pair_total: int


class NonMonicReport(Report):
    """Vanishing of every non-edge-monic class and its pairing audit."""

    n: int
    classes_checked: int
    expected_classes: int
    all_zero: bool
    nonzero_classes: list[list[int]] = Field(default_factory=list)
    pairing_holds: bool
    pairing_witness: list[PairingWitness] = Field(default_factory=list)


class SingleClassReport(Report):
    """|class sum| against |det H| and the positive/negative count identities."""

    n: int
    identifier: list[int]
    magnitude: int
    tally: dict[str, Any]
    oracle_det_h: int
    matches_det: bool
    identities: dict[str, int]
    identities_hold: bool


class AllClassesReport(Report):
    """Every edge-monic class sum with the class-count identities."""

    n: int
    tallies: list[dict[str, Any]]
    plus_classes: int
    minus_classes: int
    zero_classes: int
    oracle_det_h: int
    det_magnitude: int
    total: int
    oracle_det_l: int
    total_matches_det_l: bool
    precondition_met: bool
    identities: dict[str, int] = Field(default_factory=dict)
    identities_hold: bool
    transpositions_per_class: int
    transpositions_hold: bool


class AdjacencyInversePair(Report):
    """The unique adjacency-inverse pair between two edge-monic classes."""

    alpha: list[int]
    beta: list[int]
    in_alpha: ContributorSign
    in_beta: ContributorSign
    same_adjacencies: bool
    equal_signs: bool


class TransversalReport(Report):
    """Adjacency-inverses of one edge-monic tail class."""

    alpha: list[int]
    contributors: list[ContributorSign]
    identifiers_hit: list[list[int]]
    shared_head_incidences: bool
    is_transversal: bool
    sign_multiset_matches: bool


class HeadClassesReport(Report):
    """Transversal checks for every identifier."""

    n: int
    classes: list[dict[str, Any]]
    all_hold: bool


class Standardization(Report):
    """A full structure with first row and column negated to +1."""

    h_std: IncidenceStructure
    row_signs: list[int]
    col_signs: list[int]

    @field_serializer("h_std")
    def _serialize_matrix(self, structure: IncidenceStructure) -> str:
        return matrix_text(structure)


class ReductionReport(Report):
    """The {±1} to {0,1} reduction with both sides of the 2^(n-1) identity."""

    n: int
    standardization: Standardization
    pivot_minor: list[list[int]]
    h_prime: list[list[int]]
    entry_rule_matches_pivot: bool
    det_h: int
    det_h_prime: int
    lhs: int = Field(..., description="|det H|")
    rhs: int = Field(..., description="2^(n-1) |det H'|")
    relation_check: bool
    cyclomatic_number: int


class BouquetReport(Report):
    """Fundamental bouquet digon signs against the {0,1} matrix."""

    n: int
    signs: list[list[int]]
    h_prime: list[list[int]]
    lemma_check: bool
    negation_invariant: bool


class SignProbe(Report):
    """
    Contributor signs of the probe contributors in the identity class.

    ``s1k[k - 2]`` is the sign of the digon (1 k); ``skl`` holds
    ``(k, l, sign)`` for the digons (k l); ``s1kl`` holds ``(k, l, sign)``
    for the 3-cycle through v1, v_k, v_l.
    """

    n: int
    s1k: list[int]
    skl: list[tuple[int, int, int]]
    s1kl: list[tuple[int, int, int]]

    model_config = ConfigDict(frozen=True)

    @field_validator("s1k")
    @classmethod
    def _signs(cls, values: list[int]) -> list[int]:
        if any(value not in (-1, 1) for value in values):
            raise ValueError("Probe signs must be +1 or -1")
        return values

    @model_validator(mode="after")
    def _complete(self) -> "SignProbe":
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if len(self.s1k) != self.n - 1:
            raise ValueError(f"s1k needs {self.n - 1} signs, got {len(self.s1k)}")
        expected = {(k, l) for k in range(2, self.n + 1) for l in range(k + 1, self.n + 1)}
        for name in ("skl", "s1kl"):
            triples = getattr(self, name)
            pairs = [(k, l) for k, l, _ in triples]
            if len(pairs) != len(expected) or set(pairs) != expected:
                raise ValueError(f"{name} must list every pair 2 <= k < l <= {self.n} once")
            if any(sign not in (-1, 1) for _, _, sign in triples):
                raise ValueError("Probe signs must be +1 or -1")
        return self

    @property
    def size(self) -> int:
        return len(self.s1k) + len(self.skl) + len(self.s1kl)

    def digon(self, k: int, l: int) -> int:
        """Sign of the digon (k l) for 1 <= k < l, 1-based."""
        if k == 1:
            return self.s1k[l - 2]
        return {(a, b): s for a, b, s in self.skl}[(k, l)]

    def three_cycle(self, k: int, l: int) -> int:
        return {(a, b): s for a, b, s in self.s1kl}[(k, l)]

    def to_payload(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "s1k": list(self.s1k),
            "skl": [list(t) for t in sorted(self.skl)],
            "s1kl": [list(t) for t in sorted(self.s1kl)],
        }


class ProbeIdentityReport(Report):
    """Incidence-product identities behind reconstruction, per probe contributor."""

    n: int
    main_diagonal: bool
    three_cycles: bool
    digons: bool
    single_cycle_rule: bool
    all_hold: bool


class RoundTripReport(Report):
    """Probe signs and reconstruction checked in both directions."""

    probe: dict[str, Any]
    matrix: str
    probe_round_trip: bool
    matrix_round_trip: Optional[bool] = None


class SearchResult(Report):
    """Best |det| over standardized n-full structures."""

    n: int
    best_magnitude: int
    witnesses: list[IncidenceStructure]
    witness_count: int
    visited: int
    candidates: int
    hadamard_bound: int = Field(..., description="n^n, compared against best^2")
    within_bound: bool
    meets_bound: bool
    heuristic: bool = False
    note: Optional[str] = None
    seed: Optional[int] = None
    objective: str = "oracle"
    neg_count_id: Optional[int] = None
    minus_classes: Optional[int] = None
    cross_check: Optional[bool] = None

    @field_serializer("witnesses")
    def _serialize_witnesses(self, witnesses: list[IncidenceStructure]) -> list[str]:
        return [matrix_text(w) for w in witnesses]


class ForcedSignRow(Report):
    sign: int
    matrix: str
    magnitude: int
    attains_max: bool
    minus_classes: Optional[int] = None


class ForcedSignReport(Report):
    """Uniform probe sign patterns against the exhaustive maximum."""

    n: int
    exhaustive_max: int
    rows: list[ForcedSignRow]
    any_uniform_attains_max: bool
    note: str


class GeneralHostExploration(Report):
    """Class sums of a host that need not be full. Observations only."""

    n_vertices: int
    n_edges: int
    visited: int
    contributor_sum: int
    oracle_det_l: int
    agreement: bool
    classes: list[dict[str, Any]]
    nonmonic_vanishing: int
    nonmonic_nonvanishing: int
    note: str
