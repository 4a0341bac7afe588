"""
Contributors of an n-full oriented hypergraph and their tail-equivalence classes.
"""

from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from ..permutations import Permutation


@dataclass(frozen=True)
class Contributor:
    """
    A tail map plus a permutation, both 0-based.

    Vertex v leaves through edge ``tail_map[v]`` and arrives at ``perm[v]``
    through the same edge, so its head-incidence is ``(perm[v], tail_map[v])``.
    """

    tail_map: tuple[int, ...]
    perm: Permutation

    @property
    def n(self) -> int:
        return len(self.tail_map)

    def head_incidences(self) -> frozenset[tuple[int, int]]:
        return frozenset((self.perm[v], e) for v, e in enumerate(self.tail_map))

    def adjacencies(self) -> Counter:
        """Multiset of undirected (vertex pair, edge) adjacencies, backsteps included."""
        return Counter(
            (frozenset((v, self.perm[v])), e) for v, e in enumerate(self.tail_map)
        )

    def adjacency_inverse(self) -> "Contributor":
        """The same adjacencies walked backwards: u = perm[v] leaves through tail_map[v] to v."""
        inverse = self.perm.inverse()
        return Contributor(
            tail_map=tuple(self.tail_map[inverse[u]] for u in range(self.n)),
            perm=inverse,
        )

    def to_payload(self) -> dict[str, Any]:
        return {
            "tail_map": [e + 1 for e in self.tail_map],
            "perm": self.perm.cycle_notation(),
            "images": self.perm.one_based,
        }


class TailClassId(BaseModel):
    """A tail map (1-based edge per vertex); edge-monic maps carry an identifier."""

    tail_map: tuple[int, ...] = Field(..., description="1-based tail edge of each vertex")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_zero_based(cls, tail_map: tuple[int, ...]) -> "TailClassId":
        return cls(tail_map=tuple(e + 1 for e in tail_map))

    @classmethod
    def from_identifier(cls, alpha: Permutation) -> "TailClassId":
        return cls(tail_map=tuple(alpha.one_based))

    @property
    def n(self) -> int:
        return len(self.tail_map)

    @property
    def zero_based(self) -> tuple[int, ...]:
        return tuple(e - 1 for e in self.tail_map)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def edge_monic(self) -> bool:
        return len(set(self.tail_map)) == len(self.tail_map)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def identifier(self) -> Optional[list[int]]:
        return list(self.tail_map) if self.edge_monic else None

    def identifier_permutation(self) -> Optional[Permutation]:
        return Permutation(self.zero_based) if self.edge_monic else None


class ComponentSign(BaseModel):
    """One permutation cycle of a contributor and its adjacency-sign product."""

    cycle: tuple[int, ...] = Field(..., description="1-based vertices in cycle order")
    length: int
    sign: int
    backstep: bool


class ContributorSign(BaseModel):
    """Contributor sign (-1)^pc with its component decomposition."""

    tail_map: list[int]
    perm: str
    images: list[int]
    sign: int
    positive_components: int
    components: list[ComponentSign]


class ClassTally(BaseModel):
    """Positive and negative contributor counts of one tail-equivalence class."""

    class_id: TailClassId
    pos_count: int
    neg_count: int
    signed_sum: int
    closed_form_sum: Optional[int] = Field(
        None, description="Tail-product times signed head expansion, for audit"
    )
    transpositions: Optional[int] = Field(None, description="Contributors with a single 2-cycle")
    elapsed_seconds: Optional[float] = None

    @model_validator(mode="after")
    def _counts_agree(self) -> "ClassTally":
        if self.pos_count + self.neg_count != factorial(self.class_id.n):
            raise ValueError("A tail-equivalence class holds exactly n! contributors")
        if self.signed_sum != self.pos_count - self.neg_count:
            raise ValueError("signed_sum must equal pos_count - neg_count")
        return self

    def to_report(self) -> dict[str, Any]:
        report: dict[str, Any] = {
            "n": self.class_id.n,
            "tail_map": list(self.class_id.tail_map),
            "identifier": self.class_id.identifier,
            "edge_monic": self.class_id.edge_monic,
            "pos": self.pos_count,
            "neg": self.neg_count,
            "sum": self.signed_sum,
        }
        if self.closed_form_sum is not None:
            report["closed_form_sum"] = self.closed_form_sum
        if self.transpositions is not None:
            report["transpositions"] = self.transpositions
        if self.elapsed_seconds is not None:
            report["elapsed_seconds"] = self.elapsed_seconds
        return report
