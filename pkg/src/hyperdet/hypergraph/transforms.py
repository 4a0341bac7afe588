"""
Standardization, the {±1} to {0,1} reduction, fundamental bouquet signs and
the cyclomatic number.
"""

import logging

import networkx as nx

from ..exceptions import MatrixFormatError
from .client import EngineClient
from .matrices import exact_determinant
from .models import (
    BouquetReport,
    ExactMatrix,
    IncidenceStructure,
    ReductionReport,
    Standardization,
)

# Configure logging
logger = logging.getLogger("hyperdet")


def incidence_graph(structure: IncidenceStructure) -> nx.Graph:
    """Bipartite vertex-edge graph with one graph edge per incidence."""
    graph = nx.Graph()
    graph.add_nodes_from(("v", v) for v in range(structure.n_vertices))
    graph.add_nodes_from(("e", e) for e in range(structure.n_edges))
    graph.add_edges_from(
        (("v", v), ("e", e))
        for v, row in enumerate(structure.entries)
        for e, value in enumerate(row)
        if value != 0
    )
    return graph


def digon_signs(rows: tuple[tuple[int, ...], ...]) -> list[list[int]]:
    """h11 * h1l * hk1 * hkl for every k, l >= 2."""
    n = len(rows)
    return [
        [rows[0][0] * rows[0][l] * rows[k][0] * rows[k][l] for l in range(1, n)]
        for k in range(1, n)
    ]


def negate_row(structure: IncidenceStructure, v: int) -> IncidenceStructure:
    return IncidenceStructure(
        entries=tuple(
            tuple(-x for x in row) if i == v else row for i, row in enumerate(structure.entries)
        )
    )


def negate_column(structure: IncidenceStructure, e: int) -> IncidenceStructure:
    return IncidenceStructure(
        entries=tuple(
            tuple(-x if j == e else x for j, x in enumerate(row)) for row in structure.entries
        )
    )


class TransformManager(EngineClient):
    """Sign normalization and the determinant-preserving reduction."""

    def standardize(self, structure: IncidenceStructure) -> Standardization:
        """
        Negate rows by column 1, then columns by the updated row 1.

        Raises:
            NotFullError: If the structure has a zero entry or is not square.
        """
        self._require_full(structure, "standardize")
        rows = structure.entries
        row_signs = [row[0] for row in rows]
        col_signs = [row_signs[0] * value for value in rows[0]]
        h_std = IncidenceStructure(
            entries=tuple(
                tuple(row_signs[v] * col_signs[e] * value for e, value in enumerate(row))
                for v, row in enumerate(rows)
            )
        )
        return Standardization(h_std=h_std, row_signs=row_signs, col_signs=col_signs)

    def reduce_to_01(self, standardization: Standardization) -> ReductionReport:
        """
        Pivot on (1, 1), keep the (1, 1)-minor and factor -2 from each row.

        H' is emitted by the entry rule (+1 -> 0, -1 -> 1); the pivot path is
        computed separately and compared. Both sides of
        |det H| = 2^(n-1) |det H'| come from the exact oracle.

        Raises:
            MatrixFormatError: If n < 2, where there is no minor.
        """
        h_std = standardization.h_std
        n = h_std.size
        if n < 2:
            raise MatrixFormatError("The {0,1} reduction needs n >= 2")

        pivoted = h_std.as_array()
        pivoted[1:, :] -= pivoted[0, :]
        minor = pivoted[1:, 1:]
        pivot_path = minor // -2

        h_prime = [[1 if value == -1 else 0 for value in row[1:]] for row in h_std.entries[1:]]
        entry_rule_matches = [[int(x) for x in row] for row in pivot_path] == h_prime

        det_h = exact_determinant(h_std)
        det_h_prime = exact_determinant(ExactMatrix(rows=tuple(tuple(row) for row in h_prime)))
        lhs = abs(det_h)
        rhs = 2 ** (n - 1) * abs(det_h_prime)
        if lhs != rhs or not entry_rule_matches:
            logger.error(f"Reduction identity failed: |det H| = {lhs}, 2^(n-1)|det H'| = {rhs}")
        return ReductionReport(
            n=n,
            standardization=standardization,
            pivot_minor=[[int(x) for x in row] for row in minor],
            h_prime=h_prime,
            entry_rule_matches_pivot=entry_rule_matches,
            det_h=det_h,
            det_h_prime=det_h_prime,
            lhs=lhs,
            rhs=rhs,
            relation_check=lhs == rhs,
            cyclomatic_number=self.cyclomatic_number(h_std),
        )

    def reduce(self, structure: IncidenceStructure) -> ReductionReport:
        """Standardize, then reduce."""
        return self.reduce_to_01(self.standardize(structure))

    def fundamental_bouquet_signs(self, structure: IncidenceStructure) -> BouquetReport:
        """
        Digon signs on {v1, vk} x {e1, el} for k, l >= 2.

        The sign check compares positivity with H' entry 0; the invariance
        check repeats the computation after every single row and column
        negation and after standardization.
        """
        n = self._require_full(structure, "fundamental_bouquet_signs")
        if n < 2:
            raise MatrixFormatError("The fundamental bouquet needs n >= 2")

        signs = digon_signs(structure.entries)
        standardization = self.standardize(structure)
        h_prime = [
            [1 if value == -1 else 0 for value in row[1:]]
            for row in standardization.h_std.entries[1:]
        ]
        lemma_check = all(
            (signs[k][l] > 0) == (h_prime[k][l] == 0) for k in range(n - 1) for l in range(n - 1)
        )
        variants = [standardization.h_std]
        variants += [negate_row(structure, v) for v in range(n)]
        variants += [negate_column(structure, e) for e in range(n)]
        negation_invariant = all(digon_signs(h.entries) == signs for h in variants)
        return BouquetReport(
            n=n,
            signs=signs,
            h_prime=h_prime,
            lemma_check=lemma_check,
            negation_invariant=negation_invariant,
        )

    @staticmethod
    def cyclomatic_number(structure: IncidenceStructure) -> int:
        """|I| - (|V| + |E|) + m over the bipartite incidence graph."""
        graph = incidence_graph(structure)
        components = nx.number_connected_components(graph)
        return structure.incidence_count() - (structure.n_vertices + structure.n_edges) + components
