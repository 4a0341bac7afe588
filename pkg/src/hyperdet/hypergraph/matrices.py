"""
Matrix text I/O, derived matrices and exact determinants.

Nothing here knows about contributors: the determinants computed in this
module are the independent oracle the contributor engine is checked against.
"""

import itertools
import logging

import numpy as np

from ..exceptions import MatrixFormatError
from .models import ExactMatrix, IncidenceStructure, matrix_text
from .permutations import Permutation

logger = logging.getLogger("hyperdet")

_COMPACT = {"+": 1, "-": -1, "0": 0}


def _parse_row(line: str, line_number: int) -> list[int]:
    stripped = line.strip()
    if not any(ch.isspace() for ch in stripped) and all(ch in _COMPACT for ch in stripped):
        return [_COMPACT[ch] for ch in stripped]
    row = []
    for token in stripped.split():
        try:
            value = int(token)
        except ValueError as e:
            raise MatrixFormatError(
                f"Line {line_number}: token {token!r} is not an integer",
                details={"line": line_number, "token": token},
            ) from e
        if value not in (-1, 0, 1):
            raise MatrixFormatError(
                f"Line {line_number}: entry {value} is outside {{-1, 0, 1}}",
                details={"line": line_number, "entry": value},
            )
        row.append(value)
    return row


def parse_matrix(text: str) -> IncidenceStructure:
    """
    Parse matrix text into an incidence structure.

    Rows are lines of space-separated integers in {-1, 0, 1} or compact
    strings over {+, -, 0}; both forms may be mixed. Blank lines are skipped.

    Raises:
        MatrixFormatError: For empty or non-rectangular input, bad tokens, or
            entries outside {-1, 0, 1}.
    """
    rows = [
        _parse_row(line, number)
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip()
    ]
    if not rows:
        raise MatrixFormatError("Matrix text is empty")
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        raise MatrixFormatError(
            f"Matrix is not rectangular: row lengths {sorted(widths)}",
            details={"row_lengths": [len(row) for row in rows]},
        )
    structure = IncidenceStructure.from_rows(rows)
    logger.debug(f"Parsed {structure.n_vertices}x{structure.n_edges} incidence structure")
    return structure


def serialize_matrix(structure: IncidenceStructure) -> str:
    """Space-separated emission format, one row per line, trailing newline."""
    return matrix_text(structure) + "\n"


def derived_matrices(structure: IncidenceStructure) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """
    Laplacian, degree and signed adjacency matrices: L = H H^T = D - A.

    Returns:
        (L, D, A) as exact integer matrices.
    """
    h = structure.as_array()
    laplacian = h @ h.T
    degree = np.zeros_like(laplacian)
    for i in range(laplacian.shape[0]):
        degree[i, i] = laplacian[i, i]
    adjacency = degree - laplacian
    return (
        ExactMatrix.from_array(laplacian),
        ExactMatrix.from_array(degree),
        ExactMatrix.from_array(adjacency),
    )


def exact_determinant(matrix: ExactMatrix | IncidenceStructure) -> int:
    """
    Exact determinant by fraction-free (Bareiss) elimination with full pivoting.

    Every division in the two-step update is exact, so the computation stays
    in Python integers. The 0x0 determinant is 1.
    """
    if isinstance(matrix, IncidenceStructure) and matrix.n_vertices != matrix.n_edges:
        raise MatrixFormatError("Determinant needs a square structure")
    rows = matrix.rows if isinstance(matrix, ExactMatrix) else matrix.entries
    return bareiss_determinant([list(row) for row in rows])


def bareiss_determinant(work: list[list[int]]) -> int:
    """Bareiss elimination in place on a square list-of-lists integer matrix."""
    n = len(work)
    if n == 0:
        return 1

    sign = 1
    previous = 1
    for k in range(n - 1):
        # full pivoting: largest magnitude in the trailing block, first in row-major order
        best = 0
        row = col = k
        for i in range(k, n):
            for j in range(k, n):
                if abs(work[i][j]) > best:
                    best = abs(work[i][j])
                    row, col = i, j
        if best == 0:
            return 0
        if row != k:
            work[k], work[row] = work[row], work[k]
            sign = -sign
        if col != k:
            for line in work:
                line[k], line[col] = line[col], line[k]
            sign = -sign
        pivot = work[k][k]
        pivot_row = work[k]
        for i in range(k + 1, n):
            line = work[i]
            factor = line[k]
            for j in range(k + 1, n):
                line[j] = (line[j] * pivot - factor * pivot_row[j]) // previous
            line[k] = 0
        previous = pivot
    return sign * work[n - 1][n - 1]


def naive_determinant(matrix: ExactMatrix | IncidenceStructure) -> int:
    """Leibniz expansion over all permutations; only for small matrices."""
    rows = matrix.rows if isinstance(matrix, ExactMatrix) else matrix.entries
    n = len(rows)
    total = 0
    for images in itertools.permutations(range(n)):
        term = Permutation(images, check=False).sign()
        for i, j in enumerate(images):
            term *= rows[i][j]
            if term == 0:
                break
        total += term
    return total
