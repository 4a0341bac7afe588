"""
Pydantic models for incidence structures and exact integer matrices.
"""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class ExactMatrix(BaseModel):
    """Square matrix of arbitrary-precision integers."""

    rows: tuple[tuple[int, ...], ...] = Field(..., description="Matrix rows")

    model_config = ConfigDict(frozen=True)

    @field_validator("rows")
    @classmethod
    def _square(cls, rows: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
        for row in rows:
            if len(row) != len(rows):
                raise ValueError(f"Matrix is not square: row of length {len(row)} in {len(rows)} rows")
        return rows

    @property
    def size(self) -> int:
        return len(self.rows)

    def as_array(self) -> np.ndarray:
        """Object-dtype copy, so arithmetic on it stays exact."""
        return _object_array(self.rows, len(self.rows), len(self.rows))

    @classmethod
    def from_array(cls, array: np.ndarray) -> "ExactMatrix":
        return cls(rows=tuple(tuple(int(x) for x in row) for row in array))


class IncidenceStructure(BaseModel):
    """
    Incidence matrix of an incidence-simple oriented hypergraph.

    Entry (v, e) is the orientation of the unique incidence between vertex v
    and edge e, or 0 when they are not incident.
    """

    entries: tuple[tuple[int, ...], ...] = Field(..., description="V x E entries over {-1, 0, 1}")

    model_config = ConfigDict(frozen=True)

    @field_validator("entries")
    @classmethod
    def _incidence_simple(cls, entries: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
        if entries:
            width = len(entries[0])
            for row in entries:
                if len(row) != width:
                    raise ValueError("Incidence matrix is not rectangular")
                for value in row:
                    if value not in (-1, 0, 1):
                        raise ValueError(f"Entry {value} is outside {{-1, 0, 1}}")
        return entries

    @classmethod
    def from_rows(cls, rows: Any) -> "IncidenceStructure":
        return cls(entries=tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def n_vertices(self) -> int:
        return len(self.entries)

    @property
    def n_edges(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def size(self) -> int:
        """Dimension of a square structure."""
        return self.n_vertices

    def entry(self, v: int, e: int) -> int:
        """1-based entry lookup, matching vertex and edge labels."""
        return self.entries[v - 1][e - 1]

    def is_full(self) -> bool:
        """True for n-full structures: square with every entry nonzero."""
        return self.n_vertices == self.n_edges and all(
            value != 0 for row in self.entries for value in row
        )

    def is_standardized(self) -> bool:
        """First row and first column are all +1."""
        if not self.entries:
            return True
        return all(value == 1 for value in self.entries[0]) and all(
            row[0] == 1 for row in self.entries
        )

    def incidence_count(self) -> int:
        return sum(1 for row in self.entries for value in row if value != 0)

    def as_array(self) -> np.ndarray:
        return _object_array(self.entries, self.n_vertices, self.n_edges)


def _object_array(rows: tuple[tuple[int, ...], ...], height: int, width: int) -> np.ndarray:
    array = np.empty((height, width), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            array[i, j] = int(value)
    return array
