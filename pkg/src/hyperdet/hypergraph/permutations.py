"""
Permutations of the vertex set {1..n}.

Images are stored 0-based; every text form (cycle notation, image arrays)
is 1-based, matching vertex and edge labels in reports.
"""

import itertools
import re
from collections.abc import Iterator, Sequence
from functools import cached_property

from ..exceptions import PermutationError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _cycle_points(body: str, n: int | None) -> list[int]:
    tokens = body.replace(",", " ").split()
    # "(123)" is read digit by digit while every label is a single digit
    if len(tokens) == 1 and len(tokens[0]) > 1 and (n is None or n < 10):
        tokens = list(tokens[0])
    return [int(token) for token in tokens]


class Permutation:
    """
    A bijection on {0..n-1}, stored as its image tuple.

    ``perm[v]`` is the image of ``v``. Composition follows function
    composition: ``(p * q)[v] == p[q[v]]``, so ``q`` is applied first.
    """

    def __init__(self, images: Sequence[int], check: bool = True):
        self._images = tuple(images)
        if check and sorted(self._images) != list(range(len(self._images))):
            raise PermutationError(
                f"Image array {[i + 1 for i in self._images]} is not a permutation"
            )

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n), check=False)

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Permutation":
        """Build from a 1-based image array such as ``[2, 3, 1]``."""
        return cls([int(i) - 1 for i in images])

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], n: int) -> "Permutation":
        """Build from 1-based cycles; points not mentioned are fixed."""
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            points = [int(p) - 1 for p in cycle]
            for point in points:
                if not 0 <= point < n:
                    raise PermutationError(f"Point {point + 1} is outside 1..{n}")
                if point in seen:
                    raise PermutationError(f"Point {point + 1} appears in two cycles")
                seen.add(point)
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
        return cls(images)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """
        Parse cycle notation or a 1-based image array.

        Accepts ``"(1 2 3)(4 5)"``, ``"()"``/``"id"`` (needs ``n``),
        ``"[2, 3, 1]"`` and ``"2 3 1"``. When ``n`` is omitted for cycle
        notation, the largest mentioned point is used.

        Raises:
            PermutationError: If the text is malformed or not a bijection.
        """
        stripped = text.strip()
        if stripped.lower() in ("id", "e", "()", ""):
            if n is None:
                raise PermutationError("The identity needs an explicit size")
            return cls.identity(n)

        if stripped.startswith("("):
            leftover = _CYCLE_RE.sub("", stripped).strip()
            if leftover:
                raise PermutationError(f"Malformed cycle notation: {text!r}")
            try:
                cycles = [
                    _cycle_points(body, n) for body in _CYCLE_RE.findall(stripped)
                ]
            except ValueError as e:
                raise PermutationError(f"Malformed cycle notation: {text!r}") from e
            size = n if n is not None else max((max(c) for c in cycles if c), default=0)
            return cls.from_cycles(cycles, size)

        try:
            images = [int(token) for token in stripped.strip("[]").replace(",", " ").split()]
        except ValueError as e:
            raise PermutationError(f"Malformed image array: {text!r}") from e
        if n is not None and len(images) != n:
            raise PermutationError(f"Image array has {len(images)} entries, expected {n}")
        return cls.from_one_based(images)

    def __getitem__(self, index: int) -> int:
        return self._images[index]

    def __len__(self) -> int:
        return len(self._images)

    def __iter__(self) -> Iterator[int]:
        return iter(self._images)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self) != len(other):
            raise PermutationError("Cannot compose permutations of different sizes")
        return Permutation([self._images[i] for i in other._images], check=False)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_notation()})"

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    @property
    def one_based(self) -> list[int]:
        return [i + 1 for i in self._images]

    def inverse(self) -> "Permutation":
        inverse = [0] * len(self._images)
        for source, image in enumerate(self._images):
            inverse[image] = source
        return Permutation(inverse, check=False)

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Canonical cycles: each led by its minimum, sorted by leader, fixed points included."""
        seen = [False] * len(self._images)
        cycles = []
        for start in range(len(self._images)):
            if seen[start]:
                continue
            cycle = []
            v = start
            while not seen[v]:
                seen[v] = True
                cycle.append(v)
                v = self._images[v]
            cycles.append(tuple(cycle))
        return tuple(cycles)

    def cycle_notation(self) -> str:
        """1-based cycle notation without fixed points, ``"id"`` for the identity."""
        moved = [c for c in self.cycles if len(c) > 1]
        if not moved:
            return "id"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in moved)

    def is_identity(self) -> bool:
        return all(v == image for v, image in enumerate(self._images))

    def sign(self) -> int:
        """Permutation sign, (-1) ** (n - number of cycles)."""
        return -1 if (len(self._images) - len(self.cycles)) % 2 else 1

    @staticmethod
    def transposition(a: int, b: int, n: int) -> "Permutation":
        images = list(range(n))
        images[a], images[b] = images[b], images[a]
        return Permutation(images, check=False)


def all_permutations(n: int) -> Iterator[Permutation]:
    """All permutations of {0..n-1} in lexicographic order of the image array."""
    for images in itertools.permutations(range(n)):
        yield Permutation(images, check=False)
