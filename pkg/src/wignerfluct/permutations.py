"""Permutations of {1..n} with the composition convention (p*q)(x) = p(q(x)).

The right factor acts first, matching the usual function-composition reading.
Cycles are written starting from their minimum element; the cycle list is
ordered by those minima, so every derived object is deterministic.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping

from .setpartitions import SetPartition


class Permutation:
    """A bijection of {1..n}, stored as the tuple of images of 1..n.

    >>> p = Permutation((2, 1, 4, 3))
    >>> p(3)
    4
    >>> p.cycles()
    ((1, 2), (3, 4))
    """

    __slots__ = ("_img", "_cycles", "_cpart")

    def __init__(self, images: Iterable[int]):
        img = tuple(images)
        n = len(img)
        if sorted(img) != list(range(1, n + 1)):
            raise ValueError(f"not a bijection of 1..{n}: {img}")
        self._img = img
        self._cycles: tuple[tuple[int, ...], ...] | None = None
        self._cpart: SetPartition | None = None

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(range(1, n + 1))

    @staticmethod
    def from_cycles(n: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        """Build from disjoint cycles; unmentioned points are fixed."""
        img = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = list(cyc)
            for x in cyc:
                if not 1 <= x <= n or x in seen:
                    raise ValueError(f"bad cycle element {x}")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        return Permutation(img)

    @staticmethod
    def from_pairing(pairing: SetPartition) -> "Permutation":
        """The involution swapping the two elements of each block."""
        ground = sorted(pairing.ground())
        n = len(ground)
        if ground != list(range(1, n + 1)):
            raise ValueError("pairing must cover 1..n")
        if not pairing.is_pair_partition():
            raise ValueError("not a pair partition")
        return Permutation.from_cycles(n, pairing.blocks)

    @property
    def n(self) -> int:
        return len(self._img)

    def __call__(self, x: int) -> int:
        return self._img[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """(self*other)(x) = self(other(x)) — `other` acts first."""
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        return Permutation(self._img[y - 1] for y in other._img)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self._img, start=1):
            inv[y - 1] = x
        return Permutation(inv)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Cycles as tuples, each starting at its minimum, ordered by minima."""
        if self._cycles is not None:
            return self._cycles
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            x = self(start)
            while x != start:
                cyc.append(x)
                seen[x - 1] = True
                x = self(x)
            out.append(tuple(cyc))
        self._cycles = tuple(out)
        return self._cycles

    def cycle_partition(self) -> SetPartition:
        if self._cpart is None:
            self._cpart = SetPartition(self.cycles())
        return self._cpart

    def num_cycles(self) -> int:
        return len(self.cycles())

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths, sorted ascending."""
        return tuple(sorted(len(c) for c in self.cycles()))

    def length(self) -> int:
        """Cayley word length: n minus the number of cycles."""
        return self.n - self.num_cycles()

    def is_involution_without_fixed_points(self) -> bool:
        return all(len(c) == 2 for c in self.cycles())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __str__(self) -> str:
        cycs = [c for c in self.cycles() if len(c) > 1]
        if not cycs:
            return "id"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cycs)

    def __repr__(self) -> str:
        return f"Permutation({self._img})"


def enumerate_permutations(n: int) -> Iterator[Permutation]:
    """All n! permutations of {1..n}, lazily, in lexicographic image order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for img in itertools.permutations(range(1, n + 1)):
        yield Permutation(img)


def restrict(p: Permutation, subset: Iterable[int]) -> dict[int, int]:
    """First-return map of p on `subset`, as a dict.

    Each x in the subset is sent to the first iterate p(p(...p(x))) that lands
    back in the subset. The result is a bijection of the subset.

    >>> gamma = Permutation.from_cycles(4, [(1, 2, 3, 4)])
    >>> restrict(gamma, {1, 3})
    {1: 3, 3: 1}
    """
    keep = set(subset)
    if not keep:
        raise ValueError("subset must be nonempty")
    if not keep <= set(range(1, p.n + 1)):
        raise ValueError("subset not contained in 1..n")
    out: dict[int, int] = {}
    for x in sorted(keep):
        y = p(x)
        while y not in keep:
            y = p(y)
        out[x] = y
    return out


def cycles_of_mapping(mapping: Mapping[int, int]) -> tuple[tuple[int, ...], ...]:
    """Cycles of a bijection given as a dict (ground set = the keys)."""
    if sorted(mapping) != sorted(set(mapping.values())):
        raise ValueError("mapping is not a bijection of its key set")
    seen: set[int] = set()
    out = []
    for start in sorted(mapping):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = mapping[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = mapping[x]
        out.append(tuple(cyc))
    return tuple(out)
