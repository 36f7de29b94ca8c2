"""Partitioned permutations: a permutation together with a coarsening of its
cycle partition, measured by the two-sided length 2|U| - |perm|.

The product of two partitioned permutations is their join-and-compose when
lengths add up, and the absorbing element ZERO otherwise. Membership in the
non-crossing class is equivalently a product identity or a bipartite tree
condition; both routes are implemented and cross-checked by the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .annular import NEITHER, classify_relative, gamma_of
from .graphs import LabeledDigraph, block_bipartite
from .permutations import Permutation, enumerate_permutations
from .setpartitions import SetPartition, enumerate_partitions

Shape = tuple[int, ...]


class _Zero:
    """Absorbing product result; a singleton value, not an exception."""

    _instance: "_Zero | None" = None

    def __new__(cls) -> "_Zero":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"


ZERO = _Zero()


@dataclass(frozen=True)
class PartitionedPermutation:
    part: SetPartition
    perm: Permutation
    shape: Shape

    def __post_init__(self):
        m = sum(self.shape)
        if self.perm.n != m:
            raise ValueError(f"permutation acts on {self.perm.n} points, shape needs {m}")
        if self.part.ground() != set(range(1, m + 1)):
            raise ValueError("partition must cover 1..m")
        for cyc in self.perm.cycles():
            first = self.part.block_of(cyc[0])
            if any(self.part.block_of(x) != first for x in cyc):
                raise ValueError(f"cycle {cyc} straddles blocks of the partition")

    def length(self) -> int:
        """2|part| - |perm| = m - 2#(part) + #(perm)."""
        m = self.perm.n
        return m - 2 * self.part.num_blocks() + self.perm.num_cycles()

    def __str__(self) -> str:
        return f"({self.part}; {self.perm})"


def pp_length(pp: PartitionedPermutation) -> int:
    return pp.length()


def pp_product(
    a: PartitionedPermutation, b: PartitionedPermutation
) -> "PartitionedPermutation | _Zero":
    """Join the partitions and compose the permutations — but only when the
    lengths are additive; otherwise ZERO."""
    if a.shape != b.shape:
        raise ValueError("operands live over different shapes")
    joined = a.part.join(b.part)
    composed = a.perm * b.perm
    # Cycles of the composition always sit inside joined blocks, so the
    # length can be read off before paying for a validated construction.
    length = composed.n - 2 * joined.num_blocks() + composed.num_cycles()
    if length != a.length() + b.length():
        return ZERO
    return PartitionedPermutation(joined, composed, a.shape)


@lru_cache(maxsize=1 << 16)
def _complement(perm: Permutation, g: Permutation) -> Permutation:
    """The factor closing perm up to the boundary permutation, perm^-1 g."""
    return perm.inverse() * g


@lru_cache(maxsize=1 << 16)
def _orbit_join(perm: Permutation, g: Permutation) -> SetPartition:
    return perm.cycle_partition().join(g.cycle_partition())


@lru_cache(maxsize=1 << 16)
def _closing_element(perm: Permutation, g: Permutation, shape: Shape) -> PartitionedPermutation:
    rest = _complement(perm, g)
    return PartitionedPermutation(rest.cycle_partition(), rest, shape)


def product_membership(pp: PartitionedPermutation) -> bool:
    """Membership via the defining product identity: multiplying by the
    complementary cycle factor must land exactly on the full-block boundary
    element."""
    g = gamma_of(pp.shape)
    other = _closing_element(pp.perm, g, pp.shape)
    result = pp_product(pp, other)
    if result is ZERO:
        return False
    assert result.perm == g
    return result.part.num_blocks() == 1


def gamma_graph(pp: PartitionedPermutation) -> LabeledDigraph:
    """Bipartite block graph of the partitioned permutation against its
    boundary permutation: components versus blocks, one edge per cycle.

    Only defined when the permutation is annular non-crossing (connected or
    not) for the shape.
    """
    g = gamma_of(pp.shape)
    if classify_relative(pp.perm, g) == NEITHER:
        raise ValueError("permutation is not annular non-crossing for this shape")
    return block_bipartite(pp.perm.cycles(), pp.part, _orbit_join(pp.perm, g))


def is_nc_partitioned_perm(pp: PartitionedPermutation) -> bool:
    """Tree route: annular non-crossing permutation and a tree block graph."""
    g = gamma_of(pp.shape)
    if classify_relative(pp.perm, g) == NEITHER:
        return False
    return gamma_graph(pp).is_tree()


# ---------------------------------------------------------------------------
# Enumerations


def _coarsenings(
    perm: Permutation, nblocks: int | None = None
) -> Iterator[SetPartition]:
    """Partitions of {1..m} obtained by grouping whole cycles of perm."""
    cycles = perm.cycles()
    t = len(cycles)
    for grouping in enumerate_partitions(t, nblocks):
        yield SetPartition(
            [
                sorted(x for ci in grp for x in cycles[ci - 1])
                for grp in grouping.blocks
            ]
        )


def _required_blocks(perm: Permutation, g: Permutation) -> int | None:
    """Number of blocks the partition must have for length additivity against
    the complementary factor; None when no size works."""
    m = g.n
    r = g.num_cycles()
    rest = _complement(perm, g)
    k2 = m + 2 - r + perm.num_cycles() - rest.num_cycles()
    if k2 <= 0 or k2 % 2:
        return None
    return k2 // 2


def _members_over(
    perm: Permutation, shape: Shape, g: Permutation
) -> Iterator[PartitionedPermutation]:
    k = _required_blocks(perm, g)
    if k is None or k > perm.num_cycles():
        return
    rest_part = _complement(perm, g).cycle_partition()
    for part in _coarsenings(perm, k):
        if part.join(rest_part).num_blocks() == 1:
            yield PartitionedPermutation(part, perm, shape)


def enumerate_ps_nc(shape: Sequence[int]) -> Iterator[PartitionedPermutation]:
    """All non-crossing partitioned permutations for the shape, lazily, by
    exhaustive scan over the symmetric group with the length filter."""
    shape = tuple(shape)
    g = gamma_of(shape)
    for perm in enumerate_permutations(g.n):
        yield from _members_over(perm, shape, g)


def _pairing_permutations(m: int) -> Iterator[Permutation]:
    from .setpartitions import enumerate_pairings

    for pairing in enumerate_pairings(m):
        yield Permutation.from_pairing(pairing)


def _involution_permutations(m: int) -> Iterator[Permutation]:
    """Cycle type <= 2: partial pairings with fixed points allowed."""

    def rec(free: list[int], acc: list[tuple[int, ...]]) -> Iterator[Permutation]:
        if not free:
            yield Permutation.from_cycles(m, [c for c in acc if len(c) == 2])
            return
        a = free[0]
        acc.append((a,))
        yield from rec(free[1:], acc)
        acc.pop()
        for j in range(1, len(free)):
            acc.append((a, free[j]))
            yield from rec(free[1:j] + free[j + 1 :], acc)
            acc.pop()

    yield from rec(list(range(1, m + 1)), [])


def enumerate_ps_nc2(shape: Sequence[int]) -> Iterator[PartitionedPermutation]:
    """Members whose permutation is a pairing.

    The outer loop runs over annular non-crossing pairings only — crossings
    can never satisfy the length identity — and groupings that put two pairs
    against a common boundary cycle are skipped before the exact filter.
    """
    shape = tuple(shape)
    g = gamma_of(shape)
    gpart = g.cycle_partition()
    for perm in _pairing_permutations(g.n):
        if classify_relative(perm, g) == NEITHER:
            continue
        k = _required_blocks(perm, g)
        if k is None or k > perm.num_cycles():
            continue
        rest_part = _complement(perm, g).cycle_partition()
        touched = {
            cyc: {gpart.block_of(x)[0] for x in cyc} for cyc in perm.cycles()
        }
        for part in _coarsenings(perm, k):
            if part.join(rest_part).num_blocks() != 1:
                continue
            if not _blockwise_disjoint(part, perm, touched):
                continue
            yield PartitionedPermutation(part, perm, shape)


def _blockwise_disjoint(
    part: SetPartition,
    perm: Permutation,
    touched: dict[tuple[int, ...], set[int]],
) -> bool:
    cycles_by_block: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for cyc in perm.cycles():
        cycles_by_block.setdefault(part.block_of(cyc[0]), []).append(cyc)
    for cycs in cycles_by_block.values():
        seen: set[int] = set()
        for cyc in cycs:
            if seen & touched[cyc]:
                return False
            seen |= touched[cyc]
    return True


def enumerate_ps_nc21(shape: Sequence[int]) -> Iterator[PartitionedPermutation]:
    """Members whose permutation has cycles of length at most two."""
    shape = tuple(shape)
    g = gamma_of(shape)
    for perm in _involution_permutations(g.n):
        yield from _members_over(perm, shape, g)


def loop_pairs(perm: Permutation, shape: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Pairs of the pairing whose two legs land in one cycle of gamma*perm."""
    g = gamma_of(tuple(shape))
    orbits = (g * perm).cycle_partition()
    return tuple(
        cyc
        for cyc in perm.cycles()
        if len(cyc) == 2 and orbits.same_block(cyc[0], cyc[1])
    )


def is_loop_free(pp: PartitionedPermutation) -> bool:
    """Every loop pair of the pairing must be a block of the partition."""
    blocks = set(pp.part.blocks)
    return all(cyc in blocks for cyc in loop_pairs(pp.perm, pp.shape))


def enumerate_ps_nc2_loopfree(
    shape: Sequence[int],
) -> Iterator[PartitionedPermutation]:
    """Pairing members whose loop pairs all stand alone as blocks."""
    for pp in enumerate_ps_nc2(shape):
        if is_loop_free(pp):
            yield pp


# ---------------------------------------------------------------------------
# Relatedness of blocks


def related_blocks(
    pp: PartitionedPermutation,
) -> dict[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """For each block, the other blocks holding a pair with the same
    unordered orbit footprint as one of its own pairs.

    The permutation must be a pairing and the element a member of the
    pairing class.
    """
    if not pp.perm.is_involution_without_fixed_points():
        raise ValueError("related_blocks needs a pairing-type permutation")
    if not product_membership(pp):
        raise ValueError("not a member of the pairing class")
    g = gamma_of(pp.shape)
    orbits = (g * pp.perm).cycle_partition()

    def footprint(cyc: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
        return frozenset(orbits.block_of(x) for x in cyc)

    pairs_in: dict[tuple[int, ...], list[tuple[int, ...]]] = {
        b: [] for b in pp.part.blocks
    }
    for cyc in pp.perm.cycles():
        pairs_in[pp.part.block_of(cyc[0])].append(cyc)

    out: dict[tuple[int, ...], tuple[tuple[int, ...], ...]] = {}
    for block in pp.part.blocks:
        mine = {footprint(c) for c in pairs_in[block]}
        others = []
        for other in pp.part.blocks:
            if other == block:
                continue
            if any(footprint(c) in mine for c in pairs_in[other]):
                others.append(other)
        out[block] = tuple(others)
    return out


def is_maximal(pp: PartitionedPermutation) -> bool:
    """Whether some block is related to no other block."""
    return any(not others for others in related_blocks(pp).values())
