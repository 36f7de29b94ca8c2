"""Non-crossing structure relative to a multi-circle boundary permutation.

A "shape" is a tuple of positive cycle lengths (m1, ..., mr); its boundary
permutation gamma_of(shape) has r consecutive cycles (1..m1)(m1+1..m1+m2)...
Pairings are handled as fixed-point-free involutions (Permutation objects);
conversion from pair partitions is explicit via Permutation.from_pairing.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

from .permutations import Permutation
from .setpartitions import SetPartition, enumerate_pairings

Shape = tuple[int, ...]

NC = "nc"
NC_NONCONNECTING = "nc-nonconnecting"
NEITHER = "neither"


def gamma_of(shape: Sequence[int]) -> Permutation:
    """The permutation with consecutive cycles of the given lengths.

    >>> str(gamma_of((2, 2)))
    '(1,2)(3,4)'
    """
    shape = tuple(shape)
    if not shape or any(m < 1 for m in shape):
        raise ValueError(f"shape must be a nonempty tuple of positive ints: {shape}")
    return _gamma_cached(shape)


@lru_cache(maxsize=None)
def _gamma_cached(shape: Shape) -> Permutation:
    m = sum(shape)
    cycles = []
    start = 1
    for length in shape:
        cycles.append(range(start, start + length))
        start += length
    return Permutation.from_cycles(m, cycles)


@lru_cache(maxsize=1 << 16)
def classify_relative(p: Permutation, g: Permutation) -> str:
    """Place p in the non-crossing hierarchy relative to g.

    Returns "nc" when the cycle-count inequality
        #(p) + #(g) + #(p^-1 g) <= n + 2 #(orbits of <p,g>)
    is tight and p, g generate a transitive action; "nc-nonconnecting" when it
    is tight but the action is not transitive (p is non-crossing on each orbit
    separately); "neither" otherwise.
    """
    if p.n != g.n:
        raise ValueError(f"size mismatch: {p.n} vs {g.n}")
    join = p.cycle_partition().join(g.cycle_partition())
    lhs = p.num_cycles() + g.num_cycles() + (p.inverse() * g).num_cycles()
    if lhs != p.n + 2 * join.num_blocks():
        return NEITHER
    return NC if join.num_blocks() == 1 else NC_NONCONNECTING


def enumerate_nc2(shape: Sequence[int]) -> Iterator[Permutation]:
    """Pairings of {1..m} that are non-crossing and connect all of gamma's
    cycles, lazily. Empty for odd m."""
    g = gamma_of(shape)
    for pairing in enumerate_pairings(g.n):
        sigma = Permutation.from_pairing(pairing)
        if classify_relative(sigma, g) == NC:
            yield sigma


def enumerate_nc2nc(shape: Sequence[int]) -> Iterator[Permutation]:
    """Pairings non-crossing on each orbit but not connecting all cycles."""
    g = gamma_of(shape)
    for pairing in enumerate_pairings(g.n):
        sigma = Permutation.from_pairing(pairing)
        if classify_relative(sigma, g) == NC_NONCONNECTING:
            yield sigma


def through_strings(sigma: Permutation, shape: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cycles of sigma that meet two or more distinct cycles of gamma."""
    g = gamma_of(shape)
    if sigma.n != g.n:
        raise ValueError(f"size mismatch: {sigma.n} vs {g.n}")
    gpart = g.cycle_partition()
    out = []
    for cyc in sigma.cycles():
        if len({gpart.block_of(x) for x in cyc}) >= 2:
            out.append(cyc)
    return tuple(out)


def _find_cycle(sigma: Permutation, cycle: Sequence[int]) -> tuple[int, ...]:
    want = set(cycle)
    for cyc in sigma.cycles():
        if set(cyc) == want:
            return cyc
    raise ValueError(f"{tuple(cycle)} is not a cycle of {sigma}")


def is_cutting(sigma: Permutation, cycle: Sequence[int], shape: Sequence[int]) -> bool:
    """Whether removing this pair of sigma disconnects the cycle structure.

    `sigma` must be in the connected non-crossing class for the shape; the
    test turns the pair into fixed points and asks whether the remaining
    strings together with gamma now split into exactly two components.
    """
    g = gamma_of(shape)
    if classify_relative(sigma, g) != NC:
        raise ValueError("sigma is not a connected non-crossing pairing for this shape")
    cyc = _find_cycle(sigma, cycle)
    rest = [c for c in sigma.cycles() if c != cyc] + [(x,) for x in cyc]
    return SetPartition(rest).join(g.cycle_partition()).num_blocks() == 2


def is_loop_block(sigma: Permutation, cycle: Sequence[int], shape: Sequence[int]) -> bool:
    """Whether both elements of this pair lie in one cycle of gamma*sigma."""
    g = gamma_of(shape)
    if sigma.n != g.n:
        raise ValueError(f"size mismatch: {sigma.n} vs {g.n}")
    cyc = _find_cycle(sigma, cycle)
    orbit = (g * sigma).cycle_partition()
    first = orbit.block_of(cyc[0])
    return all(orbit.block_of(x) == first for x in cyc[1:])


def is_noncrossing_partition(part: SetPartition) -> bool:
    """Classical crossing test: no a < b < c < d with a,c together and b,d
    together in two different blocks."""
    ground = sorted(part.ground())
    for block in part.blocks:
        for x, y in itertools.combinations(block, 2):
            # Anything strictly between two co-block elements must belong to
            # a block confined to that interval.
            for z in ground:
                if not x < z < y or part.same_block(x, z):
                    continue
                zb = part.block_of(z)
                if zb[0] < x or zb[-1] > y:
                    return False
    return True


def is_noncrossing_disc(p: Permutation) -> bool:
    """Direct one-circle test: cycles cyclically increasing and the cycle
    partition crossing-free. Independent of any cycle-counting identities."""
    for cyc in p.cycles():
        if list(cyc) != sorted(cyc):
            return False
    return is_noncrossing_partition(p.cycle_partition())
