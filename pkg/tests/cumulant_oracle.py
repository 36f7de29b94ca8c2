"""Independent closed form for the fluctuation-cumulant table.

Computed by hand from the block-weight recipe: a table entry with u arguments
equal to 1 and v arguments equal to 2 (and nothing else) concentrates on a
single partitioned pairing whose unique block carries q = u/2 + v pairs, giving

    (-1)^(u/2) * 2^(q-1) * u! / (2^(u/2) (u/2)!) * (b_{2q} + sum over the
    q-th obstruction set of its monomials)

with every other argument pattern vanishing. The u = 2, v = 0 entry is the
one degenerate case: its only candidate element is not loop-free, so it is
zero rather than what the formula would give.
"""

from math import factorial

from wignerfluct.betapoly import BetaPoly
from wignerfluct.graphs import obstruction_set


def closed_form_cumulant(key: tuple[int, ...]) -> BetaPoly:
    u = sum(1 for x in key if x == 1)
    v = sum(1 for x in key if x == 2)
    if u + v != len(key):  # an argument of 3 or more
        return BetaPoly.zero()
    if u % 2 or (u, v) == (2, 0) or v + u == 0:
        return BetaPoly.zero()
    q = u // 2 + v
    coeff = (
        (-1) ** (u // 2)
        * 2 ** (q - 1)
        * factorial(u)
        // (2 ** (u // 2) * factorial(u // 2))
    )
    poly = BetaPoly.beta(2 * q)
    for obst in obstruction_set(q):
        poly += BetaPoly({tuple(sorted(len(b) for b in obst.blocks)): 1})
    return poly.scale(coeff)
