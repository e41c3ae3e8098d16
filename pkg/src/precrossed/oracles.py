"""Independent reference computations.

The classical rack chain complex, group homology through the bar model of
the nerve, graded dimensions of free tensor algebras, and the closed forms
they imply for trivial racks.  These never touch the envelope machinery, so
agreement with it is meaningful.
"""

from __future__ import annotations

import itertools

from .algebra import AugmentedRack, FiniteGroup, PreCrossedModule
from .homology import ChainComplex, HomologyGroup, SparseIntMatrix, chain_complex, homology
from .simplicial import build_nerve


def rack_complex(rack: AugmentedRack, n_max: int) -> ChainComplex:
    """Chain complex of the rack space: degree n is free on n-tuples of the carrier.

    The differential deletes one entry and subtracts the variant where the
    deleted entry acts on the prefix:
    d(x_1..x_n) = sum_i (-1)^i [ (x_1..^x_i..x_n) - (x_1^(pi x_i),..,x_{i-1}^(pi x_i),x_{i+1},..,x_n) ].
    """
    if isinstance(rack, PreCrossedModule):
        rack = rack.as_augmented_rack()
    size = rack.size
    act = rack.action.act
    pi = rack.pi
    bases: list[list[str]] = []
    simplices: list[list[tuple[int, ...]]] = []
    for n in range(n_max + 1):
        tuples = list(itertools.product(range(size), repeat=n))
        simplices.append(tuples)
        bases.append(
            ["(" + ",".join(rack.carrier[x] for x in t) + ")" for t in tuples]
        )
    boundaries = [SparseIntMatrix(0, len(bases[0]), {})]
    for n in range(1, n_max + 1):
        index = {t: i for i, t in enumerate(simplices[n - 1])}
        entries: dict[tuple[int, int], int] = {}

        def add(key, val):
            new = entries.get(key, 0) + val
            if new:
                entries[key] = new
            elif key in entries:
                del entries[key]

        for c, t in enumerate(simplices[n]):
            for i in range(1, n + 1):
                sign = 1 if i % 2 == 0 else -1
                deleted = t[: i - 1] + t[i:]
                g = pi[t[i - 1]]
                acted = tuple(act(x, g) for x in t[: i - 1]) + t[i:]
                add((index[deleted], c), sign)
                add((index[acted], c), -sign)
        boundaries.append(SparseIntMatrix(len(bases[n - 1]), len(bases[n]), entries))
    return ChainComplex(bases, boundaries)


def rack_homology(rack: AugmentedRack, m: int, coeff: str = "Z") -> HomologyGroup:
    return homology(rack_complex(rack, m + 1), m, coeff)


def tensor_algebra_dims(generator_dims: list[tuple[int, int]], m: int) -> int:
    """Dimension of the degree-m piece of the free tensor algebra on a graded set.

    ``generator_dims`` lists (degree, count) pairs with degree >= 1; the
    answer sums, over all compositions of m into generator degrees, the
    product of the counts.
    """
    counts: dict[int, int] = {}
    for degree, count in generator_dims:
        if degree < 1:
            raise ValueError("tensor algebra generators must have positive degree")
        counts[degree] = counts.get(degree, 0) + count
    ways = [0] * (m + 1)
    ways[0] = 1
    for d in range(1, m + 1):
        ways[d] = sum(c * ways[d - deg] for deg, c in counts.items() if deg <= d)
    return ways[m]


def group_homology(group: FiniteGroup, m: int, coeff: str = "Z") -> HomologyGroup:
    """Homology of the group through the normalized bar complex of its nerve."""
    comp = chain_complex(build_nerve(group), m)
    return homology(comp, m, coeff)
