import itertools

import pytest

from precrossed.algebra import (
    conjugation_structure,
    cyclic_group,
    symmetric_group,
    trivial_group,
    validate_augmented_rack,
)
from precrossed.homology import chain_complex, homology
from precrossed.oracles import (
    group_homology,
    rack_complex,
    rack_homology,
    tensor_algebra_dims,
)
from precrossed.simplicial import build_clauwens


def one_element_rack():
    z2 = cyclic_group(2)
    return validate_augmented_rack(["a"], z2, [[0, 0]], [1])


def trivial_rack(d):
    triv = trivial_group()
    return validate_augmented_rack(
        [f"x{i}" for i in range(d)], triv, [[i] for i in range(d)], [0] * d
    )


def transposition_rack():
    s3 = symmetric_group(3)
    transpositions = [
        i for i in range(6) if i != s3.identity and s3.mul(i, i) == s3.identity
    ]
    return conjugation_structure(s3, transpositions)


def test_one_element_rack_boundaries_vanish():
    comp = rack_complex(one_element_rack(), 4)
    assert all(not comp.boundaries[n].entries for n in range(1, 5))
    for m in range(4):
        h = rack_homology(one_element_rack(), m)
        assert (h.betti, h.torsion) == (1, ())


def test_trivial_rack_closed_form():
    for d in (2, 3):
        comp = rack_complex(trivial_rack(d), 3)
        assert all(not comp.boundaries[n].entries for n in range(1, 4))
        for m in range(3):
            h = homology(comp, m)
            assert (h.betti, h.torsion) == (d**m, ())


def test_transposition_rack_degree_two_columns():
    rack = transposition_rack()
    comp = rack_complex(rack, 2)
    index = {t: i for i, t in enumerate(itertools.product(range(3), repeat=1))}
    for c, (x, y) in enumerate(itertools.product(range(3), repeat=2)):
        acted = rack.induced.op[x][y]
        expected = {}
        if acted != x:
            expected[(index[(x,)], c)] = 1
            expected[(index[(acted,)], c)] = -1
        got = {k: v for k, v in comp.boundaries[2].entries.items() if k[1] == c}
        assert got == expected


def test_rack_homology_matches_clauwens_pipeline():
    rack = transposition_rack()
    clauwens = chain_complex(build_clauwens(rack), 1, 2)
    direct = rack_homology(rack, 1)
    via_monoid = homology(clauwens, 1)
    assert (direct.betti, direct.torsion) == (via_monoid.betti, via_monoid.torsion)


def test_tensor_algebra_dims_against_composition_enumeration():
    generators = [(1, 1), (2, 2), (3, 1)]
    counts = dict()
    for d, c in generators:
        counts[d] = counts.get(d, 0) + c
    for m in range(7):
        brute = 0
        for r in range(m + 1):
            for comp in itertools.product(sorted(counts), repeat=r):
                if sum(comp) == m:
                    product = 1
                    for part in comp:
                        product *= counts[part]
                    brute += product
        assert tensor_algebra_dims(generators, m) == brute


def test_tensor_algebra_dims_known_values():
    one_per_degree = [(d, 1) for d in range(1, 6)]
    assert [tensor_algebra_dims(one_per_degree, m) for m in range(6)] == [1, 1, 2, 4, 8, 16]
    assert tensor_algebra_dims([(1, 1)], 4) == 1
    assert tensor_algebra_dims([], 3) == 0
    assert tensor_algebra_dims([], 0) == 1


def test_tensor_algebra_dims_rejects_degree_zero_generators():
    with pytest.raises(ValueError):
        tensor_algebra_dims([(0, 1)], 2)


def test_group_homology_cyclic_groups():
    z2, z3 = cyclic_group(2), cyclic_group(3)
    assert group_homology(z2, 1).render() == "Z/2"
    assert group_homology(z3, 1).render() == "Z/3"
    assert group_homology(z3, 2).render() == "0"
    for m in range(1, 3):
        assert group_homology(trivial_group(), m).render() == "0"


def test_trivial_two_element_rack_links_to_tensor_algebra():
    # rank 2^m matches the tensor algebra on two degree-one generators
    rack = trivial_rack(2)
    for m in range(3):
        assert rack_homology(rack, m, "Q").betti == tensor_algebra_dims([(1, 2)], m)
