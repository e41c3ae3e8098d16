import pytest

from precrossed.algebra import (
    conjugation_module,
    conjugation_structure,
    cyclic_group,
    precrossed_action,
    symmetric_group,
    trivial_action,
    trivial_group,
    validate_augmented_rack,
    validate_precrossed,
)
from precrossed.errors import IndexOutOfRange, ModeMismatch, ResourceBound
from precrossed.simplicial import (
    CoskeletonFamily,
    NerveSpec,
    Simplex,
    build_clauwens,
    build_coskeleton,
    build_envelope,
    build_nerve,
    canonical_to_coskeleton,
    check_simplicial_identities,
    enumerate_simplices,
    envelope_pi_map,
    is_degenerate,
)
from precrossed.words import EnvelopeWord, Letter, WordMode, reduce


def z2_trivial_module():
    z2, triv = cyclic_group(2), trivial_group()
    return validate_precrossed(z2, triv, trivial_action(triv, 2), [0, 0])


def one_rack():
    z2 = cyclic_group(2)
    return validate_augmented_rack(["a"], z2, [[0, 0]], [1])


def transposition_rack():
    s3 = symmetric_group(3)
    transpositions = [
        i for i in range(6) if i != s3.identity and s3.mul(i, i) == s3.identity
    ]
    return conjugation_structure(s3, transpositions)


def nondegenerate_encodings(spec, k, length):
    return [
        spec.encode(s)
        for s in enumerate_simplices(spec, k, length)
        if not is_degenerate(spec, s)
    ]


def test_envelope_degree_two_nondegenerate_words():
    spec = build_envelope(z2_trivial_module(), WordMode.GROUP_SYLLABLE)
    assert nondegenerate_encodings(spec, 2, 2) == ["(1@0)(1@1)", "(1@1)(1@0)"]


def test_envelope_trivial_carrier_is_a_point():
    triv, z2 = trivial_group(), cyclic_group(2)
    module = validate_precrossed(triv, z2, trivial_action(z2, 1), [0])
    spec = build_envelope(module, WordMode.GROUP_SYLLABLE)
    for k in range(1, 4):
        sims = enumerate_simplices(spec, k, 3)
        assert len(sims) == 1 and is_degenerate(spec, sims[0])


def test_free_letter_degree_one_enumeration():
    spec = build_envelope(one_rack(), WordMode.FREE_LETTER)
    assert nondegenerate_encodings(spec, 1, 2) == [
        "(a@0)",
        "(a^-1@0)",
        "(a@0)(a@0)",
        "(a^-1@0)(a^-1@0)",
    ]


def test_clauwens_degree_two_square_cell():
    spec = build_clauwens(one_rack())
    assert nondegenerate_encodings(spec, 2, 2) == ["(a@0)(a@1)", "(a@1)(a@0)"]


def test_clauwens_degree_one_is_the_carrier():
    spec = build_clauwens(transposition_rack())
    assert nondegenerate_encodings(spec, 1, 1) == ["((01)@0)", "((02)@0)", "((12)@0)"]


def test_clauwens_empty_carrier_is_a_point():
    triv = trivial_group()
    empty = validate_augmented_rack([], triv, [], [])
    spec = build_clauwens(empty)
    for k in range(4):
        sims = enumerate_simplices(spec, k, 3)
        assert [spec.encode(s) for s in sims] == ["1"]


def test_face_of_degree_one_word_is_basepoint():
    spec = build_envelope(z2_trivial_module(), WordMode.GROUP_SYLLABLE)
    w = Simplex(1, reduce(spec.ctx, 1, [Letter(1, 1, 0)]))
    assert spec.encode(spec.face(w, 0)) == "1"


def test_face_merges_positions_to_basepoint():
    spec = build_envelope(z2_trivial_module(), WordMode.GROUP_SYLLABLE)
    w = Simplex(2, reduce(spec.ctx, 2, [Letter(1, 1, 0), Letter(1, 1, 1)]))
    assert spec.encode(spec.face(w, 1)) == "1"


def test_top_face_applies_pi_and_twists():
    spec = build_envelope(conjugation_module(symmetric_group(3)), WordMode.GROUP_SYLLABLE)
    g = spec.ctx.group
    for y in range(1, 6):
        for x in range(1, 6):
            w = Simplex(2, reduce(spec.ctx, 2, [Letter(y, 1, 1), Letter(x, 1, 0)]))
            result = spec.face(w, 2)
            expected = spec.ctx.action[x][g.inv(spec.ctx.pi[y])]
            want = reduce(spec.ctx, 1, [Letter(expected, 1, 0)])
            assert result.payload == want


def test_degeneracies_shift_positions():
    spec = build_envelope(z2_trivial_module(), WordMode.GROUP_SYLLABLE)
    w = Simplex(1, reduce(spec.ctx, 1, [Letter(1, 1, 0)]))
    assert spec.encode(spec.degeneracy(w, 0)) == "(1@1)"
    assert spec.encode(spec.degeneracy(w, 1)) == "(1@0)"


def test_degeneracy_of_basepoint_is_basepoint():
    spec = build_envelope(z2_trivial_module(), WordMode.GROUP_SYLLABLE)
    point = Simplex(1, EnvelopeWord(WordMode.GROUP_SYLLABLE, 1, (), 0))
    assert spec.encode(spec.degeneracy(point, 0)) == "1"


def test_is_degenerate_cases():
    spec = build_envelope(z2_trivial_module(), WordMode.GROUP_SYLLABLE)
    single = Simplex(2, reduce(spec.ctx, 2, [Letter(1, 1, 1)]))
    assert is_degenerate(spec, single)
    mixed = Simplex(2, reduce(spec.ctx, 2, [Letter(1, 1, 0), Letter(1, 1, 1)]))
    assert not is_degenerate(spec, mixed)
    point = Simplex(3, EnvelopeWord(WordMode.GROUP_SYLLABLE, 3, (), 0))
    assert is_degenerate(spec, point)


def test_enumeration_counts():
    env = build_envelope(z2_trivial_module(), WordMode.GROUP_SYLLABLE)
    assert len(enumerate_simplices(env, 3, 2)) == 10  # 1 + 3 + 3*2
    nerve = build_nerve(cyclic_group(2))
    tuples = enumerate_simplices(nerve, 2)
    assert len(tuples) == 4
    assert sum(not is_degenerate(nerve, s) for s in tuples) == 1
    cosk = build_coskeleton(conjugation_module(cyclic_group(2)))
    assert len(enumerate_simplices(cosk, 2)) == 4


def test_enumeration_resource_bound():
    spec = build_envelope(transposition_rack(), WordMode.FREE_LETTER)
    with pytest.raises(ResourceBound):
        enumerate_simplices(spec, 3, 3, cap=100)


def test_envelope_requires_matching_mode():
    with pytest.raises(ModeMismatch):
        build_envelope(one_rack(), WordMode.GROUP_SYLLABLE)
    with pytest.raises(ModeMismatch):
        build_envelope(z2_trivial_module(), WordMode.MONOID_LETTER)


def test_face_index_out_of_range():
    spec = build_nerve(cyclic_group(2))
    s = Simplex(1, (1,))
    with pytest.raises(IndexOutOfRange):
        spec.face(s, 2)
    with pytest.raises(IndexOutOfRange):
        spec.face(Simplex(0, ()), 0)


def test_nerve_bar_face_multiplies():
    nerve = build_nerve(cyclic_group(3))
    s = Simplex(2, (1, 2))
    assert nerve.face(s, 1).payload == (0,)
    assert nerve.face(s, 0).payload == (2,)
    assert nerve.face(s, 2).payload == (1,)


def test_nerve_of_trivial_group_is_a_point():
    nerve = build_nerve(trivial_group())
    for k in range(4):
        assert len(enumerate_simplices(nerve, k)) == 1


def test_coskeleton_degree_one_cosets():
    cosk = build_coskeleton(conjugation_module(cyclic_group(2)))
    sims = enumerate_simplices(cosk, 1)
    assert len(sims) == 2  # |X x| G| / |G|


def test_coskeleton_trivial_carrier_collapses():
    # with X trivial the matching condition forces all vertices equal, so the
    # quotient is a point in every degree and matches the envelope quotient
    triv, z2 = trivial_group(), cyclic_group(2)
    module = validate_precrossed(triv, z2, trivial_action(z2, 1), [0])
    cosk = build_coskeleton(module)
    for k in range(4):
        assert len(enumerate_simplices(cosk, k)) == 1
    cmap = canonical_to_coskeleton(module)
    assert cmap.check_commutes(3, 3).passed
    for k in range(3):
        assert len(enumerate_simplices(cmap.source, k, 3)) == 1


def test_coskeleton_faces_renormalize_last_vertex():
    cosk = build_coskeleton(conjugation_module(cyclic_group(2)))
    fam = CoskeletonFamily((0, 1, 0), (1, 0, 1))  # vertices (e,t,e), edges x01,x02,x12
    s = Simplex(2, fam)
    top = cosk.face(s, 2)  # drops the normalized vertex, renormalizes by t
    assert top.payload == CoskeletonFamily((1, 0), (1,))


def test_identities_hold_on_all_builders():
    cases = [
        (build_envelope(z2_trivial_module(), WordMode.GROUP_SYLLABLE), 3, 3),
        (build_envelope(one_rack(), WordMode.FREE_LETTER), 3, 2),
        (build_clauwens(one_rack()), 3, 2),
        (build_coskeleton(conjugation_module(cyclic_group(2))), 3, None),
        (build_nerve(symmetric_group(3)), 3, None),
    ]
    for spec, k_max, bound in cases:
        report = check_simplicial_identities(spec, k_max, bound)
        assert report.passed, report.violation


def test_identity_checker_reports_a_corrupted_face():
    class BrokenNerve(NerveSpec):
        def face(self, simplex, i):
            good = super().face(simplex, i)
            if simplex.degree == 2 and i == 1:
                return super().face(simplex, 0)  # wrong case on purpose
            return good

    broken = BrokenNerve(cyclic_group(3))
    report = check_simplicial_identities(broken, 3)
    assert not report.passed
    assert "d_" in report.violation


def test_face_never_lengthens_and_degeneracy_preserves_length():
    for spec, bound in (
        (build_envelope(transposition_rack(), WordMode.FREE_LETTER), 2),
        (build_clauwens(transposition_rack()), 2),
        (build_envelope(conjugation_module(symmetric_group(3)), WordMode.GROUP_SYLLABLE), 2),
    ):
        for k in range(1, 4):
            for s in enumerate_simplices(spec, k, bound):
                for i in range(k + 1):
                    assert spec.face(s, i).payload.length <= s.payload.length
                for i in range(k + 1):
                    assert spec.degeneracy(s, i).payload.length == s.payload.length


def test_independence_of_base_group():
    for module in (
        conjugation_module(symmetric_group(3)),
        conjugation_module(cyclic_group(3)),
    ):
        reduced = precrossed_action(module).module
        a, b = (
            build_envelope(module, WordMode.GROUP_SYLLABLE),
            build_envelope(reduced, WordMode.GROUP_SYLLABLE),
        )
        for k in range(3):
            left = enumerate_simplices(a, k, 2)
            right = enumerate_simplices(b, k, 2)
            assert [a.encode(s) for s in left] == [b.encode(s) for s in right]
            for sa, sb in zip(left, right):
                for i in range(k + 1):
                    if k >= 1:
                        assert a.encode(a.face(sa, i)) == b.encode(b.face(sb, i))
                    assert a.encode(a.degeneracy(sa, i)) == b.encode(b.degeneracy(sb, i))


def test_canonical_map_values():
    module = conjugation_module(cyclic_group(2))
    cmap = canonical_to_coskeleton(module)
    point = Simplex(2, EnvelopeWord(WordMode.GROUP_SYLLABLE, 2, (), 0))
    image = cmap.apply(point)
    assert image.payload == CoskeletonFamily((0, 0, 0), (0, 0, 0))
    edge = Simplex(1, reduce(cmap.source.ctx, 1, [Letter(1, 1, 0)]))
    assert cmap.apply(edge).payload == CoskeletonFamily((1, 0), (1,))


def test_canonical_map_commutes():
    for group in (cyclic_group(2), cyclic_group(3)):
        cmap = canonical_to_coskeleton(conjugation_module(group))
        report = cmap.check_commutes(3, 2)
        assert report.passed, report.violation


def test_pi_map_commutes_for_rack():
    pmap = envelope_pi_map(one_rack())
    assert pmap.check_commutes(3, 2).passed
    composed = pmap.then(canonical_to_coskeleton(conjugation_module(cyclic_group(2))))
    assert composed.check_commutes(3, 2).passed


def test_word_spec_requires_length_bound():
    spec = build_clauwens(one_rack())
    with pytest.raises(ResourceBound):
        enumerate_simplices(spec, 2)


def test_coskeleton_with_multivalued_preimages():
    # pi: Z/4 -> Z/2 is surjective but not injective, so every connecting
    # edge has two choices; the quotient still computes the base group's
    # homology and the comparison map still commutes
    from precrossed.homology import chain_complex, homology

    z4, z2 = cyclic_group(4), cyclic_group(2)
    module = validate_precrossed(z4, z2, trivial_action(z2, 4), [0, 1, 0, 1])
    cosk = build_coskeleton(module)
    assert [len(enumerate_simplices(cosk, k)) for k in range(3)] == [1, 4, 32]
    assert check_simplicial_identities(cosk, 3).passed
    comp = chain_complex(cosk, 2)
    assert [homology(comp, m).render() for m in range(3)] == ["Z", "Z/2", "0"]
    assert canonical_to_coskeleton(module).check_commutes(2, 2).passed
