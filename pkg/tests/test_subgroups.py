import pytest

from nspg.groups import make_group, parse_group_spec
from nspg.subgroups import (
    all_normal_subgroups,
    all_subgroups,
    generated_subgroup,
    is_normal,
    quotient,
    recognize,
    subgroup_from_elements,
)
from oracles import divisor_count


def grp(text):
    return make_group(parse_group_spec(text))


S3 = grp("S3")
TRANSPOSITION = next(a for a in S3.elements() if S3.element_order(a) == 2)
THREE_CYCLE = next(a for a in S3.elements() if S3.element_order(a) == 3)


def test_generated_subgroup_empty_is_trivial():
    H = generated_subgroup(grp("Z6"), [])
    assert H.elements == (0,)


def test_generated_subgroup_even_residues():
    H = generated_subgroup(grp("Z8"), [2])
    assert H.elements == (0, 2, 4, 6)


def test_generated_subgroup_transposition_and_cycle_span_s3():
    H = generated_subgroup(S3, [TRANSPOSITION, THREE_CYCLE])
    assert H.order == 6


def test_generated_subgroup_rejects_bad_index():
    with pytest.raises(ValueError):
        generated_subgroup(grp("Z4"), [9])


def test_abelian_subgroups_always_normal():
    G = grp("Z12")
    for H in all_normal_subgroups(G):
        assert H.is_normal
    assert len(all_normal_subgroups(G)) == divisor_count(12)


def test_s3_normality():
    assert not generated_subgroup(S3, [TRANSPOSITION]).is_normal
    assert generated_subgroup(S3, [THREE_CYCLE]).is_normal
    assert is_normal(S3, generated_subgroup(S3, [THREE_CYCLE]))


def test_is_normal_rejects_foreign_subgroup():
    H = generated_subgroup(grp("Z4"), [2])
    with pytest.raises(ValueError):
        is_normal(grp("Z6"), H)


def test_all_normal_subgroups_trivial_group():
    subs = all_normal_subgroups(grp("Z1"))
    assert [s.elements for s in subs] == [(0,)]


def test_all_normal_subgroups_z4():
    subs = all_normal_subgroups(grp("Z4"))
    assert [s.elements for s in subs] == [(0,), (0, 2), (0, 1, 2, 3)]


def test_all_normal_subgroups_s3_excludes_order_two():
    subs = all_normal_subgroups(S3)
    assert [s.order for s in subs] == [1, 3, 6]


def test_subgroup_count_matches_divisors_for_cyclic():
    for n in range(1, 65):
        G = grp(f"Z{n}")
        assert len(all_subgroups(G)) == divisor_count(n)


def test_subgroup_validation_rejects_unclosed_set():
    with pytest.raises(ValueError):
        subgroup_from_elements(grp("Z6"), [0, 2])  # 2+2=4 missing
    with pytest.raises(ValueError):
        subgroup_from_elements(grp("Z6"), [1, 2, 3])  # no identity... and unclosed


def test_quotient_by_trivial_is_bijective():
    G = grp("Z6")
    Q = quotient(G, generated_subgroup(G, []))
    assert Q.group.order == 6
    assert Q.projection == tuple(range(6))


def test_quotient_z4_mod_two():
    G = grp("Z4")
    Q = quotient(G, generated_subgroup(G, [2]))
    assert Q.group.order == 2
    assert Q.projection == (0, 1, 0, 1)
    assert Q.representatives == (0, 1)


def test_quotient_d4_center_is_klein():
    G = grp("D4")
    center = generated_subgroup(G, [2])  # the half-turn rotation
    Q = quotient(G, center)
    assert Q.group.order == 4
    assert all(Q.group.element_order(a) == 2 for a in range(1, 4))
    flags = recognize(Q.group)
    assert flags.is_elementary_abelian_2 and not flags.is_cyclic


def test_quotient_fibers_and_homomorphism():
    for text, gens in [("Z12", [4]), ("D4", [2]), ("Q8", [1]), ("S3", [THREE_CYCLE])]:
        G = grp(text)
        H = generated_subgroup(G, gens)
        Q = quotient(G, H)
        assert Q.group.order * H.order == G.order
        fibers = {}
        for a in G.elements():
            fibers.setdefault(Q.projection[a], []).append(a)
        assert all(len(f) == H.order for f in fibers.values())
        for a in G.elements():
            for b in G.elements():
                assert Q.projection[G.mul(a, b)] == Q.group.mul(Q.projection[a], Q.projection[b])


def test_projection_well_defined():
    G = grp("Z12")
    H = generated_subgroup(G, [4])
    Q = quotient(G, H)
    members = set(H.elements)
    for a in G.elements():
        for b in G.elements():
            same = Q.projection[a] == Q.projection[b]
            assert same == (G.mul(a, G.inv(b)) in members)


def test_quotient_rejects_non_normal():
    H = generated_subgroup(S3, [TRANSPOSITION])
    with pytest.raises(ValueError):
        quotient(S3, H)


def test_recognize_flags():
    assert recognize(grp("Z1")).is_cyclic_p_group_or_trivial
    z9 = recognize(grp("Z9"))
    assert z9.is_cyclic and z9.is_p_group and z9.p == 3 and z9.is_cyclic_p_group_or_trivial
    klein = recognize(grp("Z2xZ2"))
    assert not klein.is_cyclic and klein.is_elementary_abelian_2
    assert not klein.is_cyclic_p_group_or_trivial
    z6 = recognize(grp("Z6"))
    assert z6.is_cyclic and not z6.is_p_group and not z6.is_cyclic_p_group_or_trivial
    assert recognize(grp("Z8")).is_cyclic_p_group_or_trivial
    assert recognize(grp("E(2,3)")).is_elementary_abelian_2


def test_recognize_through_trivial_quotient_agrees():
    for text in ["Z6", "Z8", "D4", "Q8", "S3", "Z2xZ2"]:
        G = grp(text)
        Q = quotient(G, generated_subgroup(G, []))
        direct_cyclic = any(G.element_order(a) == G.order for a in G.elements())
        assert recognize(Q.group).is_cyclic == direct_cyclic


def test_describe_forms():
    G = grp("Z6")
    assert generated_subgroup(G, []).describe() == "{e}"
    assert generated_subgroup(G, [3]).describe() == "<3>"
