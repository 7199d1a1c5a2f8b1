import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nspg.groups import (
    FiniteGroup,
    euler_phi,
    from_cayley_table,
    make_group,
    parse_group_spec,
)
from oracles import order_by_iteration, phi_by_gcd


def grp(text):
    return make_group(parse_group_spec(text))


def test_trivial_group():
    G = grp("Z1")
    assert G.order == 1
    assert G.element_order(0) == 1


def test_cyclic_six_orders_and_powers():
    G = grp("Z6")
    assert G.element_order(2) == 3
    assert G.element_power(5, 4) == 2
    assert G.element_power(2, 2) == 4
    assert all(G.element_power(a, 0) == 0 for a in G.elements())


def test_klein_four_is_elementary():
    G = grp("Z2xZ2")
    assert G.order == 4
    assert all(G.element_order(a) == 2 for a in range(1, 4))


def test_dihedral_layout_and_reflections():
    G = grp("D4")
    assert G.order == 8
    assert G.labels[:4] == ("r0", "r1", "r2", "r3")
    assert G.labels[4:] == ("s0", "s1", "s2", "s3")
    for a in range(4, 8):
        assert G.element_order(a) == 2


def test_quaternion_orders():
    G = grp("Q8")
    assert G.labels == ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    assert G.element_order(1) == 2
    assert all(G.element_order(a) == 4 for a in range(2, 8))


def test_symmetric_group_s3():
    G = grp("S3")
    assert G.order == 6
    assert G.labels[0] == "012"
    assert sorted(G.element_order(a) for a in G.elements()) == [1, 2, 2, 2, 3, 3]


def test_elementary_abelian():
    G = grp("E(2,3)")
    assert G.order == 8
    assert all(G.element_order(a) == 2 for a in range(1, 8))
    G9 = grp("E(3,2)")
    assert G9.order == 9
    assert all(G9.element_order(a) == 3 for a in range(1, 9))


def test_make_group_is_deterministic():
    for text in ["Z12", "D4", "S4", "Q8", "E(2,3)", "Z2xZ4"]:
        a, b = grp(text), grp(text)
        assert a.table == b.table
        assert a.labels == b.labels


@pytest.mark.parametrize("text", ["Z1", "Z12", "D4", "S4", "Q8", "E(2,3)", "Z2xZ6", "Z4xZ4"])
def test_lagrange_and_power_identities(text):
    G = grp(text)
    for a in G.elements():
        o = G.element_order(a)
        assert G.order % o == 0
        assert G.element_power(a, o) == 0
        assert o == order_by_iteration(G.table, a)


def test_cyclic_order_counts_are_phi_multiples():
    for n in range(1, 65):
        G = grp(f"Z{n}")
        counts = {}
        for a in G.elements():
            counts[G.element_order(a)] = counts.get(G.element_order(a), 0) + 1
        for d, c in counts.items():
            assert c % euler_phi(d) == 0


def test_parse_grammar():
    assert parse_group_spec("Z12").group_order() == 12
    assert parse_group_spec("D4").group_order() == 8
    assert parse_group_spec("S4").group_order() == 24
    assert parse_group_spec("Q8").group_order() == 8
    assert parse_group_spec("E(2,3)").group_order() == 8
    assert parse_group_spec("Z2xZ4").group_order() == 8
    assert parse_group_spec("Z2xZ2xZ3").group_order() == 12


@pytest.mark.parametrize("text", ["", "Zx", "xZ2", "Z2x", "W5", "E(2)", "Q16", "z4"])
def test_parse_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_group_spec(text)


def test_budget_enforcement():
    with pytest.raises(ValueError):
        make_group(parse_group_spec("S6"))
    with pytest.raises(ValueError):
        make_group(parse_group_spec("Z257"))
    with pytest.raises(ValueError):
        make_group(parse_group_spec("E(4,2)"))  # 4 is not prime
    with pytest.raises(ValueError):
        make_group(parse_group_spec("Z0"))


def test_from_cayley_table_trivial_and_z2():
    assert from_cayley_table([[0]]).order == 1
    G = from_cayley_table([[0, 1], [1, 0]])
    assert G.order == 2
    assert G.element_order(1) == 2


def test_from_cayley_table_rejects_non_latin():
    with pytest.raises(ValueError):
        from_cayley_table([[0, 1], [1, 1]])


def test_from_cayley_table_rejects_non_associative():
    # Latin square with identity first that fails associativity (order-5 loop).
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(ValueError):
        from_cayley_table(table)


def test_from_cayley_table_renumbers_identity():
    # Z3 written with the identity at index 2.
    table = [
        [1, 2, 0],
        [2, 0, 1],
        [0, 1, 2],
    ]
    G = from_cayley_table(table)
    assert G.table[0] == (0, 1, 2)
    assert sorted(G.element_order(a) for a in G.elements()) == [1, 3, 3]


def test_euler_phi_anchors():
    assert euler_phi(1) == 1
    assert euler_phi(6) == 2
    assert euler_phi(12) == 4
    with pytest.raises(ValueError):
        euler_phi(0)


@given(st.integers(min_value=1, max_value=2000))
def test_euler_phi_matches_gcd_count(n):
    assert euler_phi(n) == phi_by_gcd(n)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["Z7", "Z12", "D3", "D5", "Q8", "E(2,2)", "Z3xZ3", "S3"]))
def test_inverse_roundtrip(text):
    G = grp(text)
    for a in G.elements():
        assert G.mul(a, G.inv(a)) == 0
        assert G.mul(G.inv(a), a) == 0
