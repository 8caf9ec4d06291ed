import pytest

from relend import groups as G


@pytest.mark.parametrize("g", [G.cyclic(4), G.klein(), G.symmetric(3), G.dihedral(4), G.quaternion(),
                               G.alternating4(), G.symmetric(4)])
def test_builtin_groups_are_groups(g):
    n = g.order
    assert all(g.table[g.identity][x] == x for x in range(n))
    assert all(g.table[x][g.inverse[x]] == g.identity for x in range(n))
    for name, elems in g.subgroups.items():
        g.check_subgroup(g.indices(elems))


def test_orders():
    assert [G.cyclic(3).order, G.symmetric(3).order, G.dihedral(4).order, G.symmetric(4).order] == [3, 6, 8, 24]


def test_non_associative_table_rejected():
    with pytest.raises(G.NotAGroup):
        G.Group.from_table(["e", "a", "b"], [[0, 1, 2], [1, 0, 0], [2, 2, 0]])


def test_missing_identity_rejected():
    with pytest.raises(G.NotAGroup):
        G.Group.from_table(["a", "b"], [[1, 1], [1, 1]])


def test_parse_subset_forms():
    s3 = G.symmetric(3)
    assert s3.parse_subset("A3") == s3.indices(["e", "(123)", "(132)"])
    assert s3.parse_subset("{e,(12)}") == s3.indices(["e", "(12)"])
    assert s3.parse_subset("{e}") == s3.indices(["e"])
    assert s3.parse_subset("G") == frozenset(range(6))
    with pytest.raises(KeyError):
        s3.parse_subset("{e,(45)}")


def test_normality():
    s3 = G.symmetric(3)
    s3.check_normal(s3.parse_subset("A3"))
    with pytest.raises(G.NotNormal):
        s3.check_normal(s3.parse_subset("{e,(12)}"))
    with pytest.raises(G.NotSubgroup):
        s3.check_subgroup(s3.parse_subset("{e,(12),(13)}"))


def test_quotient_s3_by_a3_is_c2():
    s3 = G.symmetric(3)
    q, where = s3.quotient(s3.parse_subset("A3"))
    assert q.order == 2
    # coset oracle: transpositions land in the non-identity coset
    for name in ("(12)", "(13)", "(23)"):
        assert where[s3.index(name)] != where[s3.identity]
    for name in ("(123)", "(132)"):
        assert where[s3.index(name)] == where[s3.identity]


def test_direct_product_names_parse():
    g = G.direct_product(G.cyclic(2), G.cyclic(2))
    assert g.order == 4
    assert g.parse_subset("{(e|e),(r|e)}") == g.indices(["(e|e)", "(r|e)"])
