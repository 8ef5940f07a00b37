import pytest
from hypothesis import given
from hypothesis import strategies as st

from charcod.perm import OrderCapExceeded
from charcod.structure import NotPrime, frobenius_structure, is_abelian
from charcod.zoo import (
    BadAction,
    GroupRecipe,
    ParseError,
    alternating,
    cyclic,
    default_corpus_text,
    dihedral,
    direct_product,
    elementary_abelian,
    load_corpus,
    load_recipes,
    parse_corpus,
    parse_group,
    quaternion8,
    semidirect_cyclic,
    serialize_corpus,
    symmetric,
)


@pytest.mark.parametrize("G,order", [
    (cyclic(1), 1), (cyclic(12), 12), (elementary_abelian(3, 3), 27), (dihedral(1), 2),
    (dihedral(2), 4), (dihedral(7), 14), (quaternion8(), 8), (symmetric(5), 120),
    (alternating(6), 360), (direct_product(cyclic(2), cyclic(3)), 6),
])
def test_constructor_orders(G, order):
    assert G.order == order


def test_constructor_examples():
    E = elementary_abelian(2, 2)
    assert E.order == 4 and E.exponent == 2
    K, _ = frobenius_structure(dihedral(5))
    assert K.order == 5
    C = direct_product(cyclic(2), cyclic(3))
    assert C.exponent == 6 and is_abelian(C)
    assert not is_abelian(quaternion8())


def test_constructor_errors():
    with pytest.raises(NotPrime):
        elementary_abelian(4, 2)
    with pytest.raises(OrderCapExceeded):
        cyclic(30000)
    with pytest.raises(BadAction):
        semidirect_cyclic(2, 7, 3)  # 3^2 = 9 != 1 mod 7
    with pytest.raises(BadAction):
        semidirect_cyclic(2, 6, 2)


def test_semidirect_examples():
    G = semidirect_cyclic(2, 3, 2)
    assert G.order == 6 and sorted(G.class_sizes) == [1, 2, 3]
    G = semidirect_cyclic(6, 91, 17)
    assert G.order == 546
    assert pow(17, 6, 91) == 1 and all(pow(17, t, 7) != 1 and pow(17, t, 13) != 1 for t in range(1, 6))
    G = semidirect_cyclic(3, 7, 2)
    assert G.order == 21 and not is_abelian(G)


@given(st.sampled_from([(2, 5, 4), (4, 5, 2), (3, 7, 2), (6, 7, 3), (2, 9, 8), (3, 9, 4), (2, 8, 3)]))
def test_semidirect_order(args):
    m, n, _ = args
    assert semidirect_cyclic(*args).order == m * n


def test_parse_examples():
    r = parse_group("degree 3; gens (1 2 3), (1 2)")
    assert r.kind == "raw" and r.build().order == 6
    assert parse_group("degree 2; gens").build().order == 1
    assert parse_group("degree 4; gens (1 2 3 4)").build().order == 4
    assert parse_group("direct_product(cyclic(2), symmetric(3))").build().order == 12


@pytest.mark.parametrize("text,col", [
    ("degree 3; gens (1 2 4)", 22), ("cyclic(2", 9), ("foo(3)", 1), ("cyclic(2, 3)", 13),
])
def test_parse_errors(text, col):
    with pytest.raises(ParseError) as exc:
        parse_group(text)
    assert exc.value.column == col


def test_corpus_errors():
    with pytest.raises(ParseError) as exc:
        parse_corpus("codegree-corpus 1\nA = cyclic(2)\nA = cyclic(3)\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_corpus("A = cyclic(2)\n")
    assert parse_corpus("# nothing\n") == []


recipes = st.recursive(
    st.one_of(
        st.integers(1, 12).map(lambda n: GroupRecipe("cyclic", (n,))),
        st.integers(1, 8).map(lambda n: GroupRecipe("dihedral", (n,))),
        st.integers(3, 5).map(lambda n: GroupRecipe("symmetric", (n,))),
        st.just(GroupRecipe("raw", (), (4, (((0, 1, 2),), ((0, 1), (2, 3)))))),
    ),
    lambda inner: st.tuples(inner, inner).map(lambda ab: GroupRecipe("direct_product", ab)),
    max_leaves=3,
)


@given(recipes)
def test_recipe_roundtrip(r):
    assert parse_group(r.serialize()) == r


def test_corpus_roundtrip():
    rs = load_recipes()
    assert parse_corpus(serialize_corpus(rs)) == rs


def test_default_corpus_contents():
    rs = load_recipes()
    labels = [r.label for r in rs]
    assert len(labels) == len(set(labels)) >= 60
    groups = dict(load_corpus())
    orders = {lab: G.order for lab, G in groups.items()}
    assert all(o <= 2000 for o in orders.values())
    for n in range(1, 65):
        assert orders[f"C{n}"] == n
    for n in range(3, 33):
        assert orders[f"D{2 * n}"] == 2 * n
    for lab in ["Q8", "S3", "S4", "S5", "A4", "A5", "A4raw", "SD_6_91_17", "SD_2_9_8", "SD_2_49_48"]:
        assert lab in orders
    assert orders["A4raw"] == 12
    assert "codegree-corpus 1" in default_corpus_text()
