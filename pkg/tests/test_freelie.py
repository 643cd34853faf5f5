import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartanforge import freelie
from cartanforge.freelie import BracketWord, br, gen
from cartanforge.linalg import rank


def words(max_leaves=6):
    return st.recursive(
        st.sampled_from([gen(1), gen(2)]),
        lambda children: st.builds(br, children, children),
        max_leaves=max_leaves,
    )


def test_witt_dimensions():
    assert [freelie.graded_dimension(n) for n in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]


@pytest.mark.parametrize("length", range(1, 8))
def test_expansion_ranks_match_witt(length):
    expected = freelie.graded_dimension(length)
    assert freelie.relation_rank(freelie.all_simple_words(length))[0] == expected
    assert freelie.relation_rank(freelie.lyndon_basis(length))[0] == expected


def test_known_relations_expand_to_zero():
    assert freelie.is_relation(freelie.RELATION_LENGTH4)
    for rel in freelie.RELATIONS_LENGTH5:
        assert freelie.is_relation(rel)
    for rel in freelie.RELATIONS_LENGTH6.values():
        assert freelie.is_relation(rel)


def test_length6_kernel_is_spanned_by_the_three_relations():
    family = freelie.simple_word_family(6)
    assert len(family) == 12
    r, kernel = freelie.relation_rank(family)
    assert (r, len(kernel)) == (9, 3)
    vectors = [freelie.relation_vector(rel, family) for rel in freelie.RELATIONS_LENGTH6.values()]
    assert rank(vectors) == 3
    assert rank(kernel + vectors) == 3


def test_parse_errors():
    with pytest.raises(freelie.ParseError):
        BracketWord.parse("[h1,h3]")
    with pytest.raises(freelie.ParseError):
        BracketWord.parse("[h1,h2")


@given(words())
def test_parse_round_trip(word):
    assert BracketWord.parse(str(word)) == word


@given(words(4), words(4))
def test_antisymmetry(u, v):
    assert freelie.is_relation([(1, br(u, v)), (1, br(v, u))])


@given(words(3), words(3), words(3))
def test_jacobi(u, v, w):
    assert freelie.is_relation([(1, br(u, br(v, w))), (1, br(v, br(w, u))), (1, br(w, br(u, v)))])


@given(words())
def test_expansion_is_homogeneous(word):
    assert all(len(m) == word.length for m in freelie.expand_word(word))
