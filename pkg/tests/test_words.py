import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strandgroups.errors import (
    GeneratorIndexError,
    GeometryError,
    UnsupportedFamilyError,
    WordSyntaxError,
)
from strandgroups.words import (
    Letter,
    Presentation,
    Word,
    compose,
    cycle_notation,
    free_reduce,
    identity_permutation,
    parse_word,
    permutation_image,
    sigma_word_for_permutation,
    word_to_text,
)


S3 = Presentation("S", 3)
T2R = Presentation("T", 2, "ring")


def test_parse_basic():
    w = parse_word("s1 s2 s1", S3)
    assert [l.index for l in w] == [1, 2, 1]
    assert all(l.kind == "s" for l in w)


def test_parse_ring_letters():
    w = parse_word("t1 s1", T2R)
    assert w.letters == (Letter("t", 1), Letter("s", 1))


def test_parse_expands_exponents():
    p = Presentation("S", 3, "ring")
    w = parse_word("t1^-2 z s2^3", p)
    assert w.letters == (
        Letter("t", 1, -1),
        Letter("t", 1, -1),
        Letter("z"),
        Letter("s", 2),
        Letter("s", 2),
        Letter("s", 2),
    )


def test_parse_is_whitespace_insensitive():
    assert parse_word("  s1\ts2\n s1 ", S3) == parse_word("s1 s2 s1", S3)
    assert parse_word("s1s2", S3) == parse_word("s1 s2", S3)


def test_index_out_of_range():
    with pytest.raises(GeneratorIndexError):
        parse_word("s3", S3)
    with pytest.raises(GeneratorIndexError):
        parse_word("s0", S3)
    with pytest.raises(GeneratorIndexError):
        parse_word("t3", T2R)


def test_ring_letters_rejected_on_interval():
    with pytest.raises(GeometryError):
        parse_word("t1", S3)
    with pytest.raises(GeometryError):
        parse_word("z", S3)


@pytest.mark.parametrize(
    "text, offset",
    [("s1 x2", 3), ("s1 s2^", 5), ("s1^0", 3), ("s1^2^3", 4), ("é s1", 0), ("s1 é", 3)],
)
def test_syntax_errors_carry_byte_offsets(text, offset):
    with pytest.raises(WordSyntaxError) as info:
        parse_word(text, S3)
    assert info.value.offset == offset
    assert info.value.to_dict()["offset"] == offset


def test_family_b_rejected():
    with pytest.raises(UnsupportedFamilyError, match="braid"):
        Presentation("B", 3)


def test_presentation_validation():
    with pytest.raises(GeneratorIndexError):
        Presentation("S", 1)
    with pytest.raises(GeometryError):
        Presentation("S", 3, "torus")


def test_sigma_exponent_normalized():
    assert Letter("s", 1, -1) == Letter("s", 1)
    assert str(parse_word("s1^-1", S3)) == "s1"


def test_free_reduce_examples():
    assert free_reduce(parse_word("s1 s1 s2", S3)) == parse_word("s2", S3)
    assert free_reduce(Word(S3)) == Word(S3)
    assert free_reduce(parse_word("s1 s2 s2 s1", S3)) == Word(S3)
    p = Presentation("S", 3, "ring")
    assert free_reduce(parse_word("t1 z z^-1 t1^-1 s2", p)) == parse_word("s2", p)


def test_permutation_image_examples():
    assert permutation_image(parse_word("s1", S3)) == (2, 1, 3)
    assert permutation_image(parse_word("s1 s2 s1", S3)) == (3, 2, 1)
    assert cycle_notation(permutation_image(parse_word("s1 s2 s1", S3))) == "(1 3)"
    p4 = Presentation("S", 4)
    perm = permutation_image(parse_word("s1 s2 s3", p4))
    assert perm == (2, 3, 4, 1)
    assert perm[4 - 1] == 1
    assert cycle_notation(perm) == "(1 2 3 4)"


def test_translation_and_shift_images():
    p = Presentation("S", 4, "ring")
    assert permutation_image(parse_word("t2 t3^-1", p)) == identity_permutation(4)
    # z is the defined element t1 s1 s2 s3
    assert permutation_image(parse_word("z", p)) == permutation_image(parse_word("t1 s1 s2 s3", p))
    assert permutation_image(parse_word("z z^-1", p)) == identity_permutation(4)


def test_sigma_word_for_permutation_is_shortlex():
    assert sigma_word_for_permutation((3, 2, 1)) == (1, 2, 1)
    assert sigma_word_for_permutation((1, 2, 3)) == ()
    assert sigma_word_for_permutation((2, 1, 4, 3)) == (1, 3)


FAMILIES = st.sampled_from("STFW")


@st.composite
def words(draw, geometry=None):
    family = draw(FAMILIES)
    n = draw(st.integers(2, 6))
    geom = geometry or draw(st.sampled_from(["interval", "ring"]))
    p = Presentation(family, n, geom)
    kinds = ["s"] + (["t", "z"] if geom == "ring" else [])
    letters = []
    for _ in range(draw(st.integers(0, 64))):
        kind = draw(st.sampled_from(kinds))
        if kind == "s":
            letters.append(Letter("s", draw(st.integers(1, n - 1))))
        elif kind == "t":
            letters.append(Letter("t", draw(st.integers(1, n)), draw(st.sampled_from([1, -1]))))
        else:
            letters.append(Letter("z", 0, draw(st.sampled_from([1, -1]))))
    return Word(p, tuple(letters))


@settings(max_examples=300, deadline=None)
@given(words())
def test_round_trip(word):
    assert parse_word(word_to_text(word), word.presentation) == word


@settings(max_examples=300, deadline=None)
@given(words())
def test_free_reduce_idempotent_and_shrinking(word):
    once = free_reduce(word)
    assert free_reduce(once) == once
    assert len(once) <= len(word)


@settings(max_examples=300, deadline=None)
@given(words(), st.data())
def test_permutation_image_is_homomorphism(u, data):
    letters = data.draw(st.lists(st.sampled_from(u.presentation.generators()), max_size=20))
    v = Word(u.presentation, tuple(letters))
    assert permutation_image(u * v) == compose(permutation_image(u), permutation_image(v))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_transpositions_are_involutions(n):
    p = Presentation("S", n)
    for i in range(1, n):
        img = permutation_image(Word.from_sigmas(p, [i]))
        assert compose(img, img) == identity_permutation(n)
