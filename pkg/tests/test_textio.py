import random

import pytest
from hypothesis import given, settings, strategies as st

from gdinverse import GF, QQ, Matrix, ParseError, format_matrix, parse_matrices, parse_matrix
from gdinverse.construct import random_matrix


def test_golden_format():
    M = Matrix(QQ, [[1, -2], [0, 1]]).scaled(QQ.parse("1/2"))
    assert format_matrix(M) == "field Q\nrows 2 cols 2\n1/2 -1\n0 1/2\n"
    assert format_matrix(Matrix(GF(5), [[4]]), "t") == "# t\nfield GF 5\nrows 1 cols 1\n4\n"


def test_header_optional_and_comments():
    text = "# comment\n\nrows 1 cols 2\n  3   -1/3 \n"
    M = parse_matrix(text)
    assert M.field is QQ and M.rows() == ((3, QQ.parse("-1/3")),)


def test_gf_entries_reduced():
    M = parse_matrix("field GF 7\nrows 1 cols 3\n-1 8 1/2\n")
    assert M.rows() == ((6, 1, 4),)


def test_field_override():
    M = parse_matrix("field Q\nrows 1 cols 1\n5\n", GF(3))
    assert M.field is GF(3) and M[0, 0] == 2


def test_stream_of_matrices():
    text = format_matrix(Matrix(QQ, [[1]])) + format_matrix(Matrix(GF(2), [[1, 0]]))
    a, b = parse_matrices(text)
    assert a.shape == (1, 1) and b.field is GF(2)
    with pytest.raises(ParseError):
        parse_matrix(text)


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("rows 2 cols 2\n1 2\n3 x\n", 3, 3),
        ("rows 2 cols 2\n1 2\n3\n", 3, 2),
        ("rows 2 cols 2\n1 2 3\n", 2, 5),
        ("rows 2 cols 2\n1 2\n", 3, 1),
        ("field GF 4\nrows 1 cols 1\n1\n", 1, 7),
        ("field Q\ncols 1 rows 1\n1\n", 2, 1),
        ("rows 1 cols 1\n1/0\n", 2, 1),
    ],
)
def test_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_matrix(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([QQ, GF(2), GF(7), GF(65521)]), st.integers(0, 4), st.integers(0, 4), st.integers(0, 2**32))
def test_round_trip(f, nr, nc, seed):
    rng = random.Random(seed)
    M = random_matrix(f, nr, nc, rng, bound=50)
    if not f.is_finite and nr and nc:
        M = M.scaled(f.parse(f"1/{rng.randint(1, 9)}"))
    text = format_matrix(M)
    assert parse_matrix(text) == M
    assert format_matrix(parse_matrix(text)) == text
