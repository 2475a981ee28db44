"""Matrix text format: token grammar, round trips, failure modes."""

import math

import numpy as np
import pytest

from kronquot import (
    Matrix,
    MatrixFormatError,
    NonFiniteEntryError,
    format_matrix,
    format_scalar,
    parse_matrix,
    parse_scalar,
    read_matrix,
    write_matrix,
)
from kronquot.matfile import from_line, to_line


@pytest.mark.parametrize("token,value", [
    ("1.5", 1.5),
    ("-2e-3", -2e-3),
    ("+0.25", 0.25),
    ("1.5+2.25i", 1.5 + 2.25j),
    ("1.5-2.25i", 1.5 - 2.25j),
    ("2i", 2j),
    ("-3.5i", -3.5j),
    ("i", 1j),
    ("-i", -1j),
    ("1+i", 1 + 1j),
    ("1e-2-3e-4i", 1e-2 - 3e-4j),
    (".5i", 0.5j),
])
def test_parse_scalar(token, value):
    assert parse_scalar(token) == value


@pytest.mark.parametrize("token", [
    "1+2j", "(1+2i)", "nan", "inf", "-inf", "1e", "++1", "1 2", "", "2ii", "1.2.3",
    "i5", "1+2", "--1",
])
def test_parse_scalar_rejects(token):
    with pytest.raises(MatrixFormatError):
        parse_scalar(token)


def test_format_scalar_compact_forms():
    assert format_scalar(1.5) == "1.5"
    assert format_scalar(2j) == "2i"
    assert format_scalar(1.5 + 2.25j) == "1.5+2.25i"
    assert format_scalar(1.5 - 2.25j) == "1.5-2.25i"
    assert format_scalar(0.0) == "0"


def test_scalar_round_trip_preserves_bits():
    rng = np.random.default_rng(21)
    specials = [0.0, -0.0, 1e-300, -1e-300, 0.1, 1 / 3, 2**-1074, 1.7976931348623157e308]
    values = [complex(a, b) for a in specials for b in specials]
    values += [complex(x, y) for x, y in rng.uniform(-1e5, 1e5, (50, 2))]
    for z in values:
        back = parse_scalar(format_scalar(z))
        assert math.copysign(1.0, back.real) == math.copysign(1.0, z.real)
        assert math.copysign(1.0, back.imag) == math.copysign(1.0, z.imag)
        assert back == z or (back.real == z.real and back.imag == z.imag)


def test_matrix_round_trip_bit_exact():
    rng = np.random.default_rng(22)
    for _ in range(10):
        rows = int(rng.integers(1, 6))
        cols = int(rng.integers(1, 6))
        m = Matrix.from_array(rng.uniform(-10, 10, (rows, cols))
                              + 1j * rng.uniform(-10, 10, (rows, cols)))
        assert parse_matrix(format_matrix(m)) == m


def test_file_round_trip(tmp_path):
    m = Matrix.from_rows([[0.1, 2 + 3j], [-4j, 5]])
    path = tmp_path / "m.mat"
    write_matrix(path, m)
    assert read_matrix(path) == m
    # a second write produces identical bytes
    first = path.read_bytes()
    write_matrix(path, read_matrix(path))
    assert path.read_bytes() == first


def test_emits_17_significant_digits():
    text = format_matrix(Matrix.from_rows([[0.1]]))
    assert "0.10000000000000001" in text


def test_comments_and_blank_lines_skipped():
    text = "# header comment\n\n2 2\n1 2\n# between rows\n3 4\n# trailing\n"
    assert parse_matrix(text) == Matrix.from_rows([[1, 2], [3, 4]])


@pytest.mark.parametrize("text", [
    "",
    "# only a comment\n",
    "2\n1 2\n",
    "a b\n1 2\n",
    "0 2\n",
    "2 2\n1 2\n3\n",
    "2 2\n1 2\n",
    "2 2\n1 2\n3 4\n5 6\n",
    "1 1\nbogus\n",
])
def test_parse_matrix_rejects(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix(text)


def test_overflowing_literal_is_rejected_as_non_finite():
    with pytest.raises(NonFiniteEntryError):
        parse_matrix("1 1\n1e400\n")


def test_single_line_encoding_round_trip():
    m = Matrix.from_rows([[1, 2 + 0.5j], [3, -4]])
    line = to_line(m)
    assert "\n" not in line
    assert from_line(line) == m
