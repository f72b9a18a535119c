import numpy as np
import pytest

from markovspectra.matrix import Matrix, format_scalar, parse_scalar_token


def test_construction_and_shape():
    m = Matrix([[1, 2], [3, 4], [5, 6]])
    assert (m.rows, m.cols) == (3, 2)
    assert not m.is_complex
    assert m.data.dtype == np.float64


def test_rejects_empty_and_nonfinite():
    with pytest.raises(ValueError):
        Matrix(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        Matrix([[1.0, float("nan")]])
    with pytest.raises(ValueError):
        Matrix([[float("inf")]])
    with pytest.raises(ValueError):
        Matrix([1.0, 2.0])


def test_data_is_read_only():
    m = Matrix([[1.0]])
    with pytest.raises(ValueError):
        m.data[0, 0] = 2.0


def test_complex_promotion():
    m = Matrix([[1 + 2j]])
    assert m.is_complex
    assert m.data.dtype == np.complex128


@pytest.mark.parametrize(
    "token,expected",
    [
        ("1.5", 1.5),
        ("-2e-3", -0.002),
        ("1+2i", 1 + 2j),
        ("-1.5-0.25i", -1.5 - 0.25j),
        ("3e-2+1e-5i", 0.03 + 1e-5j),
        ("2i", 2j),
        ("1e2+1e2i", 100 + 100j),
    ],
)
def test_parse_scalar_token(token, expected):
    assert parse_scalar_token(token) == expected


def test_format_parse_roundtrip_scalar():
    for value in (1.0, -0.3333333333333333, 1e-17, 2.5 + 1e-8j, -1 - 1j):
        token = format_scalar(value)
        back = parse_scalar_token(token)
        assert complex(back) == pytest.approx(complex(value), rel=0, abs=0)


def test_text_roundtrip_real():
    m = Matrix([[1.25, -3.5], [0.0, 7.125]])
    again = Matrix.from_text(m.to_text())
    assert again == m


def test_text_roundtrip_complex():
    m = Matrix([[1 + 2j, -0.5 - 0.125j], [0j, 3 + 0j]])
    again = Matrix.from_text(m.to_text())
    assert again.is_complex
    assert np.array_equal(again.data, m.data)


def test_text_header_and_row_validation():
    with pytest.raises(ValueError):
        Matrix.from_text("")
    with pytest.raises(ValueError):
        Matrix.from_text("2\n1 2\n3 4")
    with pytest.raises(ValueError):
        Matrix.from_text("2 2\n1 2\n")
    with pytest.raises(ValueError):
        Matrix.from_text("1 2\n1 2 3\n")


def test_frobenius_and_transpose():
    m = Matrix([[3.0, 0.0], [4.0, 0.0]])
    assert m.frobenius_norm() == pytest.approx(5.0)
    assert m.transpose().rows == 2
    c = Matrix([[1j]])
    assert c.conj_transpose().data[0, 0] == -1j
