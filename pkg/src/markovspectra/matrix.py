"""Dense matrix carrier and its plain-text fixture format.

A :class:`Matrix` is a validated, immutable wrapper around a 2-D numpy
array (float64 or complex128).  The text format is line-oriented:
first line ``"rows cols"``, then one line per row of whitespace-separated
entries.  Complex entries are written as a single ``a+bi`` token.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Matrix", "parse_scalar_token", "format_scalar"]


def parse_scalar_token(token: str) -> complex | float:
    """Parse one matrix entry: a decimal literal or an ``a+bi`` token."""
    token = token.strip()
    if not token.endswith("i"):
        return float(token)
    body = token[:-1]
    # Split at the last +/- that is not part of an exponent and not leading.
    split = -1
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            split = k
            break
    if split < 0:  # bare imaginary like "2i"
        return complex(0.0, float(body if body not in ("", "+", "-") else body + "1"))
    re_part, im_part = body[:split], body[split:]
    if im_part in ("+", "-"):
        im_part += "1"
    return complex(float(re_part), float(im_part))


def format_scalar(value) -> str:
    if isinstance(value, complex) or np.iscomplexobj(value):
        v = complex(value)
        return "%.17g%+.17gi" % (v.real, v.imag)
    return "%.17g" % float(value)


class Matrix:
    """Dense rectangular matrix with finite real or complex entries."""

    __slots__ = ("_data",)

    def __init__(self, entries):
        data = np.array(entries)
        if data.ndim != 2:
            raise ValueError(f"matrix must be 2-D, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError(f"matrix must have at least one row and column, got {data.shape}")
        if np.iscomplexobj(data):
            data = data.astype(np.complex128)
        else:
            data = data.astype(np.float64)
        if not np.all(np.isfinite(data)):
            raise ValueError("matrix entries must be finite")
        data.setflags(write=False)
        self._data = data

    @property
    def data(self) -> np.ndarray:
        """Read-only ndarray view of the entries."""
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def is_complex(self) -> bool:
        return self._data.dtype == np.complex128

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "Matrix":
        return Matrix(self._data.T)

    def conj_transpose(self) -> "Matrix":
        return Matrix(self._data.conj().T)

    def frobenius_norm(self) -> float:
        return float(np.sqrt((abs(self._data) ** 2).sum()))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(np.zeros((rows, cols)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix(self._data @ other._data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self._data.shape == other._data.shape
            and bool(np.array_equal(self._data, other._data))
        )

    def __hash__(self):
        return hash((self._data.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        kind = "complex" if self.is_complex else "real"
        return f"Matrix({self.rows}x{self.cols}, {kind})"

    # -- text fixture format ------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for row in self._data:
            lines.append(" ".join(format_scalar(v) for v in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        header = lines[0].split()
        if len(header) != 2:
            raise ValueError(f"bad matrix header {lines[0]!r}, expected 'rows cols'")
        rows, cols = int(header[0]), int(header[1])
        if len(lines) - 1 != rows:
            raise ValueError(f"expected {rows} data rows, found {len(lines) - 1}")
        parsed = []
        for ln in lines[1:]:
            tokens = ln.split()
            if len(tokens) != cols:
                raise ValueError(f"expected {cols} entries per row, found {len(tokens)}")
            parsed.append([parse_scalar_token(t) for t in tokens])
        any_complex = any(isinstance(v, complex) for row in parsed for v in row)
        dtype = np.complex128 if any_complex else np.float64
        return cls(np.array(parsed, dtype=dtype))
