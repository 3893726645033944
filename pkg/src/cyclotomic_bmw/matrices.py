"""Small dense matrices over a field of rational functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from cyclotomic_bmw.laurent import LaurentRing
from cyclotomic_bmw.ratfunc import DivisionByZero, RatFunc


class SingularMatrix(DivisionByZero):
    pass


@dataclass(frozen=True)
class MatrixRF:
    """A square matrix; rows[i][j] is the coefficient of e_i in the image of e_j."""

    rows: tuple[tuple[RatFunc, ...], ...]

    def __post_init__(self):
        size = len(self.rows)
        if any(len(row) != size for row in self.rows):
            raise ValueError("MatrixRF must be square.")

    @classmethod
    def from_function(cls, size: int, entry: Callable[[int, int], RatFunc]):
        return cls(tuple(tuple(entry(i, j) for j in range(size)) for i in range(size)))

    @classmethod
    def zeros(cls, ring: LaurentRing, size: int) -> MatrixRF:
        zero = RatFunc(ring.zero())
        return cls.from_function(size, lambda i, j: zero)

    @classmethod
    def identity(cls, ring: LaurentRing, size: int) -> MatrixRF:
        zero, one = RatFunc(ring.zero()), RatFunc(ring.one())
        return cls.from_function(size, lambda i, j: one if i == j else zero)

    @classmethod
    def diag(cls, entries: Sequence[RatFunc]) -> MatrixRF:
        zero = entries[0] * 0
        return cls.from_function(
            len(entries), lambda i, j: entries[i] if i == j else zero
        )

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def ring(self) -> LaurentRing:
        return self.rows[0][0].ring

    def __getitem__(self, index: tuple[int, int]) -> RatFunc:
        i, j = index
        return self.rows[i][j]

    def map(self, f: Callable[[RatFunc], RatFunc]) -> MatrixRF:
        return MatrixRF(tuple(tuple(f(x) for x in row) for row in self.rows))

    def __add__(self, other: MatrixRF) -> MatrixRF:
        return MatrixRF.from_function(
            self.size, lambda i, j: self.rows[i][j] + other.rows[i][j]
        )

    def __sub__(self, other: MatrixRF) -> MatrixRF:
        return MatrixRF.from_function(
            self.size, lambda i, j: self.rows[i][j] - other.rows[i][j]
        )

    def __neg__(self) -> MatrixRF:
        return self.map(lambda x: -x)

    def __mul__(self, scalar) -> MatrixRF:
        """Multiply by a scalar; use @ for matrix products."""
        return self.map(lambda x: (x * scalar).cancel())

    __rmul__ = __mul__

    def __matmul__(self, other: MatrixRF) -> MatrixRF:
        n = self.size

        def entry(i, j):
            total = self.rows[i][0] * other.rows[0][j]
            for k in range(1, n):
                total = total + self.rows[i][k] * other.rows[k][j]
            return total.cancel()

        return MatrixRF.from_function(n, entry)

    def __pow__(self, k: int) -> MatrixRF:
        if k < 0:
            return self.inverse() ** (-k)
        result = MatrixRF.identity(self.ring, self.size)
        for _ in range(k):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    def first_nonzero(self) -> tuple[int, int, RatFunc] | None:
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                if not x.is_zero():
                    return i, j, x
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixRF):
            return NotImplemented
        return self.size == other.size and (self - other).is_zero()

    def det(self) -> RatFunc:
        """Determinant by Gaussian elimination."""
        n = self.size
        a = [list(row) for row in self.rows]
        det = RatFunc(self.ring.one())
        for col in range(n):
            pivot = next((i for i in range(col, n) if not a[i][col].is_zero()), None)
            if pivot is None:
                return RatFunc(self.ring.zero())
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            inv = a[col][col].inverse()
            det = (det * a[col][col]).cancel()
            for i in range(col + 1, n):
                if a[i][col].is_zero():
                    continue
                factor = (a[i][col] * inv).cancel()
                a[i] = [
                    (x - factor * y).cancel() if k >= col else x
                    for k, (x, y) in enumerate(zip(a[i], a[col]))
                ]
        return det

    def inverse(self) -> MatrixRF:
        """Inverse by Gauss-Jordan elimination.

        Raises:
            SingularMatrix: the matrix is not invertible.
        """
        n = self.size
        identity = MatrixRF.identity(self.ring, n)
        a = [list(row) + list(identity.rows[i]) for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((i for i in range(col, n) if not a[i][col].is_zero()), None)
            if pivot is None:
                raise SingularMatrix("Matrix is singular.")
            a[col], a[pivot] = a[pivot], a[col]
            inv = a[col][col].inverse()
            a[col] = [(x * inv).cancel() for x in a[col]]
            for i in range(n):
                if i != col and not a[i][col].is_zero():
                    factor = a[i][col]
                    a[i] = [(x - factor * y).cancel() for x, y in zip(a[i], a[col])]
        return MatrixRF(tuple(tuple(row[n:]) for row in a))

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)
