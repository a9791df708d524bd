"""Exact rational scalars, vectors, and matrices.

Membership and adjacency predicates in this package sit exactly on
boundaries (a sup-norm distance equal to 1, a coordinate equal to a cube
edge), so floating point is disqualifying.  Scalars are
:class:`fractions.Fraction` -- arbitrary-precision, always stored reduced,
denominator positive -- and vectors/matrices are immutable tuples of them.
Decimal strings and floats are converted to exact rationals on ingestion
(every binary float is rational); nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

RationalLike = Union[Fraction, int, float, str]


class DimensionMismatchError(ValueError):
    """Operands have incompatible dimensions."""


class NotUnitriangularError(ValueError):
    """Matrix is not upper triangular with unit diagonal."""


def rat(num: int, den: int = 1) -> Fraction:
    """Exact rational num/den, reduced, sign carried by the numerator."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(num, den)


def to_rational(value: RationalLike) -> Fraction:
    """Convert int/str/float to an exact Fraction.

    Strings may be "p/q", "p", or decimal ("0.25").  Floats convert to the
    exact binary rational they represent.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    """Text form "p/q", or "p" when the value is an integer."""
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QVector:
    """Immutable vector of exact rationals, dimension >= 1."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[RationalLike]):
        self.coords: tuple[Fraction, ...] = tuple(to_rational(c) for c in coords)
        if not self.coords:
            raise ValueError("vector must have dimension >= 1")

    @classmethod
    def parse(cls, text: str) -> "QVector":
        """Parse a comma-separated list of rationals/decimals."""
        parts = [p.strip() for p in text.split(",")]
        return cls(parts)

    @classmethod
    def zero(cls, d: int) -> "QVector":
        return cls([Fraction(0)] * d)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __add__(self, other: "QVector") -> "QVector":
        _check_dim(self, other)
        return QVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "QVector") -> "QVector":
        _check_dim(self, other)
        return QVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "QVector":
        return QVector(-a for a in self.coords)

    def scale(self, factor: RationalLike) -> "QVector":
        f = to_rational(factor)
        return QVector(f * a for a in self.coords)

    def shift(self, offset: RationalLike) -> "QVector":
        """Add the same scalar to every coordinate."""
        f = to_rational(offset)
        return QVector(a + f for a in self.coords)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QVector) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"QVector(({', '.join(format_rational(c) for c in self.coords)}))"

    def text(self) -> str:
        return ",".join(format_rational(c) for c in self.coords)


def _check_dim(u: QVector, v: QVector) -> None:
    if u.dim != v.dim:
        raise DimensionMismatchError(f"dimension mismatch: {u.dim} vs {v.dim}")


class QMatrix:
    """Immutable square matrix of exact rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[RationalLike]]):
        self.rows: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(to_rational(x) for x in row) for row in rows
        )
        d = len(self.rows)
        if d == 0:
            raise ValueError("matrix must have dimension >= 1")
        for row in self.rows:
            if len(row) != d:
                raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, d: int) -> "QMatrix":
        return cls(
            [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
        )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def column(self, j: int) -> QVector:
        return QVector(row[j] for row in self.rows)

    def is_upper_unitriangular(self) -> bool:
        for i, row in enumerate(self.rows):
            if row[i] != 1:
                return False
            if any(row[j] != 0 for j in range(i)):
                return False
        return True

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_rational(x) for x in row) for row in self.rows
        )
        return f"QMatrix([{body}])"


def mat_vec_mul(matrix: QMatrix, vec: Union[QVector, Sequence[int]]) -> QVector:
    """Exact matrix-vector product."""
    coords = tuple(vec)
    if len(coords) != matrix.dim:
        raise DimensionMismatchError(
            f"dimension mismatch: matrix {matrix.dim}, vector {len(coords)}"
        )
    return QVector(
        sum((row[j] * coords[j] for j in range(matrix.dim)), Fraction(0))
        for row in matrix.rows
    )


def mat_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")
    d = a.dim
    return QMatrix(
        [
            [sum((a.rows[i][k] * b.rows[k][j] for k in range(d)), Fraction(0)) for j in range(d)]
            for i in range(d)
        ]
    )


def inverse_upper_unitriangular(matrix: QMatrix) -> QMatrix:
    """Exact inverse of an upper triangular matrix with unit diagonal.

    Back substitution column by column; the product with the input is the
    identity exactly.
    """
    if not matrix.is_upper_unitriangular():
        raise NotUnitriangularError("matrix is not upper unitriangular")
    d = matrix.dim
    inv = [[Fraction(0)] * d for _ in range(d)]
    for j in range(d):
        col = [Fraction(0)] * d
        col[j] = Fraction(1)
        for i in range(j - 1, -1, -1):
            col[i] = -sum(
                (matrix.rows[i][k] * col[k] for k in range(i + 1, j + 1)),
                Fraction(0),
            )
        for i in range(d):
            inv[i][j] = col[i]
    return QMatrix(inv)


def linf_norm(vec: QVector) -> Fraction:
    return max(abs(c) for c in vec.coords)


def linf_dist(u: QVector, v: QVector) -> Fraction:
    """Max absolute coordinate difference, exact."""
    _check_dim(u, v)
    return max(abs(a - b) for a, b in zip(u.coords, v.coords))
