"""Reclusive matrices and the rounding structure they induce.

A reclusive matrix is upper triangular with unit diagonal whose entries in
each row are strictly decreasing and positive after the diagonal.  Such a
matrix generates a lattice of unit-cube positions whose adjacency structure
is characterized by weak-alt-1 difference vectors, admits an explicit
(d+1)-coloring, and carries a positive "reclusive distance" that separates
non-adjacent cubes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .exact import (
    DimensionMismatchError,
    QMatrix,
    QVector,
    inverse_upper_unitriangular,
    linf_norm,
    mat_vec_mul,
)


class NotReclusiveError(ValueError):
    """Matrix violates a clause of the reclusive-matrix definition.

    `clause` is one of "lower-triangle", "diagonal", "post-diagonal";
    `indices` is the offending (row, column) pair, 0-based.
    """

    def __init__(self, clause: str, indices: tuple[int, int], message: str):
        super().__init__(message)
        self.clause = clause
        self.indices = indices


@dataclass(frozen=True)
class WeakAlt1Verdict:
    """Outcome of the weak-alt-1 test; witness present iff the test failed."""

    is_weak_alt_1: bool
    witness_index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.is_weak_alt_1


IntVector = tuple[int, ...]


def _as_int_tuple(c: Union[QVector, Sequence[int]]) -> IntVector:
    out = []
    for i, value in enumerate(c):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"entry {i} is not an integer: {value}")
            out.append(value.numerator)
        elif isinstance(value, int):
            out.append(value)
        else:
            raise ValueError(f"entry {i} is not an integer: {value!r}")
    return tuple(out)


def is_weak_alt_one(c: Union[QVector, Sequence[int]]) -> WeakAlt1Verdict:
    """Test whether an integer sequence is weak-alt-1.

    True iff every entry is -1, 0, or 1 and the nonzero entries strictly
    alternate in sign.  All-zero and empty sequences qualify.  On failure the
    verdict carries the 0-based index of the first offending entry.
    """
    entries = _as_int_tuple(c)
    previous_sign = 0
    for i, value in enumerate(entries):
        if value not in (-1, 0, 1):
            return WeakAlt1Verdict(False, i)
        if value != 0:
            if value == previous_sign:
                return WeakAlt1Verdict(False, i)
            previous_sign = value
    return WeakAlt1Verdict(True, None)


def reclusive_distance(matrix: QMatrix) -> Fraction:
    """Minimum of the four entry-gap families governing cube separation.

    The families are: 1 itself; 1 - a for each post-diagonal entry a; each
    post-diagonal entry a; and the gap a - a' between two entries of the same
    row, left to right.  Empty families are skipped (min of the empty set is
    treated as infinite), so the result for a 1x1 matrix is 1.
    """
    d = matrix.dim
    best = Fraction(1)
    for k in range(d):
        row = matrix.rows[k]
        for j in range(k + 1, d):
            a = row[j]
            best = min(best, 1 - a, a)
            for j2 in range(j + 1, d):
                best = min(best, a - row[j2])
    return best


class ReclusiveMatrix:
    """Validated reclusive matrix with cached inverse and reclusive distance.

    Immutable after construction; build via :func:`validate_reclusive` or
    :func:`canonical_reclusive`.
    """

    __slots__ = ("matrix", "inverse", "delta", "d")

    def __init__(self, matrix: QMatrix, _validated: bool = False):
        if not _validated:
            _check_reclusive(matrix)
        self.matrix = matrix
        self.d = matrix.dim
        self.inverse = inverse_upper_unitriangular(matrix)
        self.delta = reclusive_distance(matrix)

    def entry(self, i: int, j: int) -> Fraction:
        return self.matrix.entry(i, j)

    def color(self, m: Union[QVector, Sequence[int]]) -> int:
        return member_color(self.d, m)

    def __repr__(self) -> str:
        return f"ReclusiveMatrix(d={self.d}, delta={self.delta})"


def _check_reclusive(matrix: QMatrix) -> None:
    d = matrix.dim
    for i in range(d):
        row = matrix.rows[i]
        for j in range(i):
            if row[j] != 0:
                raise NotReclusiveError(
                    "lower-triangle", (i, j),
                    f"entry ({i},{j}) below the diagonal is {row[j]}, expected 0",
                )
        if row[i] != 1:
            raise NotReclusiveError(
                "diagonal", (i, i),
                f"diagonal entry ({i},{i}) is {row[i]}, expected 1",
            )
        # Strict decrease from the diagonal rules out entries >= 1 as well.
        for j in range(i + 1, d):
            if row[j] <= 0:
                raise NotReclusiveError(
                    "post-diagonal", (i, j),
                    f"entry ({i},{j}) is {row[j]}, expected > 0",
                )
            if row[j] >= row[j - 1]:
                raise NotReclusiveError(
                    "post-diagonal", (i, j),
                    f"row {i} is not strictly decreasing at column {j}: "
                    f"{row[j - 1]} then {row[j]}",
                )


def validate_reclusive(matrix: QMatrix) -> ReclusiveMatrix:
    """Wrap a matrix after checking all three reclusive clauses.

    Raises :class:`NotReclusiveError` naming the violated clause and the
    offending indices.
    """
    _check_reclusive(matrix)
    return ReclusiveMatrix(matrix, _validated=True)


def canonical_reclusive(d: int, k: Optional[int] = None) -> ReclusiveMatrix:
    """The reclusive matrix with entry (d - j)/k in 0-based column j > row i.

    Every off-diagonal row reads (d-1)/k, (d-2)/k, ..., 1/k truncated to the
    columns right of the diagonal.  Requires k >= d, otherwise the first row
    would not be strictly decreasing below 1.  With k = d the reclusive
    distance is exactly 1/d.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if k is None:
        k = d
    if k < d:
        raise ValueError(
            f"canonical matrix needs k >= d (got d={d}, k={k}); "
            "smaller k breaks the strictly-decreasing-positive row clause"
        )
    rows = []
    for i in range(d):
        row = [Fraction(0)] * d
        row[i] = Fraction(1)
        for j in range(i + 1, d):
            row[j] = Fraction(d - j, k)  # 0-based j: (d - j + 1)/k in 1-based terms
        rows.append(row)
    return ReclusiveMatrix(QMatrix(rows), _validated=True)


def adjacency_by_difference(
    reclusive: ReclusiveMatrix, c: Union[QVector, Sequence[int]]
) -> bool:
    """Decide adjacency of two cubes from the difference of their lattice coords.

    Cubes at lattice coordinates m and n are adjacent iff c = m - n is
    weak-alt-1; equivalently iff the sup norm of (matrix @ c) is at most 1.
    Debug builds cross-check the two routes and the separation gap.
    """
    entries = _as_int_tuple(c)
    if len(entries) != reclusive.d:
        raise DimensionMismatchError(
            f"dimension mismatch: matrix {reclusive.d}, vector {len(entries)}"
        )
    verdict = is_weak_alt_one(entries)
    if __debug__:
        norm = linf_norm(mat_vec_mul(reclusive.matrix, QVector(map(Fraction, entries))))
        assert verdict.is_weak_alt_1 == (norm <= 1), (
            f"adjacency characterization disagrees with the exact norm for {entries}"
        )
        if not verdict.is_weak_alt_1:
            assert norm >= 1 + reclusive.delta, (
                f"non-adjacent difference {entries} has norm {norm} inside the "
                f"separation gap 1 + {reclusive.delta}"
            )
    return verdict.is_weak_alt_1


def member_coords(
    matrix: Union[ReclusiveMatrix, QMatrix], x: QVector
) -> IntVector:
    """Lattice coordinates of the unique cube containing x.

    Returns the integer vector m with x in (matrix @ m) + [0,1)^d, computed
    back to front: the unit diagonal lets each coordinate be peeled off with
    one exact floor.  Requires only upper unitriangularity, not reclusivity.
    """
    rows = _unitriangular_rows(matrix)
    d = len(rows)
    if x.dim != d:
        raise DimensionMismatchError(f"dimension mismatch: matrix {d}, point {x.dim}")
    m = [0] * d
    for k in range(d - 1, -1, -1):
        row = rows[k]
        acc = x[k]
        for i in range(k + 1, d):
            mi = m[i]
            if mi:
                acc -= row[i] * mi
        m[k] = math.floor(acc)
    return tuple(m)


def representative(matrix: Union[ReclusiveMatrix, QMatrix], x: QVector) -> QVector:
    """Representative corner of the cube containing x: matrix @ member_coords."""
    return lattice_point(matrix, member_coords(matrix, x))


def lattice_point(matrix: Union[ReclusiveMatrix, QMatrix], m: Sequence[int]) -> QVector:
    """matrix @ m for an integer coordinate vector m."""
    rows = _unitriangular_rows(matrix)
    d = len(rows)
    if len(m) != d:
        raise DimensionMismatchError(f"dimension mismatch: matrix {d}, vector {len(m)}")
    return QVector(
        sum((row[j] * m[j] for j in range(d) if m[j]), Fraction(0)) for row in rows
    )


def member_color(d: int, m: Union[QVector, Sequence[int]]) -> int:
    """Color of the cube at lattice coordinates m: sum of (i+1) * m_i mod (d+1).

    For a reclusive matrix this is a proper coloring of the adjacency graph,
    so no two distinct adjacent cubes share a color.
    """
    entries = _as_int_tuple(m)
    if len(entries) != d:
        raise DimensionMismatchError(f"dimension mismatch: d={d}, vector {len(entries)}")
    return sum((i + 1) * mi for i, mi in enumerate(entries)) % (d + 1)


def _unitriangular_rows(
    matrix: Union[ReclusiveMatrix, QMatrix]
) -> tuple[tuple[Fraction, ...], ...]:
    if isinstance(matrix, ReclusiveMatrix):
        return matrix.matrix.rows
    if not matrix.is_upper_unitriangular():
        from .exact import NotUnitriangularError

        raise NotUnitriangularError("matrix is not upper unitriangular")
    return matrix.rows


def weak_alt_one_vectors(d: int) -> list[IntVector]:
    """All nonzero weak-alt-1 vectors of length d, lexicographically sorted.

    These are exactly the lattice-coordinate differences of distinct adjacent
    cubes in any reclusive partition of dimension d.
    """
    results: list[IntVector] = []

    def extend(prefix: list[int], last_sign: int) -> None:
        if len(prefix) == d:
            if any(prefix):
                results.append(tuple(prefix))
            return
        for value in (-1, 0, 1):
            if value != 0 and value == last_sign:
                continue
            prefix.append(value)
            extend(prefix, value if value != 0 else last_sign)
            prefix.pop()

    extend([], 0)
    results.sort()
    return results
