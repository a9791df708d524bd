"""Lattice unit-hypercube partitions of R^d.

A partition handle wraps an upper-unitriangular matrix A: the members are
the half-open unit cubes A@m + [0,1)^d for integer vectors m, identified by
m.  Reclusivity of A is not required here; the named builders cover the
canonical reclusive family, the non-reclusive families bprime and
bdoubleprime (each row increasing instead of decreasing), and the standard
grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .exact import (
    DimensionMismatchError,
    NotUnitriangularError,
    QMatrix,
    QVector,
    inverse_upper_unitriangular,
    linf_dist,
)
from .reclusive import (
    IntVector,
    NotReclusiveError,
    canonical_reclusive,
    member_coords,
    reclusive_distance,
)

MemberId = IntVector


@dataclass(frozen=True)
class Neighborhood:
    """Members whose cubes meet the closed ball of the given radius."""

    center: QVector
    radius: Fraction
    members: frozenset[MemberId]

    def __len__(self) -> int:
        return len(self.members)


class LatticePartition:
    """Unit-hypercube partition generated by an upper-unitriangular matrix."""

    __slots__ = ("matrix", "inverse", "d", "tag", "delta")

    def __init__(self, matrix: QMatrix, tag: Optional[str] = None):
        if not matrix.is_upper_unitriangular():
            raise NotUnitriangularError(
                "partition matrix must be upper triangular with unit diagonal"
            )
        self.matrix = matrix
        self.inverse = inverse_upper_unitriangular(matrix)
        self.d = matrix.dim
        self.tag = tag
        # Reclusive distance when the matrix qualifies, else None.
        try:
            from .reclusive import validate_reclusive

            self.delta: Optional[Fraction] = validate_reclusive(matrix).delta
        except NotReclusiveError:
            self.delta = None

    # -- membership ---------------------------------------------------------

    def member_of(self, x: QVector) -> MemberId:
        """Id of the unique member containing x."""
        return member_coords(self.matrix, x)

    def rep_of(self, m: Sequence[int]) -> QVector:
        """Representative corner of the member with id m."""
        if len(m) != self.d:
            raise DimensionMismatchError(
                f"dimension mismatch: partition {self.d}, member {len(m)}"
            )
        rows = self.matrix.rows
        return QVector(
            sum((row[j] * m[j] for j in range(self.d) if m[j]), Fraction(0))
            for row in rows
        )

    def center_of(self, m: Sequence[int]) -> QVector:
        return self.rep_of(m).shift(Fraction(1, 2))

    def adjacent(self, m1: Sequence[int], m2: Sequence[int]) -> bool:
        """True iff the closed cubes of the two members intersect.

        Equivalent to the representative corners being within sup-norm
        distance 1, decided exactly.
        """
        return linf_dist(self.rep_of(m1), self.rep_of(m2)) <= 1

    # -- enumeration --------------------------------------------------------

    def members_in_box(self, lo: QVector, hi: QVector) -> Iterator[MemberId]:
        """All members whose cube meets the closed box [lo, hi], coordinatewise.

        The cube [r, r+1) meets [lo_i, hi_i] in coordinate i iff
        lo_i - 1 < r_i <= hi_i.  Because the matrix is unitriangular, row k of
        the representative depends only on m_k, ..., m_d, so the ids are
        enumerated back to front with an exact integer interval at each level;
        no heuristic search radius is involved.
        """
        if lo.dim != self.d or hi.dim != self.d:
            raise DimensionMismatchError(
                f"dimension mismatch: partition {self.d}, box {lo.dim}/{hi.dim}"
            )
        rows = self.matrix.rows
        d = self.d
        m = [0] * d

        def descend(k: int) -> Iterator[MemberId]:
            row = rows[k]
            tail = sum((row[j] * m[j] for j in range(k + 1, d) if m[j]), Fraction(0))
            # m_k + tail must lie in (lo_k - 1, hi_k]
            low = math.floor(lo[k] - 1 - tail) + 1
            high = math.floor(hi[k] - tail)
            for value in range(low, high + 1):
                m[k] = value
                if k == 0:
                    yield tuple(m)
                else:
                    yield from descend(k - 1)
            m[k] = 0

        if d == 0:  # pragma: no cover - dimension >= 1 enforced upstream
            return
        yield from descend(d - 1)

    def neighborhood(self, p: QVector, eps: Fraction) -> Neighborhood:
        """Members whose cube meets the closed eps-ball around p."""
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError(f"radius must be positive, got {eps}")
        lo = QVector(c - eps for c in p)
        hi = QVector(c + eps for c in p)
        return Neighborhood(p, eps, frozenset(self.members_in_box(lo, hi)))

    def neighborhood_size_exceeds(self, p: QVector, eps: Fraction, k: int) -> bool:
        """True iff more than k members meet the closed eps-ball; early exit."""
        lo = QVector(c - eps for c in p)
        hi = QVector(c + eps for c in p)
        count = 0
        for _ in self.members_in_box(lo, hi):
            count += 1
            if count > k:
                return True
        return False

    def neighbors_of_origin(self) -> list[IntVector]:
        """All ids c != 0 whose member is adjacent to the origin member.

        Complete: the constraint on row k of matrix @ c depends only on
        c_k, ..., c_d, so each level of the back-to-front enumeration applies
        its row constraint |(matrix @ c)_k| <= 1 exactly.  Sorted
        lexicographically.
        """
        rows = self.matrix.rows
        d = self.d
        c = [0] * d
        found: list[IntVector] = []

        def descend(k: int) -> None:
            row = rows[k]
            tail = sum((row[j] * c[j] for j in range(k + 1, d) if c[j]), Fraction(0))
            # c_k + tail in [-1, 1]
            low = math.ceil(-1 - tail)
            high = math.floor(1 - tail)
            for value in range(low, high + 1):
                c[k] = value
                if k == 0:
                    if any(c):
                        found.append(tuple(c))
                else:
                    descend(k - 1)
            c[k] = 0

        descend(d - 1)
        found.sort()
        return found

    # -- clique geometry ----------------------------------------------------

    def closure_point(self, members: Iterable[Sequence[int]]) -> QVector:
        """A point lying in the closed cube of every listed member.

        Requires the members to be pairwise adjacent (checked).  Computed per
        coordinate as the midpoint (max + min)/2 of the cube centers, then the
        containment is verified exactly before returning.
        """
        ids = [tuple(m) for m in members]
        if not ids:
            raise ValueError("need at least one member")
        reps = {m: self.rep_of(m) for m in ids}
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                if linf_dist(reps[a], reps[b]) > 1:
                    raise ValueError(
                        f"members {a} and {b} are not adjacent; no common closure point"
                    )
        centers = [reps[m].shift(Fraction(1, 2)) for m in ids]
        point = QVector(
            (max(c[i] for c in centers) + min(c[i] for c in centers)) / 2
            for i in range(self.d)
        )
        for m in ids:
            rep = reps[m]
            inside = all(rep[i] <= point[i] <= rep[i] + 1 for i in range(self.d))
            if not inside:  # pragma: no cover - impossible for adjacent members
                raise AssertionError(
                    f"computed point {point} escapes the closed cube of {m}"
                )
        return point

    def __repr__(self) -> str:
        tag = f", tag={self.tag!r}" if self.tag else ""
        return f"LatticePartition(d={self.d}{tag})"


def from_matrix(matrix: QMatrix, tag: Optional[str] = None) -> LatticePartition:
    """Partition handle for any upper-unitriangular matrix."""
    return LatticePartition(matrix, tag)


def canonical_partition(d: int, k: Optional[int] = None) -> LatticePartition:
    """Partition of the canonical reclusive matrix (k defaults to d)."""
    return LatticePartition(canonical_reclusive(d, k).matrix, tag="canonical")


def grid(d: int) -> LatticePartition:
    """The standard axis-aligned unit grid."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return LatticePartition(QMatrix.identity(d), tag="grid")


def b_prime(d: int) -> LatticePartition:
    """Row-increasing variant: entry (i,j) = j/d for 0-based j > i.

    Reclusive only for d <= 2; for d >= 5 its partition contains cliques
    larger than d+1.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    rows = []
    for i in range(d):
        row = [Fraction(0)] * d
        row[i] = Fraction(1)
        for j in range(i + 1, d):
            row[j] = Fraction(j, d)  # 0-based: (j - 1)/d in 1-based terms
        rows.append(row)
    return LatticePartition(QMatrix(rows), tag="bprime")


def b_double_prime(d: int) -> LatticePartition:
    """Row-increasing variant with per-row denominators: (j-i)/(d-i) 0-based."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    rows = []
    for i in range(d):
        row = [Fraction(0)] * d
        row[i] = Fraction(1)
        for j in range(i + 1, d):
            row[j] = Fraction(j - i, d - i)  # 1-based: (j - i)/(d - i + 1)
        rows.append(row)
    return LatticePartition(QMatrix(rows), tag="bdoubleprime")


def cube_meets_box(rep: QVector, lo: QVector, hi: QVector) -> bool:
    """Exact check that [rep, rep+1) intersects the closed box [lo, hi]."""
    return all(r <= h and r + 1 > l for r, l, h in zip(rep, lo, hi))
