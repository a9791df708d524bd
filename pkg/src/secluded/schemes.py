"""Deterministic rounding schemes and their partition adapters.

Three constructions:

* the floor family: per coordinate, snap to the cell of a shifted width-alpha
  grid and emit the cell's base value plus a representative offset;
* shift rounding: displace the input by one of d+1 canonical diagonal shifts
  so that a whole closed eps-ball lands inside a single cell of a coarse
  grid, then emit that cell's center;
* reclusive rounding: scale into a reclusive lattice partition, take the
  representative corner of the containing cube, and scale back.

Every scheme is a pure function of its input over exact rationals; a scheme
and the partition formed by its fibers are interchangeable views.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .exact import (
    DimensionMismatchError,
    QVector,
    linf_dist,
    to_rational,
)
from .reclusive import ReclusiveMatrix, lattice_point, member_coords


@dataclass(frozen=True)
class FloorScheme:
    """Per-coordinate shifted floor: alpha * floor((x - beta)/alpha) + gamma.

    The value on the member [alpha*n + beta_i, alpha*(n+1) + beta_i) of
    coordinate i is alpha*n + gamma_i, so all points of a member map to the
    same value.
    """

    alpha: Fraction
    beta: QVector
    gamma: QVector

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"cell width must be positive, got {self.alpha}")
        if self.beta.dim != self.gamma.dim:
            raise DimensionMismatchError(
                f"shift and offset dimensions differ: {self.beta.dim} vs {self.gamma.dim}"
            )

    @classmethod
    def broadcast(
        cls,
        d: int,
        alpha,
        beta=Fraction(0),
        gamma=Fraction(0),
    ) -> "FloorScheme":
        """Scheme with the same scalar shift and offset in every coordinate."""
        b = to_rational(beta)
        g = to_rational(gamma)
        return cls(to_rational(alpha), QVector([b] * d), QVector([g] * d))


def floor_round(scheme: FloorScheme, x: QVector) -> QVector:
    if x.dim != scheme.beta.dim:
        raise DimensionMismatchError(
            f"dimension mismatch: scheme {scheme.beta.dim}, point {x.dim}"
        )
    a = scheme.alpha
    return QVector(
        a * math.floor((xi - bi) / a) + gi
        for xi, bi, gi in zip(x, scheme.beta, scheme.gamma)
    )


@dataclass(frozen=True)
class HKScheme:
    """Shift rounding over a coarse grid of cells with side 2*eps*(d+1).

    The shift set holds the d+1 diagonal vectors (2*eps*D, ..., 2*eps*D) for
    D = 1..d+1; for any point, at least one shift places its whole closed
    eps-ball inside a single grid cell (at most one shift fails per
    coordinate, and there are more shifts than coordinates).  Grid cells are
    anchored at 0.
    """

    eps: Fraction
    d: int

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError(f"tolerance must be positive, got {self.eps}")
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")

    @property
    def interval_len(self) -> Fraction:
        return 2 * self.eps * (self.d + 1)

    @property
    def shifts(self) -> list[QVector]:
        return [
            QVector([2 * self.eps * step] * self.d) for step in range(1, self.d + 2)
        ]


def hk_shift_select(scheme: HKScheme, x: QVector) -> QVector:
    """Smallest valid diagonal shift for x.

    A shift is valid when, in every coordinate, the closed interval
    [x_i + shift - eps, x_i + shift + eps] stays inside one half-open grid
    interval [n*L, (n+1)*L) with L the cell side.  Existence is guaranteed;
    exhaustion of the candidate shifts is an internal error.
    """
    if x.dim != scheme.d:
        raise DimensionMismatchError(
            f"dimension mismatch: scheme {scheme.d}, point {x.dim}"
        )
    eps = scheme.eps
    cell = scheme.interval_len
    width_ok = cell - 2 * eps
    for step in range(1, scheme.d + 2):
        shift = 2 * eps * step
        # the ball fits iff the ball's low end sits at least 2*eps before
        # the next cell boundary
        if all((xi + shift - eps) % cell < width_ok for xi in x):
            return QVector([shift] * scheme.d)
    raise AssertionError(
        "no valid shift found; the counting argument guarantees one exists"
    )  # pragma: no cover


def hk_round(scheme: HKScheme, x: QVector) -> QVector:
    """Center of the grid cell containing x + selected shift."""
    shift = hk_shift_select(scheme, x)
    cell = scheme.interval_len
    half = cell / 2
    return QVector(
        cell * math.floor((xi + si) / cell) + half for xi, si in zip(x, shift)
    )


def shift_round(
    member_of: Callable[[QVector], Sequence[int]],
    rep: Callable[[Sequence[int]], QVector],
    shifts: Sequence[QVector],
    selector: Callable[[QVector], QVector],
    eps: Fraction,
    x: QVector,
) -> QVector:
    """Generic shift rounding over an arbitrary base partition.

    The caller supplies the base partition as a member-id function plus a
    representative map, a finite shift set, and a selector whose output must
    be one of the shifts and must place the closed eps-ball of x inside a
    single member.  The contract is asserted: for box-shaped members it
    suffices that the two extreme corners of the shifted ball share a member,
    and a violation is reported with the first coordinate whose member index
    differs.
    """
    shift = selector(x)
    if shift not in shifts:
        raise ValueError(f"selector returned {shift!r}, not one of the shift set")
    shifted = x + shift
    lo = tuple(member_of(QVector(c - eps for c in shifted)))
    hi = tuple(member_of(QVector(c + eps for c in shifted)))
    if lo != hi:
        bad = next(i for i, (a, b) in enumerate(zip(lo, hi)) if a != b)
        raise ValueError(
            f"shifted ball straddles members in coordinate {bad}: "
            f"member index {lo[bad]} vs {hi[bad]}"
        )
    return rep(lo)


@dataclass(frozen=True)
class ReclusiveRounder:
    """Round by scaling into a reclusive partition and snapping to corners.

    phi(x) = (delta/eps) * x maps points into the partition's own scale; the
    output is phi^-1 of the representative corner of the cube containing
    phi(x).  Exact end to end, and the output moves the input by strictly
    less than eps/delta in every coordinate.
    """

    matrix: ReclusiveMatrix
    eps: Fraction

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError(f"tolerance must be positive, got {self.eps}")

    @property
    def scale(self) -> Fraction:
        return self.matrix.delta / self.eps


def reclusive_round(rounder: ReclusiveRounder, alpha: QVector) -> QVector:
    if alpha.dim != rounder.matrix.d:
        raise DimensionMismatchError(
            f"dimension mismatch: rounder {rounder.matrix.d}, point {alpha.dim}"
        )
    scale = rounder.scale
    scaled = alpha.scale(scale)
    corner = lattice_point(rounder.matrix, member_coords(rounder.matrix, scaled))
    return corner.scale(1 / scale)


class InducedPartition:
    """Partition view of a deterministic scheme: members are the fibers."""

    def __init__(self, scheme: Callable[[QVector], QVector]):
        self._scheme = scheme

    def value(self, x: QVector) -> QVector:
        return self._scheme(x)

    def same_member(self, x: QVector, y: QVector) -> bool:
        return self._scheme(x) == self._scheme(y)


def scheme_to_partition(scheme: Callable[[QVector], QVector]) -> InducedPartition:
    return InducedPartition(scheme)


def partition_to_scheme(
    partition,
    rep: Optional[Callable[[Sequence[int]], QVector]] = None,
) -> Callable[[QVector], QVector]:
    """Deterministic scheme from a partition handle and a representative map.

    Defaults to the representative corner, so the induced fibers are exactly
    the partition's members.
    """
    pick = rep if rep is not None else partition.rep_of
    return lambda x: pick(partition.member_of(x))


def diameter_bound(scheme: HKScheme) -> Fraction:
    """Upper bound on the sup-norm diameter of any fiber: 6*eps*(d+1).

    Two inputs with equal outputs were shifted into one grid cell (side
    2*eps*(d+1)) by shifts of length at most 2*eps*(d+1) each.
    """
    return 6 * scheme.eps * (scheme.d + 1)


def fiber_diameter_ok(scheme: HKScheme, x: QVector, y: QVector) -> bool:
    """Exact check of the fiber diameter bound for a same-output pair."""
    return linf_dist(x, y) <= diameter_bound(scheme)
