"""Clique search, secludedness falsification, and tolerance bound calculators.

The maximum clique of a lattice partition graph is computed exactly: by
translation invariance any maximum clique can be slid to contain the origin
member, so the search runs on the finite subgraph induced by the origin's
neighbors, with a branch-and-bound using greedy coloring bounds over
bitsets.  The secludedness verifier is a falsifier, not a prover: it samples
a fundamental domain plus adversarial points (clique points, their
perturbations, cube corners) and reports the first ball that meets more
members than claimed; finding none is evidence, not proof.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence

from .exact import QVector, format_rational, linf_dist
from .lattice import LatticePartition, MemberId, cube_meets_box


@dataclass
class CliqueReport:
    """Exact maximum clique of a partition graph, with a verified witness."""

    tag: Optional[str]
    d: int
    clique_size: int
    witness: list[MemberId]
    runtime_ms: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "tag": self.tag,
                "d": self.d,
                "clique_size": self.clique_size,
                "witness": [list(m) for m in self.witness],
                "runtime_ms": self.runtime_ms,
            }
        )


@dataclass(frozen=True)
class Counterexample:
    """A closed ball meeting more members than the claimed degree."""

    point: QVector
    radius: Fraction
    members: frozenset[MemberId]


def _max_clique_bitset(neighbor_masks: list[int], vertex_count: int) -> tuple[int, list[int]]:
    """Maximum clique of a graph given as per-vertex neighbor bitmasks.

    Branch and bound in the style of Tomita: candidates are greedily colored
    and explored in reverse color order, pruning when the current clique plus
    the color bound cannot beat the best found so far.
    """
    best_size = 0
    best_clique: list[int] = []

    def color_sort(candidates: int) -> list[tuple[int, int]]:
        ordered: list[tuple[int, int]] = []
        uncolored = candidates
        color = 0
        while uncolored:
            color += 1
            available = uncolored
            while available:
                v = (available & -available).bit_length() - 1
                ordered.append((v, color))
                bit = 1 << v
                uncolored &= ~bit
                available &= ~(bit | neighbor_masks[v])
        return ordered

    def expand(current: list[int], candidates: int) -> None:
        nonlocal best_size, best_clique
        ordered = color_sort(candidates)
        for v, color in reversed(ordered):
            if len(current) + color <= best_size:
                return
            bit = 1 << v
            current.append(v)
            rest = candidates & neighbor_masks[v]
            if rest:
                expand(current, rest)
            elif len(current) > best_size:
                best_size = len(current)
                best_clique = list(current)
            current.pop()
            candidates &= ~bit

    if vertex_count:
        expand([], (1 << vertex_count) - 1)
    return best_size, best_clique


def max_clique(partition: LatticePartition) -> CliqueReport:
    """Exact maximum clique size of the partition graph.

    Computed as 1 + (maximum clique among the origin member's neighbors),
    valid because lattice translations act transitively on members and
    preserve adjacency.  The returned witness contains the origin and is
    re-verified pairwise adjacent with exact arithmetic before emission.
    """
    start = time.perf_counter()
    neighbors = partition.neighbors_of_origin()  # lexicographically sorted
    n = len(neighbors)
    reps = [partition.rep_of(c) for c in neighbors]
    masks = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if linf_dist(reps[i], reps[j]) <= 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    sub_size, sub_clique = _max_clique_bitset(masks, n)
    origin = tuple([0] * partition.d)
    witness = [origin] + [neighbors[i] for i in sorted(sub_clique)]
    size = sub_size + 1
    for i, a in enumerate(witness):
        for b in witness[i + 1 :]:
            assert partition.adjacent(a, b), (
                f"witness members {a} and {b} are not adjacent"
            )
    if partition.delta is not None:
        # Proper (d+1)-coloring of reclusive partitions caps their cliques.
        assert size <= partition.d + 1, (
            f"clique of size {size} contradicts the (d+1)-coloring bound"
        )
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return CliqueReport(partition.tag, partition.d, size, witness, elapsed_ms)


def clique_point(partition: LatticePartition) -> tuple[QVector, frozenset[MemberId]]:
    """A point in the closure of every member of a maximum clique.

    Any ball centered there, of any radius, meets all those members.
    """
    report = max_clique(partition)
    point = partition.closure_point(report.witness)
    return point, frozenset(report.witness)


_SAMPLE_DENOMINATORS = (7, 16, 60, 97, 360, 2520)


def _adversarial_points(
    partition: LatticePartition, eps: Fraction
) -> list[QVector]:
    """Clique points, their eps-perturbations, and nearby cube corners.

    Violations of a degree bound concentrate where member closures meet, so
    these are checked before any random sampling.
    """
    d = partition.d
    point, members = clique_point(partition)
    points = [point]
    for i in range(d):
        for sign in (1, -1):
            moved = list(point)
            moved[i] += sign * eps
            points.append(QVector(moved))
    for pattern in range(1 << d):
        offsets = [(eps if pattern >> i & 1 else -eps) for i in range(d)]
        points.append(QVector(p + o for p, o in zip(point, offsets)))
    corner_members = list(members) + [tuple([0] * d)]
    seen = set()
    for m in corner_members:
        rep = partition.rep_of(m)
        for pattern in range(1 << d):
            corner = QVector(
                r + (1 if pattern >> i & 1 else 0) for i, r in enumerate(rep)
            )
            if corner not in seen:
                seen.add(corner)
                points.append(corner)
    return points


def verify_secluded(
    partition: LatticePartition,
    k: int,
    eps: Fraction,
    trials: int,
    seed: int,
) -> Optional[Counterexample]:
    """Search for a closed eps-ball meeting more than k members.

    Checks adversarial points first, then `trials` points drawn uniformly (as
    exact rationals over mixed denominators) from a fundamental domain of the
    lattice.  Returns the first counterexample or None; None is sampling
    evidence only.  Deterministic for a fixed seed.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"tolerance must be positive, got {eps}")
    if trials <= 0:
        raise ValueError(f"trial count must be positive, got {trials}")

    def check(p: QVector) -> Optional[Counterexample]:
        if partition.neighborhood_size_exceeds(p, eps, k):
            hood = partition.neighborhood(p, eps)
            return Counterexample(p, eps, hood.members)
        return None

    for p in _adversarial_points(partition, eps):
        hit = check(p)
        if hit is not None:
            return hit

    rng = random.Random(seed)
    d = partition.d
    rows = partition.matrix.rows
    for _ in range(trials):
        t = []
        for _ in range(d):
            q = rng.choice(_SAMPLE_DENOMINATORS)
            t.append(Fraction(rng.randrange(q), q))
        # map [0,1)^d through the matrix: a fundamental domain of the lattice
        p = QVector(
            sum((row[j] * t[j] for j in range(d) if t[j]), Fraction(0))
            for row in rows
        )
        hit = check(p)
        if hit is not None:
            return hit
    return None


def recheck_counterexample(
    partition: LatticePartition, found: Counterexample
) -> bool:
    """Re-verify that every listed member's cube meets the closed ball."""
    lo = QVector(c - found.radius for c in found.point)
    hi = QVector(c + found.radius for c in found.point)
    return all(
        cube_meets_box(partition.rep_of(m), lo, hi) for m in found.members
    )


SPERNER_KNOWN = {1: 1, 2: 2, 3: 5, 4: 16}


def sperner_lower(d: int) -> int:
    """Best known lower bound on the d-cube's Sperner number.

    Exact for d <= 4; for d >= 5 the dissection-number bound
    ceil((d+1)^((d-1)/2)), computed with exact integer square roots.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if d in SPERNER_KNOWN:
        return SPERNER_KNOWN[d]
    power = (d + 1) ** (d - 1)
    root = math.isqrt(power)
    return root if root * root == power else root + 1


@dataclass(frozen=True)
class ToleranceBounds:
    """Upper bounds on the tolerance of a degree-(d+1) partition.

    `primary` is exact (a Fraction) when the underlying root is rational and
    a Decimal otherwise; `sqrt_bound` is the D/(2*sqrt(d)) value.  For d >= 5
    the Sperner lower bound is itself only a bound, so no ordering between
    the two values is asserted.
    """

    d: int
    diameter: Fraction
    primary: object  # Fraction | Decimal
    sqrt_bound: object  # Fraction | Decimal
    source: str
    precision: int

    def primary_text(self) -> str:
        return _bound_text(self.primary)

    def sqrt_text(self) -> str:
        return _bound_text(self.sqrt_bound)


def _bound_text(value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _int_nth_root(value: int, n: int) -> int:
    """Largest integer r with r**n <= value (Newton iteration, exact)."""
    if value < 0:
        raise ValueError("value must be nonnegative")
    if value in (0, 1) or n == 1:
        return value
    x = 1 << ((value.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + value // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def _nth_root_decimal(value: int, n: int, digits: int):
    """Exact Fraction when value is a perfect n-th power, else a Decimal."""
    root = _int_nth_root(value, n)
    if root**n == value:
        return Fraction(root)
    with localcontext() as ctx:
        ctx.prec = digits
        return Decimal(value) ** (Decimal(1) / Decimal(n))


def tolerance_upper_bound(
    d: int, diameter: Fraction = Fraction(1), digits: int = 30
) -> ToleranceBounds:
    """Upper bounds on eps for partitions of diameter <= D with degree d+1.

    d=1: D/2 (tight).  d=2: D/4 (tight).  d >= 3: D/(2*(sperner^(1/d) - 1))
    from the Sperner/dissection counting argument, reported alongside the
    universal D/(2*sqrt(d)); the Sperner-based value is primary for d in
    {3, 4} where the Sperner number is known exactly.
    """
    diameter = Fraction(diameter)
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if diameter <= 0:
        raise ValueError(f"diameter must be positive, got {diameter}")
    if d == 1:
        return ToleranceBounds(
            d, diameter, diameter / 2, diameter / 2, "exact-d1", digits
        )
    with localcontext() as ctx:
        ctx.prec = digits
        sqrt_d = _nth_root_decimal(d, 2, digits)
        if isinstance(sqrt_d, Fraction):
            sqrt_bound = diameter / (2 * sqrt_d)
        else:
            sqrt_bound = (
                Decimal(diameter.numerator) / Decimal(diameter.denominator)
                / (2 * sqrt_d)
            )
        if d == 2:
            return ToleranceBounds(
                d, diameter, diameter / 4, sqrt_bound, "exact-d2", digits
            )
        s = sperner_lower(d)
        root = _nth_root_decimal(s, d, digits)
        if isinstance(root, Fraction):
            primary = diameter / (2 * (root - 1))
        else:
            primary = (
                Decimal(diameter.numerator) / Decimal(diameter.denominator)
                / (2 * (root - 1))
            )
    source = "sperner-exact" if d in SPERNER_KNOWN else "sperner-lower-bound"
    return ToleranceBounds(d, diameter, primary, sqrt_bound, source, digits)
