import math
from fractions import Fraction
from itertools import product

import numpy as np
from hypothesis import settings

settings.register_profile("ci", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("ci")


def scaled_int_matrix(partition, scale):
    """Partition matrix times scale as an exact int64 array (test oracle use)."""
    rows = [[x * scale for x in row] for row in partition.matrix.rows]
    assert all(v.denominator == 1 for row in rows for v in row)
    return np.array([[int(v) for v in row] for row in rows], dtype=np.int64)


def common_scale(*fractions):
    scale = 1
    for q in fractions:
        scale = scale * q.denominator // math.gcd(scale, q.denominator)
    return scale


def ball_sample(center, eps, d, rng, extra=4):
    """Dense finite sample of the closed eps-ball: center, axis extremes,
    all corners, and a few random interior points."""
    from fractions import Fraction as F
    from secluded.exact import QVector

    points = [center]
    for i in range(d):
        for sign in (1, -1):
            moved = list(center)
            moved[i] += sign * eps
            points.append(QVector(moved))
    for pattern in range(1 << d):
        points.append(
            QVector(
                c + (eps if pattern >> i & 1 else -eps)
                for i, c in enumerate(center)
            )
        )
    for _ in range(extra):
        points.append(
            QVector(c + F(rng.randrange(-24, 25), 24) * eps for c in center)
        )
    return points


def brute_force_neighborhood(partition, p, eps, radius=None):
    """Independent oracle: full-window scan for members meeting the closed ball.

    Enumerates every lattice coordinate in a cube window around the member
    containing p and tests the cube-box intersection predicate directly, in
    exact scaled-integer arithmetic.  Asserts window validity: no qualifying
    member may sit on the window boundary.
    """
    d = partition.d
    if radius is None:
        radius = math.ceil(eps) + d + 2
    entries = [x for row in partition.matrix.rows for x in row]
    scale = common_scale(*entries, *p.coords, Fraction(eps))
    a_scaled = scaled_int_matrix(partition, scale)
    center = partition.member_of(p)
    offsets = np.array(
        list(product(range(-radius, radius + 1), repeat=d)), dtype=np.int64
    )
    coords = offsets + np.array(center, dtype=np.int64)
    reps = coords @ a_scaled.T
    hi = np.array([int((c + eps) * scale) for c in p], dtype=np.int64)
    lo = np.array([int((c - eps) * scale) for c in p], dtype=np.int64)
    # cube [r, r+1) meets [lo, hi] iff r <= hi and r + scale > lo
    ok = np.all((reps <= hi) & (reps + scale > lo), axis=1)
    hits = coords[ok]
    if len(hits):
        margins = np.abs(hits - np.array(center, dtype=np.int64)).max(axis=1)
        assert margins.max() < radius, "oracle window too small to be conclusive"
    return {tuple(int(v) for v in row) for row in hits}
