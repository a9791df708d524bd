import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from conftest import brute_force_neighborhood
from secluded.exact import NotUnitriangularError, QMatrix, QVector, linf_dist
from secluded.lattice import (
    LatticePartition,
    b_double_prime,
    b_prime,
    canonical_partition,
    cube_meets_box,
    from_matrix,
    grid,
)
from secluded.reclusive import is_weak_alt_one, weak_alt_one_vectors

# the d=5 seven-clique lattice coordinates for the row-increasing family
SEVEN_CLIQUE = [
    (0, 1, -1, 0, 1),
    (0, 0, -1, 0, 1),
    (0, 1, 0, 0, 0),
    (-1, 1, -1, 0, 1),
    (-1, 0, 0, 0, 1),
    (-1, 0, 0, 1, 0),
    (0, 0, 0, 1, 0),
]
SEVEN_CLIQUE_REPS = [
    ("3/5", "7/5", "-1/5", "4/5", "1"),
    ("2/5", "2/5", "-1/5", "4/5", "1"),
    ("1/5", "1", "0", "0", "0"),
    ("-2/5", "7/5", "-1/5", "4/5", "1"),
    ("-1/5", "4/5", "4/5", "4/5", "1"),
    ("-2/5", "3/5", "3/5", "1", "0"),
    ("3/5", "3/5", "3/5", "1", "0"),
]


def test_from_matrix_accepts_nonreclusive():
    p = from_matrix(b_prime(5).matrix, tag="custom")
    assert p.tag == "custom"
    assert p.delta is None


def test_from_matrix_rejects_bad_diagonal():
    with pytest.raises(NotUnitriangularError):
        from_matrix(QMatrix([[2, 0], [0, 1]]))


def test_builder_rows_match_known_values():
    assert b_prime(5).matrix.rows[0] == tuple(
        Fraction(x) for x in (1, Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5))
    )
    assert b_double_prime(5).matrix.rows[1] == tuple(
        Fraction(x) for x in (0, 1, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
    )
    assert b_prime(2).matrix == QMatrix([[1, "1/2"], [0, 1]])
    assert b_prime(2).delta == Fraction(1, 2)  # reclusive at d = 2
    assert grid(3).matrix == QMatrix.identity(3)


def test_builder_rejects_bad_dimension():
    for builder in (b_prime, b_double_prime, grid, canonical_partition):
        with pytest.raises(ValueError):
            builder(0)


def test_member_of_examples():
    assert grid(2).member_of(QVector(["1/2", "1/2"])) == (0, 0)
    p = canonical_partition(3)
    m = (4, -2, 7)
    assert p.member_of(p.rep_of(m)) == m


def test_member_of_seven_clique_roundtrip():
    p = b_prime(5)
    for m, rep in zip(SEVEN_CLIQUE, SEVEN_CLIQUE_REPS):
        assert p.rep_of(m) == QVector(rep)
        assert p.member_of(QVector(rep)) == m


def test_adjacent_examples():
    p = canonical_partition(2)
    assert p.adjacent((3, -1), (3, -1))  # reflexive
    assert p.adjacent((0, 0), (1, -1))
    assert linf_dist(p.rep_of((0, 0)), p.rep_of((1, -1))) == 1


def test_seven_clique_pairwise_adjacent():
    p = b_prime(5)
    for a, b in combinations(SEVEN_CLIQUE, 2):
        assert p.adjacent(a, b)
        assert linf_dist(p.rep_of(a), p.rep_of(b)) == 1


def test_neighbors_of_origin_grid():
    neighbors = grid(2).neighbors_of_origin()
    assert len(neighbors) == 8
    assert set(neighbors) == set(product((-1, 0, 1), repeat=2)) - {(0, 0)}


def test_neighbors_of_origin_canonical2():
    assert canonical_partition(2).neighbors_of_origin() == [
        (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0),
    ]


def test_neighbors_of_origin_bprime5_contains_clique_differences():
    neighbors = set(b_prime(5).neighbors_of_origin())
    for a, b in combinations(SEVEN_CLIQUE, 2):
        assert tuple(x - y for x, y in zip(a, b)) in neighbors


def test_neighbors_of_origin_negation_symmetric():
    for p in (grid(3), canonical_partition(3), b_prime(4), b_double_prime(4)):
        neighbors = set(p.neighbors_of_origin())
        assert {tuple(-c for c in v) for v in neighbors} == neighbors


@pytest.mark.parametrize("d", range(1, 6))
def test_neighbors_of_origin_equals_weak_alt_one_for_reclusive(d):
    p = canonical_partition(d)
    assert p.neighbors_of_origin() == weak_alt_one_vectors(d)


def test_neighborhood_examples():
    hood = grid(2).neighborhood(QVector([1, 1]), Fraction(1, 4))
    assert len(hood) == 4  # grid corner touches 2^d members
    hood = canonical_partition(2).neighborhood(QVector([1, 1]), Fraction(1, 4))
    assert len(hood) == 3  # clique point touches d+1 members
    p = b_double_prime(4)
    center = p.rep_of((2, -1, 0, 3)).shift(Fraction(1, 2))
    hood = p.neighborhood(center, Fraction(1, 100))
    assert hood.members == {(2, -1, 0, 3)}  # deep interior


def test_neighborhood_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        grid(2).neighborhood(QVector([0, 0]), Fraction(0))


def test_neighborhood_members_recheckable():
    p = canonical_partition(3)
    center = QVector(["1/3", "-5/7", "9/4"])
    eps = Fraction(2, 5)
    hood = p.neighborhood(center, eps)
    lo = QVector(c - eps for c in center)
    hi = QVector(c + eps for c in center)
    for m in hood.members:
        assert cube_meets_box(p.rep_of(m), lo, hi)


@pytest.mark.parametrize(
    "builder,d",
    [(grid, 2), (canonical_partition, 2), (canonical_partition, 3),
     (b_prime, 3), (b_double_prime, 4)],
)
def test_neighborhood_matches_brute_force_oracle(builder, d):
    p = builder(d)
    rng = random.Random(20240811 + d)
    for _ in range(25):
        center = QVector(
            [Fraction(rng.randrange(-120, 120), rng.choice((8, 12, 60))) for _ in range(d)]
        )
        eps = Fraction(rng.randrange(1, 60), 60)
        hood = p.neighborhood(center, eps)
        assert hood.members == brute_force_neighborhood(p, center, eps)


def test_partition_property_unique_membership():
    p = b_double_prime(3)
    rng = random.Random(7)
    for _ in range(50):
        x = QVector([Fraction(rng.randrange(-600, 600), 120) for _ in range(3)])
        m = p.member_of(x)
        rep = p.rep_of(m)
        assert all(rep[i] <= x[i] < rep[i] + 1 for i in range(3))
        # no other member in a window contains x
        others = [
            n
            for n in product(range(-7, 8), repeat=3)
            if n != (0, 0, 0)
        ]
        for offset in others:
            n = tuple(a + b for a, b in zip(m, offset))
            rep_n = p.rep_of(n)
            assert not all(rep_n[i] <= x[i] < rep_n[i] + 1 for i in range(3))


def test_non_overlapping_distinct_members():
    for p in (canonical_partition(3), b_prime(3)):
        window = list(product(range(-2, 3), repeat=3))
        reps = {m: p.rep_of(m) for m in window}
        for a, b in combinations(window, 2):
            assert linf_dist(reps[a], reps[b]) >= 1


def test_adjacent_or_far_for_reclusive():
    p = canonical_partition(3)
    delta = p.delta
    assert delta == Fraction(1, 3)
    rng = random.Random(3)
    window = [m for m in product(range(-2, 3), repeat=3)]
    non_adjacent = [
        (a, b)
        for a, b in combinations(window, 2)
        if not is_weak_alt_one(tuple(x - y for x, y in zip(a, b))).is_weak_alt_1
    ]
    for a, b in rng.sample(non_adjacent, 120):
        xa = p.rep_of(a) + QVector([Fraction(rng.randrange(0, 24), 24) for _ in range(3)])
        xb = p.rep_of(b) + QVector([Fraction(rng.randrange(0, 24), 24) for _ in range(3)])
        assert linf_dist(xa, xb) > delta


def test_closure_point_single_member():
    p = canonical_partition(2)
    assert p.closure_point([(2, 1)]) == p.rep_of((2, 1)).shift(Fraction(1, 2))


def test_closure_point_canonical_clique():
    p = canonical_partition(2)
    point = p.closure_point([(0, 0), (1, 0), (0, 1)])
    assert point == QVector([1, 1])
    for m in [(0, 0), (1, 0), (0, 1)]:
        rep = p.rep_of(m)
        assert all(rep[i] <= point[i] <= rep[i] + 1 for i in range(2))


def test_closure_point_seven_clique():
    p = b_prime(5)
    point = p.closure_point(SEVEN_CLIQUE)
    for m in SEVEN_CLIQUE:
        rep = p.rep_of(m)
        assert all(rep[i] <= point[i] <= rep[i] + 1 for i in range(5))


def test_closure_point_rejects_non_adjacent():
    p = grid(2)
    with pytest.raises(ValueError):
        p.closure_point([(0, 0), (2, 0)])


def test_entries_outside_unit_interval_accepted_unnormalized():
    # membership stays well-defined through the recurrence; the matrix is
    # stored as given
    p = from_matrix(QMatrix([[1, "3/2"], [0, 1]]))
    assert p.matrix.entry(0, 1) == Fraction(3, 2)
    m = (2, -3)
    assert p.member_of(p.rep_of(m)) == m
    x = QVector(["1/3", "-7/5"])
    rep = p.rep_of(p.member_of(x))
    assert all(rep[i] <= x[i] < rep[i] + 1 for i in range(2))
