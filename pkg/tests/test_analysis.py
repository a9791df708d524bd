import json
from decimal import Decimal
from fractions import Fraction
from itertools import combinations

import pytest

from secluded.analysis import (
    clique_point,
    max_clique,
    recheck_counterexample,
    sperner_lower,
    tolerance_upper_bound,
    verify_secluded,
)
from secluded.exact import QVector, linf_dist
from secluded.lattice import b_prime, canonical_partition, grid


@pytest.mark.parametrize("d", range(2, 7))
def test_max_clique_canonical_is_d_plus_one(d):
    report = max_clique(canonical_partition(d))
    assert report.clique_size == d + 1
    assert len(report.witness) == d + 1


def test_max_clique_bprime5_is_seven_with_valid_witness():
    p = b_prime(5)
    report = max_clique(p)
    assert report.clique_size == 7
    for a, b in combinations(report.witness, 2):
        assert linf_dist(p.rep_of(a), p.rep_of(b)) == 1
    point = p.closure_point(report.witness)
    for m in report.witness:
        rep = p.rep_of(m)
        assert all(rep[i] <= point[i] <= rep[i] + 1 for i in range(5))


def test_max_clique_report_json():
    report = max_clique(grid(2))
    payload = json.loads(report.to_json())
    assert payload["tag"] == "grid"
    assert payload["d"] == 2
    assert payload["clique_size"] == 4
    assert len(payload["witness"]) == 4
    assert payload["runtime_ms"] >= 0


def test_max_clique_deterministic_witness():
    a = max_clique(b_prime(4))
    b = max_clique(b_prime(4))
    assert a.witness == b.witness


def test_clique_point_grid1_integer():
    point, members = clique_point(grid(1))
    assert len(members) == 2
    assert point[0].denominator == 1  # an endpoint shared by two intervals


def test_clique_point_canonical2():
    p = canonical_partition(2)
    point, members = clique_point(p)
    assert len(members) == 3
    for m in members:
        rep = p.rep_of(m)
        assert all(rep[i] <= point[i] <= rep[i] + 1 for i in range(2))


def test_verify_secluded_canonical3_holds():
    found = verify_secluded(
        canonical_partition(3), k=4, eps=Fraction(1, 6), trials=2000, seed=11
    )
    assert found is None


def test_verify_secluded_canonical2_counterexample_at_clique_point():
    p = canonical_partition(2)
    found = verify_secluded(p, k=2, eps=Fraction(1, 4), trials=10, seed=11)
    assert found is not None
    assert len(found.members) == 3
    assert recheck_counterexample(p, found)
    point, _ = clique_point(p)
    assert found.point == point  # adversarial points are checked first


def test_verify_secluded_grid_corner():
    p = grid(2)
    found = verify_secluded(p, k=3, eps=Fraction(1, 10), trials=10, seed=11)
    assert found is not None
    assert len(found.members) == 4  # 2^d members at a grid corner
    assert recheck_counterexample(p, found)


def test_verify_secluded_deterministic():
    p = grid(2)
    a = verify_secluded(p, k=3, eps=Fraction(1, 10), trials=10, seed=3)
    b = verify_secluded(p, k=3, eps=Fraction(1, 10), trials=10, seed=3)
    assert a == b


def test_verify_secluded_rejects_bad_arguments():
    p = grid(2)
    with pytest.raises(ValueError):
        verify_secluded(p, k=3, eps=Fraction(0), trials=10, seed=0)
    with pytest.raises(ValueError):
        verify_secluded(p, k=3, eps=Fraction(1, 4), trials=0, seed=0)


def test_sperner_known_values():
    assert [sperner_lower(d) for d in (1, 2, 3, 4)] == [1, 2, 5, 16]


def test_sperner_lower_beyond_table():
    assert sperner_lower(5) == 36  # 6^2
    assert sperner_lower(6) == 130  # ceil(7^(5/2)) = ceil(129.64...)
    assert sperner_lower(7) == 512  # 8^3
    with pytest.raises(ValueError):
        sperner_lower(0)


def test_tolerance_bounds_d1():
    report = tolerance_upper_bound(1, Fraction(2))
    assert report.primary == Fraction(1)
    assert report.source == "exact-d1"


def test_tolerance_bounds_d2():
    report = tolerance_upper_bound(2, Fraction(1))
    assert report.primary == Fraction(1, 4)
    assert report.source == "exact-d2"


def test_tolerance_bounds_d3_decimal():
    report = tolerance_upper_bound(3, Fraction(1))
    assert report.source == "sperner-exact"
    denominator = 2 * (Decimal(5) ** (Decimal(1) / Decimal(3)) - 1)
    assert abs(float(report.primary) - 1 / float(denominator)) < 1e-12
    assert abs(float(report.primary) * 1.419952 - 1) < 1e-4
    assert abs(float(report.sqrt_bound) - 0.288675) < 1e-5


def test_tolerance_bounds_d4_exact_half():
    report = tolerance_upper_bound(4, Fraction(1))
    assert report.primary == Fraction(1, 2)  # 16^(1/4) = 2 exactly
    assert report.source == "sperner-exact"


def test_tolerance_bounds_d5_reports_both():
    report = tolerance_upper_bound(5, Fraction(1))
    assert report.source == "sperner-lower-bound"
    # 1/(2*(36^(1/5)-1)) = 0.4772...; 1/(2*sqrt(5)) = 0.2236...
    assert abs(float(report.primary) - 1 / (2 * (36 ** 0.2 - 1))) < 1e-9
    assert abs(float(report.sqrt_bound) - 0.2236) < 1e-3


def test_tolerance_bounds_rejects_bad_arguments():
    with pytest.raises(ValueError):
        tolerance_upper_bound(0, Fraction(1))
    with pytest.raises(ValueError):
        tolerance_upper_bound(3, Fraction(-1))


def test_tolerance_bounds_scale_linearly_in_diameter():
    one = tolerance_upper_bound(3, Fraction(1))
    two = tolerance_upper_bound(3, Fraction(2))
    assert abs(float(two.primary) - 2 * float(one.primary)) < 1e-12
