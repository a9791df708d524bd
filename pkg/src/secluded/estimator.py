"""Pseudodeterministic estimation of d function means from sample access.

Draws enough samples that every empirical mean is within eps/(d+1) of the
true mean with probability 1 - delta (two-sided Hoeffding bound for
[0,1]-valued functions, union over the d functions), then snaps the exact
rational mean vector through the canonical reclusive rounder.  Across runs
the outputs concentrate on few canonical values while staying within eps of
the true means.

The failure parameter delta is exposed directly.  Under the strictest
reading of k-pseudodeterminism the guarantee should additionally satisfy
1 - delta >= (d+2)/(d+3); this is documented, not enforced.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .exact import QVector, to_rational
from .reclusive import canonical_reclusive
from .schemes import ReclusiveRounder, reclusive_round


class SampleOracle:
    """Blackbox per-function sampler: draw(i, rng) yields a value in [0, 1].

    `true_means` is optional and used only by test fixtures to check error
    guarantees.
    """

    def __init__(
        self,
        d: int,
        draw: Callable[[int, random.Random], Fraction],
        true_means: Optional[QVector] = None,
    ):
        if d < 1:
            raise ValueError(f"need at least one function, got {d}")
        self.d = d
        self._draw = draw
        self.true_means = true_means

    def draw(self, i: int, rng: random.Random) -> Fraction:
        value = self._draw(i, rng)
        if not 0 <= value <= 1:
            raise ValueError(f"oracle {i} produced {value}, outside [0, 1]")
        return value


def constant_oracle(values: Sequence) -> SampleOracle:
    """Zero-variance oracle: function i always returns values[i]."""
    exact = [to_rational(v) for v in values]
    return SampleOracle(
        len(exact), lambda i, rng: exact[i], true_means=QVector(exact)
    )


def bernoulli_oracle(means: Sequence) -> SampleOracle:
    """Function i returns 1 with probability means[i], else 0."""
    exact = [to_rational(p) for p in means]
    for p in exact:
        if not 0 <= p <= 1:
            raise ValueError(f"Bernoulli mean {p} outside [0, 1]")

    def draw(i: int, rng: random.Random) -> Fraction:
        return Fraction(1) if rng.random() < exact[i] else Fraction(0)

    return SampleOracle(len(exact), draw, true_means=QVector(exact))


def oracle_from_spec(spec: dict) -> SampleOracle:
    """Build an oracle from {"kind": "constant"|"bernoulli", "params": [...]}."""
    kind = spec.get("kind")
    params = spec.get("params")
    if not isinstance(params, list) or not params:
        raise ValueError("oracle spec needs a nonempty 'params' list")
    if kind == "constant":
        return constant_oracle(params)
    if kind == "bernoulli":
        return bernoulli_oracle(params)
    raise ValueError(f"unknown oracle kind {kind!r}")


@dataclass(frozen=True)
class EstimateResult:
    output: QVector
    samples_used: int  # per function
    seed: int


def sample_count(d: int, eps: Fraction, delta: Fraction) -> int:
    """Samples per function: ceil((d+1)^2 / (2 eps^2) * ln(2d/delta)).

    Chosen so that 2*exp(-2*m*(eps/(d+1))^2) <= delta/d, i.e. each mean
    misses by more than eps/(d+1) with probability below delta/d.  The
    ceiling is taken exactly (the logarithm enters as the exact rational
    value of its binary double).
    """
    eps = to_rational(eps)
    delta = to_rational(delta)
    if d < 1:
        raise ValueError(f"need at least one function, got {d}")
    if eps <= 0:
        raise ValueError(f"accuracy must be positive, got {eps}")
    if not 0 < delta < Fraction(1, 2):
        raise ValueError(f"failure probability must be in (0, 1/2), got {delta}")
    coefficient = Fraction((d + 1) ** 2) / (2 * eps * eps)
    log_term = Fraction(math.log(2 * d / delta))
    return math.ceil(coefficient * log_term)


def estimate_means(
    oracle: SampleOracle, eps: Fraction, delta: Fraction, seed: int
) -> EstimateResult:
    """Estimate all d means; outputs concentrate on few canonical values.

    Per-function sample streams are derived deterministically from the master
    seed, so a fixed seed gives a bit-identical result.  Sample means are
    kept as exact rationals end to end; the final snap uses the canonical
    reclusive matrix (reclusive distance 1/d) at inner accuracy eps/(d+1).
    """
    eps = to_rational(eps)
    delta = to_rational(delta)
    d = oracle.d
    m = sample_count(d, eps, delta)
    means = []
    for i in range(d):
        rng = random.Random(f"{seed}:{i}")
        total = sum(oracle.draw(i, rng) for _ in range(m))
        means.append(Fraction(total, m))
    rounder = ReclusiveRounder(canonical_reclusive(d, d), eps / (d + 1))
    output = reclusive_round(rounder, QVector(means))
    return EstimateResult(output=output, samples_used=m, seed=seed)
