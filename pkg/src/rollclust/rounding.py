"""Randomized rounding of rational weights to the three-point set {-alpha, 0, beta}.

Each edge is rounded independently: a positive weight w becomes beta with
probability w/beta and 0 otherwise; a negative weight becomes -alpha with
probability -w/alpha. The per-edge expectation equals the original weight
exactly, because the Bernoulli draws use exact rational probabilities (an
integer comparison on the per-edge stream, never a float threshold).

Rounding never flips a sign, so a clustering's contributing edge set after
rounding is a subset of its contributing set before; summing |rounded
weight| over the pre-rounding contributing set gives the post-rounding
value exactly.

Deviation accounting compares a candidate clustering against a reference on
the same rounding outcome, per weight class, and the Hoeffding helper gives
the standard tail bound for sums of centered roundings.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .core import Clustering, ObjectiveKind, SignedGraph, contributing_edges
from .streams import make_rng


@dataclass(frozen=True)
class RoundingParams:
    """Rounding magnitudes and the root seed for per-edge streams.

    alpha and beta must be at least 1 so that |w| <= 1 gives probabilities
    at most 1.
    """

    alpha: Fraction
    beta: Fraction
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha < 1 or self.beta < 1:
            raise ValueError("alpha and beta must be >= 1")


@dataclass(frozen=True)
class RoundingOutcome:
    before: SignedGraph
    after: SignedGraph
    params: RoundingParams


def bernoulli(rng: random.Random, p: Fraction) -> bool:
    """Exact Bernoulli(p): randrange on the denominator, no float bias."""
    if p <= 0:
        return False
    if p >= 1:
        return True
    return rng.randrange(p.denominator) < p.numerator


def round_edge_weight(w: Fraction, params: RoundingParams, rng: random.Random) -> Fraction:
    """Round one weight; expectation is exactly w."""
    if w > 0:
        return params.beta if bernoulli(rng, w / params.beta) else Fraction(0)
    if w < 0:
        return -params.alpha if bernoulli(rng, -w / params.alpha) else Fraction(0)
    return Fraction(0)


def round_graph(g: SignedGraph, params: RoundingParams) -> RoundingOutcome:
    """Round every edge independently on its own named stream.

    Requires |w| <= 1 for all edges (normalize first). The per-edge stream
    is derived from (seed, u, v), so the outcome does not depend on edge
    iteration order and all graphs sharing a seed agree edge by edge.
    """
    if g.max_abs_weight() > 1:
        raise ValueError("graph must be normalized to |weight| <= 1 before rounding")
    weights: dict[tuple[int, int], Fraction] = {}
    for u, v, w in g.edges():
        rng = make_rng(params.seed, "edge", u, v)
        w2 = round_edge_weight(w, params, rng)
        if w2 != 0:
            weights[(u, v)] = w2
    return RoundingOutcome(g, SignedGraph(g.n, weights), params)


def contributing_weight_by_class(
    g: SignedGraph, c: Clustering, objective: ObjectiveKind
) -> "dict[Fraction, tuple[int, Fraction]]":
    """Per weight class: (count, count*|class|) over the contributing edges."""
    counts: dict[Fraction, int] = {}
    for u, v in contributing_edges(g, c, objective):
        w = g.weight(u, v)
        counts[w] = counts.get(w, 0) + 1
    return {w: (k, k * abs(w)) for w, k in counts.items()}


@dataclass(frozen=True)
class ClassDeviation:
    """Contributing-edge overlap for one weight class: edges only in the
    candidate's set, only in the reference's set, and shared."""

    only_candidate: int
    only_reference: int
    shared: int


@dataclass(frozen=True, eq=True)
class DeviationStats:
    """How far a rounding outcome drifted from its expectation, for a
    candidate clustering and a reference clustering on the same outcome.

    s1 sums (|rounded| - |original|) over the candidate's pre-rounding
    contributing edges; s2 does the same for the reference, scaled by
    1/lam. Both have expectation zero. gap is the diagnostic difference
    s1 - s2/lam; gap_target is the drift the bad event needs, which is
    positive only when an epsilon was supplied.
    """

    per_class: Mapping
    s1: Fraction
    s2: Fraction
    lam: Fraction
    gap_target: Fraction

    # per_class is a plain dict; instances are compared, never hashed
    __hash__ = None

    @property
    def gap(self) -> Fraction:
        return self.s1 - self.s2 / self.lam


def deviation_stats(
    out: RoundingOutcome,
    candidate: Clustering,
    reference: Clustering,
    lam: Fraction,
    objective: ObjectiveKind,
    epsilon: "Fraction | None" = None,
) -> DeviationStats:
    """Per-class deviation accounting for one rounding outcome.

    Contributing sets are taken on the pre-rounding graph; rounded weights
    come from the outcome. lam must exceed 1.
    """
    lam = Fraction(lam)
    if lam <= 1:
        raise ValueError("lam must be > 1")
    before, after = out.before, out.after

    cand = contributing_edges(before, candidate, objective)
    ref = contributing_edges(before, reference, objective)

    by_class: dict[Fraction, list[int]] = {}
    for edge_set, slot in ((cand, 0), (ref, 1)):
        for u, v in edge_set:
            w = before.weight(u, v)
            by_class.setdefault(w, [0, 0, 0])
    for u, v in cand | ref:
        w = before.weight(u, v)
        cell = by_class[w]
        in_c, in_r = (u, v) in cand, (u, v) in ref
        if in_c and in_r:
            cell[2] += 1
        elif in_c:
            cell[0] += 1
        else:
            cell[1] += 1

    per_class = {
        w: ClassDeviation(only_candidate=a, only_reference=b, shared=c)
        for w, (a, b, c) in by_class.items()
    }

    s1 = sum((abs(after.weight(u, v)) - abs(before.weight(u, v)) for u, v in cand), Fraction(0))
    ref_drift = sum(
        (abs(after.weight(u, v)) - abs(before.weight(u, v)) for u, v in ref), Fraction(0)
    )
    s2 = ref_drift / lam

    if epsilon is None:
        gap_target = Fraction(0)
    else:
        epsilon = Fraction(epsilon)
        ref_total = sum((abs(before.weight(u, v)) for u, v in ref), Fraction(0))
        gap_target = epsilon / (lam * (lam + epsilon)) * ref_total

    return DeviationStats(per_class=per_class, s1=s1, s2=s2, lam=lam, gap_target=gap_target)


def hoeffding_tail(z: int, t, alpha, beta) -> float:
    """Tail bound exp(-2 t^2 / (z (alpha+beta)^2)) for the probability that
    a sum of z independent centered roundings exceeds t. Returns 0 for an
    empty sum and never exceeds 1."""
    if z < 0:
        raise ValueError("z must be non-negative")
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    if z == 0:
        return 0.0
    alpha, beta = Fraction(alpha), Fraction(beta)
    exponent = Fraction(-2) * t * t / (z * (alpha + beta) ** 2)
    return min(1.0, math.exp(exponent))
