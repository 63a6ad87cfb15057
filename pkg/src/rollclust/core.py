"""Signed graphs with exact rational weights, clusterings, and objectives.

A SignedGraph is an undirected weighted graph on nodes 0..n-1 whose weights
are exact rationals; weight 0 and "no edge" are the same thing, so zero
weights are never stored. A Clustering is a total assignment of nodes to
cluster labels, canonicalized so labels appear in first-occurrence order.

Two complementary objectives are supported. Under MaxAgree an edge
contributes its absolute weight when a positive edge lies inside a cluster
or a negative edge crosses clusters; MinDisagree counts the complementary
edges. For every clustering the two values sum to the total absolute
weight of the graph.

All arithmetic is exact (fractions.Fraction); nothing here uses floats.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Pair = "tuple[int, int]"


class ObjectiveKind(Enum):
    MAX_AGREE = "max"
    MIN_DISAGREE = "min"

    @classmethod
    def parse(cls, text: str) -> "ObjectiveKind":
        for kind in cls:
            if kind.value == text:
                return kind
        raise ValueError(f"unknown objective {text!r} (expected 'max' or 'min')")


class GraphFormatError(ValueError):
    """Raised when graph text input violates the file format."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        # floats smuggle binary rounding error into exact arithmetic
        raise TypeError("weights must be exact rationals, not floats")
    return Fraction(value)


class SignedGraph:
    """Undirected graph on n nodes with exact rational edge weights.

    Immutable after construction. Pairs are stored with the smaller node
    first; zero weights are dropped; self-loops are rejected.
    """

    __slots__ = ("n", "_weights")

    def __init__(self, n: int, weights: Mapping | Iterable | None = None):
        if n < 0:
            raise ValueError("node count must be non-negative")
        store: dict[tuple[int, int], Fraction] = {}
        items = []
        if weights:
            items = weights.items() if isinstance(weights, Mapping) else list(weights)
        for (u, v), w in items:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            w = _as_fraction(w)
            key = (u, v) if u < v else (v, u)
            if key in store:
                if store[key] != w:
                    raise ValueError(f"conflicting weights for pair {key}")
                continue
            if w != 0:
                store[key] = w
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_weights", store)

    def __setattr__(self, name, value):
        raise AttributeError("SignedGraph is immutable")

    def weight(self, u: int, v: int) -> Fraction:
        """Weight of the pair, Fraction(0) when absent."""
        key = (u, v) if u < v else (v, u)
        return self._weights.get(key, Fraction(0))

    def edges(self) -> Iterator[tuple[int, int, Fraction]]:
        """Nonzero edges as (u, v, w) with u < v, in sorted pair order."""
        for (u, v) in sorted(self._weights):
            yield u, v, self._weights[(u, v)]

    @property
    def edge_count(self) -> int:
        return len(self._weights)

    def total_abs_weight(self) -> Fraction:
        return sum((abs(w) for w in self._weights.values()), Fraction(0))

    def max_abs_weight(self) -> Fraction:
        if not self._weights:
            return Fraction(0)
        return max(abs(w) for w in self._weights.values())

    def weight_classes(self) -> tuple[Fraction, ...]:
        """Distinct nonzero weights, sorted."""
        return tuple(sorted(set(self._weights.values())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self.n == other.n and self._weights == other._weights

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self._weights.items()))))

    def __repr__(self) -> str:
        return f"SignedGraph(n={self.n}, edges={self.edge_count})"


class Clustering:
    """Total assignment of nodes 0..n-1 to clusters.

    Labels are canonicalized to first-occurrence order (node 0 is always in
    cluster 0), so two assignments that induce the same partition compare
    equal. Immutable.
    """

    __slots__ = ("labels",)

    def __init__(self, labels: Iterable[int]):
        raw = list(labels)
        remap: dict[int, int] = {}
        canon = []
        for lbl in raw:
            if lbl not in remap:
                remap[lbl] = len(remap)
            canon.append(remap[lbl])
        object.__setattr__(self, "labels", tuple(canon))

    def __setattr__(self, name, value):
        raise AttributeError("Clustering is immutable")

    @classmethod
    def singletons(cls, n: int) -> "Clustering":
        return cls(range(n))

    @classmethod
    def one_cluster(cls, n: int) -> "Clustering":
        return cls([0] * n)

    @property
    def num_clusters(self) -> int:
        return (max(self.labels) + 1) if self.labels else 0

    def together(self, u: int, v: int) -> bool:
        return self.labels[u] == self.labels[v]

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"Clustering({list(self.labels)})"


def _check_domain(g: SignedGraph, c: Clustering) -> None:
    if len(c) != g.n:
        raise ValueError(f"clustering covers {len(c)} nodes, graph has {g.n}")


def _contributes(w: Fraction, together: bool, objective: ObjectiveKind) -> bool:
    if objective is ObjectiveKind.MAX_AGREE:
        return (w > 0 and together) or (w < 0 and not together)
    return (w > 0 and not together) or (w < 0 and together)


def contributing_edges(
    g: SignedGraph, c: Clustering, objective: ObjectiveKind
) -> frozenset:
    """Edges whose weight counts toward the objective under this clustering.

    MaxAgree keeps positive edges inside clusters and negative edges across;
    MinDisagree keeps the complement. Zero-weight pairs never contribute,
    and the two objectives' contributing sets partition the nonzero edges.
    """
    _check_domain(g, c)
    return frozenset(
        (u, v)
        for u, v, w in g.edges()
        if _contributes(w, c.together(u, v), objective)
    )


def clustering_value(
    g: SignedGraph, c: Clustering, objective: ObjectiveKind
) -> Fraction:
    """Sum of |weight| over the contributing edges. Exact, non-negative."""
    _check_domain(g, c)
    total = Fraction(0)
    for u, v, w in g.edges():
        if _contributes(w, c.labels[u] == c.labels[v], objective):
            total += abs(w)
    return total


def normalize_weights(g: SignedGraph) -> "tuple[SignedGraph, bool]":
    """Scale all weights by 1/max|weight| so the largest magnitude is 1.

    Returns (graph, normalized). An all-zero graph has nothing to normalize
    and comes back unchanged with normalized=False. Scaling every weight by
    the same positive factor preserves the set of optimal clusterings for
    both objectives.
    """
    m = g.max_abs_weight()
    if m == 0:
        return g, False
    if m == 1:
        return g, True
    return SignedGraph(g.n, {(u, v): w / m for u, v, w in g.edges()}), True


# --- graph text format ----------------------------------------------------
#
# Line 1: "n m". Then exactly m lines "u v w" with 0-based node ids and w a
# rational written as a decimal or p/q. Duplicate pairs and self-loops are
# format errors. Written files round-trip exactly.


def format_weight(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def parse_weight(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise GraphFormatError(f"bad weight {token!r}: {exc}") from None


def parse_graph(text: str) -> SignedGraph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise GraphFormatError("empty input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError(f"header must be two integers, got {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise GraphFormatError("n and m must be non-negative")
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(lines) - 1}")
    weights: dict[tuple[int, int], Fraction] = {}
    for idx, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"line {idx}: expected 'u v w', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {idx}: bad node ids in {line!r}") from None
        if u == v:
            raise GraphFormatError(f"line {idx}: self-loop on node {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {idx}: node id out of range 0..{n - 1}")
        key = (u, v) if u < v else (v, u)
        if key in weights:
            raise GraphFormatError(f"line {idx}: duplicate pair {key}")
        weights[key] = parse_weight(parts[2])
    return SignedGraph(n, weights)


def format_graph(g: SignedGraph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v} {format_weight(w)}" for u, v, w in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> SignedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: SignedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))
