"""Rolling a base graph into a larger grid graph made of embedded copies.

A roll of a base graph g on n nodes places grid nodes in N rows and n
columns. Node columns correspond to base nodes. A pair of grid nodes in
different columns is a grid bone when the wrapped vertical distance between
them, divided by their column gap, is an integer slope in 0..(N-1)/(n-1).
Each bone belongs to exactly one duplicate: the copy of the base node set
that starts at some row and advances by a fixed slope per column. Every
duplicate therefore sees an isomorphic copy of the base graph, and distinct
duplicates share no bones.

There are N*((N-1)/(n-1)+1) duplicates in total, more than fit disjoint
copies of the edge set. Only the first N^2/n duplicates in lexicographic
(slope, start_row) order stay active; only their bones carry weight in the
rolled graph. The sum of any clustering's value over the active duplicates'
induced clusterings equals its value on the rolled graph exactly.
"""

from __future__ import annotations

import math
from typing import Iterator, NamedTuple

from .core import Clustering, SignedGraph


class GridNode(NamedTuple):
    row: int
    col: int


class DuplicateId(NamedTuple):
    start_row: int
    slope: int


def vertical_distance(a: GridNode, b: GridNode, rows: int):
    """Wrapped row distance from a to b; Infinity when a's column is right of b's."""
    if a.col > b.col:
        return math.inf
    return (b.row - a.row) % rows


def max_slope(rows: int, cols: int) -> int:
    # valid rolls have (rows-1) divisible by (cols-1)
    return (rows - 1) // (cols - 1)


def is_grid_bone(a: GridNode, b: GridNode, rows: int, cols: int) -> bool:
    """Whether the unordered pair {a, b} is a grid bone of the roll."""
    if a.col == b.col:
        return False
    lo, hi = (a, b) if a.col < b.col else (b, a)
    dist = (hi.row - lo.row) % rows
    gap = hi.col - lo.col
    return dist % gap == 0 and dist // gap <= max_slope(rows, cols)


def duplicate_of(a: GridNode, b: GridNode, rows: int, cols: int) -> DuplicateId:
    """The unique duplicate whose node set contains the bone {a, b}."""
    if not is_grid_bone(a, b, rows, cols):
        raise ValueError(f"pair {a}, {b} is not a grid bone")
    lo, hi = (a, b) if a.col < b.col else (b, a)
    slope = ((hi.row - lo.row) % rows) // (hi.col - lo.col)
    return DuplicateId((lo.row - lo.col * slope) % rows, slope)


def duplicate_nodes(d: DuplicateId, rows: int, cols: int) -> "tuple[GridNode, ...]":
    """The duplicate's nodes, one per column, advancing by its slope per column."""
    return tuple(
        GridNode((d.start_row + j * d.slope) % rows, j) for j in range(cols)
    )


def valid_roll_size(n: int, t: int) -> int:
    """Row count N = n*(1 + t*(n-1)); guarantees (n-1) | (N-1) and n | N^2."""
    if n < 3:
        raise ValueError("base graph must have at least 3 nodes")
    if t < 0:
        raise ValueError("t must be non-negative")
    return n * (1 + t * (n - 1))


def untrimmed_duplicate_count(n: int, rows: int) -> int:
    """Count of all duplicates before trimming: N*((N-1)/(n-1)+1)."""
    if (rows - 1) % (n - 1) != 0:
        raise ValueError(f"(rows-1) must be divisible by (n-1); got rows={rows}, n={n}")
    return rows * (max_slope(rows, n) + 1)


def all_duplicates(rows: int, cols: int) -> Iterator[DuplicateId]:
    """All duplicates in lexicographic (slope, start_row) order."""
    for slope in range(max_slope(rows, cols) + 1):
        for start in range(rows):
            yield DuplicateId(start, slope)


def grid_index(node: GridNode, cols: int) -> int:
    return node.row * cols + node.col


def grid_node(flat: int, cols: int) -> GridNode:
    return GridNode(*divmod(flat, cols))


class RolledGraph:
    """A base graph rolled into an N-row grid.

    Fields: base (the original graph), rows (N), graph (the rolled graph on
    rows*n nodes, flat index row*n + col), active (kept duplicates in trim
    order), bone_index (every grid bone, trimmed or not, to its duplicate;
    keys are flat node pairs with the smaller index first).
    """

    __slots__ = ("base", "rows", "graph", "active", "bone_index", "_active_set")

    def __init__(self, base, rows, graph, active, bone_index):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "active", tuple(active))
        object.__setattr__(self, "bone_index", bone_index)
        object.__setattr__(self, "_active_set", frozenset(active))

    def __setattr__(self, name, value):
        raise AttributeError("RolledGraph is immutable")

    def is_active(self, d: DuplicateId) -> bool:
        return d in self._active_set

    def __repr__(self) -> str:
        return (
            f"RolledGraph(n={self.base.n}, rows={self.rows}, "
            f"active={len(self.active)} of {self.rows * (max_slope(self.rows, self.base.n) + 1)})"
        )


def build_roll(g: SignedGraph, rows: int) -> RolledGraph:
    """Roll g into a grid with the given row count.

    Requires (rows-1) divisible by (n-1) and rows^2 divisible by n; sizes
    from valid_roll_size satisfy both. The first rows^2/n duplicates in
    (slope, start_row) order keep their copy of the edge set; the rest are
    trimmed and contribute no edges.
    """
    n = g.n
    if n < 2:
        raise ValueError("base graph must have at least 2 nodes")
    if (rows - 1) % (n - 1) != 0:
        raise ValueError(f"(rows-1) must be divisible by (n-1); got rows={rows}, n={n}")
    if (rows * rows) % n != 0:
        raise ValueError(f"rows^2 must be divisible by n; got rows={rows}, n={n}")

    dups = list(all_duplicates(rows, n))
    active = tuple(dups[: (rows * rows) // n])

    bone_index: dict[tuple[int, int], DuplicateId] = {}
    node_cache: dict[DuplicateId, tuple[GridNode, ...]] = {}
    for d in dups:
        nodes = duplicate_nodes(d, rows, n)
        node_cache[d] = nodes
        for j1 in range(n):
            a = grid_index(nodes[j1], n)
            for j2 in range(j1 + 1, n):
                b = grid_index(nodes[j2], n)
                key = (a, b) if a < b else (b, a)
                if key in bone_index:
                    raise AssertionError(f"bone {key} claimed by two duplicates")
                bone_index[key] = d

    base_edges = list(g.edges())
    weights: dict[tuple[int, int], object] = {}
    for d in active:
        nodes = node_cache[d]
        for j1, j2, w in base_edges:
            a = grid_index(nodes[j1], n)
            b = grid_index(nodes[j2], n)
            weights[(a, b) if a < b else (b, a)] = w

    return RolledGraph(g, rows, SignedGraph(rows * n, weights), active, bone_index)


def induced_clustering(r: RolledGraph, c: Clustering, d: DuplicateId) -> Clustering:
    """Read the base-graph clustering that a grid clustering induces on one
    active duplicate: base node j takes the label of the duplicate's column-j
    grid node."""
    if len(c) != r.rows * r.base.n:
        raise ValueError("clustering does not cover the rolled graph")
    if not r.is_active(d):
        raise ValueError(f"duplicate {d} is not active")
    n = r.base.n
    return Clustering(
        c.labels[grid_index(node, n)] for node in duplicate_nodes(d, r.rows, n)
    )
