import random
from fractions import Fraction

import pytest

from rollclust import (
    Clustering,
    GraphFormatError,
    ObjectiveKind,
    SignedGraph,
    clustering_value,
    contributing_edges,
    format_graph,
    normalize_weights,
    parse_graph,
)
from rollclust.solvers import iter_partitions_by_merging

MAX = ObjectiveKind.MAX_AGREE
MIN = ObjectiveKind.MIN_DISAGREE


def naive_value(g, c, objective):
    # independent restatement of the objective, straight from the definition
    total = Fraction(0)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            w = g.weight(u, v)
            if w == 0:
                continue
            together = c.labels[u] == c.labels[v]
            if objective is MAX:
                counts = (w > 0 and together) or (w < 0 and not together)
            else:
                counts = (w > 0 and not together) or (w < 0 and together)
            if counts:
                total += abs(w)
    return total


def random_graph(rng, n, density=0.7):
    weights = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                q = rng.randint(1, 6)
                p = rng.randint(-q, q)
                if p:
                    weights[(u, v)] = Fraction(p, q)
    return SignedGraph(n, weights)


def test_triangle_max_agree_examples():
    g = SignedGraph(3, {(0, 1): 1, (1, 2): -1, (0, 2): 1})
    assert clustering_value(g, Clustering.one_cluster(3), MAX) == 2
    assert clustering_value(g, Clustering([0, 0, 1]), MAX) == 2
    assert clustering_value(g, Clustering.singletons(3), MAX) == 1
    # complementarity on the same instances
    assert clustering_value(g, Clustering.one_cluster(3), MIN) == 1
    assert clustering_value(g, Clustering([0, 0, 1]), MIN) == 1


def test_four_cycle_contributing_set():
    # +1, -1, +1, -1 around a 4-cycle; split into the two +1 pairs
    g = SignedGraph(4, {(0, 1): 1, (1, 2): -1, (2, 3): 1, (0, 3): -1})
    c = Clustering([0, 0, 1, 1])
    expected = frozenset({(0, 1), (1, 2), (2, 3), (0, 3)})
    assert contributing_edges(g, c, MAX) == expected
    # every edge agrees here, so MinDisagree has nothing
    assert contributing_edges(g, c, MIN) == frozenset()
    assert clustering_value(g, c, MAX) == 4


def test_contributing_sets_partition_nonzero_edges():
    rng = random.Random(101)
    for _ in range(50):
        n = rng.randint(2, 8)
        g = random_graph(rng, n)
        labels = [rng.randrange(3) for _ in range(n)]
        c = Clustering(labels)
        agree = contributing_edges(g, c, MAX)
        disagree = contributing_edges(g, c, MIN)
        assert agree & disagree == frozenset()
        assert agree | disagree == frozenset((u, v) for u, v, _ in g.edges())


def test_values_sum_to_total_abs_weight():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 8)
        g = random_graph(rng, n)
        c = Clustering([rng.randrange(4) for _ in range(n)])
        assert clustering_value(g, c, MAX) + clustering_value(g, c, MIN) == g.total_abs_weight()


def test_value_matches_naive_definition():
    rng = random.Random(13)
    for _ in range(100):
        n = rng.randint(2, 7)
        g = random_graph(rng, n)
        c = Clustering([rng.randrange(3) for _ in range(n)])
        for objective in (MAX, MIN):
            assert clustering_value(g, c, objective) == naive_value(g, c, objective)


def test_label_permutation_invariance():
    rng = random.Random(29)
    for _ in range(30):
        n = rng.randint(2, 7)
        g = random_graph(rng, n)
        labels = [rng.randrange(3) for _ in range(n)]
        perm = {0: 7, 1: 2, 2: 5}
        a = Clustering(labels)
        b = Clustering([perm[lbl] for lbl in labels])
        assert a == b
        for objective in (MAX, MIN):
            assert clustering_value(g, a, objective) == clustering_value(g, b, objective)


def test_values_are_exact_fractions():
    g = SignedGraph(3, {(0, 1): Fraction(1, 3), (1, 2): Fraction(-1, 7)})
    v = clustering_value(g, Clustering.one_cluster(3), MAX)
    assert isinstance(v, Fraction)
    assert v == Fraction(1, 3)
    assert clustering_value(g, Clustering.one_cluster(3), MIN) == Fraction(1, 7)


def test_zero_weight_is_nonedge():
    g = SignedGraph(3, {(0, 1): 0, (1, 2): 1})
    assert g.edge_count == 1
    assert g.weight(0, 1) == 0
    assert (0, 1) not in contributing_edges(g, Clustering.one_cluster(3), MAX)


def test_graph_rejects_bad_input():
    with pytest.raises(ValueError):
        SignedGraph(3, {(1, 1): 1})
    with pytest.raises(ValueError):
        SignedGraph(2, {(0, 5): 1})
    with pytest.raises(TypeError):
        SignedGraph(2, {(0, 1): 0.5})
    with pytest.raises(ValueError):
        SignedGraph(3, [((0, 1), Fraction(1)), ((1, 0), Fraction(-1))])


def test_clustering_domain_mismatch():
    g = SignedGraph(3, {(0, 1): 1})
    with pytest.raises(ValueError):
        clustering_value(g, Clustering([0, 0]), MAX)


def test_normalize_examples():
    g = SignedGraph(2, {(0, 1): 2})
    h = SignedGraph(3, {(0, 1): 2, (1, 2): -4})
    norm, flag = normalize_weights(h)
    assert flag
    assert norm.weight(0, 1) == Fraction(1, 2)
    assert norm.weight(1, 2) == -1
    same, flag = normalize_weights(SignedGraph(2, {(0, 1): 1}))
    assert flag and same.weight(0, 1) == 1
    empty, flag = normalize_weights(SignedGraph(3))
    assert not flag and empty.edge_count == 0
    norm2, _ = normalize_weights(g)
    assert norm2.weight(0, 1) == 1


def test_normalize_preserves_argmax_set():
    # brute force the full optimal set before and after scaling
    rng = random.Random(47)
    for _ in range(20):
        n = rng.randint(3, 5)
        weights = {}
        for u in range(n):
            for v in range(u + 1, n):
                p = rng.randint(-4, 4)
                if p:
                    weights[(u, v)] = Fraction(p, 2)
        g = SignedGraph(n, weights)
        if g.edge_count == 0:
            continue
        norm, _ = normalize_weights(g)
        for objective in (MAX, MIN):
            best = {}
            for graph in (g, norm):
                values = {}
                for labels in iter_partitions_by_merging(n):
                    c = Clustering(labels)
                    values[c] = clustering_value(graph, c, objective)
                extreme = max(values.values()) if objective is MAX else min(values.values())
                best[graph] = {c for c, v in values.items() if v == extreme}
            assert best[g] == best[norm]


def test_graph_text_roundtrip():
    g = SignedGraph(4, {(0, 1): Fraction(1, 2), (2, 3): -2, (0, 3): Fraction(5, 6)})
    text = format_graph(g)
    assert parse_graph(text) == g
    # decimals parse exactly too
    h = parse_graph("2 1\n0 1 0.5\n")
    assert h.weight(0, 1) == Fraction(1, 2)


@pytest.mark.parametrize(
    "text",
    [
        "2 1\n0 0 1\n",          # self-loop
        "2 2\n0 1 1\n1 0 2\n",   # duplicate pair
        "2 1\n0 5 1\n",          # out of range
        "2 2\n0 1 1\n",          # edge count mismatch
        "2 1\n0 1 x\n",          # bad weight
        "nope\n",                # bad header
    ],
)
def test_graph_text_format_errors(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_clustering_canonical_form():
    assert Clustering([5, 5, 2, 5]).labels == (0, 0, 1, 0)
    assert Clustering.singletons(3).labels == (0, 1, 2)
    assert Clustering.one_cluster(3).num_clusters == 1
    assert Clustering([]).num_clusters == 0
