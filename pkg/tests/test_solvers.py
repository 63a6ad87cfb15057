import random
from fractions import Fraction

import pytest

from rollclust import (
    Clustering,
    ObjectiveKind,
    SignedGraph,
    clustering_value,
    run_solver,
    solve_exact,
    solve_exact_reference,
    solve_local_search,
    solve_pivot,
    solve_trivial_max,
    SolverKind,
    SolverSpec,
)
from rollclust.solvers import EXACT_NODE_LIMIT, iter_partitions_by_merging

MAX = ObjectiveKind.MAX_AGREE
MIN = ObjectiveKind.MIN_DISAGREE


def random_graph(rng, n, density=0.8):
    weights = {}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                q = rng.randint(1, 5)
                p = rng.randint(-q, q)
                if p:
                    weights[(u, v)] = Fraction(p, q)
    return SignedGraph(n, weights)


def random_complete_pm1(rng, n, plus=0.5):
    return SignedGraph(
        n,
        {
            (u, v): Fraction(1 if rng.random() < plus else -1)
            for u in range(n)
            for v in range(u + 1, n)
        },
    )


def bell(n):
    # Bell numbers by the triangle, for enumeration count checks
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1] if n else 1


def test_exact_triangle():
    g = SignedGraph(3, {(0, 1): 1, (1, 2): -1, (0, 2): 1})
    res = solve_exact(g, MAX)
    assert res.value == 2
    assert clustering_value(g, res.clustering, MAX) == 2
    res_min = solve_exact(g, MIN)
    assert res_min.value == 1
    assert res.value + res_min.value == g.total_abs_weight()


def test_exact_perfect_instance():
    # two +1 cliques joined by -1 edges: zero disagreements possible
    weights = {}
    for u in range(6):
        for v in range(u + 1, 6):
            same = (u < 3) == (v < 3)
            weights[(u, v)] = Fraction(1 if same else -1)
    g = SignedGraph(6, weights)
    assert solve_exact(g, MIN).value == 0
    assert solve_exact(g, MAX).value == g.total_abs_weight()
    assert solve_exact(g, MIN).clustering == Clustering([0, 0, 0, 1, 1, 1])


def test_exact_empty_and_tiny():
    assert solve_exact(SignedGraph(0), MAX).value == 0
    assert solve_exact(SignedGraph(1), MIN).value == 0
    g = SignedGraph(2, {(0, 1): Fraction(-2, 3)})
    assert solve_exact(g, MAX).value == Fraction(2, 3)
    assert solve_exact(g, MAX).clustering == Clustering.singletons(2)


def test_exact_node_limit():
    g = SignedGraph(EXACT_NODE_LIMIT + 1)
    with pytest.raises(ValueError):
        solve_exact(g, MAX)


def test_partition_enumerators_are_complete():
    for n in range(1, 8):
        partitions = {tuple(Clustering(labels).labels) for labels in iter_partitions_by_merging(n)}
        assert len(partitions) == bell(n)
        count = sum(1 for _ in iter_partitions_by_merging(n))
        assert count == bell(n)


def test_exact_agrees_with_reference():
    # the independent enumerator and scorer must land on the same optimum
    rng = random.Random(2718)
    for trial in range(80):
        n = rng.randint(2, 6)
        g = random_graph(rng, n)
        for objective in (MAX, MIN):
            fast = solve_exact(g, objective)
            slow = solve_exact_reference(g, objective)
            assert fast.value == slow.value
            assert clustering_value(g, fast.clustering, objective) == fast.value
            assert clustering_value(g, slow.clustering, objective) == slow.value


def test_exact_optima_are_complementary():
    rng = random.Random(99)
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 6))
        vmax = solve_exact(g, MAX)
        vmin = solve_exact(g, MIN)
        assert vmax.value + vmin.value == g.total_abs_weight()
        # the same clustering is optimal for both objectives
        assert clustering_value(g, vmax.clustering, MIN) == vmin.value


def test_trivial_half_bound():
    rng = random.Random(41)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 7))
        res = solve_trivial_max(g)
        total = g.total_abs_weight()
        assert 2 * res.value >= total
        opt = solve_exact(g, MAX)
        assert total >= opt.value >= res.value


def test_trivial_examples():
    g = SignedGraph(3, {(0, 1): 1, (1, 2): 1, (0, 2): 1})
    assert solve_trivial_max(g).value == 3
    assert solve_trivial_max(g).clustering == Clustering.one_cluster(3)
    h = SignedGraph(3, {(0, 1): -1, (1, 2): -1})
    assert solve_trivial_max(h).value == 2
    assert solve_trivial_max(h).clustering == Clustering.singletons(3)


def test_no_solver_beats_exact_on_max_agree():
    rng = random.Random(7)
    for trial in range(20):
        g = random_graph(rng, 6)
        opt = solve_exact(g, MAX).value
        assert solve_trivial_max(g).value <= opt
        assert solve_local_search(g, MAX, seed=trial).value <= opt


def test_pivot_recovers_perfect_clustering():
    weights = {}
    for u in range(8):
        for v in range(u + 1, 8):
            same = (u % 2) == (v % 2)
            weights[(u, v)] = Fraction(1 if same else -1)
    g = SignedGraph(8, weights)
    for seed in range(10):
        res = solve_pivot(g, seed=seed)
        assert res.value == 0
        assert res.clustering.num_clusters == 2


def test_pivot_requires_complete_pm1():
    with pytest.raises(ValueError):
        solve_pivot(SignedGraph(3, {(0, 1): 1}))
    with pytest.raises(ValueError):
        solve_pivot(SignedGraph(3, {(0, 1): 1, (1, 2): Fraction(1, 2), (0, 2): 1}))


def test_pivot_deterministic_per_seed():
    rng = random.Random(55)
    g = random_complete_pm1(rng, 8)
    assert solve_pivot(g, seed=4).clustering == solve_pivot(g, seed=4).clustering
    results = {solve_pivot(g, seed=s).clustering for s in range(20)}
    assert len(results) > 1  # different seeds explore different pivots


def test_pivot_expected_three_approx_small():
    rng = random.Random(606)
    for _ in range(5):
        g = random_complete_pm1(rng, 7)
        opt = solve_exact(g, MIN).value
        runs = [solve_pivot(g, seed=s).value for s in range(100)]
        mean = sum(runs, Fraction(0)) / len(runs)
        assert mean <= Fraction(31, 10) * max(opt, Fraction(1))


def test_local_search_improves_and_respects_budget():
    # path +1, -1: both trivial clusterings score 1, one move reaches 2
    g = SignedGraph(3, {(0, 1): 1, (1, 2): -1})
    res = solve_local_search(g, MAX, seed=0, budget=100)
    assert res.value == 2
    assert res.value == solve_exact(g, MAX).value
    assert res.value > solve_trivial_max(g).value
    with pytest.raises(ValueError):
        solve_local_search(g, MAX, budget=0)


def test_local_search_never_below_start():
    rng = random.Random(83)
    for trial in range(30):
        g = random_graph(rng, rng.randint(2, 8))
        for objective in (MAX, MIN):
            res = solve_local_search(g, objective, seed=trial, budget=50)
            ones = clustering_value(g, Clustering.one_cluster(g.n), objective)
            sing = clustering_value(g, Clustering.singletons(g.n), objective)
            start = max(ones, sing) if objective is MAX else min(ones, sing)
            if objective is MAX:
                assert res.value >= start
            else:
                assert res.value <= start
            assert clustering_value(g, res.clustering, objective) == res.value


def test_local_search_deterministic():
    rng = random.Random(19)
    g = random_graph(rng, 8)
    a = solve_local_search(g, MIN, seed=1, budget=200)
    b = solve_local_search(g, MIN, seed=1, budget=200)
    assert a.clustering == b.clustering and a.value == b.value


def test_run_solver_dispatch_and_echo():
    rng = random.Random(3)
    g = random_complete_pm1(rng, 6)
    spec = SolverSpec(SolverKind.PIVOT, seed=11)
    res = run_solver(g, MIN, spec)
    assert res.solver == spec
    assert res.objective is MIN
    exact_spec = SolverSpec(SolverKind.EXACT)
    assert run_solver(g, MAX, exact_spec).solver == exact_spec
    with pytest.raises(ValueError):
        run_solver(g, MIN, SolverSpec(SolverKind.TRIVIAL_MAX))
    with pytest.raises(ValueError):
        run_solver(g, MAX, SolverSpec(SolverKind.PIVOT))


def test_solver_spec_validation():
    with pytest.raises(ValueError):
        SolverSpec(SolverKind.LOCAL_SEARCH, budget=0)
