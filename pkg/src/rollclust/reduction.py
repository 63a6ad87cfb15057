"""The roll-round-solve pipeline and its trial harness.

reduce_and_solve rolls a normalized base graph, rounds the rolled weights,
hands the rounded graph to a solver, and reads one candidate clustering of
the base graph out of every active duplicate. Candidates are always scored
against the original base weights. The report carries exact accounting:
the candidate values must sum to the solver clustering's value on the
pre-rounding rolled graph, and the post-rounding value must agree whether
computed directly or summed as |rounded weight| over the pre-rounding
contributing set. Both identities are checked on every call.

run_trials repeats the pipeline with per-trial derived seeds against the
exact optimum of the base graph and reports how often the best candidate
fails the (lambda+epsilon) target, the distribution of best/OPT ratios,
and drift statistics when available. Frequencies are measurements, not
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .core import Clustering, ObjectiveKind, SignedGraph, clustering_value, contributing_edges
from .jsonutil import frac_from_str, frac_to_str, opt_frac_from_str, opt_frac_to_str
from .roll import build_roll, induced_clustering, valid_roll_size
from .rounding import DeviationStats, RoundingParams, deviation_stats, round_graph
from .solvers import SolveResult, SolverKind, SolverSpec, run_solver, solve_exact
from .streams import derive_seed


@dataclass(frozen=True)
class ReductionConfig:
    objective: ObjectiveKind
    t: int
    rounding: RoundingParams
    solver: SolverSpec
    epsilon: Fraction
    lambda_ref: Fraction

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "lambda_ref", Fraction(self.lambda_ref))
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.lambda_ref < 1:
            raise ValueError("lambda_ref must be at least 1")
        if self.t < 0:
            raise ValueError("t must be non-negative")


@dataclass(frozen=True)
class ReductionReport:
    config: ReductionConfig
    rows: int
    grid_clustering: Clustering
    candidate_values: "tuple[Fraction, ...]"
    best_index: int
    best: SolveResult
    rolled_value_pre: Fraction
    rolled_value_post: Fraction
    stats: Optional[DeviationStats]
    rounding_seed: int
    solver_seed: int
    notes: "tuple[str, ...]"


def duplication_clustering(u: Clustering, rows: int) -> Clustering:
    """Lift a base clustering to the grid: node (i, j) takes u's label of
    column j. Its value on the pre-rounding rolled graph is exactly
    (rows^2/n) times u's value on the base graph."""
    return Clustering(list(u.labels) * rows)


def reduce_and_solve(
    g: SignedGraph, cfg: ReductionConfig, u_ref: "Clustering | None" = None
) -> ReductionReport:
    """Run roll, round, solve once and account for the results exactly.

    g must be normalized (all |weight| <= 1). When u_ref is given and
    lambda_ref > 1, deviation statistics against u_ref's duplication
    clustering are included.
    """
    if g.max_abs_weight() > 1:
        raise ValueError("base graph must be normalized to |weight| <= 1")
    rows = valid_roll_size(g.n, cfg.t)
    rolled = build_roll(g, rows)
    notes: "list[str]" = []
    spread = cfg.rounding.alpha + cfg.rounding.beta
    if spread * spread > rows * g.n:
        notes.append("alpha+beta exceeds sqrt(rows*n); tail bounds are weak at this size")

    outcome = round_graph(rolled.graph, cfg.rounding)
    grid_res = run_solver(outcome.after, cfg.objective, cfg.solver)

    candidates = [induced_clustering(rolled, grid_res.clustering, d) for d in rolled.active]
    values = tuple(clustering_value(g, c, cfg.objective) for c in candidates)

    best_index = 0
    for i, val in enumerate(values):
        if cfg.objective is ObjectiveKind.MAX_AGREE:
            if val > values[best_index]:
                best_index = i
        elif val < values[best_index]:
            best_index = i
    best = SolveResult(candidates[best_index], values[best_index], cfg.objective, cfg.solver)

    rolled_value_pre = clustering_value(rolled.graph, grid_res.clustering, cfg.objective)
    if sum(values, Fraction(0)) != rolled_value_pre:
        raise RuntimeError("candidate values do not sum to the pre-rounding rolled value")

    rolled_value_post = clustering_value(outcome.after, grid_res.clustering, cfg.objective)
    pre_set = contributing_edges(rolled.graph, grid_res.clustering, cfg.objective)
    surviving = sum((abs(outcome.after.weight(u, v)) for u, v in pre_set), Fraction(0))
    if surviving != rolled_value_post:
        raise RuntimeError("post-rounding value disagrees with the contributing-set sum")
    if grid_res.value != rolled_value_post:
        raise RuntimeError("solver-reported value disagrees with direct evaluation")

    stats = None
    if u_ref is not None:
        if cfg.lambda_ref > 1:
            u_n = duplication_clustering(u_ref, rows)
            stats = deviation_stats(
                outcome,
                grid_res.clustering,
                u_n,
                cfg.lambda_ref,
                cfg.objective,
                epsilon=cfg.epsilon,
            )
        else:
            notes.append("deviation stats skipped: lambda_ref is 1")

    return ReductionReport(
        config=cfg,
        rows=rows,
        grid_clustering=grid_res.clustering,
        candidate_values=values,
        best_index=best_index,
        best=best,
        rolled_value_pre=rolled_value_pre,
        rolled_value_post=rolled_value_post,
        stats=stats,
        rounding_seed=cfg.rounding.seed,
        solver_seed=cfg.solver.seed,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class TrialSummary:
    rounding_seed: int
    solver_seed: int
    best_value: Fraction
    ratio: Optional[Fraction]
    bad: bool
    gap: Optional[Fraction]


@dataclass(frozen=True)
class TrialAggregate:
    config: ReductionConfig
    trials: int
    opt_value: Fraction
    opt_clustering: Clustering
    opt_below_one: bool
    bad_event_freq: Fraction
    ratios: "tuple[Optional[Fraction], ...]"
    gap_mean: Optional[Fraction]
    gap_min: Optional[Fraction]
    gap_max: Optional[Fraction]
    per_trial: "tuple[TrialSummary, ...]"


def run_trials(g: SignedGraph, cfg: ReductionConfig, trials: int) -> TrialAggregate:
    """Repeat reduce_and_solve with derived per-trial seeds and measure the
    bad event: best candidate worse than OPT/(lambda+eps) for MaxAgree, or
    worse than (lambda+eps)*OPT for MinDisagree. Needs the base graph to be
    small enough for the exact oracle."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    opt = solve_exact(g, cfg.objective)
    target = cfg.lambda_ref + cfg.epsilon

    summaries = []
    gaps = []
    bad_count = 0
    for i in range(trials):
        r_seed = derive_seed(cfg.rounding.seed, "trial", i, "round")
        s_seed = derive_seed(cfg.solver.seed, "trial", i, "solve")
        cfg_i = replace(
            cfg,
            rounding=replace(cfg.rounding, seed=r_seed),
            solver=replace(cfg.solver, seed=s_seed),
        )
        rep = reduce_and_solve(g, cfg_i, u_ref=opt.clustering)
        if cfg.objective is ObjectiveKind.MAX_AGREE:
            bad = rep.best.value < opt.value / target
        else:
            bad = rep.best.value > target * opt.value
        ratio = None if opt.value == 0 else rep.best.value / opt.value
        gap = rep.stats.gap if rep.stats is not None else None
        if gap is not None:
            gaps.append(gap)
        if bad:
            bad_count += 1
        summaries.append(
            TrialSummary(
                rounding_seed=r_seed,
                solver_seed=s_seed,
                best_value=rep.best.value,
                ratio=ratio,
                bad=bad,
                gap=gap,
            )
        )

    return TrialAggregate(
        config=cfg,
        trials=trials,
        opt_value=opt.value,
        opt_clustering=opt.clustering,
        opt_below_one=opt.value < 1,
        bad_event_freq=Fraction(bad_count, trials),
        ratios=tuple(s.ratio for s in summaries),
        gap_mean=(sum(gaps, Fraction(0)) / len(gaps)) if gaps else None,
        gap_min=min(gaps) if gaps else None,
        gap_max=max(gaps) if gaps else None,
        per_trial=tuple(summaries),
    )


# --- JSON round-trip ------------------------------------------------------


def config_to_dict(cfg: ReductionConfig) -> dict:
    return {
        "objective": cfg.objective.value,
        "t": cfg.t,
        "alpha": frac_to_str(cfg.rounding.alpha),
        "beta": frac_to_str(cfg.rounding.beta),
        "rounding_seed": cfg.rounding.seed,
        "solver": cfg.solver.kind.value,
        "solver_seed": cfg.solver.seed,
        "budget": cfg.solver.budget,
        "epsilon": frac_to_str(cfg.epsilon),
        "lambda": frac_to_str(cfg.lambda_ref),
    }


def config_from_dict(d: dict) -> ReductionConfig:
    return ReductionConfig(
        objective=ObjectiveKind.parse(d["objective"]),
        t=d["t"],
        rounding=RoundingParams(
            alpha=frac_from_str(d["alpha"]),
            beta=frac_from_str(d["beta"]),
            seed=d["rounding_seed"],
        ),
        solver=SolverSpec(
            kind=SolverKind.parse(d["solver"]),
            seed=d["solver_seed"],
            budget=d["budget"],
        ),
        epsilon=frac_from_str(d["epsilon"]),
        lambda_ref=frac_from_str(d["lambda"]),
    )


def aggregate_to_dict(agg: TrialAggregate) -> dict:
    return {
        "config": config_to_dict(agg.config),
        "trials": agg.trials,
        "opt_value": frac_to_str(agg.opt_value),
        "opt_clustering": list(agg.opt_clustering.labels),
        "opt_below_one": agg.opt_below_one,
        "bad_event_freq": frac_to_str(agg.bad_event_freq),
        "ratios": [opt_frac_to_str(r) for r in agg.ratios],
        "gap_mean": opt_frac_to_str(agg.gap_mean),
        "gap_min": opt_frac_to_str(agg.gap_min),
        "gap_max": opt_frac_to_str(agg.gap_max),
        "per_trial": [
            {
                "rounding_seed": s.rounding_seed,
                "solver_seed": s.solver_seed,
                "best_value": frac_to_str(s.best_value),
                "ratio": opt_frac_to_str(s.ratio),
                "bad": s.bad,
                "gap": opt_frac_to_str(s.gap),
            }
            for s in agg.per_trial
        ],
    }


def aggregate_from_dict(d: dict) -> TrialAggregate:
    summaries = tuple(
        TrialSummary(
            rounding_seed=s["rounding_seed"],
            solver_seed=s["solver_seed"],
            best_value=frac_from_str(s["best_value"]),
            ratio=opt_frac_from_str(s["ratio"]),
            bad=s["bad"],
            gap=opt_frac_from_str(s["gap"]),
        )
        for s in d["per_trial"]
    )
    return TrialAggregate(
        config=config_from_dict(d["config"]),
        trials=d["trials"],
        opt_value=frac_from_str(d["opt_value"]),
        opt_clustering=Clustering(d["opt_clustering"]),
        opt_below_one=d["opt_below_one"],
        bad_event_freq=frac_from_str(d["bad_event_freq"]),
        ratios=tuple(opt_frac_from_str(r) for r in d["ratios"]),
        gap_mean=opt_frac_from_str(d["gap_mean"]),
        gap_min=opt_frac_from_str(d["gap_min"]),
        gap_max=opt_frac_from_str(d["gap_max"]),
        per_trial=summaries,
    )
