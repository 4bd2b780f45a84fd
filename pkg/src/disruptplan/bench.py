"""Benchmark harness: solve a corpus under every (approach, omega) cell and
report costs, true disruption, proxy disruption, time overhead and the exact
cost/disruption trade-off fronts."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .compile import compile_eager, compile_lazy, decompose_cost, strip_plan
from .corpus import CorpusEntry, bundled_corpus
from .disruption import disruption_bounds, plan_disruption, state_disruption
from .pddl import ground, parse_domain, parse_problem
from .search import (Heuristic, ResourceLimitExceeded, SearchLimits, astar,
                     enumerate_goal_states)

CSV_HEADER = ("domain,problem,approach,omega,outcome,cost,base_cost,"
              "disruption,disruption_units,expansions,elapsed_s")

DEFAULT_OMEGAS = (Fraction(1, 1000), Fraction(1), Fraction(1000))

APPROACHES = ("original", "eager", "lazy")


@dataclass(frozen=True)
class BenchConfig:
    corpus: tuple[CorpusEntry, ...]
    omegas: tuple[Fraction, ...] = DEFAULT_OMEGAS
    approaches: tuple[str, ...] = APPROACHES
    heuristic: Heuristic = Heuristic.HMAX
    limits: SearchLimits = SearchLimits()
    oracle_budget: int = 100_000
    jobs: int = 1
    repeats: int = 1   # wall-clock rows keep the fastest of `repeats` runs

    def __post_init__(self):
        for w in self.omegas:
            if w <= 0:
                raise ValueError(f"omega must be positive, got {w}")
        for a in self.approaches:
            if a not in APPROACHES:
                raise ValueError(f"unknown approach {a!r}")


@dataclass(frozen=True)
class ExperimentRow:
    domain: str
    problem: str
    approach: str
    omega: Fraction | None
    outcome: str
    cost: Fraction | None
    base_cost: Fraction | None
    disruption: int | None          # true metric, recomputed on the stripped plan
    disruption_units: Fraction | None  # compiled proxy (disruption part / omega)
    lower_bound: int | None
    expansions: int
    elapsed_s: float


@dataclass(frozen=True)
class ParetoPoint:
    domain: str
    problem: str
    cost: Fraction
    disruption: int


@dataclass
class BenchResult:
    rows: list[ExperimentRow] = field(default_factory=list)
    overhead: list[tuple[str, str, str, Fraction | None, float]] = field(default_factory=list)
    pareto: list[ParetoPoint] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _run_cell(args) -> tuple:
    """One (problem, approach, omega) solve; returns (row, error message).

    Re-grounds from text so that the elapsed time covers
    parse+ground+compile+solve, as the overhead factor requires. Failures
    are reported, not raised, so the surrounding run continues. Runs in a
    worker process when jobs > 1.
    """
    (entry, approach, omega_str, heuristic_name, max_expansions, max_seconds,
     repeats) = args
    try:
        return _solve_cell(entry, approach, omega_str, heuristic_name,
                           max_expansions, max_seconds, repeats), None
    except Exception as e:
        return None, (f"{entry.family}/{entry.problem} {approach}"
                      f"{' w=' + omega_str if omega_str else ''}: {e}")


def _solve_cell(entry, approach, omega_str, heuristic_name,
                max_expansions, max_seconds, repeats) -> ExperimentRow:
    heuristic = Heuristic(heuristic_name)
    omega = Fraction(omega_str) if omega_str else None
    limits = SearchLimits(max_expansions, max_seconds)

    best = None
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter()
        domain = parse_domain(entry.domain_text)
        problem = parse_problem(entry.problem_text, domain)
        task = ground(domain, problem)
        compiled = None
        if approach == "lazy":
            compiled = compile_lazy(task, omega)
        elif approach == "eager":
            compiled = compile_eager(task, omega)
        result = astar(compiled.task if compiled else task, heuristic, limits)
        elapsed = time.perf_counter() - t0
        if best is None or elapsed < best[-1]:
            best = (task, compiled, result, elapsed)
    task, compiled, result, elapsed = best

    cost = base = units = None
    disruption = None
    if result.solved:
        cost = result.cost
        if compiled is None:
            base = cost
            disruption = plan_disruption(task, result.plan).value
        else:
            decomp = decompose_cost(compiled, result.plan)
            base = decomp.base
            units = decomp.disruption_units
            disruption = plan_disruption(task, strip_plan(compiled, result.plan)).value
    return ExperimentRow(
        domain=entry.family, problem=entry.problem, approach=approach,
        omega=omega, outcome=result.outcome.value, cost=cost, base_cost=base,
        disruption=disruption, disruption_units=units,
        lower_bound=disruption_bounds(task).lower,
        expansions=result.expanded, elapsed_s=elapsed,
    )


def _cells(config: BenchConfig):
    for entry in config.corpus:
        for approach in config.approaches:
            omegas = (None,) if approach == "original" else config.omegas
            for omega in omegas:
                yield (entry, approach, "" if omega is None else str(omega),
                       config.heuristic.value, config.limits.max_expansions,
                       config.limits.max_seconds, config.repeats)


def run_bench(config: BenchConfig) -> BenchResult:
    cells = list(_cells(config))
    out = BenchResult()
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_cell, cells))
    else:
        results = [_run_cell(c) for c in cells]

    out.errors.extend(err for _, err in results if err)
    rows = [row for row, _ in results if row is not None]
    rows.sort(key=lambda r: (r.domain, r.problem, r.approach,
                             r.omega if r.omega is not None else Fraction(-1)))
    out.rows = rows

    # overhead factors, only over problems every approach solved
    by_problem: dict[tuple[str, str], list[ExperimentRow]] = {}
    for r in rows:
        by_problem.setdefault((r.domain, r.problem), []).append(r)
    for (dom, prob), group in sorted(by_problem.items()):
        if any(r.outcome != "solved" for r in group):
            continue
        original = next((r for r in group if r.approach == "original"), None)
        if original is None or original.elapsed_s <= 0:
            continue
        for r in group:
            if r.approach != "original":
                out.overhead.append((dom, prob, r.approach, r.omega,
                                     r.elapsed_s / original.elapsed_s))

    # exact cost/disruption fronts from the goal-state oracle
    for entry in config.corpus:
        try:
            domain = parse_domain(entry.domain_text)
            problem = parse_problem(entry.problem_text, domain)
            task = ground(domain, problem)
            goal_states = enumerate_goal_states(task, config.oracle_budget)
        except ResourceLimitExceeded:
            out.errors.append(f"{entry.family}/{entry.problem}: oracle budget exceeded")
            continue
        except Exception as e:  # keep the run going, record the failure
            out.errors.append(f"{entry.family}/{entry.problem}: {e}")
            continue
        points = sorted(
            {(c, state_disruption(task, task.init, s).value)
             for s, c in goal_states.items()})
        for cost, dis in points:
            if any(oc <= cost and od <= dis and (oc, od) != (cost, dis)
                   for oc, od in points):
                continue
            out.pareto.append(ParetoPoint(entry.family, entry.problem, cost, dis))
    return out


def write_results_csv(rows: list[ExperimentRow], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER.split(","))
        for r in rows:
            w.writerow([r.domain, r.problem, r.approach, _fmt(r.omega),
                        r.outcome, _fmt(r.cost), _fmt(r.base_cost),
                        _fmt(r.disruption), _fmt(r.disruption_units),
                        r.expansions, f"{r.elapsed_s:.6f}"])


def write_overhead_csv(overhead, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["domain", "problem", "approach", "omega", "overhead_factor"])
        for dom, prob, approach, omega, factor in overhead:
            w.writerow([dom, prob, approach, _fmt(omega), f"{factor:.4f}"])


def write_pareto_csv(points: list[ParetoPoint], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["domain", "problem", "cost", "disruption"])
        for p in points:
            w.writerow([p.domain, p.problem, _fmt(p.cost), p.disruption])


def default_config(**overrides) -> BenchConfig:
    corpus = overrides.pop("corpus", None)
    if corpus is None:
        corpus = tuple(bundled_corpus())
    return BenchConfig(corpus=tuple(corpus), **overrides)
