"""Optimal search over ground tasks: A* with admissible heuristics plus
exhaustive oracles used to cross-check it.

All searches keep g-values exact: action costs are rescaled once per task by
the lcm of their denominators, so the inner loops compare plain ints and the
reported costs are reconstructed as exact rationals. Node reopening is
enabled, so optimality only needs admissibility, not consistency.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .model import Plan, State, Task, bits

_INF = math.inf


class ResourceLimitExceeded(Exception):
    """Exhaustive enumeration exceeded its state budget."""


class Outcome(Enum):
    SOLVED = "solved"
    PROVED_UNSOLVABLE = "proved_unsolvable"
    RESOURCE_LIMIT = "resource_limit"


class Heuristic(Enum):
    BLIND = "blind"
    HMAX = "hmax"
    GOALCOUNT = "goalcount"

    @property
    def admissible(self) -> bool:
        # goalcount may overestimate (one action can achieve several goals):
        # satisficing use only, never for optimality claims
        return self is not Heuristic.GOALCOUNT


@dataclass(frozen=True)
class SearchLimits:
    max_expansions: int = 1_000_000
    max_seconds: float = 30.0


@dataclass(frozen=True)
class SearchResult:
    outcome: Outcome
    plan: Plan | None
    cost: Fraction | None
    expanded: int
    generated: int
    elapsed: float

    @property
    def solved(self) -> bool:
        return self.outcome is Outcome.SOLVED


def _cost_scale(task: Task) -> int:
    return math.lcm(1, *(a.cost.denominator for a in task.actions))


class _HMaxEvaluator:
    """Delete-relaxation max heuristic over positive preconditions.

    Negative preconditions are ignored (a further relaxation, so the value
    stays admissible). Works on pre-scaled integer costs.
    """

    def __init__(self, task: Task, scaled_costs: list[int]):
        self.n = len(task.fluents)
        self.goal_ids = tuple(bits(task.goal))
        self.acts = tuple(
            (tuple(bits(a.pre_pos)), tuple(bits(a.add)), c)
            for a, c in zip(task.actions, scaled_costs)
            if a.add
        )
        self.goal_mask = task.goal

    def __call__(self, state: State):
        """Scaled h value as int, or None when the goal is relaxed-unreachable."""
        if self.goal_mask & ~state == 0:
            return 0
        cost = [0 if state >> i & 1 else _INF for i in range(self.n)]
        acts = self.acts
        changed = True
        while changed:
            changed = False
            for pre, add, c in acts:
                worst = 0
                for p in pre:
                    cp = cost[p]
                    if cp > worst:
                        worst = cp
                if worst == _INF:
                    continue
                val = worst + c
                for f in add:
                    if val < cost[f]:
                        cost[f] = val
                        changed = True
        h = 0
        for gid in self.goal_ids:
            c = cost[gid]
            if c == _INF:
                return None
            if c > h:
                h = c
        return h


def h_max(task: Task, state: State) -> Fraction | float:
    """Max-relaxation estimate of the cheapest remaining cost from `state`.

    Returns math.inf iff the goal is unreachable even in the relaxation.
    """
    scale = _cost_scale(task)
    ev = _HMaxEvaluator(task, [int(a.cost * scale) for a in task.actions])
    h = ev(state)
    return _INF if h is None else Fraction(h, scale)


def _make_heuristic(task: Task, heuristic: Heuristic, scaled_costs: list[int], scale: int):
    if heuristic is Heuristic.BLIND:
        return lambda s: 0
    if heuristic is Heuristic.HMAX:
        ev = _HMaxEvaluator(task, scaled_costs)
        cache: dict[State, int | None] = {}

        def h(s: State):
            v = cache.get(s, _INF)
            if v is _INF:
                v = cache[s] = ev(s)
            return v

        return h
    goal = task.goal

    def goalcount(s: State):
        return (goal & ~s).bit_count() * scale

    return goalcount


def astar(task: Task, heuristic: Heuristic = Heuristic.HMAX,
          limits: SearchLimits | None = None) -> SearchResult:
    """A* over the task's state space; optimal whenever `heuristic` is
    admissible. Duplicate detection by full-state hashing, ties broken by
    smaller h then FIFO, reopening enabled.
    """
    limits = limits or SearchLimits()
    t0 = time.perf_counter()
    scale = _cost_scale(task)
    scaled_costs = [int(a.cost * scale) for a in task.actions]
    h_fun = _make_heuristic(task, heuristic, scaled_costs, scale)
    acts = [(a.pre_pos, a.pre_neg, a.add, a.delete, c)
            for a, c in zip(task.actions, scaled_costs)]
    goal = task.goal
    init = task.init

    expanded = 0
    generated = 0

    h0 = h_fun(init)
    if h0 is None:
        return SearchResult(Outcome.PROVED_UNSOLVABLE, None, None, 0, 0,
                            time.perf_counter() - t0)
    g: dict[State, int] = {init: 0}
    parent: dict[State, tuple[State, int] | None] = {init: None}
    heap: list[tuple[int, int, int, State]] = [(h0, h0, 0, init)]
    tie = 0

    while heap:
        f, h, _, s = heapq.heappop(heap)
        gs = f - h
        if gs != g[s]:
            continue  # stale entry; a cheaper path was found since the push
        if goal & ~s == 0:
            steps = []
            cur = s
            while True:
                prev = parent[cur]
                if prev is None:
                    break
                cur, idx = prev
                steps.append(task.actions[idx])
            steps.reverse()
            return SearchResult(Outcome.SOLVED, Plan(steps), Fraction(gs, scale),
                                expanded, generated, time.perf_counter() - t0)
        expanded += 1
        if expanded > limits.max_expansions or (
                expanded % 512 == 0
                and time.perf_counter() - t0 > limits.max_seconds):
            return SearchResult(Outcome.RESOURCE_LIMIT, None, None,
                                expanded, generated, time.perf_counter() - t0)
        for idx, (pp, pn, add, dele, c) in enumerate(acts):
            if pp & s == pp and pn & s == 0:
                t = (s & ~dele) | add
                gt = gs + c
                old = g.get(t)
                if old is None or gt < old:
                    g[t] = gt
                    parent[t] = (s, idx)
                    ht = h_fun(t)
                    if ht is None:
                        continue  # provably dead even in the relaxation
                    tie += 1
                    generated += 1
                    heapq.heappush(heap, (gt + ht, ht, tie, t))

    return SearchResult(Outcome.PROVED_UNSOLVABLE, None, None,
                        expanded, generated, time.perf_counter() - t0)


def brute_force_optimal(task: Task, max_states: int = 100_000) -> SearchResult:
    """Ground-truth optimum by uniform-cost search over the reachable space."""
    t0 = time.perf_counter()
    scale = _cost_scale(task)
    scaled_costs = [int(a.cost * scale) for a in task.actions]
    acts = [(a.pre_pos, a.pre_neg, a.add, a.delete, c)
            for a, c in zip(task.actions, scaled_costs)]
    goal = task.goal

    g: dict[State, int] = {task.init: 0}
    parent: dict[State, tuple[State, int] | None] = {task.init: None}
    heap: list[tuple[int, int, State]] = [(0, 0, task.init)]
    tie = 0
    expanded = 0
    generated = 0

    while heap:
        gs, _, s = heapq.heappop(heap)
        if gs != g[s]:
            continue
        if goal & ~s == 0:
            steps = []
            cur = s
            while parent[cur] is not None:
                cur, idx = parent[cur]
                steps.append(task.actions[idx])
            steps.reverse()
            return SearchResult(Outcome.SOLVED, Plan(steps), Fraction(gs, scale),
                                expanded, generated, time.perf_counter() - t0)
        expanded += 1
        for idx, (pp, pn, add, dele, c) in enumerate(acts):
            if pp & s == pp and pn & s == 0:
                t = (s & ~dele) | add
                gt = gs + c
                old = g.get(t)
                if old is None or gt < old:
                    if old is None and len(g) >= max_states:
                        return SearchResult(Outcome.RESOURCE_LIMIT, None, None,
                                            expanded, generated,
                                            time.perf_counter() - t0)
                    g[t] = gt
                    parent[t] = (s, idx)
                    tie += 1
                    generated += 1
                    heapq.heappush(heap, (gt, tie, t))

    return SearchResult(Outcome.PROVED_UNSOLVABLE, None, None,
                        expanded, generated, time.perf_counter() - t0)


def enumerate_goal_states(task: Task, max_states: int = 100_000) -> dict[State, Fraction]:
    """Cheapest cost of every reachable goal state (full Dijkstra sweep).

    Together with the disruption of each returned state this yields the exact
    cost/disruption trade-off front. Raises ResourceLimitExceeded when the
    reachable space does not fit the budget.
    """
    scale = _cost_scale(task)
    scaled_costs = [int(a.cost * scale) for a in task.actions]
    acts = [(a.pre_pos, a.pre_neg, a.add, a.delete, c)
            for a, c in zip(task.actions, scaled_costs)]
    goal = task.goal

    g: dict[State, int] = {task.init: 0}
    heap: list[tuple[int, int, State]] = [(0, 0, task.init)]
    tie = 0
    result: dict[State, Fraction] = {}

    while heap:
        gs, _, s = heapq.heappop(heap)
        if gs != g[s]:
            continue
        if goal & ~s == 0:
            result[s] = Fraction(gs, scale)
        for idx, (pp, pn, add, dele, c) in enumerate(acts):
            if pp & s == pp and pn & s == 0:
                t = (s & ~dele) | add
                gt = gs + c
                old = g.get(t)
                if old is None or gt < old:
                    if old is None and len(g) >= max_states:
                        raise ResourceLimitExceeded(
                            f"reachable space exceeds {max_states} states")
                    g[t] = gt
                    tie += 1
                    heapq.heappush(heap, (gt, tie, t))

    return result
