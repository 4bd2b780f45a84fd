"""Seeded random task generator for property tests and benchmark families."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .model import Fluent, GroundAction, State, Task, applicable, progress


@dataclass(frozen=True)
class RandomTaskParams:
    n_fluents: int = 6
    n_actions: int = 6
    max_effect: int = 2          # caps |add|, |delete| and either precondition set
    cost_range: tuple[int, int] = (1, 10)
    goal_from_walk: bool | None = None  # None: coin flip, ~50% solvable overall
    walk_length: int = 6

    def __post_init__(self):
        if self.n_fluents <= 0 or self.n_actions <= 0 or self.max_effect <= 0:
            raise ValueError("generator sizes must be positive")
        lo, hi = self.cost_range
        if lo < 0 or hi < lo:
            raise ValueError(f"bad cost range {self.cost_range}")


def random_task(seed: int, params: RandomTaskParams = RandomTaskParams()) -> Task:
    """Deterministically generate a well-formed task from `seed`.

    With goal_from_walk the goal is sampled from the state reached by a
    random applicable walk, so the walk itself witnesses solvability.
    """
    rng = random.Random(seed)
    n = params.n_fluents
    ids = list(range(n))
    fluents = tuple(Fluent(i, f"f{i}") for i in ids)

    def pick(pool, k_max):
        k = rng.randint(0, min(k_max, len(pool)))
        return rng.sample(pool, k)

    def mask(sel) -> State:
        m = 0
        for i in sel:
            m |= 1 << i
        return m

    actions = []
    for i in range(params.n_actions):
        add = rng.sample(ids, rng.randint(1, params.max_effect))
        rest = [f for f in ids if f not in add]
        delete = pick(rest, params.max_effect)
        pre_pos = pick(ids, params.max_effect)
        pre_neg = pick([f for f in ids if f not in pre_pos], params.max_effect)
        cost = rng.randint(*params.cost_range)
        actions.append(GroundAction(f"a{i}", mask(pre_pos), mask(pre_neg),
                                    mask(add), mask(delete), Fraction(cost)))
    actions = tuple(actions)

    init = mask([i for i in ids if rng.random() < 0.5])

    walk_goal = params.goal_from_walk
    if walk_goal is None:
        walk_goal = rng.random() < 0.5
    if walk_goal:
        s = init
        for _ in range(rng.randint(1, params.walk_length)):
            options = [a for a in actions if applicable(s, a)]
            if not options:
                break
            s = progress(s, rng.choice(options))
        true_ids = [i for i in ids if s >> i & 1]
        goal = mask(rng.sample(true_ids, min(len(true_ids), rng.randint(1, 2)))
                    if true_ids else [])
    else:
        goal = mask(rng.sample(ids, rng.randint(1, max(1, n // 2))))

    return Task(fluents, actions, init, goal)
