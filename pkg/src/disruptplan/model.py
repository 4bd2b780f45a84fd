"""Ground STRIPS task model: fluents, actions, bit-vector states, plans.

States are plain ints used as bit-vectors over fluent ids (bit i set iff
fluent i is true), so set operations on states are single machine ops for
small tasks. Action costs are exact non-negative rationals; all cost
arithmetic in this package is exact, never floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

State = int


class NotApplicable(Exception):
    """Action preconditions do not hold in the given state."""


class NotApplicableAtStep(NotApplicable):
    """Plan execution failed at 0-based `step` (first failing action)."""

    def __init__(self, step: int, action_name: str):
        super().__init__(f"step {step} ({action_name!r}) is not applicable")
        self.step = step
        self.action_name = action_name


def bits(mask: State) -> Iterator[int]:
    """Yield the fluent ids set in a state mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Fluent:
    id: int
    name: str


@dataclass(frozen=True)
class GroundAction:
    """Ground action over a fixed fluent universe; all four sets are masks."""

    name: str
    pre_pos: State
    pre_neg: State
    add: State
    delete: State
    cost: Fraction

    def __post_init__(self):
        object.__setattr__(self, "cost", Fraction(self.cost))
        if self.cost < 0:
            raise ValueError(f"action {self.name!r} has negative cost {self.cost}")
        if self.add & self.delete:
            raise ValueError(f"action {self.name!r} has overlapping add/delete effects")
        if self.pre_pos & self.pre_neg:
            raise ValueError(f"action {self.name!r} has overlapping pos/neg preconditions")


class Task:
    """Immutable ground planning task: fluent universe, actions, init and goal.

    Owns the fluent id<->name interning table; fluent ids are dense
    0..len(fluents)-1. Fluent and action names must be unique. Safe to share
    across threads: nothing here mutates after construction.
    """

    __slots__ = ("fluents", "actions", "init", "goal", "universe",
                 "_fluent_ids", "_action_index")

    def __init__(self, fluents: Sequence[Fluent], actions: Sequence[GroundAction],
                 init: State, goal: State):
        fluents = tuple(fluents)
        actions = tuple(actions)
        for i, f in enumerate(fluents):
            if f.id != i:
                raise ValueError(f"fluent ids must be dense: {f} at position {i}")
        fluent_ids = {f.name: f.id for f in fluents}
        if len(fluent_ids) != len(fluents):
            raise ValueError("duplicate fluent names")
        universe = (1 << len(fluents)) - 1
        action_index: dict[str, int] = {}
        for i, a in enumerate(actions):
            if a.name in action_index:
                raise ValueError(f"duplicate action name {a.name!r}")
            action_index[a.name] = i
            if (a.pre_pos | a.pre_neg | a.add | a.delete) & ~universe:
                raise ValueError(f"action {a.name!r} references fluents outside the universe")
        if init & ~universe:
            raise ValueError("init references fluents outside the universe")
        if goal & ~universe:
            raise ValueError("goal references fluents outside the universe")
        self.fluents = fluents
        self.actions = actions
        self.init = init
        self.goal = goal
        self.universe = universe
        self._fluent_ids = fluent_ids
        self._action_index = action_index

    @classmethod
    def create(cls, fluent_names: Sequence[str], actions: Iterable[Mapping],
               init: Iterable[str], goal: Iterable[str]) -> "Task":
        """Build a task from names. Each action is a mapping with keys
        name/pre_pos/pre_neg/add/delete/cost (set keys optional, cost defaults 1)."""
        fluents = tuple(Fluent(i, n) for i, n in enumerate(fluent_names))
        ids = {f.name: f.id for f in fluents}

        def mask(names: Iterable[str]) -> State:
            m = 0
            for n in names:
                m |= 1 << ids[n]
            return m

        ground = tuple(
            GroundAction(
                name=a["name"],
                pre_pos=mask(a.get("pre_pos", ())),
                pre_neg=mask(a.get("pre_neg", ())),
                add=mask(a.get("add", ())),
                delete=mask(a.get("delete", ())),
                cost=Fraction(a.get("cost", 1)),
            )
            for a in actions
        )
        return cls(fluents, ground, mask(init), mask(goal))

    def fluent_id(self, name: str) -> int:
        return self._fluent_ids[name]

    def mask(self, names: Iterable[str]) -> State:
        m = 0
        for n in names:
            m |= 1 << self._fluent_ids[n]
        return m

    def names(self, mask: State) -> tuple[str, ...]:
        return tuple(self.fluents[i].name for i in bits(mask))

    def action(self, name: str) -> GroundAction:
        return self.actions[self._action_index[name]]

    def action_position(self, name: str) -> int:
        return self._action_index[name]

    def has_action(self, name: str) -> bool:
        return name in self._action_index

    def __repr__(self):
        return (f"<Task |F|={len(self.fluents)} |A|={len(self.actions)} "
                f"init={self.names(self.init)} goal={self.names(self.goal)}>")


class Plan:
    """Ordered sequence of task actions; equality is by action-name sequence."""

    __slots__ = ("steps",)

    def __init__(self, steps: Iterable[GroundAction] = ()):
        self.steps = tuple(steps)

    @property
    def cost(self) -> Fraction:
        return plan_cost(self)

    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def __eq__(self, other):
        if not isinstance(other, Plan):
            return NotImplemented
        return self.names() == other.names()

    def __hash__(self):
        return hash(self.names())

    def __repr__(self):
        return f"Plan({list(self.names())}, cost={self.cost})"


def applicable(s: State, a: GroundAction) -> bool:
    """True iff all positive preconditions hold and no negative one does."""
    return (a.pre_pos & s) == a.pre_pos and (a.pre_neg & s) == 0


def progress(s: State, a: GroundAction) -> State:
    """Apply `a` to `s`: deletes removed, adds inserted."""
    if not applicable(s, a):
        raise NotApplicable(f"action {a.name!r} is not applicable")
    return (s & ~a.delete) | a.add


def apply_plan(s: State, plan: Plan | Sequence[GroundAction]) -> tuple[State, tuple[State, ...]]:
    """Run a plan from `s`; returns (final state, state trace of length len+1).

    Raises NotApplicableAtStep identifying the first failing step.
    """
    trace = [s]
    for i, a in enumerate(plan):
        if not applicable(s, a):
            raise NotApplicableAtStep(i, a.name)
        s = (s & ~a.delete) | a.add
        trace.append(s)
    return s, tuple(trace)


def plan_cost(plan: Plan | Sequence[GroundAction]) -> Fraction:
    return sum((a.cost for a in plan), Fraction(0))


class PlanStatus(Enum):
    VALID_GOAL_REACHING = "valid_goal_reaching"
    VALID_NON_GOAL = "valid_non_goal"
    INVALID = "invalid"


@dataclass(frozen=True)
class PlanValidation:
    status: PlanStatus
    failed_step: int | None = None
    final: State | None = None

    @property
    def goal_reaching(self) -> bool:
        return self.status is PlanStatus.VALID_GOAL_REACHING


def validate(task: Task, plan: Plan | Sequence[GroundAction]) -> PlanValidation:
    """Check a plan against the task; failures are reported, never raised."""
    try:
        final, _ = apply_plan(task.init, plan)
    except NotApplicableAtStep as e:
        return PlanValidation(PlanStatus.INVALID, failed_step=e.step)
    if task.goal & ~final:
        return PlanValidation(PlanStatus.VALID_NON_GOAL, final=final)
    return PlanValidation(PlanStatus.VALID_GOAL_REACHING, final=final)


# ---------------------------------------------------------------------------
# Grounded-task JSON interchange
# ---------------------------------------------------------------------------

def cost_to_json(c: Fraction) -> dict:
    return {"num": c.numerator, "den": c.denominator}


def cost_from_json(d: Mapping) -> Fraction:
    return Fraction(d["num"], d["den"])


def task_to_json(task: Task) -> dict:
    """Canonical JSON form: every name list sorted, actions sorted by name."""
    def namelist(mask: State) -> list[str]:
        return sorted(task.names(mask))

    return {
        "fluents": sorted(f.name for f in task.fluents),
        "actions": [
            {
                "name": a.name,
                "pre_pos": namelist(a.pre_pos),
                "pre_neg": namelist(a.pre_neg),
                "add": namelist(a.add),
                "del": namelist(a.delete),
                "cost": cost_to_json(a.cost),
            }
            for a in sorted(task.actions, key=lambda a: a.name)
        ],
        "init": namelist(task.init),
        "goal": namelist(task.goal),
    }


def task_from_json(data: Mapping) -> Task:
    return Task.create(
        data["fluents"],
        [
            {
                "name": a["name"],
                "pre_pos": a.get("pre_pos", ()),
                "pre_neg": a.get("pre_neg", ()),
                "add": a.get("add", ()),
                "delete": a.get("del", ()),
                "cost": cost_from_json(a["cost"]) if "cost" in a else 1,
            }
            for a in data["actions"]
        ],
        data["init"],
        data["goal"],
    )


def task_to_json_str(task: Task) -> str:
    return json.dumps(task_to_json(task), indent=2, sort_keys=True) + "\n"


def isomorphic(a: Task, b: Task) -> bool:
    """True iff the tasks are equal up to fluent reindexing and action order
    (same fluent names, same init/goal, name-bijection of actions preserving
    preconditions, effects and cost)."""
    if sorted(f.name for f in a.fluents) != sorted(f.name for f in b.fluents):
        return False
    if sorted(a.names(a.init)) != sorted(b.names(b.init)):
        return False
    if sorted(a.names(a.goal)) != sorted(b.names(b.goal)):
        return False
    if len(a.actions) != len(b.actions):
        return False
    b_by_name = {act.name: act for act in b.actions}
    for act in a.actions:
        other = b_by_name.get(act.name)
        if other is None or act.cost != other.cost:
            return False
        for mine, theirs in ((act.pre_pos, other.pre_pos), (act.pre_neg, other.pre_neg),
                             (act.add, other.add), (act.delete, other.delete)):
            if sorted(a.names(mine)) != sorted(b.names(theirs)):
                return False
    return True
