"""Plan disruption: how far a plan's final state drifts from the initial state.

The metric counts the fluents whose truth value differs between the initial
state and the state a plan ends in (symmetric difference of the two fluent
sets). Reports carry the witnessing fluents, not just the count, so callers
can explain *which* initial facts a plan destroys.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Plan, State, Task, apply_plan


@dataclass(frozen=True)
class DisruptionReport:
    value: int
    removed: tuple[str, ...]      # true initially, false in the final state
    introduced: tuple[str, ...]   # false initially, true in the final state

    def to_json(self) -> dict:
        return {"value": self.value, "removed": list(self.removed),
                "introduced": list(self.introduced)}


@dataclass(frozen=True)
class DisruptionBounds:
    """A-priori bounds on the disruption of any goal-reaching plan.

    `lower` is exact: the goal fluents absent from the initial state must all
    be made true. `upper` is |F| - lower as conventionally estimated; it is
    NOT a sound bound (a final state may differ from the initial state in
    more than |F| - lower fluents) and must not be asserted as an invariant.
    See tests/test_disruption.py::test_upper_bound_estimate_can_be_exceeded.
    """

    lower: int
    upper: int

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper}


def state_disruption(task: Task, init: State, final: State) -> DisruptionReport:
    """Symmetric-difference report between two states of the same task."""
    removed = init & ~final
    introduced = final & ~init
    return DisruptionReport(
        value=removed.bit_count() + introduced.bit_count(),
        removed=tuple(sorted(task.names(removed))),
        introduced=tuple(sorted(task.names(introduced))),
    )


def plan_disruption(task: Task, plan: Plan) -> DisruptionReport:
    """Disruption of the state reached by running `plan` from the task init.

    Raises NotApplicableAtStep if the plan is not applicable.
    """
    final, _ = apply_plan(task.init, plan)
    return state_disruption(task, task.init, final)


def disruption_bounds(task: Task) -> DisruptionBounds:
    lower = (task.goal & ~task.init).bit_count()
    return DisruptionBounds(lower=lower, upper=len(task.fluents) - lower)
