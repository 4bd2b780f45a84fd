"""Task compilations that fold the disruption metric into action costs.

Two reformulations of a ground task, both parameterized by a positive
rational weight `omega` (cost charged per disrupted fluent):

* Lazy: after the goals are achieved, a bookkeeping phase inspects every
  fluent once. A zero-cost `collect` step is applicable only when the
  fluent's truth value still matches the initial state; an `forgo` step is
  always applicable and costs omega. Solving the compiled task optimally
  therefore pays exactly omega per net-changed fluent, on top of the base
  plan cost. Exact but much harder to solve.

* Eager: keeps the task structure and only surcharges each action by omega
  per effect that diverges from the initial state (adds of initially-false
  fluents, deletes of initially-true ones). Cheap, but transient changes are
  charged even when they are later undone, so the disruption part of the
  cost over-approximates the true metric.

A role tag per compiled action allows plans to be mapped back and their cost
decomposed into (base cost, disruption part).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .model import (Fluent, GroundAction, Plan, Task, bits, plan_cost,
                    validate)

GOALSTATE_NAME = "goalstate"
END_NAME = "end"


class InvalidSourcePlan(Exception):
    """The plan to be mapped does not solve the origin task."""


class InvalidPlan(Exception):
    """The compiled-space plan does not solve the compiled task."""


class CompilationMode(Enum):
    LAZY = "lazy"
    EAGER = "eager"


class RoleKind(Enum):
    ORIGINAL = "original"
    GOALSTATE = "goalstate"
    COLLECT = "collect"
    FORGO = "forgo"
    END = "end"


@dataclass(frozen=True)
class ActionRole:
    kind: RoleKind
    fluent: int | None = None   # origin fluent id for COLLECT / FORGO


@dataclass(frozen=True)
class CompiledTask:
    """A compiled task plus the bookkeeping needed to map plans back."""

    task: Task
    roles: tuple[ActionRole, ...]        # aligned with task.actions
    omega: Fraction
    mode: CompilationMode
    origin: Task

    def role_of(self, action_name: str) -> ActionRole:
        return self.roles[self.task.action_position(action_name)]


@dataclass(frozen=True)
class CostDecomposition:
    base: Fraction              # contribution of the original actions
    disruption_part: Fraction   # omega-weighted disruption surcharge
    disruption_units: Fraction  # disruption_part / omega

    @property
    def total(self) -> Fraction:
        return self.base + self.disruption_part

    def to_json(self) -> dict:
        from .model import cost_to_json
        return {"base": cost_to_json(self.base),
                "disruption_part": cost_to_json(self.disruption_part),
                "disruption_units": cost_to_json(self.disruption_units)}


def _check_omega(omega) -> Fraction:
    omega = Fraction(omega)
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    return omega


def compile_lazy(task: Task, omega) -> CompiledTask:
    """Build the lazy compilation of `task` with disruption weight `omega`.

    Fluents: the originals, one init marker per initially-true fluent, one
    checked marker per fluent, plus goals-achieved (ga) and end flags. The
    compiled goal is {end}; reaching it forces every fluent through exactly
    one collect/forgo check, so the compiled action count is always
    |A| + 2|F| + 2.
    """
    omega = _check_omega(omega)
    n = len(task.fluents)
    n_init = task.init.bit_count()

    fluents = list(task.fluents)
    init_bit: dict[int, int] = {}
    for f in bits(task.init):
        init_bit[f] = len(fluents)
        fluents.append(Fluent(len(fluents), f"init:{task.fluents[f].name}"))
    checked_bit: dict[int, int] = {}
    for f in range(n):
        checked_bit[f] = len(fluents)
        fluents.append(Fluent(len(fluents), f"checked:{task.fluents[f].name}"))
    ga = len(fluents)
    fluents.append(Fluent(ga, "ga"))
    end = len(fluents)
    fluents.append(Fluent(end, "end"))
    ga_m = 1 << ga
    end_m = 1 << end

    actions: list[GroundAction] = []
    roles: list[ActionRole] = []
    for a in task.actions:
        # original actions are locked out once the goals have been achieved
        actions.append(GroundAction(a.name, a.pre_pos, a.pre_neg | ga_m,
                                    a.add, a.delete, a.cost))
        roles.append(ActionRole(RoleKind.ORIGINAL))

    actions.append(GroundAction(GOALSTATE_NAME, task.goal, 0, ga_m, 0, Fraction(0)))
    roles.append(ActionRole(RoleKind.GOALSTATE))

    all_checked = 0
    for f in range(n):
        f_m = 1 << f
        c_m = 1 << checked_bit[f]
        all_checked |= c_m
        fname = task.fluents[f].name
        if f in init_bit:
            collect = GroundAction(f"collect:{fname}",
                                   f_m | (1 << init_bit[f]) | ga_m,
                                   c_m | end_m, c_m, 0, Fraction(0))
        else:
            # init marker for an initially-false fluent does not exist, so
            # the matching check is simply "f still false"
            collect = GroundAction(f"collect:{fname}", ga_m,
                                   f_m | c_m | end_m, c_m, 0, Fraction(0))
        forgo = GroundAction(f"forgo:{fname}", ga_m, c_m | end_m, c_m, 0, omega)
        actions.append(collect)
        roles.append(ActionRole(RoleKind.COLLECT, f))
        actions.append(forgo)
        roles.append(ActionRole(RoleKind.FORGO, f))

    actions.append(GroundAction(END_NAME, ga_m | all_checked, 0, end_m, 0, Fraction(0)))
    roles.append(ActionRole(RoleKind.END))

    init = task.init
    for f, b in init_bit.items():
        init |= 1 << b
    compiled = Task(tuple(fluents), tuple(actions), init, end_m)
    assert len(compiled.actions) == len(task.actions) + 2 * n + 2
    assert len(compiled.fluents) == n + n_init + n + 2
    return CompiledTask(compiled, tuple(roles), omega, CompilationMode.LAZY, task)


def compile_eager(task: Task, omega) -> CompiledTask:
    """Build the eager compilation: same task, surcharged action costs."""
    omega = _check_omega(omega)
    actions = tuple(
        GroundAction(a.name, a.pre_pos, a.pre_neg, a.add, a.delete,
                     a.cost + omega * ((a.add & ~task.init).bit_count()
                                       + (a.delete & task.init).bit_count()))
        for a in task.actions
    )
    compiled = Task(task.fluents, actions, task.init, task.goal)
    roles = tuple(ActionRole(RoleKind.ORIGINAL) for _ in actions)
    return CompiledTask(compiled, roles, omega, CompilationMode.EAGER, task)


def map_plan_lazy(compiled: CompiledTask, plan: Plan) -> Plan:
    """Lift a goal-reaching origin plan into the lazy compiled space.

    Appends the goalstate step, then one check per fluent in ascending id
    order (collect when the fluent's final truth value matches the initial
    state, forgo otherwise), then the end step.
    """
    if compiled.mode is not CompilationMode.LAZY:
        raise ValueError("map_plan_lazy requires a lazy compilation")
    origin = compiled.origin
    try:
        source = Plan(origin.action(a.name) for a in plan)
    except KeyError as e:
        raise InvalidSourcePlan(f"unknown origin action {e.args[0]!r}") from None
    result = validate(origin, source)
    if not result.goal_reaching:
        raise InvalidSourcePlan(f"source plan does not solve the origin task ({result.status.value})")
    final = result.final
    ctask = compiled.task
    steps = [ctask.action(a.name) for a in source]
    steps.append(ctask.action(GOALSTATE_NAME))
    for f in range(len(origin.fluents)):
        f_m = 1 << f
        same = (final & f_m) == (origin.init & f_m)
        fname = origin.fluents[f].name
        steps.append(ctask.action(f"collect:{fname}" if same else f"forgo:{fname}"))
    steps.append(ctask.action(END_NAME))
    mapped = Plan(steps)
    assert validate(ctask, mapped).goal_reaching
    return mapped


def _resolve(compiled: CompiledTask, plan: Plan) -> Plan:
    """Re-resolve plan steps by name against the compiled task and validate."""
    try:
        plan = Plan(compiled.task.action(a.name) for a in plan)
    except KeyError as e:
        raise InvalidPlan(f"unknown compiled action {e.args[0]!r}") from None
    if not validate(compiled.task, plan).goal_reaching:
        raise InvalidPlan("plan does not solve the compiled task")
    return plan


def decompose_cost(compiled: CompiledTask, plan: Plan) -> CostDecomposition:
    """Split a compiled plan's cost into base cost and disruption surcharge."""
    plan = _resolve(compiled, plan)
    total = plan_cost(plan)
    if compiled.mode is CompilationMode.LAZY:
        base = Fraction(0)
        part = Fraction(0)
        for a in plan:
            kind = compiled.role_of(a.name).kind
            if kind is RoleKind.ORIGINAL:
                base += a.cost
            elif kind is RoleKind.FORGO:
                part += a.cost
        assert base + part == total
    else:
        base = sum((compiled.origin.action(a.name).cost for a in plan), Fraction(0))
        part = total - base
    return CostDecomposition(base=base, disruption_part=part,
                             disruption_units=part / compiled.omega)


def strip_plan(compiled: CompiledTask, plan: Plan) -> Plan:
    """Project a compiled plan back onto the origin task.

    Lazy: drop the bookkeeping steps; eager: swap in the un-surcharged
    actions. The result always solves the origin task.
    """
    plan = _resolve(compiled, plan)
    origin = compiled.origin
    if compiled.mode is CompilationMode.LAZY:
        steps = [origin.action(a.name) for a in plan
                 if compiled.role_of(a.name).kind is RoleKind.ORIGINAL]
    else:
        steps = [origin.action(a.name) for a in plan]
    stripped = Plan(steps)
    assert validate(origin, stripped).goal_reaching
    return stripped


# ---------------------------------------------------------------------------
# Compiled-task JSON interchange
# ---------------------------------------------------------------------------

def compiled_to_json(compiled: CompiledTask) -> dict:
    from .model import cost_to_json, task_to_json
    roles = {}
    for a, role in zip(compiled.task.actions, compiled.roles):
        entry: dict = {"kind": role.kind.value}
        if role.fluent is not None:
            entry["fluent"] = compiled.origin.fluents[role.fluent].name
        roles[a.name] = entry
    return {
        "mode": compiled.mode.value,
        "omega": cost_to_json(compiled.omega),
        "task": task_to_json(compiled.task),
        "roles": roles,
        "origin": task_to_json(compiled.origin),
    }


def compiled_from_json(data) -> CompiledTask:
    from .model import cost_from_json, task_from_json
    task = task_from_json(data["task"])
    origin = task_from_json(data["origin"])
    roles = []
    for a in task.actions:
        entry = data["roles"][a.name]
        fluent = entry.get("fluent")
        roles.append(ActionRole(RoleKind(entry["kind"]),
                                origin.fluent_id(fluent) if fluent is not None else None))
    return CompiledTask(task, tuple(roles), cost_from_json(data["omega"]),
                        CompilationMode(data["mode"]), origin)


def is_compiled_json(data) -> bool:
    return isinstance(data, dict) and "roles" in data and "mode" in data
