import json
from fractions import Fraction

import pytest

from disruptplan import (GroundAction, NotApplicable, NotApplicableAtStep, Plan,
                         PlanStatus, Task, applicable, apply_plan, plan_cost,
                         progress, task_from_json, task_to_json, validate)
from disruptplan.generators import RandomTaskParams, random_task
from disruptplan.model import bits, isomorphic, task_to_json_str


def test_applicable_positive_preconditions(micro):
    assert applicable(micro.init, micro.action("a1"))


def test_applicable_empty_preconditions(micro):
    free = GroundAction("noop", 0, 0, 0, 0, Fraction(0))
    assert applicable(0, free)


def test_applicable_missing_precondition(micro):
    assert not applicable(micro.init, micro.action("a2"))


def test_applicable_negative_precondition(micro):
    a = GroundAction("guarded", 0, micro.mask(["a"]), 0, 0, Fraction(1))
    assert not applicable(micro.init, a)
    assert applicable(micro.mask(["b"]), a)


def test_progress_micro_step1(micro):
    s = progress(micro.init, micro.action("a1"))
    assert micro.names(s) == ("c",)


def test_progress_identity_effects(micro):
    noop = GroundAction("noop", 0, 0, 0, 0, Fraction(0))
    assert progress(micro.init, noop) == micro.init


def test_progress_micro_step2(micro):
    s = progress(micro.mask(["c"]), micro.action("a2"))
    assert set(micro.names(s)) == {"b", "c", "d"}


def test_progress_rejects_inapplicable(micro):
    with pytest.raises(NotApplicable):
        progress(micro.init, micro.action("a2"))


def test_apply_plan_trace(micro):
    plan = Plan([micro.action("a1"), micro.action("a2")])
    final, trace = apply_plan(micro.init, plan)
    assert set(micro.names(final)) == {"b", "c", "d"}
    assert len(trace) == 3
    assert trace[0] == micro.init


def test_apply_plan_empty(micro):
    final, trace = apply_plan(micro.init, Plan())
    assert final == micro.init
    assert trace == (micro.init,)


def test_apply_plan_reports_failing_step(micro):
    plan = Plan([micro.action("a2"), micro.action("a1")])
    with pytest.raises(NotApplicableAtStep) as e:
        apply_plan(micro.init, plan)
    assert e.value.step == 0


def test_validate_goal_reaching(micro):
    plan = Plan([micro.action("a1"), micro.action("a2")])
    assert validate(micro, plan).status is PlanStatus.VALID_GOAL_REACHING


def test_validate_empty_plan_when_goal_holds():
    task = Task.create(["x"], [], init=["x"], goal=["x"])
    assert validate(task, Plan()).status is PlanStatus.VALID_GOAL_REACHING


def test_validate_non_goal(micro):
    plan = Plan([micro.action("a1")])
    assert validate(micro, plan).status is PlanStatus.VALID_NON_GOAL


def test_validate_invalid_step(micro):
    plan = Plan([micro.action("a2")])
    result = validate(micro, plan)
    assert result.status is PlanStatus.INVALID
    assert result.failed_step == 0


def test_plan_cost(micro):
    assert plan_cost(Plan([micro.action("a1"), micro.action("a2")])) == 20
    assert plan_cost(Plan()) == 0


def test_plan_cost_is_order_independent(micro):
    a1, a2 = micro.action("a1"), micro.action("a2")
    assert plan_cost(Plan([a1, a2])) == plan_cost(Plan([a2, a1]))


def test_plan_equality_by_names(micro):
    p1 = Plan([micro.action("a1")])
    p2 = Plan([GroundAction("a1", 0, 0, 0, 0, Fraction(99))])
    assert p1 == p2
    assert hash(p1) == hash(p2)


def test_task_rejects_overlapping_add_delete():
    with pytest.raises(ValueError):
        Task.create(["x"], [dict(name="bad", add=["x"], delete=["x"])],
                    init=[], goal=[])


def test_task_rejects_overlapping_preconditions():
    with pytest.raises(ValueError):
        Task.create(["x"], [dict(name="bad", pre_pos=["x"], pre_neg=["x"],
                                 add=["x"])], init=[], goal=[])


def test_task_rejects_negative_cost():
    with pytest.raises(ValueError):
        Task.create(["x"], [dict(name="bad", add=["x"], cost=-1)],
                    init=[], goal=[])


def test_task_rejects_duplicate_names():
    with pytest.raises(ValueError):
        Task.create(["x", "x"], [], init=[], goal=[])
    with pytest.raises(ValueError):
        Task.create(["x"], [dict(name="a", add=["x"]), dict(name="a", add=["x"])],
                    init=[], goal=[])


@pytest.mark.parametrize("seed", range(40))
def test_progress_effect_invariants(seed):
    # after applying an action: nothing deleted survives, everything added holds
    task = random_task(seed)
    s = task.init
    for a in task.actions:
        if applicable(s, a):
            t = progress(s, a)
            assert t & a.delete == 0
            assert a.add & ~t == 0
            s = t


@pytest.mark.parametrize("seed", range(20))
def test_apply_plan_is_fold_of_progress(seed):
    task = random_task(seed, RandomTaskParams(goal_from_walk=True))
    # greedy applicable walk gives a nontrivial plan
    steps, s = [], task.init
    for a in task.actions * 2:
        if applicable(s, a):
            steps.append(a)
            s = progress(s, a)
    final, trace = apply_plan(task.init, Plan(steps))
    assert final == s
    for i, a in enumerate(steps):
        assert trace[i + 1] == progress(trace[i], a)


def test_bits_roundtrip():
    mask = 0b101101
    assert sum(1 << i for i in bits(mask)) == mask
    assert list(bits(0)) == []


def test_json_roundtrip(micro):
    data = task_to_json(micro)
    again = task_from_json(data)
    assert isomorphic(micro, again)
    # canonical form sorts every name list
    assert data["fluents"] == sorted(data["fluents"])
    for a in data["actions"]:
        for key in ("pre_pos", "pre_neg", "add", "del"):
            assert a[key] == sorted(a[key])
    assert json.loads(task_to_json_str(micro)) == data


def test_json_cost_is_exact():
    task = Task.create(["x"], [dict(name="a", add=["x"], cost=Fraction(1, 3))],
                       init=[], goal=["x"])
    again = task_from_json(task_to_json(task))
    assert again.action("a").cost == Fraction(1, 3)


def test_isomorphic_detects_cost_change(micro):
    other = Task.create(
        ["a", "b", "c", "d"],
        [dict(name="a1", pre_pos=["a"], delete=["a", "b"], add=["c"], cost=11),
         dict(name="a2", pre_pos=["c"], delete=["a"], add=["d", "b"], cost=10)],
        init=["a", "b"], goal=["d"])
    assert not isomorphic(micro, other)
