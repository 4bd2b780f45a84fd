"""Emit ground (possibly compiled) tasks back to planner-ready PDDL.

Every fluent becomes a 0-ary predicate and every action a 0-parameter
schema. Names are mangled deterministically into the [a-z0-9-] alphabet so
any downstream planner accepts them; costs are emitted as integers after
multiplication by a caller-provided scale (use lcm_cost_scale). Output is a
pure function of the input, hence byte-stable across runs.
"""

from __future__ import annotations

import math

from ..compile import CompiledTask, RoleKind
from ..model import Task
from .errors import NonIntegerCost


def mangle(name: str) -> str:
    out = []
    dash = True  # suppress leading dashes
    for ch in name.lower():
        if ch.isascii() and ch.isalnum():
            out.append(ch)
            dash = False
        elif not dash:
            out.append("-")
            dash = True
    s = "".join(out).rstrip("-")
    return s or "x"


def _uniquify(names: list[str]) -> list[str]:
    seen: set[str] = set()
    out = []
    for n in names:
        candidate = n
        k = 2
        while candidate in seen:
            candidate = f"{n}-{k}"
            k += 1
        seen.add(candidate)
        out.append(candidate)
    return out


def _task_of(target: Task | CompiledTask) -> Task:
    return target.task if isinstance(target, CompiledTask) else target


def fluent_pddl_names(target: Task | CompiledTask) -> list[str]:
    """Mangled predicate name per fluent, aligned with fluent ids."""
    task = _task_of(target)
    return _uniquify([mangle(f.name) for f in task.fluents])


def action_pddl_names(target: Task | CompiledTask) -> list[str]:
    """Mangled schema name per action, aligned with the action list."""
    if isinstance(target, CompiledTask):
        origin_fluents = target.origin.fluents
        raw = []
        for a, role in zip(target.task.actions, target.roles):
            if role.kind is RoleKind.ORIGINAL:
                raw.append("orig-" + mangle(a.name))
            elif role.kind is RoleKind.GOALSTATE:
                raw.append("goalstate")
            elif role.kind is RoleKind.END:
                raw.append("end-reached")
            else:
                prefix = "collect" if role.kind is RoleKind.COLLECT else "forgo"
                raw.append(f"{prefix}-{mangle(origin_fluents[role.fluent].name)}")
        return _uniquify(raw)
    return _uniquify(["orig-" + mangle(a.name) for a in target.actions])


def lcm_cost_scale(target: Task | CompiledTask) -> int:
    """Smallest positive integer turning every action cost into an integer."""
    task = _task_of(target)
    return math.lcm(1, *(a.cost.denominator for a in task.actions))


def emit_pddl(target: Task | CompiledTask, scale: int, *,
              domain_name: str = "grounded",
              problem_name: str = "instance") -> tuple[str, str]:
    """Render (domain text, problem text) for a ground task.

    `scale` must turn every action cost into an integer (NonIntegerCost
    otherwise); obtain it from lcm_cost_scale.
    """
    task = _task_of(target)
    fnames = fluent_pddl_names(target)
    anames = action_pddl_names(target)

    requirements = [":strips"]
    if any(a.pre_neg for a in task.actions):
        requirements.append(":negative-preconditions")
    requirements.append(":action-costs")

    lines = [f"(define (domain {domain_name})",
             f"  (:requirements {' '.join(requirements)})",
             "  (:predicates"]
    for n in fnames:
        lines.append(f"    ({n})")
    lines.append("  )")
    lines.append("  (:functions (total-cost) - number)")

    from ..model import bits
    for a, aname in zip(task.actions, anames):
        scaled = a.cost * scale
        if scaled.denominator != 1:
            raise NonIntegerCost(a.name, scaled)
        pre = [f"({fnames[i]})" for i in bits(a.pre_pos)]
        pre += [f"(not ({fnames[i]}))" for i in bits(a.pre_neg)]
        eff = [f"({fnames[i]})" for i in bits(a.add)]
        eff += [f"(not ({fnames[i]}))" for i in bits(a.delete)]
        eff.append(f"(increase (total-cost) {scaled.numerator})")
        lines.append(f"  (:action {aname}")
        lines.append("    :parameters ()")
        lines.append(f"    :precondition (and {' '.join(pre)})")
        lines.append(f"    :effect (and {' '.join(eff)})")
        lines.append("  )")
    lines.append(")")
    domain_text = "\n".join(lines) + "\n"

    lines = [f"(define (problem {problem_name})",
             f"  (:domain {domain_name})",
             "  (:init",
             "    (= (total-cost) 0)"]
    for i in bits(task.init):
        lines.append(f"    ({fnames[i]})")
    lines.append("  )")
    goal = " ".join(f"({fnames[i]})" for i in bits(task.goal))
    lines.append(f"  (:goal (and {goal}))")
    lines.append("  (:metric minimize (total-cost))")
    lines.append(")")
    problem_text = "\n".join(lines) + "\n"
    return domain_text, problem_text
