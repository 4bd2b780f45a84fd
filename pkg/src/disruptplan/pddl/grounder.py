"""Instantiate action schemas over typed objects into a ground Task.

Static predicates (those never occurring in any effect) are evaluated at
grounding time: a ground action whose static positive precondition is
missing from the initial state (or whose static negative precondition is
present) is pruned, and satisfied static conditions are dropped from the
surviving actions. The fluent universe consists of the ground atoms of
non-static predicates that occur in a surviving action, the initial state
or the goal.
"""

from __future__ import annotations

from itertools import product

from ..model import Task
from .ast import DomainAst, Literal, ProblemAst
from .errors import GroundingError, GroundingExplosion

DEFAULT_GROUND_LIMIT = 10 ** 6


def atom_name(predicate: str, args: tuple[str, ...]) -> str:
    return predicate if not args else f"{predicate}({' '.join(args)})"


def ground_action_name(schema_name: str, args: tuple[str, ...]) -> str:
    return schema_name if not args else f"{schema_name} {' '.join(args)}"


def static_predicates(domain: DomainAst) -> frozenset[str]:
    dynamic = {lit.predicate
               for schema in domain.actions
               for lit in schema.add + schema.delete}
    return frozenset(p for p in domain.predicates if p not in dynamic)


def objects_by_type(domain: DomainAst, problem: ProblemAst) -> dict[str, list[str]]:
    table: dict[str, list[str]] = {t: [] for t in domain.types}
    table.setdefault("object", [])
    for obj in sorted(problem.objects):
        otype = problem.objects[obj]
        for t in table:
            if domain.is_subtype(otype, t):
                table[t].append(obj)
    return table


def ground(domain: DomainAst, problem: ProblemAst, *,
           max_ground_actions: int = DEFAULT_GROUND_LIMIT,
           prune_static: bool = True) -> Task:
    """Ground `problem` into a Task. `prune_static=False` keeps static atoms
    as (never-changing) fluents; useful only to cross-check the pruning."""
    statics = static_predicates(domain) if prune_static else frozenset()

    projected = 0
    by_type = objects_by_type(domain, problem)
    for schema in domain.actions:
        count = 1
        for p in schema.params:
            count *= len(by_type.get(p.type, ()))
        projected += count
    if projected > max_ground_actions:
        raise GroundingExplosion(projected, max_ground_actions)

    init_atoms = {atom_name(l.predicate, l.args) for l in problem.init}

    actions = []
    for schema in domain.actions:
        domains = [by_type.get(p.type, ()) for p in schema.params]
        names = [p.name for p in schema.params]
        for binding in product(*domains):
            env = dict(zip(names, binding))

            def subst(lit: Literal) -> tuple[str, str]:
                return lit.predicate, atom_name(
                    lit.predicate, tuple(env[a] for a in lit.args))

            pre_pos: set[str] = set()
            pre_neg: set[str] = set()
            alive = True
            for lit in schema.pre_pos:
                pred, atom = subst(lit)
                if pred in statics:
                    if atom not in init_atoms:
                        alive = False
                        break
                else:
                    pre_pos.add(atom)
            if not alive:
                continue
            for lit in schema.pre_neg:
                pred, atom = subst(lit)
                if pred in statics:
                    if atom in init_atoms:
                        alive = False
                        break
                else:
                    pre_neg.add(atom)
            if not alive or pre_pos & pre_neg:
                continue  # statically dead (contradictory preconditions)
            add = {subst(lit)[1] for lit in schema.add}
            delete = {subst(lit)[1] for lit in schema.delete}
            # PDDL semantics: adds win over simultaneous deletes
            delete -= add
            actions.append({
                "name": ground_action_name(schema.name, binding),
                "pre_pos": pre_pos,
                "pre_neg": pre_neg,
                "add": add,
                "delete": delete,
                "cost": schema.cost,
            })

    init = {atom_name(l.predicate, l.args) for l in problem.init
            if l.predicate not in statics}
    goal = set()
    for lit in problem.goal:
        atom = atom_name(lit.predicate, lit.args)
        if lit.predicate in statics:
            if atom not in init_atoms:
                raise GroundingError(
                    f"goal {atom} is static and false in the initial state; "
                    f"the task is trivially unsolvable")
            continue  # static and true: always satisfied
        goal.add(atom)

    atoms: set[str] = set(init) | goal
    for a in actions:
        atoms |= a["pre_pos"] | a["pre_neg"] | a["add"] | a["delete"]

    return Task.create(sorted(atoms), actions, sorted(init), sorted(goal))
