"""Typed ASTs produced by the PDDL parser."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class TypedName:
    name: str
    type: str


@dataclass(frozen=True)
class PredicateDecl:
    name: str
    params: tuple[TypedName, ...]

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class Literal:
    predicate: str
    args: tuple[str, ...]

    def __str__(self):
        return f"({self.predicate}{''.join(' ' + a for a in self.args)})"


@dataclass(frozen=True)
class ActionSchema:
    name: str
    params: tuple[TypedName, ...]
    pre_pos: tuple[Literal, ...]
    pre_neg: tuple[Literal, ...]
    add: tuple[Literal, ...]
    delete: tuple[Literal, ...]
    cost: Fraction  # actions without an explicit total-cost increase get 1


@dataclass
class DomainAst:
    name: str
    requirements: frozenset[str]
    types: dict[str, str]              # type -> parent; "object" is the root
    predicates: dict[str, PredicateDecl]
    actions: tuple[ActionSchema, ...]

    def is_subtype(self, t: str, ancestor: str) -> bool:
        while True:
            if t == ancestor:
                return True
            parent = self.types.get(t)
            if parent is None or parent == t:
                return False
            t = parent


@dataclass
class ProblemAst:
    name: str
    domain_name: str
    objects: dict[str, str]            # object -> type
    init: tuple[Literal, ...]
    goal: tuple[Literal, ...]
    metric_min_cost: bool = False
