"""PDDL subset front end: parsing, grounding, emission, plan files."""

from .ast import ActionSchema, DomainAst, Literal, PredicateDecl, ProblemAst, TypedName
from .errors import (GroundingError, GroundingExplosion, NonIntegerCost,
                     ParseError, PddlError, PddlTypeError, UnknownAction,
                     UnknownObject, UnsupportedFeature)
from .grounder import ground, static_predicates
from .parser import parse_domain, parse_problem
from .plans import parse_plan, write_plan
from .writer import action_pddl_names, emit_pddl, fluent_pddl_names, lcm_cost_scale, mangle

__all__ = [
    "ActionSchema", "DomainAst", "Literal", "PredicateDecl", "ProblemAst",
    "TypedName", "GroundingError", "GroundingExplosion", "NonIntegerCost",
    "ParseError", "PddlError", "PddlTypeError", "UnknownAction",
    "UnknownObject", "UnsupportedFeature", "ground", "static_predicates",
    "parse_domain", "parse_problem", "parse_plan", "write_plan",
    "action_pddl_names", "emit_pddl", "fluent_pddl_names", "lcm_cost_scale",
    "mangle",
]
