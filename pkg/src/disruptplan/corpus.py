"""Bundled benchmark corpus: two fixed tasks plus three seeded families.

Fixed tasks: a three-location package-delivery task (two cost-optimal plans
that differ only in how much of the initial state they preserve) and a
four-fluent micro task with two cost-10 actions. Families: block stacking,
room delivery and chained switch flipping, each instantiated from a seed and
kept at <= 12 fluents so the exhaustive oracles always apply.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from pathlib import Path

SEED_ENV_VAR = "DISRUPTPLAN_SEED"

LOGISTICS_DOMAIN = """\
(define (domain logistics-mini)
  (:requirements :strips :typing :action-costs)
  (:types location locatable - object
          vehicle package - locatable)
  (:predicates (at ?x - locatable ?l - location)
               (in ?p - package ?v - vehicle)
               (connected ?a - location ?b - location))
  (:functions (total-cost) - number)
  (:action drive
    :parameters (?v - vehicle ?from - location ?to - location)
    :precondition (and (at ?v ?from) (connected ?from ?to))
    :effect (and (not (at ?v ?from)) (at ?v ?to) (increase (total-cost) 1)))
  (:action load
    :parameters (?p - package ?v - vehicle ?l - location)
    :precondition (and (at ?p ?l) (at ?v ?l))
    :effect (and (not (at ?p ?l)) (in ?p ?v) (increase (total-cost) 1)))
  (:action unload
    :parameters (?p - package ?v - vehicle ?l - location)
    :precondition (and (in ?p ?v) (at ?v ?l))
    :effect (and (not (in ?p ?v)) (at ?p ?l) (increase (total-cost) 1)))
)
"""

LOGISTICS_PROBLEM = """\
(define (problem deliver-two)
  (:domain logistics-mini)
  (:objects a b c - location
            truck - vehicle
            green blue - package)
  (:init (= (total-cost) 0)
         (at truck c) (at green c) (at blue b)
         (connected a b) (connected b a)
         (connected b c) (connected c b)
         (connected a c) (connected c a))
  (:goal (and (at green a) (at blue c)))
  (:metric minimize (total-cost))
)
"""

# Deliver blue first; the truck is stranded at its final drop-off.
LOGISTICS_PLAN_1 = """\
(drive truck c b)
(load blue truck b)
(drive truck b c)
(unload blue truck c)
(load green truck c)
(drive truck c a)
(unload green truck a)
"""

# Deliver green first and loop back; the truck ends where it started.
LOGISTICS_PLAN_2 = """\
(load green truck c)
(drive truck c a)
(unload green truck a)
(drive truck a b)
(load blue truck b)
(drive truck b c)
(unload blue truck c)
"""

MICRO_DOMAIN = """\
(define (domain micro)
  (:requirements :strips :action-costs)
  (:predicates (a) (b) (c) (d))
  (:functions (total-cost) - number)
  (:action a1
    :parameters ()
    :precondition (and (a))
    :effect (and (not (a)) (not (b)) (c) (increase (total-cost) 10)))
  (:action a2
    :parameters ()
    :precondition (and (c))
    :effect (and (not (a)) (d) (b) (increase (total-cost) 10)))
)
"""

MICRO_PROBLEM = """\
(define (problem micro-1)
  (:domain micro)
  (:init (= (total-cost) 0) (a) (b))
  (:goal (and (d)))
  (:metric minimize (total-cost))
)
"""

BLOCKS_DOMAIN = """\
(define (domain blockstack)
  (:requirements :strips :typing :action-costs)
  (:types block - object)
  (:predicates (on ?a - block ?b - block)
               (ontable ?a - block)
               (clear ?a - block)
               (diff ?a - block ?b - block))
  (:functions (total-cost) - number)
  (:action move
    :parameters (?a - block ?b - block ?c - block)
    :precondition (and (on ?a ?b) (clear ?a) (clear ?c)
                       (diff ?a ?b) (diff ?a ?c) (diff ?b ?c))
    :effect (and (not (on ?a ?b)) (on ?a ?c) (clear ?b) (not (clear ?c))
                 (increase (total-cost) 1)))
  (:action to-table
    :parameters (?a - block ?b - block)
    :precondition (and (on ?a ?b) (clear ?a) (diff ?a ?b))
    :effect (and (not (on ?a ?b)) (ontable ?a) (clear ?b)
                 (increase (total-cost) 1)))
  (:action from-table
    :parameters (?a - block ?c - block)
    :precondition (and (ontable ?a) (clear ?a) (clear ?c) (diff ?a ?c))
    :effect (and (not (ontable ?a)) (on ?a ?c) (not (clear ?c))
                 (increase (total-cost) 1)))
)
"""

DELIVERY_DOMAIN = """\
(define (domain delivery)
  (:requirements :strips :typing :action-costs)
  (:types room item - object)
  (:predicates (robot-at ?r - room)
               (item-at ?i - item ?r - room)
               (carrying ?i - item)
               (door ?a - room ?b - room))
  (:functions (total-cost) - number)
  (:action go
    :parameters (?a - room ?b - room)
    :precondition (and (robot-at ?a) (door ?a ?b))
    :effect (and (not (robot-at ?a)) (robot-at ?b) (increase (total-cost) 1)))
  (:action pick
    :parameters (?i - item ?r - room)
    :precondition (and (robot-at ?r) (item-at ?i ?r))
    :effect (and (not (item-at ?i ?r)) (carrying ?i) (increase (total-cost) 1)))
  (:action drop
    :parameters (?i - item ?r - room)
    :precondition (and (robot-at ?r) (carrying ?i))
    :effect (and (not (carrying ?i)) (item-at ?i ?r) (increase (total-cost) 1)))
)
"""

SWITCHES_DOMAIN = """\
(define (domain switches)
  (:requirements :strips :typing :negative-preconditions :action-costs)
  (:types switch - object)
  (:predicates (on ?s - switch)
               (first ?s - switch)
               (prev ?a - switch ?b - switch))
  (:functions (total-cost) - number)
  (:action flip-first-up
    :parameters (?s - switch)
    :precondition (and (first ?s) (not (on ?s)))
    :effect (and (on ?s) (increase (total-cost) 1)))
  (:action flip-up
    :parameters (?s - switch ?p - switch)
    :precondition (and (prev ?p ?s) (on ?p) (not (on ?s)))
    :effect (and (on ?s) (increase (total-cost) 1)))
  (:action flip-down
    :parameters (?s - switch)
    :precondition (and (on ?s))
    :effect (and (not (on ?s)) (increase (total-cost) 1)))
)
"""


@dataclass(frozen=True)
class CorpusEntry:
    family: str
    problem: str
    domain_text: str
    problem_text: str


def _blocks_problem(name: str, rng: random.Random) -> str:
    blocks = ["x", "y", "z"]

    def layout(order):
        # order: bottom..top of one stack; leftovers on the table
        stacked = list(order)
        facts = []
        table = [b for b in blocks if b not in stacked]
        if stacked:
            facts.append(f"(ontable {stacked[0]})")
            for lower, upper in zip(stacked, stacked[1:]):
                facts.append(f"(on {upper} {lower})")
            facts.append(f"(clear {stacked[-1]})")
        for b in table:
            facts.append(f"(ontable {b})")
            facts.append(f"(clear {b})")
        return facts

    stacks = [
        ["x", "y", "z"], ["z", "y", "x"], ["y", "x", "z"],
        ["x", "z"], ["y"], [],
    ]
    init_stack = rng.choice(stacks)
    goal_stack = rng.choice([s for s in stacks if s != init_stack and len(s) >= 2])
    diff = [f"(diff {a} {b})" for a in blocks for b in blocks if a != b]
    init = " ".join(layout(init_stack) + diff)
    goal_facts = []
    for lower, upper in zip(goal_stack, goal_stack[1:]):
        goal_facts.append(f"(on {upper} {lower})")
    goal = " ".join(goal_facts)
    return (f"(define (problem {name})\n  (:domain blockstack)\n"
            f"  (:objects x y z - block)\n"
            f"  (:init (= (total-cost) 0) {init})\n"
            f"  (:goal (and {goal}))\n"
            f"  (:metric minimize (total-cost))\n)\n")


def _delivery_problem(name: str, rng: random.Random) -> str:
    rooms = ["r1", "r2", "r3"]
    doors = {("r1", "r2"), ("r2", "r1"), ("r2", "r3"), ("r3", "r2")}
    if rng.random() < 0.5:
        doors |= {("r1", "r3"), ("r3", "r1")}
    robot = rng.choice(rooms)
    spots = {i: rng.choice(rooms) for i in ("box", "cup")}
    goals = {i: rng.choice([r for r in rooms if r != spots[i]]) for i in spots}
    init = [f"(robot-at {robot})"]
    init += [f"(item-at {i} {r})" for i, r in sorted(spots.items())]
    init += [f"(door {a} {b})" for a, b in sorted(doors)]
    goal = " ".join(f"(item-at {i} {r})" for i, r in sorted(goals.items()))
    return (f"(define (problem {name})\n  (:domain delivery)\n"
            f"  (:objects r1 r2 r3 - room box cup - item)\n"
            f"  (:init (= (total-cost) 0) {' '.join(init)})\n"
            f"  (:goal (and {goal}))\n"
            f"  (:metric minimize (total-cost))\n)\n")


def _switches_problem(name: str, rng: random.Random) -> str:
    n = rng.choice([4, 5])
    switches = [f"s{i}" for i in range(1, n + 1)]
    chain = [f"(first {switches[0]})"]
    chain += [f"(prev {a} {b})" for a, b in zip(switches, switches[1:])]
    target = switches[rng.randint(max(1, n - 3), n - 1)]
    return (f"(define (problem {name})\n  (:domain switches)\n"
            f"  (:objects {' '.join(switches)} - switch)\n"
            f"  (:init (= (total-cost) 0) {' '.join(chain)})\n"
            f"  (:goal (and (on {target})))\n"
            f"  (:metric minimize (total-cost))\n)\n")


def bundled_corpus(seed: int | None = None) -> list[CorpusEntry]:
    """The default benchmark corpus; family instances are seeded.

    The seed defaults to the DISRUPTPLAN_SEED environment variable, then 0.
    """
    if seed is None:
        seed = int(os.environ.get(SEED_ENV_VAR, "0"))
    entries = [
        CorpusEntry("logistics", "deliver-two", LOGISTICS_DOMAIN, LOGISTICS_PROBLEM),
        CorpusEntry("micro", "micro-1", MICRO_DOMAIN, MICRO_PROBLEM),
    ]
    for family, domain_text, make in (
            ("blocks", BLOCKS_DOMAIN, _blocks_problem),
            ("delivery", DELIVERY_DOMAIN, _delivery_problem),
            ("switches", SWITCHES_DOMAIN, _switches_problem)):
        for k in (1, 2):
            rng = random.Random(f"{seed}:{family}:{k}")
            name = f"{family}-{k:02d}"
            entries.append(CorpusEntry(family, name, domain_text, make(name, rng)))
    return entries


def materialize_corpus(directory: str | Path, seed: int | None = None) -> list[Path]:
    """Write the bundled corpus as <family>/domain.pddl + <problem>.pddl files."""
    directory = Path(directory)
    written = []
    for entry in bundled_corpus(seed):
        fam_dir = directory / entry.family
        fam_dir.mkdir(parents=True, exist_ok=True)
        dom = fam_dir / "domain.pddl"
        if not dom.exists():
            dom.write_text(entry.domain_text)
            written.append(dom)
        prob = fam_dir / f"{entry.problem}.pddl"
        prob.write_text(entry.problem_text)
        written.append(prob)
    return written


def load_corpus(directory: str | Path) -> list[CorpusEntry]:
    """Read a corpus directory: every subdirectory with a domain.pddl
    contributes its sibling *.pddl files as problems."""
    directory = Path(directory)
    entries = []
    for fam_dir in sorted(p for p in directory.iterdir() if p.is_dir()):
        dom = fam_dir / "domain.pddl"
        if not dom.exists():
            continue
        domain_text = dom.read_text()
        for prob in sorted(fam_dir.glob("*.pddl")):
            if prob.name == "domain.pddl":
                continue
            entries.append(CorpusEntry(fam_dir.name, prob.stem,
                                       domain_text, prob.read_text()))
    return entries
