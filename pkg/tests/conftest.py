import pytest

from disruptplan import Task
from disruptplan.corpus import (LOGISTICS_DOMAIN, LOGISTICS_PROBLEM,
                                MICRO_DOMAIN, MICRO_PROBLEM)
from disruptplan.pddl import ground, parse_domain, parse_problem


def make_micro_task() -> Task:
    """Four fluents, two cost-10 actions; the standing worked example."""
    return Task.create(
        ["a", "b", "c", "d"],
        [
            dict(name="a1", pre_pos=["a"], delete=["a", "b"], add=["c"], cost=10),
            dict(name="a2", pre_pos=["c"], delete=["a"], add=["d", "b"], cost=10),
        ],
        init=["a", "b"],
        goal=["d"],
    )


@pytest.fixture
def micro() -> Task:
    return make_micro_task()


@pytest.fixture(scope="session")
def logistics() -> Task:
    domain = parse_domain(LOGISTICS_DOMAIN)
    problem = parse_problem(LOGISTICS_PROBLEM, domain)
    return ground(domain, problem)


@pytest.fixture(scope="session")
def micro_from_pddl() -> Task:
    domain = parse_domain(MICRO_DOMAIN)
    problem = parse_problem(MICRO_PROBLEM, domain)
    return ground(domain, problem)
