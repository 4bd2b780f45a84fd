"""Plan files: one `(action-name arg ...)` s-expression per line.

Comment lines and trailers such as `; cost = 23 (unit cost)` are ignored,
matching the output of common optimal planners. Lines resolve against either
the mangled PDDL name or the original internal action name.
"""

from __future__ import annotations

from ..compile import CompiledTask
from ..model import Plan, Task
from .errors import ParseError, UnknownAction
from .writer import action_pddl_names


def _lookup_table(target: Task | CompiledTask):
    task = target.task if isinstance(target, CompiledTask) else target
    table = {}
    for a in task.actions:
        table[a.name] = a
    for a, pddl_name in zip(task.actions, action_pddl_names(target)):
        table[pddl_name] = a
    return table


def parse_plan(text: str, target: Task | CompiledTask) -> Plan:
    table = _lookup_table(target)
    steps = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if not (line.startswith("(") and line.endswith(")")):
            raise ParseError(f"plan line is not an s-expression: {raw!r}", line_no, 1)
        key = " ".join(line[1:-1].split()).lower()
        action = table.get(key)
        if action is None:
            raise UnknownAction(line_no, line)
        steps.append(action)
    return Plan(steps)


def write_plan(plan: Plan, target: Task | CompiledTask) -> str:
    """Render a plan using mangled PDDL names plus a conventional cost trailer."""
    task = target.task if isinstance(target, CompiledTask) else target
    names = action_pddl_names(target)
    lines = [f"({names[task.action_position(a.name)]})" for a in plan]
    cost = plan.cost
    shown = cost.numerator if cost.denominator == 1 else f"{cost.numerator}/{cost.denominator}"
    lines.append(f"; cost = {shown}")
    return "\n".join(lines) + "\n"
