"""disruptplan: plans that jointly optimize action cost and how much of the
initial state they destroy."""

from .compile import (ActionRole, CompilationMode, CompiledTask,
                      CostDecomposition, InvalidPlan, InvalidSourcePlan,
                      RoleKind, compile_eager, compile_lazy, decompose_cost,
                      map_plan_lazy, strip_plan)
from .disruption import (DisruptionBounds, DisruptionReport, disruption_bounds,
                         plan_disruption, state_disruption)
from .model import (Fluent, GroundAction, NotApplicable, NotApplicableAtStep,
                    Plan, PlanStatus, PlanValidation, State, Task, applicable,
                    apply_plan, plan_cost, progress, task_from_json,
                    task_to_json, validate)
from .search import (Heuristic, Outcome, ResourceLimitExceeded, SearchLimits,
                     SearchResult, astar, brute_force_optimal,
                     enumerate_goal_states, h_max)
from .generators import RandomTaskParams, random_task

__version__ = "0.1.0"
