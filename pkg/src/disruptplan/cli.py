"""Command line front end: ground | compile | solve | evaluate | bench.

Exit codes: 0 success, 2 parse/grounding error, 3 resource limit exceeded,
4 task proved unsolvable, 5 invalid plan.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from . import bench as bench_mod
from .compile import (InvalidPlan, compile_eager, compile_lazy, compiled_from_json,
                      compiled_to_json, decompose_cost, is_compiled_json, strip_plan)
from .corpus import SEED_ENV_VAR, bundled_corpus, load_corpus
from .disruption import disruption_bounds, plan_disruption, state_disruption
from .model import (PlanStatus,apply_plan, cost_to_json, isomorphic, plan_cost,
                    task_from_json, task_to_json, validate)
from .pddl import (PddlError, UnknownAction, emit_pddl, ground, lcm_cost_scale,
                   parse_domain, parse_plan, parse_problem, write_plan)
from .search import Heuristic, Outcome, SearchLimits, astar

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_UNSOLVABLE = 4
EXIT_INVALID_PLAN = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def parse_omega(text: str) -> Fraction:
    """Exact conversion of 'p/q', decimal, or scientific notation."""
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        try:
            value = Fraction(Decimal(text))
        except (InvalidOperation, ValueError):
            raise CliError(f"cannot parse omega {text!r}", EXIT_INPUT) from None
    if value <= 0:
        raise CliError(f"omega must be positive, got {text!r}", EXIT_INPUT)
    return value


def _write_out(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(f"cannot read {path}: {e}", EXIT_INPUT) from None


def _load_task_or_compiled(path: str):
    data = _load_json(path)
    try:
        if is_compiled_json(data):
            compiled = compiled_from_json(data)
            return compiled.task, compiled
        return task_from_json(data), None
    except (KeyError, ValueError) as e:
        raise CliError(f"malformed task JSON {path}: {e}", EXIT_INPUT) from None


def cmd_ground(args) -> int:
    try:
        domain = parse_domain(Path(args.domain).read_text())
        problem = parse_problem(Path(args.problem).read_text(), domain)
        task = ground(domain, problem, max_ground_actions=args.max_ground_actions)
    except OSError as e:
        raise CliError(str(e), EXIT_INPUT)
    except PddlError as e:
        raise CliError(str(e), EXIT_INPUT)
    _write_out(json.dumps(task_to_json(task), indent=2, sort_keys=True) + "\n",
               args.out)
    return EXIT_OK


def cmd_compile(args) -> int:
    task, compiled = _load_task_or_compiled(args.task)
    if compiled is not None:
        raise CliError("input is already a compiled task", EXIT_INPUT)
    omega = parse_omega(args.omega)
    compiled = (compile_lazy if args.mode == "lazy" else compile_eager)(task, omega)
    _write_out(json.dumps(compiled_to_json(compiled), indent=2, sort_keys=True) + "\n",
               args.out)
    if args.emit_pddl:
        out_dir = Path(args.emit_pddl)
        out_dir.mkdir(parents=True, exist_ok=True)
        scale = lcm_cost_scale(compiled)
        try:
            domain_text, problem_text = emit_pddl(
                compiled, scale, domain_name=f"{args.mode}-compiled")
        except PddlError as e:
            raise CliError(str(e), EXIT_INPUT)
        (out_dir / "domain.pddl").write_text(domain_text)
        (out_dir / "problem.pddl").write_text(problem_text)
    return EXIT_OK


def cmd_solve(args) -> int:
    task, compiled = _load_task_or_compiled(args.task)
    limits = SearchLimits(max_expansions=args.max_expansions,
                          max_seconds=args.max_seconds)
    result = astar(task, Heuristic(args.heuristic), limits)
    stats = {
        "outcome": result.outcome.value,
        "cost": cost_to_json(result.cost) if result.cost is not None else None,
        "expanded": result.expanded,
        "generated": result.generated,
        "elapsed_s": round(result.elapsed, 6),
    }
    if result.solved:
        plan_text = write_plan(result.plan, compiled if compiled else task)
        Path(args.plan_out).write_text(plan_text)
        stats["plan_file"] = args.plan_out
    text = json.dumps(stats, indent=2, sort_keys=True) + "\n"
    _write_out(text, args.stats_out)
    if result.outcome is Outcome.RESOURCE_LIMIT:
        return EXIT_RESOURCE
    if result.outcome is Outcome.PROVED_UNSOLVABLE:
        return EXIT_UNSOLVABLE
    return EXIT_OK


def cmd_evaluate(args) -> int:
    task, embedded = _load_task_or_compiled(args.task)
    compiled = embedded
    if args.compiled:
        data = _load_json(args.compiled)
        if not is_compiled_json(data):
            raise CliError(f"{args.compiled} is not a compiled-task JSON", EXIT_INPUT)
        compiled = compiled_from_json(data)
        if embedded is None and not isomorphic(task, compiled.origin):
            raise CliError("task JSON does not match the compiled task's origin",
                           EXIT_INPUT)
    try:
        plan_text = Path(args.plan).read_text()
    except OSError as e:
        raise CliError(str(e), EXIT_INPUT)
    target = compiled if compiled else task
    try:
        plan = parse_plan(plan_text, target)
    except UnknownAction as e:
        raise CliError(str(e), EXIT_INVALID_PLAN)
    except PddlError as e:
        raise CliError(str(e), EXIT_INPUT)

    eval_task = compiled.task if compiled else task
    check = validate(eval_task, plan)
    report: dict = {"valid": check.status.value, "cost": cost_to_json(plan_cost(plan))}
    code = EXIT_OK
    if check.status is PlanStatus.INVALID:
        report["failed_step"] = check.failed_step
        code = EXIT_INVALID_PLAN
    elif compiled is not None:
        origin = compiled.origin
        report["bounds"] = disruption_bounds(origin).to_json()
        if not check.goal_reaching:
            code = EXIT_INVALID_PLAN
        else:
            stripped = strip_plan(compiled, plan)
            report["decomposition"] = decompose_cost(compiled, plan).to_json()
            report["stripped_plan"] = list(stripped.names())
            report["stripped_cost"] = cost_to_json(plan_cost(stripped))
            report["disruption"] = plan_disruption(origin, stripped).to_json()
    else:
        report["bounds"] = disruption_bounds(task).to_json()
        final, _ = apply_plan(task.init, plan)
        report["disruption"] = state_disruption(task, task.init, final).to_json()
    _write_out(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return code


def cmd_bench(args) -> int:
    seed = args.seed
    if seed is None and SEED_ENV_VAR in os.environ:
        seed = int(os.environ[SEED_ENV_VAR])
    if args.corpus == "bundled":
        corpus = bundled_corpus(seed)
    else:
        corpus = load_corpus(args.corpus)
        if not corpus:
            raise CliError(f"no corpus problems under {args.corpus}", EXIT_INPUT)
    omegas = tuple(parse_omega(w) for w in args.omega.split(","))
    approaches = tuple(a.strip() for a in args.approaches.split(","))
    try:
        config = bench_mod.BenchConfig(
            corpus=tuple(corpus), omegas=omegas, approaches=approaches,
            heuristic=Heuristic(args.heuristic),
            limits=SearchLimits(args.max_expansions, args.max_seconds),
            oracle_budget=args.oracle_budget, jobs=args.jobs,
            repeats=args.repeats)
    except ValueError as e:
        raise CliError(str(e), EXIT_INPUT)
    result = bench_mod.run_bench(config)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    bench_mod.write_results_csv(result.rows, out_dir / "results.csv")
    bench_mod.write_overhead_csv(result.overhead, out_dir / "overhead.csv")
    bench_mod.write_pareto_csv(result.pareto, out_dir / "pareto.csv")
    from .plots import render_pareto, render_scatter
    render_scatter(result.rows, out_dir / "scatter.svg")
    render_pareto(result.pareto, out_dir / "pareto.svg")
    solved = sum(1 for r in result.rows if r.outcome == "solved")
    print(f"{len(result.rows)} rows ({solved} solved) -> {out_dir}")
    for err in result.errors:
        print(f"note: {err}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="disruptplan",
        description="Compute and analyze plans that jointly optimize action "
                    "cost and initial-state disruption.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ground", help="parse and ground PDDL into task JSON")
    p.add_argument("domain")
    p.add_argument("problem")
    p.add_argument("--out")
    p.add_argument("--max-ground-actions", type=int, default=10 ** 6)
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("compile", help="build a disruption compilation of a task")
    p.add_argument("task", help="grounded-task JSON file")
    p.add_argument("--mode", choices=("lazy", "eager"), required=True)
    p.add_argument("--omega", default="1", help="positive rational: p/q or decimal")
    p.add_argument("--out")
    p.add_argument("--emit-pddl", metavar="DIR",
                   help="also write domain.pddl/problem.pddl for external planners")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("solve", help="optimal search over a (compiled) task JSON")
    p.add_argument("task")
    p.add_argument("--heuristic", choices=[h.value for h in Heuristic],
                   default="hmax")
    p.add_argument("--max-expansions", type=int, default=1_000_000)
    p.add_argument("--max-seconds", type=float, default=30.0)
    p.add_argument("--plan-out", default="plan.out")
    p.add_argument("--stats-out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("evaluate", help="validate a plan file and report "
                                        "cost, disruption and bounds")
    p.add_argument("task", help="grounded-task or compiled-task JSON file")
    p.add_argument("plan", help="plan file")
    p.add_argument("--compiled", help="compiled-task JSON for decomposition")
    p.add_argument("--out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="run the experiment grid over a corpus")
    p.add_argument("--corpus", default="bundled",
                   help="corpus directory, or 'bundled' (default)")
    p.add_argument("--out-dir", default="bench-out")
    p.add_argument("--omega", default="1/1000,1,1000",
                   help="comma-separated positive rationals")
    p.add_argument("--approaches", default="original,eager,lazy")
    p.add_argument("--heuristic", choices=[h.value for h in Heuristic],
                   default="hmax")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-expansions", type=int, default=1_000_000)
    p.add_argument("--max-seconds", type=float, default=30.0)
    p.add_argument("--oracle-budget", type=int, default=100_000)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, default=None,
                   help=f"family generator seed (overrides ${SEED_ENV_VAR})")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except PddlError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidPlan as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_PLAN


if __name__ == "__main__":
    sys.exit(main())
