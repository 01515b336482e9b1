"""
CLI Commands
============

One function per subcommand. Each returns a process exit status and writes
its artifacts under the configured output directory:
- solve: solution JSON (routes and per-scenario traces) and a summary CSV row
- scenarios: scenario files, reductions and per-arc moments
- measures: RP / WS / EVPI / EVP / EEV / VSS as CSV and JSON
- sweep: one solve per axis value, aggregated into one table
- evaluate-route: recourse evaluation report of a given customer sequence
"""

import io
import json
import logging
import math
import os
import tempfile
from dataclasses import replace
from pathlib import Path

import pandas as pd
from tqdm import tqdm

from ..exceptions import InstanceError, SevrpError, UnservableInstanceError
from ..instance import load_instance, validate
from ..measures import measures_frame, measures_report
from ..routing import RouteEvaluator, evaluate_route, evaluation_to_dict, precompute_ndcs, write_route_report
from ..scenario import arc_moments, dump_scenarios, generate_scenarios, load_scenarios, reduce_ffs
from ..search import solve, substream

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = [
    "instance", "distribution", "scenarios", "seed",
    "objective", "routes", "iterations", "pool_size", "sp_proven", "wall_time_s",
]
SWEEP_COLUMNS = ["axis", "value", "instance", "objective", "routes", "feasible", "error"]
SWEEP_AXES = {
    "q_threshold": "threshold_fraction",
    "q_goal": "goal_fraction",
    "scenario_count": "scenario_count",
}
SCENARIO_ACTIONS = ("generate", "reduce", "inspect")


# Helpers

def write_atomic(path, text):
    """Write text to path through a temporary file and an atomic rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return path


def _json_number(value):
    return value if not isinstance(value, float) or math.isfinite(value) else "inf"


def prepare_instance(config, path=None):
    """Load the instance with the run's policy overrides applied."""
    path = config.resolve_instance(path)
    instance = load_instance(path, format=config.format_for(path), overrides=config.policy_overrides())
    levels = config.policy_levels(instance.params.q_max)
    if levels:
        instance = instance.with_params(**levels)
        problems = validate(instance)
        if problems:
            raise InstanceError(f"invalid policy for {instance.name!r}", problems)
    return instance


def prepare_scenarios(config, instance):
    """Scenario set of a run: loaded or sampled, then optionally reduced."""
    if config.scenario_file:
        scenarios, _ = load_scenarios(config.scenario_file)
    else:
        rng = substream(config.seed, "scenario-gen")
        scenarios = generate_scenarios(instance, config.distribution, config.scenario_count,
                                       seed=rng, symmetric=config.symmetric)
    if config.reduce_to is not None and config.reduce_to < len(scenarios):
        scenarios = reduce_ffs(scenarios, config.reduce_to).reduced
    return scenarios


def run_solve(config, path=None):
    """
    Load, sample and solve one instance.

    Returns:
        tuple: (instance, scenarios, SolveResult, ndcs)
    """
    instance = prepare_instance(config, path)
    scenarios = prepare_scenarios(config, instance)
    settings = config.search_settings(instance.params)
    ndcs = precompute_ndcs(instance) if settings.use_ndcs else None
    result = solve(instance, scenarios, settings, ndcs=ndcs)
    return instance, scenarios, result, ndcs


def summary_row(config, instance, scenarios, result):
    return {
        "instance": instance.name,
        "distribution": config.distribution if len(scenarios) > 1 else "nominal",
        "scenarios": len(scenarios),
        "seed": config.seed,
        "objective": round(result.objective, 6),
        "routes": len(result.solution.routes),
        "iterations": result.iterations,
        "pool_size": len(result.pool),
        "sp_proven": result.sp_proven,
        "wall_time_s": round(result.elapsed, 3),
    }


def solution_document(instance, scenarios, result, ndcs):
    evaluator = RouteEvaluator(instance, scenarios, ndcs)
    routes = []
    for route in result.solution.routes:
        evaluation = evaluator.evaluate(route, keep_traces=True)
        routes.append(evaluation_to_dict(evaluation))
    return {
        "instance": instance.name,
        "objective": _json_number(result.objective),
        "ils_objective": _json_number(result.ils_best.objective),
        "sp_proven": result.sp_proven,
        "iterations": result.iterations,
        "scenarios": len(scenarios),
        "stats": result.stats,
        "routes": routes,
    }


# Subcommands

def cmd_solve(config):
    """
    Solve one instance and write its solution and summary.

    Returns:
        int: 0 on success
    """
    instance, scenarios, result, ndcs = run_solve(config)
    output = Path(config.output_dir)
    solution_path = write_atomic(
        output / f"{instance.name}_solution.json",
        json.dumps(solution_document(instance, scenarios, result, ndcs), indent=2),
    )
    frame = pd.DataFrame([summary_row(config, instance, scenarios, result)], columns=SUMMARY_COLUMNS)
    summary_path = write_atomic(output / f"{instance.name}_summary.csv", frame.to_csv(index=False))

    print(f"✅ {instance.name}: objective {result.objective:.4f} with {len(result.solution.routes)} routes")
    for route in result.solution.routes:
        print(f"   🚚 0 -> {' -> '.join(str(c) for c in route)} -> 0")
    print(f"   📄 {solution_path}")
    print(f"   📊 {summary_path}")
    return 0


def cmd_scenarios(config, action):
    """
    Generate, reduce or inspect scenario sets.

    Args:
        config (RunConfig): run configuration
        action (str): "generate", "reduce" or "inspect"

    Returns:
        int: 0 on success
    """
    output = Path(config.output_dir)
    if action == "generate":
        instance = prepare_instance(config)
        rng = substream(config.seed, "scenario-gen")
        scenarios = generate_scenarios(instance, config.distribution, config.scenario_count,
                                       seed=rng, symmetric=config.symmetric)
        target = Path(config.scenario_file or output / f"{instance.name}_scenarios.json")
        write_atomic(target, dump_scenarios(scenarios, io.StringIO()))
        print(f"✅ {len(scenarios)} {config.distribution} scenarios written to {target}")
        return 0

    if not config.scenario_file:
        raise SevrpError(f"'{action}' needs a scenario file (use --scenario-file)")
    scenarios, _ = load_scenarios(config.scenario_file)
    stem = Path(config.scenario_file).stem

    if action == "reduce":
        if config.reduce_to is None:
            raise SevrpError("'reduce' needs --reduce-to")
        reduction = reduce_ffs(scenarios, config.reduce_to)
        target = output / f"{stem}_reduced_{config.reduce_to}.json"
        text = dump_scenarios(reduction.reduced, io.StringIO(), reduction.kept_indices,
                              reduction.transport_distance)
        write_atomic(target, text)
        print(f"✅ kept {len(reduction.kept_indices)} of {len(scenarios)} scenarios, "
              f"transport distance {reduction.transport_distance:.6g}")
        print(f"   📄 {target}")
        return 0

    if action == "inspect":
        instance = prepare_instance(config) if config.instance else None
        moments = arc_moments(scenarios, instance)
        target = write_atomic(output / f"{stem}_moments.csv", moments.to_csv(index=False))
        print(f"📊 {len(scenarios)} scenarios over {scenarios.size} nodes")
        print(moments.describe().to_string())
        print(f"   📄 {target}")
        return 0

    raise SevrpError(f"unknown scenarios action {action!r}, expected one of {SCENARIO_ACTIONS}")


def cmd_measures(config):
    """
    Compute the stochastic measures of one instance.

    Returns:
        int: 0 on success
    """
    instance, scenarios, result, _ = run_solve(config)
    settings = config.search_settings(instance.params)
    report = measures_report(instance, scenarios, settings, rp=result.objective)

    output = Path(config.output_dir)
    frame = measures_frame([report.as_row(instance.name)])
    csv_path = write_atomic(output / f"{instance.name}_measures.csv", frame.to_csv(index=False))
    write_atomic(output / f"{instance.name}_measures.json", json.dumps(report.to_dict(), indent=2))

    print(f"✅ {instance.name} over {len(scenarios)} scenarios")
    print(frame.to_string(index=False))
    for message in report.warnings:
        print(f"⚠️ {message}")
    print(f"   📄 {csv_path}")
    return 0


def _instance_paths(config):
    path = config.resolve_instance()
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.suffix.lower() in (".xml", ".json"))
        if not files:
            raise SevrpError(f"no instance files in {path}")
        return files
    return [path]


def _sweep_cell(config, axis, value, path):
    cell = replace(config, **{SWEEP_AXES[axis]: value})
    row = {"axis": axis, "value": value, "instance": Path(path).stem,
           "objective": math.inf, "routes": 0, "feasible": False, "error": ""}
    try:
        instance, _, result, _ = run_solve(cell, path)
        row.update(instance=instance.name, objective=round(result.objective, 6),
                   routes=len(result.solution.routes), feasible=True)
        return row, True
    except UnservableInstanceError as e:
        row["error"] = str(e)
        return row, True
    except SevrpError as e:
        logger.error("sweep cell %s=%s on %s failed: %s", axis, value, path, e)
        row["error"] = str(e)
        return row, False


def cmd_sweep(config, axis, values):
    """
    Run one solve per axis value (and instance) and aggregate the results.

    Infeasible cells are data (objective inf); other failures are recorded
    and make the exit status non-zero after the sweep completes.

    Args:
        config (RunConfig): base configuration
        axis (str): "q_threshold", "q_goal" or "scenario_count"
        values (list): fractions of Q^max, or scenario counts

    Returns:
        int: 0 iff every cell completed
    """
    if axis not in SWEEP_AXES:
        raise SevrpError(f"unknown sweep axis {axis!r}, expected one of {tuple(SWEEP_AXES)}")
    if axis == "scenario_count":
        values = [int(v) for v in values]
    paths = _instance_paths(config)
    cells = [(value, path) for value in values for path in paths]
    cell_dir = Path(config.output_dir) / f"sweep_{axis}"

    rows, completed = [], True
    for value, path in tqdm(cells, desc=f"sweep {axis}", disable=config.quiet):
        row, ok = _sweep_cell(config, axis, value, path)
        completed = completed and ok
        rows.append(row)
        cell_frame = pd.DataFrame([row], columns=SWEEP_COLUMNS)
        write_atomic(cell_dir / f"{row['instance']}_{value}.csv", cell_frame.to_csv(index=False))

    table = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    table_path = write_atomic(Path(config.output_dir) / f"sweep_{axis}.csv", table.to_csv(index=False))
    means = table.groupby("value", sort=False)["objective"].mean()

    print(f"✅ sweep over {axis}: {len(rows)} runs")
    for value, mean in means.items():
        print(f"   {axis}={value}: mean objective {mean:.4f}")
    print(f"   📄 {table_path}")
    if not completed:
        print("❌ some sweep cells failed; see the error column")
    return 0 if completed else 1


def cmd_evaluate_route(config, customers):
    """
    Evaluate a given customer sequence over the run's scenario set.

    Args:
        config (RunConfig): run configuration
        customers (list): customer ids in visiting order

    Returns:
        int: 0 when the route is feasible, 1 otherwise
    """
    instance = prepare_instance(config)
    scenarios = prepare_scenarios(config, instance)
    ndcs = precompute_ndcs(instance) if config.use_ndcs else None
    evaluation = evaluate_route(customers, instance, scenarios, ndcs)
    target = Path(config.output_dir) / f"{instance.name}_route.json"
    write_atomic(target, write_route_report(evaluation, io.StringIO()))

    detours = sum(len(trace.events) for trace in evaluation.traces)
    if evaluation.feasible:
        print(f"✅ expected duration {evaluation.expected_duration:.4f} "
              f"({detours} detours over {len(scenarios)} scenarios)")
    else:
        failed = evaluation.traces[-1].scenario if evaluation.traces else "?"
        print(f"❌ route infeasible in scenario {failed}")
    print(f"   📄 {target}")
    return 0 if evaluation.feasible else 1
