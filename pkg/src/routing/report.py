"""
Route Evaluation Reports
========================

Serializes a RouteEvaluation to JSON for auditing: the expected duration
and, per scenario, the SoC timeline and every detour with its coordinates,
station and charge time.
"""

import json
import math
from dataclasses import asdict
from pathlib import Path


def _number(value):
    return value if math.isfinite(value) else "inf"


def evaluation_to_dict(evaluation):
    """JSON-ready dictionary for a RouteEvaluation (inf written as "inf")."""
    traces = []
    for trace in evaluation.traces:
        traces.append({
            "scenario": trace.scenario,
            "duration": _number(trace.duration),
            "departure_soc": list(trace.departure_soc),
            "arrival_soc": list(trace.arrival_soc),
            "events": [
                {**asdict(event), "arc": list(event.arc), "detour_point": list(event.detour_point)}
                for event in trace.events
            ],
        })
    return {
        "customers": list(evaluation.customers),
        "expected_duration": _number(evaluation.expected_duration),
        "feasible": evaluation.feasible,
        "traces": traces,
    }


def write_route_report(evaluation, target):
    """
    Write a route evaluation report.

    Args:
        evaluation (RouteEvaluation): evaluation with traces
        target: path or text stream

    Returns:
        str: the JSON text
    """
    text = json.dumps(evaluation_to_dict(evaluation), indent=2)
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)
    return text
