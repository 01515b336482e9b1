"""
Instance Loading and Serialization
==================================

This module reads and writes instances:
- Canonical format: a JSON document with `params`, `nodes` and
  `charging_functions` keys
- Benchmark format: vrp-rep XML files (see benchmark.py)

Every loaded instance is validated; failures raise InstanceError with one
diagnostic per violated invariant.
"""

import json
import logging
from dataclasses import asdict, fields
from pathlib import Path

from ..charging import ChargingFunction
from ..exceptions import InstanceError
from .network import Instance, Node, NodeKind, PolicyParams, validate

logger = logging.getLogger(__name__)

CANONICAL = "canonical"
BENCHMARK = "benchmark-import"
FORMATS = (CANONICAL, BENCHMARK)

_PARAM_FIELDS = {f.name: f.type for f in fields(PolicyParams)}


def _read_bytes(source):
    """Accept a path, raw bytes or a binary/text stream."""
    if isinstance(source, (str, Path)):
        return Path(source).read_bytes()
    if isinstance(source, (bytes, bytearray)):
        return bytes(source)
    data = source.read()
    return data.encode("utf-8") if isinstance(data, str) else data


def coerce_params(raw, base=None):
    """
    Build PolicyParams from a mapping, ignoring unknown keys.

    Args:
        raw (dict): parameter values (numbers or strings)
        base (PolicyParams, optional): values not present in raw

    Returns:
        PolicyParams: the merged parameters
    """
    values = asdict(base or PolicyParams())
    for key, value in raw.items():
        if key not in _PARAM_FIELDS:
            logger.warning("ignoring unknown parameter %r", key)
            continue
        default = values[key]
        if isinstance(default, bool):
            if isinstance(value, str):
                value = value.strip().lower() in ("1", "true", "yes", "on")
            values[key] = bool(value)
        elif isinstance(default, int):
            values[key] = int(value)
        else:
            values[key] = float(value)
    return PolicyParams(**values)


def build_instance(nodes, charging_functions, params, name="unnamed"):
    """
    Construct an instance and validate it.

    Raises:
        InstanceError: if any invariant is violated
    """
    instance = Instance(tuple(nodes), dict(charging_functions), params, name)
    problems = validate(instance)
    if problems:
        raise InstanceError(f"invalid instance {name!r}", problems)
    return instance


def _parse_canonical(data, overrides, name):
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InstanceError(f"malformed canonical instance: {e}") from e
    if not isinstance(document, dict):
        raise InstanceError("malformed canonical instance: top level must be an object")
    missing = [key for key in ("params", "nodes", "charging_functions") if key not in document]
    if missing:
        raise InstanceError(f"malformed canonical instance: missing keys {missing}")

    params = coerce_params(document["params"])
    if overrides:
        params = coerce_params(overrides, params)

    nodes = []
    try:
        for record in document["nodes"]:
            nodes.append(Node(
                id=int(record["id"]),
                kind=NodeKind(record["kind"]),
                x=float(record["x"]),
                y=float(record["y"]),
                technology=record.get("technology"),
                service_time=float(record.get("service_time", 0.0)),
            ))
        curves = {
            str(technology): ChargingFunction(tuple((float(c), float(a)) for c, a in points))
            for technology, points in document["charging_functions"].items()
        }
    except (KeyError, TypeError, ValueError) as e:
        raise InstanceError(f"malformed canonical instance: {e}") from e

    return build_instance(nodes, curves, params, document.get("name") or name or "unnamed")


def load_instance(source, format=CANONICAL, overrides=None, name=None):
    """
    Load and validate an instance.

    Args:
        source: path, bytes or stream
        format (str): "canonical" or "benchmark-import"
        overrides (dict, optional): PolicyParams values replacing file values
        name (str, optional): instance name (defaults to the file stem)

    Returns:
        Instance: the validated instance
    """
    if format not in FORMATS:
        raise InstanceError(f"unknown instance format {format!r}, expected one of {FORMATS}")
    data = _read_bytes(source)
    if name is None and isinstance(source, (str, Path)):
        name = Path(source).stem

    if format == CANONICAL:
        instance = _parse_canonical(data, overrides, name)
    else:
        from .benchmark import parse_benchmark
        instance = parse_benchmark(data, overrides=overrides, name=name or "unnamed")

    logger.info("loaded instance %s: %d customers, %d stations",
                instance.name, len(instance.customers), len(instance.stations))
    return instance


def to_canonical(instance):
    """Canonical JSON-ready dictionary for an instance."""
    return {
        "name": instance.name,
        "params": asdict(instance.params),
        "nodes": [
            {
                "id": node.id,
                "kind": node.kind.value,
                "x": node.x,
                "y": node.y,
                "technology": node.technology,
                "service_time": node.service_time,
            }
            for node in instance.nodes
        ],
        "charging_functions": {
            technology: [list(point) for point in curve.breakpoints]
            for technology, curve in sorted(instance.charging_functions.items())
        },
    }


def dump_instance(instance, target=None):
    """
    Serialize an instance in canonical form.

    JSON floats are written with repr precision, so reloading reproduces
    the instance exactly.

    Args:
        instance (Instance): instance to write
        target: path or text stream; None returns the text

    Returns:
        str: the JSON text
    """
    text = json.dumps(to_canonical(instance), indent=2, sort_keys=True)
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    elif target is not None:
        target.write(text)
    return text
