"""
Scenario Files
==============

Scenario sets are stored as JSON documents so a run can be replayed:

    {"probabilities": [...], "energy": [[[...]]], "indices": [...],
     "transport_distance": 0.0}

`indices` and `transport_distance` are only present for reduced sets.
"""

import json
from pathlib import Path

import numpy as np
import pandas as pd

from ..exceptions import ScenarioError
from .sampling import ScenarioSet


def scenarios_to_dict(scenarios, kept_indices=None, transport_distance=None):
    document = {
        "probabilities": scenarios.probabilities.tolist(),
        "energy": scenarios.energy.tolist(),
    }
    if kept_indices is not None:
        document["indices"] = [int(i) for i in kept_indices]
    if transport_distance is not None:
        document["transport_distance"] = float(transport_distance)
    return document


def dump_scenarios(scenarios, target, kept_indices=None, transport_distance=None):
    """
    Write a scenario set (optionally with its reduction record) as JSON.

    Args:
        scenarios (ScenarioSet): set to write
        target: path or text stream
        kept_indices (list, optional): parent indices of a reduced set
        transport_distance (float, optional): distance of a reduced set
    """
    text = json.dumps(scenarios_to_dict(scenarios, kept_indices, transport_distance))
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)
    return text


def load_scenarios(source):
    """
    Read a scenario file written by dump_scenarios.

    Returns:
        tuple: (ScenarioSet, indices or None)
    """
    try:
        if isinstance(source, (str, Path)):
            document = json.loads(Path(source).read_text(encoding="utf-8"))
        else:
            document = json.load(source)
        scenarios = ScenarioSet(np.array(document["energy"]), np.array(document["probabilities"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ScenarioError(f"malformed scenario file: {e}") from e
    return scenarios, document.get("indices")


def arc_moments(scenarios, instance=None):
    """
    Per-arc statistics of a scenario set.

    Args:
        scenarios (ScenarioSet): the set to inspect
        instance (Instance, optional): adds the nominal energy column

    Returns:
        pd.DataFrame: one row per ordered arc i != j with columns
        i, j, [nominal,] mean, std, min, max
    """
    n = scenarios.size
    i, j = np.nonzero(~np.eye(n, dtype=bool))
    values = scenarios.energy[:, i, j]
    p = scenarios.probabilities
    mean = p @ values
    std = np.sqrt(p @ (values - mean) ** 2)

    frame = pd.DataFrame({"i": i, "j": j})
    if instance is not None:
        frame["nominal"] = instance.nominal_energy[i, j]
    frame["mean"] = mean
    frame["std"] = std
    frame["min"] = values.min(axis=0)
    frame["max"] = values.max(axis=0)
    return frame
