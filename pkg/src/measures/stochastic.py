"""
Stochastic Value Measures
=========================

This module compares the recourse solution with its deterministic
counterparts:
- RP: objective of the stochastic problem over the scenario set
- WS: expected objective when each scenario is known in advance
- EVPI = RP - WS (percent of RP)
- EVP: objective of the problem on the mean scenario
- EEV: expected duration of the EVP routes under the scenario set,
  infinite when any of them fails in some scenario
- VSS = EEV - RP (percent of RP)

All values come from the heuristic solver, so WS > RP or EEV < RP can
happen by a small margin; such cases are reported as warnings.
"""

import logging
import math
from dataclasses import asdict, dataclass, field

import pandas as pd

from ..exceptions import MeasuresError
from ..routing import RouteEvaluator
from ..scenario import ScenarioSet, mean_scenario
from ..search import solve

logger = logging.getLogger(__name__)

# Slack before WS/EEV inconsistencies are reported
HEURISTIC_TOLERANCE = 1e-6

CSV_COLUMNS = ["instance", "RP", "WS", "%EVPI", "EVP", "EEV", "%VSS"]


def gap(z_algo, z_model):
    """
    Relative gap between two objective values, in percent.

    Args:
        z_algo (float): objective found by the algorithm
        z_model (float): reference objective, > 0

    Returns:
        float: 100 * (z_algo - z_model) / z_model
    """
    if not z_model > 0:
        raise MeasuresError(f"reference objective must be positive, got {z_model}")
    return 100.0 * (z_algo - z_model) / z_model


@dataclass(frozen=True)
class MeasuresReport:
    """Stochastic value measures of one instance and scenario set."""

    rp: float
    ws: float
    evpi: float
    evpi_pct: float
    evp: float
    eev: float
    vss: float
    vss_pct: float
    warnings: tuple = field(default=())

    def as_row(self, instance_name):
        """CSV row in the column order RP, WS, %EVPI, EVP, EEV, %VSS."""
        return {
            "instance": instance_name,
            "RP": self.rp,
            "WS": self.ws,
            "%EVPI": self.evpi_pct,
            "EVP": self.evp,
            "EEV": self.eev,
            "%VSS": self.vss_pct,
        }

    def to_dict(self):
        values = asdict(self)
        values["warnings"] = list(self.warnings)
        return {k: (v if not isinstance(v, float) or math.isfinite(v) else "inf") for k, v in values.items()}


def recourse_value(instance, scenarios, settings):
    """RP: ILS-SP objective over the whole scenario set."""
    return solve(instance, scenarios, settings).objective


def wait_and_see(instance, scenarios, settings):
    """
    WS: probability-weighted objective of one solve per scenario.

    Args:
        instance (Instance): the network
        scenarios (ScenarioSet): energy scenarios
        settings (SearchSettings): search settings, the same seed for every
            scenario

    Returns:
        float: sum_s p_s * objective(s)
    """
    total = 0.0
    for s, p in enumerate(scenarios.probabilities):
        single = ScenarioSet.singleton(scenarios.energy[s])
        objective = solve(instance, single, settings).objective
        logger.debug("wait-and-see scenario %d: %.4f", s, objective)
        total += p * objective
    return total


def expected_value_analysis(instance, scenarios, settings):
    """
    EVP and EEV.

    Returns:
        tuple: (evp, eev); eev is inf when an EVP route is infeasible in
        some scenario
    """
    mean = ScenarioSet.singleton(mean_scenario(scenarios))
    result = solve(instance, mean, settings)
    evaluator = RouteEvaluator(instance, scenarios)
    eev = 0.0
    for route in result.solution.routes:
        duration = evaluator.duration(route)
        if not math.isfinite(duration):
            logger.info("EVP route %s is infeasible under the scenario set", route)
            return result.objective, math.inf
        eev += duration
    return result.objective, eev


def measures_report(instance, scenarios, settings, rp=None):
    """
    Run the RP / WS / EVP / EEV pipeline.

    Args:
        instance (Instance): the network
        scenarios (ScenarioSet): energy scenarios
        settings (SearchSettings): search settings
        rp (float, optional): reuse a known RP value

    Returns:
        MeasuresReport: all measures with heuristic-gap warnings
    """
    if rp is None:
        rp = recourse_value(instance, scenarios, settings)
    ws = rp if len(scenarios) == 1 else wait_and_see(instance, scenarios, settings)
    evp, eev = expected_value_analysis(instance, scenarios, settings)

    evpi = rp - ws
    vss = eev - rp if math.isfinite(eev) else math.inf
    evpi_pct = 100.0 * evpi / rp
    vss_pct = 100.0 * vss / rp if math.isfinite(vss) else math.inf

    warnings = []
    if ws > rp + HEURISTIC_TOLERANCE:
        warnings.append(f"heuristic gap: WS {ws:.6f} exceeds RP {rp:.6f}")
    if math.isfinite(eev) and eev < rp - HEURISTIC_TOLERANCE:
        warnings.append(f"heuristic gap: EEV {eev:.6f} below RP {rp:.6f}")
    for message in warnings:
        logger.warning(message)

    return MeasuresReport(rp, ws, evpi, evpi_pct, evp, eev, vss, vss_pct, tuple(warnings))


def measures_frame(rows):
    """DataFrame of measures rows with the fixed column order."""
    return pd.DataFrame(rows, columns=CSV_COLUMNS)
