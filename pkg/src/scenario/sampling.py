"""
Energy Scenario Sets
====================

This module holds per-arc energy realizations and builds them:
- Scenario / ScenarioSet containers with their invariants
- Monte Carlo generation around the nominal energy matrix
- The probability-weighted mean scenario

Every sampling law has mean ê_ij and standard deviation 0.5 ê_ij / sqrt(12),
the moments of the uniform law on [0.75 ê_ij, 1.25 ê_ij].
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import truncexpon, truncnorm

from ..exceptions import ScenarioError

logger = logging.getLogger(__name__)

UNIFORM = "uniform"
NORMAL = "truncated-normal"
EXPONENTIAL = "truncated-exponential"
DISTRIBUTIONS = (UNIFORM, NORMAL, EXPONENTIAL)

# Short tags used in result tables
_ALIASES = {"U": UNIFORM, "N": NORMAL, "E": EXPONENTIAL}

# Relative half-width of the uniform law
MAX_DEVIATION = 0.25

# Standard deviation of every law as a fraction of ê
SIGMA_FRACTION = 2 * MAX_DEVIATION / math.sqrt(12)

# Truncated normal is kept on [0, 2ê]; shifted exponential on [ê - σ, ê + 6σ]
_NORMAL_BOUND = 1.0 / SIGMA_FRACTION
_EXPONENTIAL_SPAN = 7.0

PROBABILITY_TOLERANCE = 1e-9


def resolve_distribution(tag):
    """Map a distribution name or its one-letter tag to the canonical name."""
    name = _ALIASES.get(tag, tag)
    if name not in DISTRIBUTIONS:
        raise ScenarioError(f"unknown distribution {tag!r}, expected one of {DISTRIBUTIONS}")
    return name


@dataclass(frozen=True)
class Scenario:
    """One energy realization: e[i, j] in kWh for every ordered node pair."""

    energy: np.ndarray

    def __post_init__(self):
        energy = np.array(self.energy, dtype=np.float64)
        if energy.ndim != 2 or energy.shape[0] != energy.shape[1]:
            raise ScenarioError(f"scenario must be a square matrix, got shape {energy.shape}")
        if (energy < 0).any():
            raise ScenarioError("scenario has negative energy entries")
        if np.diagonal(energy).any():
            raise ScenarioError("scenario diagonal must be zero")
        energy.setflags(write=False)
        object.__setattr__(self, "energy", energy)


@dataclass(frozen=True)
class ScenarioSet:
    """
    Discrete distribution over energy scenarios.

    energy has shape (S, n, n); probabilities has shape (S,) and sums to 1.
    """

    energy: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self):
        energy = np.array(self.energy, dtype=np.float64)
        probabilities = np.array(self.probabilities, dtype=np.float64).reshape(-1)
        if energy.ndim != 3 or energy.shape[1] != energy.shape[2]:
            raise ScenarioError(f"scenario energy must have shape (S, n, n), got {energy.shape}")
        if len(energy) == 0:
            raise ScenarioError("scenario set is empty")
        if len(probabilities) != len(energy):
            raise ScenarioError(
                f"{len(energy)} scenarios but {len(probabilities)} probabilities"
            )
        if (probabilities < 0).any():
            raise ScenarioError("scenario probabilities must be nonnegative")
        if abs(probabilities.sum() - 1.0) > PROBABILITY_TOLERANCE:
            raise ScenarioError(f"scenario probabilities sum to {probabilities.sum()}, not 1")
        if (energy < 0).any():
            raise ScenarioError("scenario set has negative energy entries")
        energy.setflags(write=False)
        probabilities.setflags(write=False)
        object.__setattr__(self, "energy", energy)
        object.__setattr__(self, "probabilities", probabilities)

    def __len__(self):
        return len(self.probabilities)

    @property
    def size(self):
        """Number of nodes the matrices are indexed by."""
        return self.energy.shape[1]

    def scenario(self, s):
        return Scenario(self.energy[s])

    @classmethod
    def singleton(cls, scenario):
        """Wrap one scenario (or matrix) as a set with probability 1."""
        energy = scenario.energy if isinstance(scenario, Scenario) else scenario
        return cls(np.asarray(energy)[np.newaxis], np.ones(1))

    def subset(self, indices, probabilities=None):
        """Scenarios at the given indices, reweighted (default: renormalized)."""
        indices = list(indices)
        if probabilities is None:
            weights = self.probabilities[indices]
            probabilities = weights / weights.sum()
        return ScenarioSet(self.energy[indices], probabilities)


def _sample(nominal, dist, count, rng):
    shape = (count,) + nominal.shape
    sigma = SIGMA_FRACTION * nominal
    if dist == UNIFORM:
        return nominal * rng.uniform(1.0 - MAX_DEVIATION, 1.0 + MAX_DEVIATION, size=shape)
    if dist == NORMAL:
        z = truncnorm.rvs(-_NORMAL_BOUND, _NORMAL_BOUND, size=shape, random_state=rng)
        # rounding at the lower bound can leave -1e-17
        return np.maximum(nominal + sigma * z, 0.0)
    x = truncexpon.rvs(_EXPONENTIAL_SPAN, size=shape, random_state=rng)
    return (nominal - sigma) + sigma * x


def generate_scenarios(instance, dist, count, seed=None, symmetric=False):
    """
    Sample an energy scenario set around the instance's nominal energy.

    This method:
    1. Returns the nominal scenario with probability 1 when count == 1
    2. Otherwise samples every ordered arc independently from the chosen law
    3. Optionally mirrors the upper triangle for symmetric experiments

    Args:
        instance (Instance): source of the nominal energy matrix ê
        dist (str): "uniform", "truncated-normal", "truncated-exponential"
            (or "U", "N", "E")
        count (int): number of equiprobable scenarios, >= 1
        seed: integer seed or numpy Generator
        symmetric (bool): force e_ijs == e_jis

    Returns:
        ScenarioSet: count scenarios with probability 1/count each
    """
    dist = resolve_distribution(dist)
    if int(count) != count or count < 1:
        raise ScenarioError(f"scenario count must be a positive integer, got {count}")
    count = int(count)
    nominal = np.asarray(instance.nominal_energy, dtype=np.float64)

    if count == 1:
        return ScenarioSet.singleton(nominal.copy())

    rng = np.random.default_rng(seed)
    energy = _sample(nominal, dist, count, rng)
    if symmetric:
        upper = np.triu(energy, k=1)
        energy = upper + np.swapaxes(upper, 1, 2)
    for matrix in energy:
        np.fill_diagonal(matrix, 0.0)

    logger.debug("sampled %d %s scenarios over %d nodes", count, dist, nominal.shape[0])
    return ScenarioSet(energy, np.full(count, 1.0 / count))


def mean_scenario(scenarios):
    """
    Probability-weighted mean of a scenario set.

    Args:
        scenarios (ScenarioSet): the set to average

    Returns:
        Scenario: e_ij = sum_s p_s e_ijs
    """
    if len(scenarios) == 1:
        return scenarios.scenario(0)
    return Scenario(np.tensordot(scenarios.probabilities, scenarios.energy, axes=1))
