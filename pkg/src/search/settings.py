"""Search settings shared by the descent, the ILS driver and the pipeline."""

import math
from dataclasses import dataclass, field

import numpy as np

from .moves import DEFAULT_ORDER

# Named random sub-streams derived from the run seed
STREAMS = {
    "scenario-gen": 1,
    "initial-solution": 2,
    "perturbation": 3,
}

# Strict-improvement threshold for objective comparisons
IMPROVEMENT_TOLERANCE = 1e-9


def substream(seed, name):
    """Independent generator for one named purpose of a seeded run."""
    return np.random.default_rng([int(seed), STREAMS[name]])


@dataclass(frozen=True)
class SearchSettings:
    """
    Knobs of one ILS-SP run.

    gamma = inf together with use_bounds = False disables move filtering.
    """

    i_max: int = 2000
    gamma: float = 1.0
    time_limit: float = 10800.0
    sp_time_limit: float = 600.0
    use_ndcs: bool = True
    use_bounds: bool = True
    first_improvement: bool = False
    neighborhoods: tuple = field(default=DEFAULT_ORDER)
    log_every: int = 100
    seed: int = 0

    @classmethod
    def from_params(cls, params, **overrides):
        """Settings taken from an instance's PolicyParams, then overrides."""
        values = dict(
            i_max=params.i_max,
            gamma=params.gamma,
            time_limit=params.time_limit,
            sp_time_limit=params.sp_time_limit,
            use_ndcs=params.use_ndcs,
            seed=params.seed,
        )
        values.update(overrides)
        return cls(**values)

    @property
    def filters_disabled(self):
        return math.isinf(self.gamma) and not self.use_bounds
