"""
Run Configuration
=================

Settings of one CLI run, merged from (lowest to highest precedence):
1. built-in defaults
2. environment variables (a .env file is loaded at start-up)
3. a KEY=value configuration file
4. command-line flags

Keys are case-insensitive in configuration files (THRESHOLD_FRACTION and
threshold_fraction are the same key).
"""

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from dotenv import dotenv_values

from ..exceptions import ConfigError, ScenarioError
from ..instance import BENCHMARK, CANONICAL
from ..scenario import resolve_distribution
from ..search import DEFAULT_ORDER, SearchSettings

# Environment variables read as defaults
ENVIRONMENT = {
    "SEVRP_INSTANCE_DIR": "instance_dir",
    "SEVRP_OUTPUT_DIR": "output_dir",
    "SEVRP_LOG_LEVEL": "log_level",
    "SEVRP_SEED": "seed",
    "SEVRP_TIME_LIMIT": "time_limit",
}


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a subcommand needs: instance, scenarios, policy, search, outputs.

    Fractions are relative to q_max; None keeps the instance's own value.
    """

    instance: str = None
    instance_format: str = None
    instance_dir: str = None
    # scenarios
    distribution: str = "uniform"
    scenario_count: int = 1
    reduce_to: int = None
    scenario_file: str = None
    symmetric: bool = False
    seed: int = 0
    # policy
    q_max: float = None
    threshold_fraction: float = None
    goal_fraction: float = None
    include_service_time: bool = False
    # search
    i_max: int = 2000
    gamma: float = 1.0
    time_limit: float = 10800.0
    sp_time_limit: float = 600.0
    use_ndcs: bool = True
    use_bounds: bool = True
    first_improvement: bool = False
    neighborhoods: str = ",".join(DEFAULT_ORDER)
    log_every: int = 100
    # outputs
    output_dir: str = "results"
    log_file: str = None
    log_level: str = "INFO"
    quiet: bool = False

    def diagnostics(self):
        problems = []
        for name in ("threshold_fraction", "goal_fraction"):
            value = getattr(self, name)
            if value is not None and not 0.0 < value < 1.0:
                problems.append(f"{name} must be in (0, 1), got {value}")
        threshold = self.threshold_fraction if self.threshold_fraction is not None else 0.3
        goal = self.goal_fraction if self.goal_fraction is not None else 0.8
        if not threshold < goal:
            problems.append(f"threshold fraction {threshold} must be below goal fraction {goal}")
        if self.scenario_count < 1:
            problems.append(f"scenario_count must be >= 1, got {self.scenario_count}")
        if self.reduce_to is not None and self.reduce_to < 1:
            problems.append(f"reduce_to must be >= 1, got {self.reduce_to}")
        if self.i_max < 1:
            problems.append(f"i_max must be >= 1, got {self.i_max}")
        if not self.gamma >= 1:
            problems.append(f"gamma must be >= 1, got {self.gamma}")
        if self.instance_format not in (None, CANONICAL, BENCHMARK):
            problems.append(f"unknown instance format {self.instance_format!r}")
        unknown = [n for n in self.neighborhood_order() if n not in DEFAULT_ORDER]
        if unknown:
            problems.append(f"unknown neighborhoods: {unknown}")
        try:
            resolve_distribution(self.distribution)
        except ScenarioError as e:
            problems.append(str(e))
        return problems

    def neighborhood_order(self):
        return tuple(n.strip() for n in self.neighborhoods.split(",") if n.strip())

    def policy_overrides(self):
        """PolicyParams values to apply when loading the instance."""
        overrides = {
            "q_max": self.q_max,
            "gamma": self.gamma,
            "i_max": self.i_max,
            "seed": self.seed,
            "use_ndcs": self.use_ndcs,
            "sp_time_limit": self.sp_time_limit,
            "time_limit": self.time_limit,
            "include_service_time": self.include_service_time,
        }
        return {k: v for k, v in overrides.items() if v is not None}

    def policy_levels(self, q_max):
        """Q^T / Q^G in kWh derived from the fractions, if given."""
        levels = {}
        if self.threshold_fraction is not None:
            levels["q_threshold"] = self.threshold_fraction * q_max
        if self.goal_fraction is not None:
            levels["q_goal"] = self.goal_fraction * q_max
        return levels

    def search_settings(self, params):
        return SearchSettings.from_params(
            params,
            gamma=self.gamma,
            use_bounds=self.use_bounds,
            first_improvement=self.first_improvement,
            neighborhoods=self.neighborhood_order(),
            log_every=self.log_every,
        )

    def resolve_instance(self, path=None):
        """Instance path, looked up in instance_dir when not found as given."""
        path = path or self.instance
        if not path:
            raise ConfigError("no instance given (use --instance)")
        candidate = Path(path)
        if not candidate.exists() and self.instance_dir:
            candidate = Path(self.instance_dir) / path
        if not candidate.exists():
            raise ConfigError(f"instance not found: {path}")
        return candidate

    def format_for(self, path):
        if self.instance_format:
            return self.instance_format
        return BENCHMARK if Path(path).suffix.lower() == ".xml" else CANONICAL


_FIELDS = {f.name: f for f in fields(RunConfig)}


def _coerce(name, value):
    """Convert a text value to the type of a RunConfig field."""
    if value is None or not isinstance(value, str):
        return value
    default = _FIELDS[name].default
    text = value.strip()
    if text == "" or text.lower() == "none":
        return None
    try:
        if isinstance(default, bool):
            return text.lower() in ("1", "true", "yes", "on")
        if isinstance(default, int) or name in ("reduce_to",):
            return int(text)
        if isinstance(default, float) or name in ("q_max", "threshold_fraction", "goal_fraction"):
            return float(text)
    except ValueError as e:
        raise ConfigError(f"bad value for {name}: {value!r}") from e
    return text


def _from_mapping(mapping, source):
    values = {}
    for key, value in mapping.items():
        name = key.strip().lower()
        if name not in _FIELDS:
            raise ConfigError(f"unknown configuration key {key!r} in {source}")
        values[name] = _coerce(name, value)
    return values


def load_run_config(path=None, overrides=None, environ=None):
    """
    Build a RunConfig from defaults, environment, config file and flags.

    Args:
        path (str, optional): KEY=value configuration file
        overrides (dict, optional): flag values; None entries are ignored
        environ (dict, optional): environment (defaults to os.environ)

    Returns:
        RunConfig: validated configuration

    Raises:
        ConfigError: unknown keys, bad values or violated invariants
    """
    environ = os.environ if environ is None else environ
    values = {}
    for variable, name in ENVIRONMENT.items():
        if environ.get(variable):
            values[name] = _coerce(name, environ[variable])

    if path is not None:
        if not Path(path).exists():
            raise ConfigError(f"configuration file not found: {path}")
        values.update(_from_mapping(dotenv_values(path), path))

    for name, value in (overrides or {}).items():
        if value is not None:
            values[name] = _coerce(name, value)

    config = replace(RunConfig(), **values)
    problems = config.diagnostics()
    if problems:
        raise ConfigError("invalid run configuration: " + "; ".join(problems))
    return config
