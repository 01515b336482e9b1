"""
Exceptions shared by every package in the solver.

Recourse infeasibility of a route is never raised: the evaluator reports it
as an infinite duration. Exceptions are reserved for bad inputs and for
instances that cannot be served at all.
"""


class SevrpError(Exception):
    """Base class for all solver errors."""


class InstanceError(SevrpError):
    """Raised when an instance cannot be parsed or fails validation."""

    def __init__(self, message, diagnostics=None):
        self.diagnostics = list(diagnostics or [])
        if self.diagnostics:
            message = message + ": " + "; ".join(self.diagnostics)
        super().__init__(message)


class ChargingError(SevrpError):
    """Raised for charging queries outside the curve's domain."""


class ScenarioError(SevrpError):
    """Raised for bad scenario requests (unknown distribution, bad m, ...)."""


class UnservableInstanceError(SevrpError):
    """Raised when some customer cannot be served even on its own route."""

    def __init__(self, customers):
        self.customers = sorted(customers)
        listed = ", ".join(str(c) for c in self.customers)
        super().__init__(f"customers unservable under the threshold policy: {listed}")


class SetPartitionError(SevrpError):
    """Raised when a set-partitioning instance cannot be built or solved."""


class ConfigError(SevrpError):
    """Raised for invalid run configurations."""


class MeasuresError(SevrpError):
    """Raised when a stochastic measure is undefined for its inputs."""
