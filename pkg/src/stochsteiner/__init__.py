"""Two-stage stochastic Steiner tree models, cut separation and LP strength comparisons."""

from .instance import Graph, Scenario, StochasticInstance, validate
from .io import parse_instance, read_instance, write_instance

__version__ = "0.1.0"

__all__ = ["Graph", "Scenario", "StochasticInstance", "parse_instance", "read_instance",
           "validate", "write_instance"]
