"""Energy-optimal uplink sharing between FDMA federated learning and ALOHA traffic."""

from .params import Protocol, SystemParams
from .optimize import GloballyInfeasible, Solution, solve

__all__ = ["Protocol", "SystemParams", "Solution", "solve", "GloballyInfeasible"]
__version__ = "0.1.0"
