"""Discrete-event simulator of a batteryless-RFID sensing and control
pipeline carried over LTE or mmWave cellular access, measuring end-to-end
sensor-to-control-object latency."""

__version__ = "0.1.0"

from .config import ScenarioConfig, load_config, render_config
from .harness import MetricsRow, SummaryRow, aggregate, run_sweep, write_outputs
from .simulation import RunResult, run_single

__all__ = [
    "MetricsRow",
    "RunResult",
    "ScenarioConfig",
    "SummaryRow",
    "__version__",
    "aggregate",
    "load_config",
    "render_config",
    "run_single",
    "run_sweep",
    "write_outputs",
]
