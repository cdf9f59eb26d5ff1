"""Session shell: drill configuration, reports, CLI, and the live service."""
from .analyze import analyze_file, analyze_stream, build_report
from .config import ConfigError, DrillConfig, load_config
from .frames import AnalysisFrame
from .report import REPORT_SCHEMA, Report, ReportError
from .server import PortBusy, SessionServer, serve

__all__ = [
    "AnalysisFrame",
    "ConfigError",
    "DrillConfig",
    "PortBusy",
    "REPORT_SCHEMA",
    "Report",
    "ReportError",
    "SessionServer",
    "analyze_file",
    "analyze_stream",
    "build_report",
    "load_config",
    "serve",
]
