"""Campaign orchestration, persistence, plots, the property suite and the CLI."""

from .campaign import run_campaign
from .config import CampaignConfig, ConfigError, acceptance_config, load_config, parse_config
from .plot import plot_spectrum, spectrum_svg
from .verify import CheckResult, verify_suite

__all__ = [
    "run_campaign", "CampaignConfig", "ConfigError", "acceptance_config", "load_config",
    "parse_config", "plot_spectrum", "spectrum_svg", "CheckResult", "verify_suite",
]
