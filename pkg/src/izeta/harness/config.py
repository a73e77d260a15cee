"""Campaign configuration: an INI file with [campaign] and [schedule] sections.

Example::

    [campaign]
    seed_root = 20240601
    kappa = 0.5
    # "default" means delta = chi^(-3/8); a number fixes delta
    delta_rule = default
    h_hat = 4.0
    output_dir = runs/acceptance
    emit_plots = false
    archive_graphs = true
    workers = 1
    max_resamples = 10

    [schedule]
    n = 100, 200, 400, 800
    # "log" means chi_n = log n; otherwise one value or one per n
    chi = log
    trials = 200

Command-line flags override file values.
"""

from __future__ import annotations

import configparser
import math
import os
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

from ..errors import IzetaError
from ..gtrh.domains import delta_schedule

OUTPUT_ENV = "IZETA_OUTPUT_DIR"
DEFAULT_OUTPUT = "izeta_runs"


class ConfigError(IzetaError, ValueError):
    def __init__(self, message: str, field_name: str | None = None, line: int | None = None):
        self.field_name = field_name
        self.line = line
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if field_name is not None:
            loc.append(f"field '{field_name}'")
        super().__init__(f"{', '.join(loc)}: {message}" if loc else message)


def default_output_dir() -> str:
    return os.environ.get(OUTPUT_ENV, DEFAULT_OUTPUT)


@dataclass(frozen=True)
class CampaignConfig:
    schedule: tuple[tuple[int, float, int], ...]
    kappa: float = 0.5
    delta_rule: str = "default"
    h_hat: float = 4.0
    seed_root: int = 0
    output_dir: str = field(default_factory=default_output_dir)
    emit_plots: bool = False
    archive_graphs: bool = True
    workers: int = 1
    max_resamples: int = 10
    spot_check_fraction: float = 0.05

    def __post_init__(self):
        validate(self)

    def delta_fn(self) -> Callable[[float], float]:
        if self.delta_rule == "default":
            return delta_schedule
        d = float(self.delta_rule)
        return lambda chi: d

    def with_overrides(self, **kw) -> "CampaignConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def validate(cfg: CampaignConfig) -> None:
    if not cfg.schedule:
        raise ConfigError("schedule is empty", "schedule.n")
    ns = [p[0] for p in cfg.schedule]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ConfigError(f"n values must be strictly increasing, got {ns}", "schedule.n")
    for n, chi, trials in cfg.schedule:
        if n < 2:
            raise ConfigError(f"n={n} must be >= 2", "schedule.n")
        if trials < 1:
            raise ConfigError(f"trials must be >= 1 at n={n}", "schedule.trials")
        rho = chi * math.log(n)
        if not (0 < rho < n):
            raise ConfigError(f"rho = chi log n = {rho!r} is outside (0, n) at n={n}", "schedule.chi")
    if not (0 < cfg.kappa < 1):
        raise ConfigError("kappa must lie in (0, 1)", "campaign.kappa")
    if cfg.delta_rule != "default":
        try:
            d = float(cfg.delta_rule)
        except ValueError:
            raise ConfigError(f"delta_rule must be 'default' or a number, got {cfg.delta_rule!r}", "campaign.delta_rule")
        if d < 0:
            raise ConfigError("delta must be >= 0", "campaign.delta_rule")
    if not cfg.h_hat > 0:
        raise ConfigError("h_hat must be positive", "campaign.h_hat")
    if not (0 <= cfg.seed_root < 2**64):
        raise ConfigError("seed_root must be a 64-bit unsigned integer", "campaign.seed_root")
    if cfg.workers < 1:
        raise ConfigError("workers must be >= 1", "campaign.workers")
    if cfg.max_resamples < 0:
        raise ConfigError("max_resamples must be >= 0", "campaign.max_resamples")
    if not (0 <= cfg.spot_check_fraction <= 1):
        raise ConfigError("spot_check_fraction must lie in [0, 1]", "campaign.spot_check_fraction")


def _line_of(text: str, section: str, key: str) -> int | None:
    cur = None
    for i, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        m = re.match(r"\[(.+)\]$", s)
        if m:
            cur = m.group(1).strip()
            continue
        if cur == section and re.match(rf"{re.escape(key)}\s*[=:]", s):
            return i
    return None


def _list(raw: str) -> list[str]:
    return [t.strip() for t in raw.split(",") if t.strip()]


def _parse_bool(raw: str) -> bool:
    v = raw.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


CAMPAIGN_KEYS = {
    "seed_root": int,
    "kappa": float,
    "delta_rule": str,
    "h_hat": float,
    "output_dir": str,
    "emit_plots": _parse_bool,
    "archive_graphs": _parse_bool,
    "workers": int,
    "max_resamples": int,
    "spot_check_fraction": float,
}


def parse_config(text: str) -> CampaignConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        raise ConfigError(str(exc).splitlines()[0], line=line)

    for sec in cp.sections():
        if sec not in ("campaign", "schedule"):
            raise ConfigError(f"unknown section [{sec}]", line=_line_of_section(text, sec))
    if not cp.has_section("schedule"):
        raise ConfigError("missing [schedule] section", "schedule")

    kw = {}
    if cp.has_section("campaign"):
        for key, raw in cp.items("campaign"):
            if key not in CAMPAIGN_KEYS:
                raise ConfigError("unknown key", f"campaign.{key}", _line_of(text, "campaign", key))
            try:
                kw[key] = CAMPAIGN_KEYS[key](raw)
            except ValueError as exc:
                raise ConfigError(str(exc), f"campaign.{key}", _line_of(text, "campaign", key))

    sch = cp["schedule"]
    for key in sch:
        if key not in ("n", "chi", "trials"):
            raise ConfigError("unknown key", f"schedule.{key}", _line_of(text, "schedule", key))
    try:
        ns = [int(t) for t in _list(sch.get("n", ""))]
    except ValueError as exc:
        raise ConfigError(str(exc), "schedule.n", _line_of(text, "schedule", "n"))
    if not ns:
        raise ConfigError("n list is empty", "schedule.n", _line_of(text, "schedule", "n"))

    def per_n(key, conv, default):
        raw = sch.get(key, default)
        toks = _list(raw)
        try:
            if len(toks) == 1:
                return [conv(toks[0], n) for n in ns]
            if len(toks) != len(ns):
                raise ValueError(f"expected 1 or {len(ns)} values, got {len(toks)}")
            return [conv(t, n) for t, n in zip(toks, ns)]
        except ValueError as exc:
            raise ConfigError(str(exc), f"schedule.{key}", _line_of(text, "schedule", key))

    chis = per_n("chi", lambda t, n: math.log(n) if t == "log" else float(t), "log")
    trials = per_n("trials", lambda t, n: int(t), "200")
    schedule = tuple(zip(ns, chis, trials))
    try:
        return CampaignConfig(schedule=schedule, **kw)
    except ConfigError as exc:
        if exc.line is None and exc.field_name:
            sec, _, key = exc.field_name.partition(".")
            raise ConfigError(str(exc).split(": ", 1)[-1], exc.field_name, _line_of(text, sec, key))
        raise


def _line_of_section(text: str, sec: str) -> int | None:
    for i, raw in enumerate(text.splitlines(), 1):
        if raw.strip() == f"[{sec}]":
            return i
    return None


def load_config(path: str | Path) -> CampaignConfig:
    return parse_config(Path(path).read_text())


def acceptance_config(output_dir: str | None = None, seed_root: int = 20240601) -> CampaignConfig:
    """The decay-trend experiment: n in {100, 200, 400, 800}, chi = log n, 200 trials."""
    sched = tuple((n, math.log(n), 200) for n in (100, 200, 400, 800))
    return CampaignConfig(
        schedule=sched,
        kappa=0.5,
        seed_root=seed_root,
        output_dir=output_dir or default_output_dir(),
    )
