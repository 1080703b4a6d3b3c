"""Declarative experiment configuration (JSON or YAML) with flag overrides."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping

import yaml

from .centrality import DEFAULT_INDICATORS
from .epidemic import SIR_VARIANTS
from .errors import ConfigError
from .metrics import COST_BINNINGS, TAU_VARIANTS

__all__ = ["DatasetEntry", "ExperimentConfig", "load_config", "config_hash"]


@dataclass(frozen=True)
class DatasetEntry:
    name: str
    path: str
    format: str = "auto"
    extra_columns: str = "error"


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: tuple[DatasetEntry, ...] = ()
    indicators: tuple[str, ...] = DEFAULT_INDICATORS
    fractions: tuple[float, ...] = (0.01, 0.02, 0.03, 0.04, 0.05)
    cost_fractions: tuple[float, ...] = (0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10)
    overlap_fraction: float = 0.05
    beta_multipliers: tuple[float, ...] = (1.0, 1.5, 2.0, 2.5, 3.0)
    fixed_multiplier: float = 1.5
    fixed_fraction: float = 0.03
    mu: float = 0.5
    runs: int = 300
    max_steps: int | None = None
    seed: int = 0
    out_dir: str = "results"
    threads: int = 1
    tau_variant: str = "paper"
    cost_binning: str = "sqrt-n"
    sir_variant: str = "linear-clamped"
    individuation_small: float = 0.5
    individuation_large: float = 0.3
    individuation_cutoff: int = 500
    coreness_alpha: float = 1.0
    coreness_beta: float = 1.0
    dump_runs: bool = False

    def __post_init__(self):
        problems = []
        for name in ("fractions", "cost_fractions"):
            for c in getattr(self, name):
                if not 0 < c <= 1:
                    problems.append(f"{name}: {c} not in (0, 1]")
        for name in ("overlap_fraction", "fixed_fraction", "individuation_small",
                     "individuation_large"):
            c = getattr(self, name)
            if not 0 < c <= 1:
                problems.append(f"{name}: {c} not in (0, 1]")
        for m in self.beta_multipliers:
            if m < 0:
                problems.append(f"beta_multipliers: {m} is negative")
        if self.fixed_multiplier < 0:
            problems.append("fixed_multiplier is negative")
        if not 0 < self.mu <= 1:
            problems.append(f"mu: {self.mu} not in (0, 1]")
        if self.runs < 1:
            problems.append("runs must be >= 1")
        if self.threads < 1:
            problems.append("threads must be >= 1")
        if self.tau_variant not in TAU_VARIANTS:
            problems.append(f"tau_variant must be one of {TAU_VARIANTS}")
        if self.cost_binning not in COST_BINNINGS:
            problems.append(f"cost_binning must be one of {COST_BINNINGS}")
        if self.sir_variant not in SIR_VARIANTS:
            problems.append(f"sir_variant must be one of {SIR_VARIANTS}")
        names = [d.name for d in self.datasets]
        if len(set(names)) != len(names):
            problems.append("dataset names must be unique")
        if not self.indicators:
            problems.append("indicator list is empty")
        if problems:
            raise ConfigError("; ".join(problems))

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], base_dir: Path | None = None) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        kwargs = dict(data)
        if "datasets" in kwargs:
            kwargs["datasets"] = tuple(_dataset(d, base_dir) for d in kwargs["datasets"] or ())
        for key in ("indicators", "fractions", "cost_fractions", "beta_multipliers"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        if base_dir is not None and "out_dir" in kwargs:
            kwargs["out_dir"] = os.path.normpath(base_dir / kwargs["out_dir"])
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def with_overrides(self, **overrides) -> "ExperimentConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> dict:
        return asdict(self)


def _dataset(entry, base_dir: Path | None) -> DatasetEntry:
    if isinstance(entry, DatasetEntry):
        return entry
    if not isinstance(entry, Mapping) or "name" not in entry or "path" not in entry:
        raise ConfigError(f"dataset entry needs 'name' and 'path': {entry!r}")
    extra = set(entry) - {"name", "path", "format", "extra_columns"}
    if extra:
        raise ConfigError(f"unknown dataset keys {sorted(extra)} in {entry['name']!r}")
    path = Path(entry["path"])
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    return DatasetEntry(str(entry["name"]), os.path.normpath(path), entry.get("format", "auto"),
                        entry.get("extra_columns", "error"))


def load_config(path: str | Path) -> ExperimentConfig:
    """Read a ``.json`` or ``.yaml``/``.yml`` file; relative paths resolve against it."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text) or {}
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if not isinstance(data, Mapping):
        raise ConfigError(f"{path}: top level must be a mapping")
    return ExperimentConfig.from_mapping(data, base_dir=path.resolve().parent)


def config_hash(config: ExperimentConfig) -> str:
    """SHA-256 of every setting that can change an output.

    Dataset paths, the output directory and the thread count are left out;
    dataset contents are tracked by checksum in the manifest instead.
    """
    data = config.to_dict()
    data.pop("out_dir")
    data.pop("threads")
    data["datasets"] = [{k: v for k, v in d.items() if k != "path"} for d in data["datasets"]]
    blob = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()
