#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Configuration module for cavity-entanglement
Provides the layered configuration (defaults, YAML file, command line) for
numerical tolerances, sweep defaults, event detection and the reservoir oracle.
"""

import logging
import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List

import yaml

from .errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass
class NumericsConfig:
    """Tolerances of the dense linear-algebra kernel."""
    hermitian_tol: float = 1e-10
    offdiag_tol: float = 1e-12
    max_sweeps: int = 100
    negative_clamp: float = 1e-12


@dataclass
class SweepDefaults:
    """Defaults for time sweeps."""
    kappa: float = 1.0
    t_max: float = 6.0
    steps: int = 2000
    partitions: List[str] = field(default_factory=lambda: ["cc", "rr"])
    workers: int = 1


@dataclass
class EventConfig:
    """Crossing detection settings."""
    time_tol: float = 1e-8
    value_tol: float = 1e-9
    simultaneity_tol: float = 1e-6
    scan_t_max: float = 6.0
    scan_steps: int = 2000


@dataclass
class OracleDefaults:
    """Defaults for the finite-mode reservoir integration."""
    n_modes: int = 400
    bandwidth: float = 40.0
    kappa: float = 1.0
    t_max: float = 3.0
    dt: float = 1e-3


@dataclass
class OutputConfig:
    """Output formatting."""
    significant_digits: int = 12
    color: bool = True


def _section(section_cls, values: Dict[str, Any], name: str):
    if values is None:
        return section_cls()
    if not isinstance(values, dict):
        raise ConfigError(f"section '{name}' must be a mapping")
    known = {f.name for f in fields(section_cls)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(
            f"unknown key(s) in section '{name}': {', '.join(unknown)}")
    return section_cls(**values)


@dataclass
class EngineConfig:
    """Main configuration class for cavity-entanglement."""
    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    sweep: SweepDefaults = field(default_factory=SweepDefaults)
    events: EventConfig = field(default_factory=EventConfig)
    oracle: OracleDefaults = field(default_factory=OracleDefaults)
    output: OutputConfig = field(default_factory=OutputConfig)

    _SECTIONS = {
        'numerics': NumericsConfig,
        'sweep': SweepDefaults,
        'events': EventConfig,
        'oracle': OracleDefaults,
        'output': OutputConfig,
    }

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> 'EngineConfig':
        """Create configuration from dictionary."""
        unknown = sorted(set(config_dict) - set(cls._SECTIONS))
        if unknown:
            raise ConfigError(f"unknown section(s): {', '.join(unknown)}")
        try:
            return cls(**{
                name: _section(section_cls, config_dict.get(name), name)
                for name, section_cls in cls._SECTIONS.items()
            })
        except TypeError as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def from_yaml(cls, yaml_path: str) -> 'EngineConfig':
        """Load configuration from YAML file; a missing file yields defaults."""
        if not os.path.exists(yaml_path):
            logger.info("configuration file %s not found, using defaults", yaml_path)
            return cls()

        try:
            with open(yaml_path, 'r', encoding='utf-8') as f:
                config_dict = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            raise ConfigError(f"failed to load configuration from {yaml_path}: {e}") from e
        if not isinstance(config_dict, dict):
            raise ConfigError(f"{yaml_path} must contain a mapping at top level")
        logger.info("loaded configuration from %s", yaml_path)
        return cls.from_dict(config_dict)

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        return {name: asdict(getattr(self, name)) for name in self._SECTIONS}

    def to_yaml(self, output_path: str):
        """Save configuration to YAML file."""
        try:
            with open(output_path, 'w', encoding='utf-8') as f:
                yaml.safe_dump(
                    self.to_dict(),
                    f,
                    default_flow_style=False,
                    sort_keys=False)
        except OSError as e:
            raise ConfigError(f"cannot write configuration to {output_path}: {e}") from e
        logger.info("configuration saved to %s", output_path)


def create_default_config_file(output_path: str = "cavity_entanglement.yaml"):
    """Create a default configuration file for reference."""
    config = EngineConfig()
    config.to_yaml(output_path)

    with open(output_path, 'r', encoding='utf-8') as f:
        content = f.read()

    commented_content = """# cavity-entanglement configuration file
# Precedence: built-in defaults < this file (--config) < command-line flags.
# Times are in units of 1/kappa.

""" + content

    with open(output_path, 'w', encoding='utf-8') as f:
        f.write(commented_content)
