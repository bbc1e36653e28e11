"""!
@file config.py
@brief Configuration management for symrigid.

@details
Provides a centralized configuration system with sensible defaults
and support for environment variables, config files, and runtime overrides.
Precedence, lowest first: defaults, config file, environment, command line.

@author symrigid Contributors
@version 0.1.0
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Optional


class OutputFormat(Enum):
    """!
    @brief Report serialisations.

    @details
    - TEXT: line-oriented ``key=value`` records, the primary interface
    - JSON: a stable mirror of the same fields for tooling
    """
    TEXT = "text"
    JSON = "json"


class Command(Enum):
    """!
    @brief Sub-commands of the command-line tool.
    """
    CHECK = "check"
    ANALYZE = "analyze"
    REDUCE = "reduce"
    LIFT = "lift"
    GALLERY = "gallery"
    RANDOM = "random"


@dataclass
class CountingConfig:
    """!
    @brief Configuration for the exhaustive sparsity counts.

    @param subset_cap Largest edge count whose subsets are enumerated
    """
    subset_cap: int = 22


@dataclass
class NumericConfig:
    """!
    @brief Configuration for sampling and numerical rank.

    @param trials Number of sampled configurations; generic rank is the maximum
    @param seed Root seed of the counter-based generator
    @param rank_tolerance Singular value threshold relative to the largest one
    @param symmetry_tolerance Tolerance of the symmetry invariant of a framework
    @param collinearity_tolerance Area threshold of the C1 extension guard
    @param min_norm Smallest admissible norm of an orbit representative
    @param min_separation Smallest admissible distance between cover points
    @param max_draws Rejection-sampling budget per configuration
    @param cross_check Compare the direct orbit matrix against the restricted map
    """
    trials: int = 20
    seed: int = 0
    rank_tolerance: float = 1e-8
    symmetry_tolerance: float = 1e-12
    collinearity_tolerance: float = 1e-9
    min_norm: float = 0.1
    min_separation: float = 1e-3
    max_draws: int = 10_000
    cross_check: bool = True


@dataclass
class OutputConfig:
    format: OutputFormat = OutputFormat.TEXT


@dataclass
class Config:
    """!
    @brief Main configuration container for symrigid.

    @details
    Aggregates all configuration options and provides methods for
    loading from files and environment variables.

    @section config_example Example Usage
    @code{.py}
    from symrigid import Config
    from symrigid.config import NumericConfig

    # Use defaults
    config = Config()

    # Customize
    config = Config(numeric=NumericConfig(trials=5, seed=7))

    # Load from file
    config = Config.from_file("symrigid.json")
    @endcode
    """
    counting: CountingConfig = field(default_factory=CountingConfig)
    numeric: NumericConfig = field(default_factory=NumericConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @classmethod
    def from_file(cls, path: str | Path) -> Config:
        """!
        @brief Load configuration from a JSON file.

        @param path Path to the configuration file
        @return Config instance with loaded settings
        @throws FileNotFoundError If config file doesn't exist
        @throws json.JSONDecodeError If config file is invalid JSON
        """
        path = Path(path)
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        return cls._from_dict(data)

    @classmethod
    def from_env(cls, base: Optional[Config] = None) -> Config:
        """!
        @brief Overlay environment variables on a configuration.

        @details
        Supported environment variables:
        - SYMRIGID_CAP: subset enumeration cap
        - SYMRIGID_TRIALS: number of sampled configurations
        - SYMRIGID_SEED: root seed
        - SYMRIGID_FORMAT: text or json

        @param base Configuration to start from (defaults when omitted)
        @return Config instance with settings from environment
        @throws ValueError If a variable holds an unusable value
        """
        config = base if base is not None else cls()

        if cap := os.environ.get("SYMRIGID_CAP"):
            config.counting.subset_cap = _env_int("SYMRIGID_CAP", cap)

        if trials := os.environ.get("SYMRIGID_TRIALS"):
            config.numeric.trials = _env_int("SYMRIGID_TRIALS", trials)

        if seed := os.environ.get("SYMRIGID_SEED"):
            config.numeric.seed = _env_int("SYMRIGID_SEED", seed)

        if fmt := os.environ.get("SYMRIGID_FORMAT"):
            try:
                config.output.format = OutputFormat(fmt.lower())
            except ValueError:
                raise ValueError(f"SYMRIGID_FORMAT must be text or json, got {fmt!r}") from None

        return config

    @classmethod
    def _from_dict(cls, data: dict[str, Any]) -> Config:
        """!
        @brief Create Config from a dictionary.

        @param data Dictionary with configuration values
        @return Config instance
        """
        counting_data = data.get("counting", {})
        numeric_data = data.get("numeric", {})
        output_data = data.get("output", {})
        defaults = NumericConfig()

        counting = CountingConfig(
            subset_cap=int(counting_data.get("subset_cap", CountingConfig.subset_cap)),
        )

        numeric = NumericConfig(
            trials=int(numeric_data.get("trials", defaults.trials)),
            seed=int(numeric_data.get("seed", defaults.seed)),
            rank_tolerance=float(numeric_data.get("rank_tolerance", defaults.rank_tolerance)),
            symmetry_tolerance=float(
                numeric_data.get("symmetry_tolerance", defaults.symmetry_tolerance)
            ),
            collinearity_tolerance=float(
                numeric_data.get("collinearity_tolerance", defaults.collinearity_tolerance)
            ),
            min_norm=float(numeric_data.get("min_norm", defaults.min_norm)),
            min_separation=float(numeric_data.get("min_separation", defaults.min_separation)),
            max_draws=int(numeric_data.get("max_draws", defaults.max_draws)),
            cross_check=bool(numeric_data.get("cross_check", defaults.cross_check)),
        )

        output = OutputConfig(
            format=OutputFormat(output_data.get("format", "text")),
        )

        return cls(counting=counting, numeric=numeric, output=output)

    def to_dict(self) -> dict[str, Any]:
        """!
        @brief Convert configuration to a dictionary.

        @return Dictionary representation of configuration
        """
        return {
            "counting": {
                "subset_cap": self.counting.subset_cap,
            },
            "numeric": {
                "trials": self.numeric.trials,
                "seed": self.numeric.seed,
                "rank_tolerance": self.numeric.rank_tolerance,
                "symmetry_tolerance": self.numeric.symmetry_tolerance,
                "collinearity_tolerance": self.numeric.collinearity_tolerance,
                "min_norm": self.numeric.min_norm,
                "min_separation": self.numeric.min_separation,
                "max_draws": self.numeric.max_draws,
                "cross_check": self.numeric.cross_check,
            },
            "output": {
                "format": self.output.format.value,
            },
        }

    def save(self, path: str | Path) -> None:
        """!
        @brief Save configuration to a JSON file.

        @param path Path to save the configuration file
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2)


def _env_int(name: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


@dataclass
class RunConfig:
    """!
    @brief Everything one command-line invocation needs.

    @param command Sub-command to run
    @param source Input graph path or ``gallery:<name>`` pseudo-path
    @param k Group order override (required for gallery sources)
    @param j Single representation index, or None for all
    @param specs Count specifications for ``check``
    @param steps Number of random extensions for ``random``
    @param base Base graph name for ``random``
    @param with_fixed Join an isolated fixed vertex to the base for ``random``
    @param output Output path, or None for standard output
    @param numeric_only Skip the combinatorial verdicts in ``analyze``
    @param config Composed library configuration
    """
    command: Command
    source: Optional[str] = None
    k: Optional[int] = None
    j: Optional[int] = None
    specs: list[str] = field(default_factory=list)
    steps: int = 4
    base: str = "loop-pair"
    with_fixed: bool = False
    output: Optional[str] = None
    numeric_only: bool = False
    config: Config = field(default_factory=Config)

    def validate(self, k: Optional[int] = None) -> None:
        """!
        @brief Check the run invariants.

        @param k Group order of the loaded graph, when known
        @throws ValueError On trials < 1, a negative step count or j out of range
        """
        if self.config.numeric.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.config.numeric.trials}")
        if self.steps < 0:
            raise ValueError(f"steps must be non-negative, got {self.steps}")
        if self.config.counting.subset_cap < 1:
            raise ValueError(f"subset cap must be positive, got {self.config.counting.subset_cap}")
        order = k if k is not None else self.k
        if self.j is not None and order is not None and not 0 <= self.j < order:
            raise ValueError(f"j={self.j} out of range for k={order}")
