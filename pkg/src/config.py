"""
Configuration file for the hyperbolic geometry toolkit

Centralized configuration for the library defaults and the experiment runner.
Environment variables set the defaults, a key-value file overrides them and
command-line flags override both.
"""

import math
import os
from dataclasses import dataclass, fields
from typing import Dict, List, Optional

import numpy as np

from hypergeo.errors import InputFormatError

FIELDS = ('C', 'H', 'O')


class GeometryConfig:
    """Configuration class for the geometry toolkit."""

    # Experiment defaults
    FIELD = os.getenv('HYPERGEO_FIELD', 'H')
    DIMENSION = int(os.getenv('HYPERGEO_DIMENSION', 2))
    SEED = int(os.getenv('HYPERGEO_SEED', 7))
    SAMPLE_COUNT = int(os.getenv('HYPERGEO_SAMPLE_COUNT', 1000))

    # Tolerances
    ALGEBRAIC_TOL = float(os.getenv('HYPERGEO_ALGEBRAIC_TOL', 1e-11))
    GEOMETRIC_TOL = float(os.getenv('HYPERGEO_GEOMETRIC_TOL', 1e-9))
    ORACLE_TOL = float(os.getenv('HYPERGEO_ORACLE_TOL', 1e-7))

    # Bending sweep
    ETA_GRID = os.getenv('HYPERGEO_ETA_GRID', '0:0.3:21')
    ETA_AXIS = os.getenv('HYPERGEO_ETA_AXIS', '1,0,0')
    WORD_LENGTH = int(os.getenv('HYPERGEO_WORD_LENGTH', 6))
    LIMIT_COUNT = int(os.getenv('HYPERGEO_LIMIT_COUNT', 64))
    COLLAR_DELTA = float(os.getenv('HYPERGEO_COLLAR_DELTA', math.log(63.0)))

    # Output
    OUTPUT_DIR = os.getenv('HYPERGEO_OUTPUT_DIR', 'results')

    # Logging Configuration
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    @classmethod
    def defaults(cls) -> "ExperimentConfig":
        return ExperimentConfig(
            field=cls.FIELD,
            n=cls.DIMENSION,
            seed=cls.SEED,
            sample_count=cls.SAMPLE_COUNT,
            algebraic_tol=cls.ALGEBRAIC_TOL,
            geometric_tol=cls.GEOMETRIC_TOL,
            oracle_tol=cls.ORACLE_TOL,
            eta_grid=cls.ETA_GRID,
            eta_axis=cls.ETA_AXIS,
            word_length=cls.WORD_LENGTH,
            limit_count=cls.LIMIT_COUNT,
            collar_delta=cls.COLLAR_DELTA,
            output_dir=cls.OUTPUT_DIR,
        )

    @classmethod
    def from_file(cls, path: str) -> "ExperimentConfig":
        """
        Load a `key = value` file on top of the environment defaults.

        Args:
            path: config file; `#` starts a comment, blank lines are ignored

        Returns:
            Validated ExperimentConfig

        Raises:
            InputFormatError: unreadable file, unknown key or bad value
        """
        try:
            with open(path, 'r') as f:
                lines = f.readlines()
        except OSError as e:
            raise InputFormatError(f"Cannot read config file {path}: {e}") from e

        values: Dict[str, str] = {}
        for lineno, raw in enumerate(lines, start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise InputFormatError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split('=', 1))
            values[key.lower()] = value
        return cls.defaults().updated(values)

    @classmethod
    def print_config(cls, config: Optional["ExperimentConfig"] = None):
        """Print the active configuration."""
        config = config or cls.defaults()
        print("\n" + "="*60)
        print("Hyperbolic Geometry Toolkit Configuration")
        print("="*60)
        print(f"Field: {config.field} | Dimension n: {config.n}")
        print(f"Seed: {config.seed} | Sample count: {config.sample_count}")
        print(f"Tolerances: algebraic {config.algebraic_tol:g}, geometric {config.geometric_tol:g}, "
              f"oracle {config.oracle_tol:g}")
        print(f"Eta grid: {config.eta_grid} along ({config.eta_axis})")
        print(f"Limit sets: {config.limit_count} samples, words up to length {config.word_length}")
        print(f"Collar radius: {config.collar_delta:.6g}")
        print(f"Output dir: {config.output_dir}")
        print(f"Log level: {cls.LOG_LEVEL}")
        print("="*60 + "\n")


@dataclass
class ExperimentConfig:
    """Settings for one run of the experiment runner."""

    field: str = 'H'
    n: int = 2
    seed: int = 7
    sample_count: int = 1000
    algebraic_tol: float = 1e-11
    geometric_tol: float = 1e-9
    oracle_tol: float = 1e-7
    eta_grid: str = '0:0.3:21'
    eta_axis: str = '1,0,0'
    word_length: int = 6
    limit_count: int = 64
    collar_delta: float = math.log(63.0)
    output_dir: str = 'results'

    def updated(self, values: Dict[str, Optional[str]]) -> "ExperimentConfig":
        """Copy with string (or typed) overrides applied; None values are skipped."""
        known = {f.name for f in fields(self)}
        kwargs = {name: getattr(self, name) for name in known}
        for key, value in values.items():
            if value is None:
                continue
            if key not in known:
                raise InputFormatError(f"Unknown config key '{key}' (known: {', '.join(sorted(known))})")
            kind = type(getattr(self, key))
            try:
                kwargs[key] = kind(value)
            except (TypeError, ValueError) as e:
                raise InputFormatError(f"Bad value for {key}: {value!r}") from e
        config = ExperimentConfig(**kwargs)
        config.validate()
        return config

    def etas(self) -> np.ndarray:
        """Grid `start:stop:count` (inclusive) or a comma-separated list."""
        grid = self.eta_grid.strip()
        try:
            if ':' in grid:
                start, stop, count = grid.split(':')
                if int(count) < 1:
                    raise ValueError("count must be positive")
                return np.linspace(float(start), float(stop), int(count))
            return np.array([float(x) for x in grid.split(',') if x.strip()])
        except ValueError as e:
            raise InputFormatError(f"Bad eta grid '{self.eta_grid}': {e}") from e

    def axis(self) -> List[float]:
        try:
            return [float(x) for x in self.eta_axis.split(',')]
        except ValueError as e:
            raise InputFormatError(f"Bad eta axis '{self.eta_axis}'") from e

    def validate(self):
        """
        Raises:
            InputFormatError: field, dimension, grid or counts out of range
        """
        if self.field.upper() not in FIELDS:
            raise InputFormatError(f"Field must be one of {FIELDS}, got '{self.field}'")
        self.field = self.field.upper()
        if self.n < 2:
            raise InputFormatError(f"Dimension n must be at least 2, got {self.n}")
        grid = self.etas()
        if grid.size == 0 or np.any(np.abs(grid) >= math.pi):
            raise InputFormatError(f"Eta grid must be nonempty and inside (-pi, pi): {self.eta_grid}")
        if len(self.axis()) not in (3, 7):
            raise InputFormatError(f"Eta axis needs 3 or 7 components, got '{self.eta_axis}'")
        for name in ('sample_count', 'word_length', 'limit_count'):
            if getattr(self, name) < 1:
                raise InputFormatError(f"{name} must be positive")
        for name in ('algebraic_tol', 'geometric_tol', 'oracle_tol', 'collar_delta'):
            if getattr(self, name) <= 0.0:
                raise InputFormatError(f"{name} must be positive")
