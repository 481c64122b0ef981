"""
Counting configuration: enumeration budget, parallelism and chunking of the
finite-field kernels. Values are resolved from defaults, then an optional YAML
file, then environment variables, then explicit overrides (typically CLI flags).
"""
from __future__ import annotations

import os
from typing import Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from milnorcount.exceptions import PreconditionError

BUDGET_ENV_VAR = "MILNORCOUNT_BUDGET"
THREADS_ENV_VAR = "MILNORCOUNT_THREADS"


class CountingConfig(BaseModel):
    """
    Parameters shared by every counting kernel.
    """

    model_config = ConfigDict(frozen=True)

    budget: int = Field(default=10**9, gt=0)
    "Maximal number of field evaluations a single brute-force enumeration may perform."
    threads: int = Field(default=1, ge=1)
    "Number of worker threads used to split the outer loop of brute-force counts."
    chunk_size: int = Field(default=2**20, gt=0)
    "Number of points evaluated per vectorised chunk."
    progress: bool = False
    "Show a progress bar on stderr when iterating over ranges of primes."

    @staticmethod
    def from_yaml(config_path: str) -> CountingConfig:
        """
        Load a configuration from a YAML file holding a `counting` mapping.
        :param config_path: path to the configuration file.
        :return: the configuration, unspecified fields keeping their defaults.
        """
        with open(config_path, "r") as stream:
            raw_config = yaml.safe_load(stream) or {}
        try:
            return CountingConfig(**raw_config.get("counting", {}))
        except ValidationError as e:
            raise PreconditionError(f"Invalid counting configuration {config_path}: {e}")

    def with_environment(self) -> CountingConfig:
        """
        Apply MILNORCOUNT_BUDGET and MILNORCOUNT_THREADS overrides, if set.
        """
        updates = {}
        for env_var, field in [(BUDGET_ENV_VAR, "budget"), (THREADS_ENV_VAR, "threads")]:
            value = os.environ.get(env_var)
            if value is None or value == "":
                continue
            try:
                updates[field] = int(value)
            except ValueError:
                raise PreconditionError(f"{env_var} must be an integer, got {value!r}.")
        return self.with_overrides(**updates)

    def with_overrides(self, **overrides) -> CountingConfig:
        """
        Return a copy with every non-None override applied and validated.
        """
        fields = {**self.model_dump(), **{k: v for k, v in overrides.items() if v is not None}}
        try:
            return CountingConfig(**fields)
        except ValidationError as e:
            raise PreconditionError(f"Invalid counting configuration: {e}")


def resolve_config(
    config_path: Optional[str] = None,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
    progress: Optional[bool] = None,
) -> CountingConfig:
    """
    Resolve the effective configuration: defaults < file < environment < arguments.
    """
    config = CountingConfig.from_yaml(config_path) if config_path else CountingConfig()
    return config.with_environment().with_overrides(
        budget=budget, threads=threads, progress=progress
    )
