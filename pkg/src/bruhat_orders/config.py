"""Run configuration: size budgets, output selection, reproducibility knobs.

Budgets default from environment variables so batch jobs can cap hostile
inputs globally; command-line flags override the environment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InvalidArgumentError

ENV_MAX_NODES = "BRUHAT_MAX_NODES"
ENV_THREADS = "BRUHAT_THREADS"

DEFAULT_MAX_NODES = 10**6
DEFAULT_MAX_CHAINS = 10**6
DEFAULT_MAX_CLASS = 10**6


@dataclass
class RunConfig:
    max_nodes: int = DEFAULT_MAX_NODES
    max_chains: int = DEFAULT_MAX_CHAINS
    max_class_size: int = DEFAULT_MAX_CLASS
    threads: int = 1  # accepted for compatibility; all computations are deterministic
    seed: int = 0
    format: str = "text"
    out: str | None = None

    def __post_init__(self):
        for name in ("max_nodes", "max_chains", "max_class_size", "threads"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise InvalidArgumentError(f"{name} must be a positive integer, got {value!r}")
        if self.format not in ("text", "json", "dot"):
            raise InvalidArgumentError(f"unknown format {self.format!r}")


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidArgumentError(f"{name}={raw!r} is not an integer") from exc
    if value <= 0:
        raise InvalidArgumentError(f"{name} must be positive, got {value}")
    return value


def from_environment() -> RunConfig:
    return RunConfig(
        max_nodes=_env_int(ENV_MAX_NODES, DEFAULT_MAX_NODES),
        threads=_env_int(ENV_THREADS, 1),
    )
