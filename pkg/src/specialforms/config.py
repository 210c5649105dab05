"""Run configuration: seed, size caps, tolerances, output selection.

Settings come from (lowest to highest precedence) the built-in defaults, a
key=value file named by the SPECIALFORMS_CONFIG environment variable, a file
passed explicitly, and command line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

from .errors import DomainError

ENV_VAR = "SPECIALFORMS_CONFIG"

_FORMATS = ("json", "dot", "csv")


@dataclass
class RunConfig:
    seed: int = 0
    canon_d_cap: int = 10
    solver_r_cap: int = 8
    autom_r_cap: int = 12
    comass_tol: float = 1e-6
    comass_restarts: int = 200
    output: str | None = None
    format: str = "json"

    def validate(self) -> None:
        for name in ("canon_d_cap", "solver_r_cap", "autom_r_cap", "comass_restarts"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be >= 1, got {getattr(self, name)}")
        if not 0.0 < self.comass_tol <= 1e-2:
            raise DomainError(
                f"comass_tol must lie in (0, 1e-2], got {self.comass_tol}"
            )
        if self.format not in _FORMATS:
            raise DomainError(
                f"format must be one of {', '.join(_FORMATS)}, got {self.format!r}"
            )


def load_config(path: str | None = None, environ=None) -> RunConfig:
    """Defaults, overlaid with the config file if one is named."""
    environ = os.environ if environ is None else environ
    cfg = RunConfig()
    path = path or environ.get(ENV_VAR)
    if path:
        _apply_file(cfg, path)
    cfg.validate()
    return cfg


def _apply_file(cfg: RunConfig, path: str) -> None:
    types = {f.name: f.type for f in fields(RunConfig)}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in types:
                raise DomainError(f"{path}:{lineno}: unknown setting {key!r}")
            try:
                if key == "comass_tol":
                    setattr(cfg, key, float(value))
                elif key in ("output", "format"):
                    setattr(cfg, key, value)
                else:
                    setattr(cfg, key, int(value))
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
