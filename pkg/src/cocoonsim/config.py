"""Experiment configuration: flat ``key = value`` documents with ``#`` comments."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .dynamics import SpreadParams
from .graph import generate_ba, generate_ws

TOPOLOGIES = ("BA", "WS")


class ConfigError(ValueError):
    """A configuration value is out of range; ``field`` names the offender."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class ConfigParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class ExperimentConfig:
    n: int = 3000
    topology: str = "BA"
    mean_degree: float = 5.0
    ws_beta: float = 0.1
    i0: float = 0.006
    lam: float = 0.1
    theta0: float = 8.62e-3
    alpha0: float = 0.3
    # no default: every experiment states its recommendation accuracy
    ra: float | None = None
    horizon: int = 200
    runs: int = 10
    seed: int = 0
    perturbation_norm: str = "area"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.n < 3:
            raise ConfigError("n", "need at least 3 nodes")
        if self.topology not in TOPOLOGIES:
            raise ConfigError("topology", f"expected one of {TOPOLOGIES}, got {self.topology!r}")
        if not 2 <= self.mean_degree < self.n:
            raise ConfigError("mean_degree", "must satisfy 2 <= mean_degree < n")
        if self.topology == "WS" and (self.mean_degree != int(self.mean_degree) or int(self.mean_degree) % 2):
            raise ConfigError("mean_degree", "WS graphs need an even integer degree")
        for name in ("ws_beta", "lambda", "theta0", "alpha0"):
            v = getattr(self, "lam" if name == "lambda" else name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(name, f"must lie in [0, 1], got {v}")
        if not 0.0 < self.i0 < 1.0:
            raise ConfigError("i0", f"must lie in (0, 1), got {self.i0}")
        if self.i0 * self.n < 1 - 1e-9:
            raise ConfigError("i0", "i0 * n must be at least 1")
        if self.ra is not None and not 0.0 <= self.ra <= 1.0:
            raise ConfigError("ra", f"must lie in [0, 1], got {self.ra}")
        if self.horizon < 1:
            raise ConfigError("horizon", "must be positive")
        if self.runs < 1:
            raise ConfigError("runs", "must be positive")
        if self.seed < 0:
            raise ConfigError("seed", "must be non-negative")
        if self.perturbation_norm not in ("area", "cocoon"):
            raise ConfigError("perturbation_norm", "expected 'area' or 'cocoon'")

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    def spread_params(self, ra: float | None = None) -> SpreadParams:
        ra = self.ra if ra is None else ra
        if ra is None:
            raise ConfigError("ra", "recommendation accuracy must be given explicitly")
        return SpreadParams(
            alpha0=self.alpha0,
            theta0=self.theta0,
            lam=self.lam,
            i0=self.i0,
            ra=ra,
            horizon=self.horizon,
            perturbation_norm=self.perturbation_norm,
        )

    def make_graph(self, seed):
        if self.topology == "BA":
            return generate_ba(self.n, self.mean_degree, seed)
        return generate_ws(self.n, int(self.mean_degree), self.ws_beta, seed)

    def to_text(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if v is not None:
                lines.append(f"{_KEY_OF.get(f.name, f.name)} = {v}")
        return "\n".join(lines) + "\n"


# document key -> (attribute, converter)
_KEYS = {
    "n": ("n", int),
    "topology": ("topology", lambda s: s.upper()),
    "mean_degree": ("mean_degree", float),
    "ws_beta": ("ws_beta", float),
    "i0": ("i0", float),
    "lambda": ("lam", float),
    "theta0": ("theta0", float),
    "alpha0": ("alpha0", float),
    "ra": ("ra", float),
    "horizon": ("horizon", int),
    "runs": ("runs", int),
    "seed": ("seed", int),
    "perturbation_norm": ("perturbation_norm", str),
}
_KEY_OF = {attr: key for key, (attr, _) in _KEYS.items()}


def parse_config(text: str) -> ExperimentConfig:
    """Parse a config document; absent keys keep their defaults.

    Several assignments may share a line when separated by commas.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for part in line.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise ConfigParseError(lineno, f"expected 'key = value', got {part!r}")
            key, value = (s.strip() for s in part.split("=", 1))
            if key not in _KEYS:
                raise ConfigParseError(lineno, f"unknown key {key!r}")
            attr, conv = _KEYS[key]
            try:
                values[attr] = conv(value)
            except ValueError:
                raise ConfigParseError(lineno, f"bad value {value!r} for {key}") from None
    return ExperimentConfig(**values)


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
