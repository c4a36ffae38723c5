"""Run configuration: YAML parsing, validation, hashing, object construction.

The config file is flat YAML with tagged sub-records for the model specs, so
experiment definitions stay reviewable in diffs.  The kernel scaling can be
given either as an absolute value or as a fraction of the admissibility
threshold (resolved once the linear solve provides ||u0||_2).
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field

import yaml

from .errors import ConfigError
from .grid import SpectralGrid
from .models import KernelSpec, ModelSpec, NonlinearitySpec, SourceSpec
from .solver import Tolerances


@dataclass(frozen=True)
class EpsilonSpec:
    """Either an absolute epsilon or a fraction of the admissibility threshold."""

    value: float = None
    fraction_of_max: float = None

    def __post_init__(self):
        given = [v for v in (self.value, self.fraction_of_max) if v is not None]
        if len(given) != 1:
            raise ConfigError(
                "model.epsilon", "give exactly one of value / fraction_of_max"
            )
        if given[0] < 0.0:
            raise ConfigError("model.epsilon", "must be nonnegative")

    def resolve(self, eps_max):
        if self.value is not None:
            return self.value
        return self.fraction_of_max * eps_max


@dataclass
class RunConfig:
    a: float
    b: float
    n_points: int
    length: float
    source: dict
    kernel: dict
    nonlinearity: dict
    epsilon: EpsilonSpec
    rho: float = 1.0
    tolerances: dict = field(default_factory=dict)
    seed: int = 42
    output_dir: str = "out"
    experiment: dict = field(default_factory=dict)

    # --- construction ------------------------------------------------------

    @classmethod
    def from_dict(cls, d):
        try:
            params = d["params"]
            grid = d["grid"]
            model = d["model"]
        except (KeyError, TypeError) as exc:
            raise ConfigError(str(exc), "missing required section") from exc
        eps_raw = model.get("epsilon", 0.0)
        if isinstance(eps_raw, dict):
            eps = EpsilonSpec(**eps_raw)
        else:
            eps = EpsilonSpec(value=float(eps_raw))
        cfg = cls(
            a=float(params.get("a", 0.0)),
            b=float(params.get("b", 0.0)),
            n_points=int(grid.get("n_points", 4096)),
            length=float(grid.get("length", 80.0)),
            source=dict(model.get("source", {})),
            kernel=dict(model.get("kernel", {})),
            nonlinearity=dict(model.get("nonlinearity", {})),
            epsilon=eps,
            rho=float(model.get("rho", 1.0)),
            tolerances=dict(d.get("tolerances", {})),
            seed=int(d.get("seed", 42)),
            output_dir=str(d.get("output_dir", "out")),
            experiment=dict(d.get("experiment", {})),
        )
        cfg.validate()
        return cfg

    def to_dict(self):
        eps = asdict(self.epsilon)
        eps = {k: v for k, v in eps.items() if v is not None}
        return {
            "params": {"a": self.a, "b": self.b},
            "grid": {"n_points": self.n_points, "length": self.length},
            "model": {
                "source": dict(self.source),
                "kernel": dict(self.kernel),
                "nonlinearity": dict(self.nonlinearity),
                "epsilon": eps,
                "rho": self.rho,
            },
            "tolerances": dict(self.tolerances),
            "seed": self.seed,
            "output_dir": self.output_dir,
            "experiment": dict(self.experiment),
        }

    def validate(self):
        if self.b == 0.0:
            raise ConfigError("params.b", "drift coefficient must be nonzero")
        n = self.n_points
        if n <= 0 or (n & (n - 1)) != 0:
            raise ConfigError("grid.n_points", "must be a positive power of two")
        if self.length <= 0.0:
            raise ConfigError("grid.length", "must be positive")
        if not 0.0 < self.rho <= 1.0:
            raise ConfigError("model.rho", "must lie in (0, 1]")
        for name, val in self.tolerances.items():
            if name == "max_iters":
                if int(val) <= 0:
                    raise ConfigError("tolerances.max_iters", "must be positive")
            elif float(val) <= 0.0:
                raise ConfigError(f"tolerances.{name}", "must be positive")
        for section, spec in (
            ("source", self.source),
            ("kernel", self.kernel),
            ("nonlinearity", self.nonlinearity),
        ):
            if "family" not in spec:
                raise ConfigError(f"model.{section}", "missing 'family'")

    # --- object builders ---------------------------------------------------

    def build_grid(self):
        return SpectralGrid(n_points=self.n_points, length=self.length)

    def build_tolerances(self):
        return Tolerances(**{k: (int(v) if k == "max_iters" else float(v))
                             for k, v in self.tolerances.items()})

    def build_source(self):
        return SourceSpec(**self.source)

    def build_kernel(self):
        spec = dict(self.kernel)
        # accept the family-native parameter names
        if "rate" in spec:
            spec["width"] = 1.0 / float(spec.pop("rate"))
        if "halfwidth" in spec:
            spec["width"] = float(spec.pop("halfwidth"))
        return KernelSpec(**spec)

    def build_nonlinearity(self, override=None):
        return NonlinearitySpec(**(override if override is not None else self.nonlinearity))

    def build_model(self, epsilon, nonlinearity=None):
        return ModelSpec(
            source=self.build_source(),
            kernel=self.build_kernel(),
            nonlinearity=nonlinearity if nonlinearity is not None
            else self.build_nonlinearity(),
            epsilon=epsilon,
            rho=self.rho,
        )

    def config_hash(self):
        canonical = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:12]


def load_config(path):
    with open(path) as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise ConfigError("<root>", "config file must hold a mapping")
    return RunConfig.from_dict(data)


def dump_config(cfg, path=None):
    text = yaml.safe_dump(cfg.to_dict(), sort_keys=True, default_flow_style=False)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
