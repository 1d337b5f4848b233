"""Experiment configuration: nested dataclasses with a JSON round trip."""
import dataclasses
import hashlib
import json
from dataclasses import asdict, dataclass, field, fields

from .errors import ConfigError


@dataclass
class ArmConfig:
    segments: int = 3
    segment_length: float = 1.0
    joints: int = 4


@dataclass
class RetinaConfig:
    receptors: int = 6


@dataclass
class ObjectConfig:
    sources: int = 10
    offset_radius: float = 4.0


@dataclass
class GridSection:
    n: int = 62
    extent: float = 12.0


@dataclass
class PovConfig:
    step: float = 1e-3
    min_samples: int = 50
    closure_tol: float = 1e-2
    n_members: int = 100
    pose_tol: float = 2e-2


@dataclass
class CompensationConfig:
    xi: float = 1e-3
    sensory_tol: float = 1e-3
    initial_scale: float = 0.2
    ftol: float = 1e-10
    max_iter: int = 2000
    restarts: int = 5
    restart_scale: float = 0.5


@dataclass
class CcaConfig:
    epochs: int = 50
    alpha_start: float = 0.5
    alpha_end: float = 0.01
    lambda_start_frac: float = 1.0
    lambda_end_frac: float = 0.05


@dataclass
class RegularizationConfig:
    iters: int = 10


@dataclass
class ReachingConfig:
    prune: float = 0.72
    n_pairs: int = 10


@dataclass
class ExperimentConfig:
    seed: int = 0
    m0: list = field(default_factory=lambda: [0.1, -1.5, 2.2, -3.0])
    state_change_prob: float = 0.1
    dims: list = field(default_factory=lambda: [2, 3])
    arm: ArmConfig = field(default_factory=ArmConfig)
    retina: RetinaConfig = field(default_factory=RetinaConfig)
    object: ObjectConfig = field(default_factory=ObjectConfig)
    grid: GridSection = field(default_factory=GridSection)
    pov: PovConfig = field(default_factory=PovConfig)
    compensation: CompensationConfig = field(default_factory=CompensationConfig)
    cca2: CcaConfig = field(default_factory=CcaConfig)
    cca3: CcaConfig = field(default_factory=CcaConfig)
    regularization: RegularizationConfig = field(default_factory=RegularizationConfig)
    reaching: ReachingConfig = field(default_factory=ReachingConfig)

    def validate(self):
        if (self.arm.segments, self.arm.segment_length, self.arm.joints) != (3, 1.0, 4):
            raise ConfigError("only the 3-segment, unit-length, 4-joint arm is implemented")
        if len(self.m0) != 4:
            raise ConfigError("m0 must have 4 joint angles")
        if not 0 <= self.state_change_prob < 1:
            raise ConfigError("state_change_prob must be in [0, 1)")
        if self.grid.n < 2 or self.grid.extent <= 0:
            raise ConfigError("grid needs n >= 2 and a positive extent")
        if any(d not in (2, 3) for d in self.dims):
            raise ConfigError("dims must be 2 and/or 3")
        if self.reaching.prune <= 0:
            raise ConfigError("prune threshold must be positive")
        return self

    def cca(self, dim):
        return self.cca2 if dim == 2 else self.cca3

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        return _build(cls, d, "")

    @classmethod
    def from_json(cls, text):
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid config JSON: {e}") from e

    def section_hash(self, *names):
        """Stable hash over the named top-level fields."""
        d = self.to_dict()
        blob = json.dumps({k: d[k] for k in names}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _build(cls, d, prefix):
    if not isinstance(d, dict):
        raise ConfigError(f"{prefix or 'config'} must be an object")
    known = {f.name: f for f in fields(cls)}
    kwargs = {}
    for k, v in d.items():
        if k not in known:
            raise ConfigError(f"unknown config key {prefix}{k}")
        sub = _dataclass_type(cls, k)
        kwargs[k] = _build(sub, v, f"{prefix}{k}.") if sub is not None else v
    return cls(**kwargs)


def _dataclass_type(cls, name):
    default = cls()
    v = getattr(default, name)
    return type(v) if dataclasses.is_dataclass(v) else None


def merge(base, overrides):
    """Apply dotted-path overrides (``{"grid.n": 31}``) to a copy of ``base``."""
    d = base.to_dict()
    for path, value in overrides.items():
        node = d
        parts = path.split(".")
        for p in parts[:-1]:
            if p not in node or not isinstance(node[p], dict):
                raise ConfigError(f"unknown config key {path}")
            node = node[p]
        if parts[-1] not in node:
            raise ConfigError(f"unknown config key {path}")
        node[parts[-1]] = value
    return ExperimentConfig.from_dict(d)


# config sections each stage's output depends on
STAGE_DEPS = {
    "explore": ("seed", "m0", "state_change_prob", "arm", "retina", "object", "grid", "pov", "compensation"),
}
STAGE_DEPS["metrics"] = STAGE_DEPS["explore"]
STAGE_DEPS["embed"] = STAGE_DEPS["metrics"] + ("dims", "cca2", "cca3")
STAGE_DEPS["regularize"] = STAGE_DEPS["embed"] + ("regularization",)
STAGE_DEPS["reach"] = STAGE_DEPS["regularize"] + ("reaching",)
