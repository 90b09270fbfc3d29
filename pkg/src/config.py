"""
Configuration management using Pydantic Settings.
Experiments are described by one JSON document; command-line flags override
file fields. Environment variables and dotenv files are never consulted.
"""
import json
import math
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from .constants.enums import Ablation, AblationParam, ExperimentMode, LabelReduction, ScheduleKind
from .loss.smooth_l1 import Reduction
from .models.boxes import DeltaStats


class ConfigFileError(ValueError):
    """A config or input file could not be read or parsed."""


class ControllerConfig(BaseModel):
    """
    Hyperparameters of the dynamic threshold / beta controller.
    Defaults are the best settings of the K_I, K_beta and C ablations.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    k_iou: int = Field(default=75, ge=1, description="K_I: rank of the recorded IoU per batch")
    k_beta: int = Field(default=10, ge=1, description="K_beta: rank of the recorded label scalar")
    update_interval: int = Field(default=100, ge=1, description="C: iterations between updates")
    t_floor: float = Field(default=0.4, ge=0.0, le=1.0, description="Lower clip of T_now")
    beta_ceiling: float = Field(default=1.0, gt=0.0, description="Upper clip of beta_now")
    t_init: float = Field(default=0.5, ge=0.0, le=1.0, description="Initial T_now")
    beta_init: float = Field(default=1.0, gt=0.0, description="Initial beta_now")
    reduction: LabelReduction = Field(
        default=LabelReduction.MEAN_ABS,
        description="Per-positive scalar recorded for beta statistics",
    )

    @model_validator(mode="after")
    def _check_clips(self) -> "ControllerConfig":
        if self.t_init < self.t_floor:
            raise ValueError(f"t_init ({self.t_init}) is below t_floor ({self.t_floor})")
        if self.beta_init > self.beta_ceiling:
            raise ValueError(
                f"beta_init ({self.beta_init}) is above beta_ceiling ({self.beta_ceiling})"
            )
        return self


class QualitySchedule(BaseModel):
    """
    Proposal noise scale over training; smaller means better proposals.
    The exponential shape is a modelling choice, not a measured curve.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: ScheduleKind = Field(default=ScheduleKind.EXPONENTIAL, description="Schedule shape")
    q0: float = Field(default=0.5, gt=0.0, description="Noise scale at iteration 0")
    tau_fraction: float = Field(
        default=1.0 / 3.0, gt=0.0, description="Decay constant as a fraction of total iterations"
    )

    def scale(self, iteration: int, total_iterations: int) -> float:
        """Noise scale q(i) > 0; non-increasing in i."""
        if self.kind is ScheduleKind.CONSTANT:
            return self.q0
        tau = self.tau_fraction * max(total_iterations, 1)
        return self.q0 * math.exp(-iteration / tau)


class SceneConfig(BaseModel):
    """Synthetic scene and proposal generator settings."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    width: float = Field(default=128.0, gt=0.0, description="Image width in units")
    height: float = Field(default=128.0, gt=0.0, description="Image height in units")
    n_objects: int = Field(default=5, ge=1, description="Ground truths per scene")
    min_size: float = Field(default=12.0, gt=0.0, description="Smallest ground-truth side")
    max_size: float = Field(default=48.0, gt=0.0, description="Largest ground-truth side")
    n_per_gt: int = Field(default=48, ge=1, description="Jittered proposals per ground truth")
    n_background: int = Field(default=64, ge=0, description="Uniform background proposals")
    min_side: float = Field(default=1.0, gt=0.0, description="Minimum proposal side after clipping")

    @model_validator(mode="after")
    def _check_sizes(self) -> "SceneConfig":
        if self.min_size > self.max_size:
            raise ValueError(f"min_size ({self.min_size}) exceeds max_size ({self.max_size})")
        return self


class EvidenceConfig(BaseModel):
    """
    Noisy observations standing in for image features of the toy detector.
    Offset noise is proportional to the true offset (plus an optional floor) and
    has heavy-tailed outliers. Without a floor the relative noise, and so the
    regressor's best slope, is the same for coarse and tight proposals.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    noise_floor: float = Field(default=0.0, ge=0.0, description="Offset noise at zero offset")
    noise_gain: float = Field(default=0.1, ge=0.0, description="Offset noise per unit |offset|")
    outlier_rate: float = Field(default=0.15, ge=0.0, le=1.0, description="Outlier probability")
    outlier_scale: float = Field(default=15.0, ge=1.0, description="Outlier noise multiplier")
    iou_noise: float = Field(default=0.05, ge=0.0, description="Stdev of the observed IoU")
    feature_clip: float = Field(default=4.0, gt=0.0, description="Bound on observed offsets")


class TrainerConfig(BaseModel):
    """Closed-loop toy detector training and evaluation settings."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    reg_lr: float = Field(default=0.1, gt=0.0, description="Regressor learning rate")
    cls_lr: float = Field(default=0.5, gt=0.0, description="Classifier learning rate")
    lr_decay_at: float = Field(default=0.75, gt=0.0, le=1.0, description="Decay point (fraction)")
    lr_decay: float = Field(default=0.1, gt=0.0, le=1.0, description="LR factor at decay")
    fixed_beta: float = Field(default=1.0, gt=0.0, description="SmoothL1 beta without DSL")
    static_t_pos: float = Field(default=0.5, ge=0.0, le=1.0, description="Static positive IoU")
    static_t_neg: float = Field(default=0.5, ge=0.0, le=1.0, description="Static negative IoU")
    regression_reduction: Reduction = Field(default=Reduction.MEAN, description="Over positives")
    classification_reduction: Reduction = Field(default=Reduction.MEAN, description="Over batch")
    refine_fraction: float = Field(
        default=0.5, ge=0.0, le=1.0, description="Share of per-gt proposals taken from refinements"
    )
    proposal_nms_threshold: float = Field(
        default=0.85, gt=0.0, le=1.0, description="NMS threshold on refined proposals"
    )
    eval_scenes: int = Field(default=40, ge=1, description="Held-out evaluation scenes")
    eval_noise: float = Field(default=0.15, gt=0.0, description="Proposal noise at evaluation")
    eval_nms_threshold: float = Field(default=0.5, gt=0.0, le=1.0, description="Detection NMS")

    @model_validator(mode="after")
    def _check_static(self) -> "TrainerConfig":
        if self.static_t_neg > self.static_t_pos:
            raise ValueError("static_t_neg must not exceed static_t_pos")
        return self


class SimulatorConfig(BaseModel):
    """Everything a single open- or closed-loop run needs besides the seed."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    iterations: int = Field(default=1500, ge=1, description="Training iterations")
    batch_size: int = Field(default=512, ge=1, description="Sampled proposals per iteration")
    pos_fraction: float = Field(default=0.25, gt=0.0, lt=1.0, description="Positive share cap")
    delta_stats: DeltaStats = Field(default_factory=DeltaStats, description="Offset normalization")
    scene: SceneConfig = Field(default_factory=SceneConfig)
    schedule: QualitySchedule = Field(default_factory=QualitySchedule)
    evidence: EvidenceConfig = Field(default_factory=EvidenceConfig)
    trainer: TrainerConfig = Field(default_factory=TrainerConfig)


class AblationGrid(BaseModel):
    """One-parameter grid for the ablate command."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    param: AblationParam = Field(..., description="Swept parameter")
    values: list[float] = Field(..., min_length=1, description="Grid points")


class ExperimentConfig(BaseSettings):
    """
    Full experiment description.
    Loaded from JSON plus explicit overrides only.
    """

    model_config = SettingsConfigDict(extra="forbid", case_sensitive=False)

    mode: ExperimentMode = Field(default=ExperimentMode.OPEN_LOOP, description="Run kind")
    ablations: list[Ablation] = Field(
        default_factory=lambda: [Ablation.DLA_DSL], min_length=1, description="Ablation modes"
    )
    controller: ControllerConfig = Field(default_factory=ControllerConfig)
    simulator: SimulatorConfig = Field(default_factory=SimulatorConfig)
    seeds: list[int] = Field(
        default_factory=lambda: [1, 2, 3, 4, 5], min_length=1, description="Run seeds"
    )
    out_dir: Path = Field(default=Path("runs"), description="Output directory")
    parallel: int = Field(default=1, ge=1, description="Worker processes")
    grid: AblationGrid | None = Field(default=None, description="Grid for ablate")
    log_level: str = Field(default="INFO", description="Logging level")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    def with_param(self, param: AblationParam, value: float) -> "ExperimentConfig":
        """
        Copy with one swept parameter replaced.

        Raises:
            pydantic.ValidationError: If the value is out of range for the parameter
        """
        if param is AblationParam.FIXED_BETA:
            trainer = TrainerConfig.model_validate(
                {**self.simulator.trainer.model_dump(), "fixed_beta": float(value)}
            )
            simulator = self.simulator.model_copy(update={"trainer": trainer})
            return self.model_copy(update={"simulator": simulator})
        controller = ControllerConfig.model_validate(
            {**self.controller.model_dump(), param.value: int(value)}
        )
        return self.model_copy(update={"controller": controller})


def _deep_merge(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def read_json_file(path: str | Path) -> Any:
    """
    Parse a JSON file.

    Raises:
        ConfigFileError: With path and line/column context
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigFileError(f"{path}: cannot read file: {e.strerror}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigFileError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e


def load_experiment_config(
    path: str | Path | None = None, overrides: dict[str, Any] | None = None
) -> ExperimentConfig:
    """
    Load an experiment config file and apply overrides.

    Args:
        path: JSON config file, or None for defaults
        overrides: Nested field overrides (flags), applied on top of the file

    Returns:
        Validated ExperimentConfig

    Raises:
        ConfigFileError: If the file is unreadable or malformed
        pydantic.ValidationError: If fields are invalid
    """
    data: dict[str, Any] = {}
    if path is not None:
        loaded = read_json_file(path)
        if not isinstance(loaded, dict):
            raise ConfigFileError(f"{path}: top level must be a JSON object")
        data = loaded
    data = _deep_merge(data, overrides or {})
    return ExperimentConfig(**data)


def describe_validation_error(error: ValidationError) -> str:
    """One line per error: dotted field path and message."""
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)
