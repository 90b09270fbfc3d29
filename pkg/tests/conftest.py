"""Pytest configuration and shared fixtures."""
import hypothesis
import numpy as np
import pytest

from src.config import (
    ControllerConfig,
    ExperimentConfig,
    SceneConfig,
    SimulatorConfig,
    TrainerConfig,
)
from src.constants.enums import ExperimentMode
from src.models.boxes import Box
from src.utils.logging import setup_logging

hypothesis.settings.register_profile("default", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=2000, deadline=None)
hypothesis.settings.load_profile("default")


@pytest.fixture(autouse=True)
def quiet_logging():
    """Route structlog to the current stderr at WARNING for every test."""
    setup_logging(log_level="WARNING", json_logs=True)
    yield


@pytest.fixture
def unit_box():
    """Box [0, 0, 1, 1]."""
    return Box(x1=0.0, y1=0.0, x2=1.0, y2=1.0)


@pytest.fixture
def shifted_box():
    """Box [0.5, 0, 1.5, 1]; IoU 1/3 with the unit box."""
    return Box(x1=0.5, y1=0.0, x2=1.5, y2=1.0)


@pytest.fixture
def sample_gts():
    """Three ground truths in a 128x128 scene."""
    return [
        Box(x1=10.0, y1=10.0, x2=40.0, y2=30.0),
        Box(x1=60.0, y1=20.0, x2=90.0, y2=70.0),
        Box(x1=20.0, y1=80.0, x2=50.0, y2=120.0),
    ]


@pytest.fixture
def rng():
    """Seeded generator for ad-hoc random inputs."""
    return np.random.default_rng(12345)


@pytest.fixture
def small_simulator_config():
    """Short runs with small scenes, for tests that exercise the loops."""
    return SimulatorConfig(
        iterations=200,
        batch_size=128,
        scene=SceneConfig(n_objects=3, n_per_gt=16, n_background=16),
        trainer=TrainerConfig(eval_scenes=5),
    )


@pytest.fixture
def open_loop_config(small_simulator_config):
    """Open-loop experiment with C = 20."""
    return ExperimentConfig(
        mode=ExperimentMode.OPEN_LOOP,
        controller=ControllerConfig(k_iou=10, k_beta=5, update_interval=20),
        simulator=small_simulator_config,
        seeds=[1, 2],
    )


@pytest.fixture
def closed_loop_config(small_simulator_config):
    """Closed-loop experiment with C = 20."""
    return ExperimentConfig(
        mode=ExperimentMode.CLOSED_LOOP,
        controller=ControllerConfig(k_iou=10, k_beta=5, update_interval=20),
        simulator=small_simulator_config,
        seeds=[1, 2],
    )
