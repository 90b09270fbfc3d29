"""Open-loop trend behaviour over full-length runs.

The controller only watches scripted proposals here, so the trends follow
the proposal-quality schedule: better proposals raise the threshold and
shrink the regression labels.
"""
import pytest

from src.config import ExperimentConfig, QualitySchedule, SimulatorConfig
from src.constants.enums import ScheduleKind
from src.simulator import run_open_loop

SEEDS = (1, 2, 3, 4, 5)
BURN_IN_UPDATES = 2


@pytest.fixture(scope="module")
def default_logs():
    config = ExperimentConfig()
    return [run_open_loop(config, seed) for seed in SEEDS]


def _agreeing(logs, holds) -> int:
    return sum(1 for log in logs if holds(log.records[0], log.records[-1]))


def _monotone(values: list[float], rising: bool) -> bool:
    pairs = zip(values, values[1:])
    return all(b >= a for a, b in pairs) if rising else all(b <= a for a, b in pairs)


class TestImprovingProposals:
    """Trends under the decaying noise schedule."""

    def test_row_per_update_tick(self, default_logs):
        assert all(len(log.records) == 15 for log in default_logs)

    def test_threshold_rises(self, default_logs):
        assert _agreeing(default_logs, lambda first, last: last.t_now > first.t_now + 0.01) >= 4

    def test_beta_falls(self, default_logs):
        assert (
            _agreeing(default_logs, lambda first, last: last.beta_now < first.beta_now - 0.01)
            >= 4
        )

    def test_threshold_never_drops_after_burn_in(self, default_logs):
        monotone = [
            _monotone(log.column("t_now")[BURN_IN_UPDATES:], rising=True) for log in default_logs
        ]
        assert sum(monotone) >= 4

    def test_beta_never_rises_after_burn_in(self, default_logs):
        monotone = [
            _monotone(log.column("beta_now")[BURN_IN_UPDATES:], rising=False)
            for log in default_logs
        ]
        assert sum(monotone) >= 4

    @pytest.mark.parametrize("column", ["pos_at_50", "pos_at_60", "pos_at_70"])
    def test_positives_grow_in_every_seed(self, default_logs, column):
        for log in default_logs:
            first, last = log.records[0], log.records[-1]
            assert getattr(last, column) > getattr(first, column), (log.seed, column)

    @pytest.mark.parametrize("column", ["std_dx", "std_dw"])
    def test_label_spread_shrinks_in_every_seed(self, default_logs, column):
        for log in default_logs:
            first, last = log.records[0], log.records[-1]
            assert getattr(last, column) < getattr(first, column), (log.seed, column)

    def test_label_stats_follow_the_trend(self, default_logs):
        for log in default_logs:
            first, last = log.records[0].label_stats, log.records[-1].label_stats
            assert [s.threshold for s in last] == [0.5, 0.6, 0.7]
            assert all(b.count > a.count for a, b in zip(first, last))
            assert last[0].std_dx == log.records[-1].std_dx

    def test_clips_respected(self, default_logs):
        for log in default_logs:
            assert min(log.column("t_now")) >= 0.4
            assert max(log.column("beta_now")) <= 1.0


class TestConstantProposals:
    """A flat schedule keeps the threshold in a narrow band."""

    def test_threshold_stays_in_band(self):
        config = ExperimentConfig(
            simulator=SimulatorConfig(
                schedule=QualitySchedule(kind=ScheduleKind.CONSTANT, q0=0.2)
            )
        )
        for seed in SEEDS[:3]:
            t_now = run_open_loop(config, seed).column("t_now")[4:]
            assert max(t_now) - min(t_now) < 0.05
