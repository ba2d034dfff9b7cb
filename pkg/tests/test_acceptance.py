import pytest

from models.checks import Variant
from models.experiments import RunConfig
from models.experiments import RunResult
from resources.helpers import make_rng
from resources.helpers import random_ids
from services.experiments import Experiment
from tests.logger import Logger
from tests.prepare_test import SetUpTest

_setup = SetUpTest(Logger(name='test_acceptance.log'))

SEEDS = range(50)
# stream 0..2 are taken by ring, placement and ids
STREAM_SIZES = 3
ID_UPPER = 32


def scaled_fields(tag: str, seed: int, **extra) -> dict:
    '''
    n in [4, 12], R in [4, 8], distinct ids up to 32, all drawn from the seed.
    '''
    rng = make_rng(seed, STREAM_SIZES)
    robot_count = int(rng.integers(4, 9))
    fields = {
        'class': tag,
        'n': int(rng.integers(4, 13)),
        'R': robot_count,
        'ids': random_ids(robot_count, ID_UPPER, seed),
        'seed': seed,
        'include_trace': True,
    }
    fields.update(extra)
    return fields


def replayed_run(fields: dict) -> RunResult:
    first = Experiment.run(RunConfig.parse_obj(fields))
    second = Experiment.run(RunConfig.parse_obj(fields))
    assert first.trace == second.trace
    assert first.dict() == second.dict()
    _setup.log.info(f"{fields['class']} seed={fields['seed']} n={first.n} R={first.robot_count} "
                    f"variants={[v.value for v in first.verdict.variants]}")
    return first


def assert_clean(result: RunResult):
    assert result.verdict.safety_ok
    assert result.verdict.violations == []
    assert result.expected_met


@pytest.mark.parametrize('seed', SEEDS)
def test_static_rings_gather_within_bound(seed):
    result = replayed_run(scaled_fields('st', seed))
    assert_clean(result)
    assert Variant.G in result.verdict.variants
    assert result.verdict.terminated == result.robot_count
    assert result.verdict.termination_round <= result.verdict.bound


@pytest.mark.parametrize('seed', SEEDS)
@pytest.mark.parametrize('delta', [1, 2, 3, 5])
def test_bounded_recurrent_rings_gather_within_bound(delta, seed):
    result = replayed_run(scaled_fields('bre', seed, delta=delta))
    assert_clean(result)
    assert Variant.G in result.verdict.variants
    assert result.verdict.termination_round <= result.verdict.bound


@pytest.mark.parametrize('seed', SEEDS)
def test_recurrent_rings_gather_eventually(seed):
    result = replayed_run(scaled_fields('re', seed))
    assert_clean(result)
    assert Variant.G_E in result.verdict.variants
    assert result.verdict.terminated == result.robot_count


@pytest.mark.parametrize('seed', SEEDS)
def test_always_connected_rings_gather_weakly_within_bound(seed):
    result = replayed_run(scaled_fields('ac', seed))
    assert_clean(result)
    assert Variant.G_W in result.verdict.variants
    assert result.verdict.terminated >= result.robot_count - 1


@pytest.mark.parametrize('seed', SEEDS)
def test_eventual_missing_edge_rings_gather_weakly(seed):
    result = replayed_run(scaled_fields('cot', seed))
    assert_clean(result)
    assert Variant.G_EW in result.verdict.variants
    assert result.verdict.terminated >= result.robot_count - 1


def test_stranded_robot_leaves_exactly_one_behind():
    schedule = _setup.document(_setup.late_missing_edge_ring())
    result = replayed_run({
        'class': 'cot', 'ids': [1, 2, 3, 4], 'schedule': schedule, 'placement': [0, 1, 2, 3], 'seed': 0,
        'include_trace': True,
    })
    assert_clean(result)
    assert result.verdict.terminated == 3
    assert Variant.G_E not in result.verdict.variants


def test_scaled_configs_span_the_ranges():
    drawn = [scaled_fields('st', seed) for seed in SEEDS]
    assert {fields['n'] for fields in drawn} <= set(range(4, 13))
    assert {fields['R'] for fields in drawn} <= set(range(4, 9))
    assert all(len(set(fields['ids'])) == fields['R'] for fields in drawn)
    assert all(max(fields['ids']) <= ID_UPPER for fields in drawn)
