import pytest

from gathering.ring_model import save_schedule
from models.ring import EvolvingRing


@pytest.fixture
def static_ring():
    return EvolvingRing.static(4)


@pytest.fixture
def schedule_file(tmp_path):
    def write(ring: EvolvingRing, name: str = 'ring.json') -> str:
        path = tmp_path / name
        save_schedule(ring, str(path))
        return str(path)
    return write
