from typing import Dict
from typing import List
from typing import Optional

from fastapi.testclient import TestClient

from app import app
from gathering.ring_model import make_ring
from gathering.sim_engine import run
from models.ring import EvolvingRing
from models.ring import ScheduleDocument
from models.simulation import RunOutcome
from models.simulation import Trace

ALL = (1, 1, 1, 1)
ORACLE_IDS = [1, 2, 3, 4]
# robots 2, 3 and 4 start together on node 0, robot 1 on node 2
ORACLE_PLACEMENT = {1: 2, 2: 0, 3: 0, 4: 0}


class SetupException(Exception):
    """Failed setup test."""


class SetUpTest:
    '''
    Scripted rings and runs shared by the suites.
    '''

    def __init__(self, log):
        self.log = log
        self.app = self.create_test_client()

    def create_test_client(self):
        return TestClient(app)

    def late_missing_edge_ring(self) -> EvolvingRing:
        '''
        n=4 ring, every edge present for 22 rounds, edge 3 absent forever after.
        '''
        return make_ring(4, [ALL] * 22, [(1, 1, 1, 0)])

    def oracle_ring(self) -> EvolvingRing:
        '''
        Edge 2 missing in round 2, edge 0 missing in rounds 5 to 12, all present otherwise.
        '''
        prefix = [ALL, ALL, (1, 1, 0, 1), ALL, ALL] + [(0, 1, 1, 1)] * 8
        return make_ring(4, prefix, [ALL])

    def document(self, ring: EvolvingRing) -> dict:
        return ScheduleDocument.from_ring(ring).dict()

    def run_scenario(
        self,
        ring: EvolvingRing,
        placement: Dict[int, int],
        ids: Optional[List[int]] = None,
        horizon: int = 200,
    ) -> (Trace, RunOutcome):
        ids = ids or sorted(placement)
        self.log.info(f'run n={ring.n} ids={ids} placement={placement} horizon={horizon}')
        try:
            trace, outcome = run(ring, placement, ids, horizon)
        except Exception as e:
            self.log.error(f'ERROR RUNNING SCENARIO: {e}')
            raise SetupException(str(e))
        self.log.info(f'outcome: {outcome.to_dict()}')
        return trace, outcome
