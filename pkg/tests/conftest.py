import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import TWO_BIT_BENCH, TWO_BIT_UNDERCONSTRAINED

from fsmforge.cut import FsmSpec, fsm_cut
from fsmforge.netlist import parse_bench
from fsmforge.topology import StateWord


@pytest.fixture(scope="session")
def two_bit_netlist():
    return parse_bench(TWO_BIT_BENCH)


@pytest.fixture(scope="session")
def two_bit_spec():
    return FsmSpec(("U2", "U4"), StateWord.from_string("11"))


@pytest.fixture(scope="session")
def two_bit_cut(two_bit_netlist, two_bit_spec):
    return fsm_cut(two_bit_netlist, two_bit_spec)


@pytest.fixture(scope="session")
def underconstrained_cut():
    netlist = parse_bench(TWO_BIT_UNDERCONSTRAINED)
    return fsm_cut(netlist, FsmSpec(("U2", "U4"), StateWord.from_string("11")))
