from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rsma_mc.model import symmetric_config
from rsma_mc.reliability import bler_budget_from_qos


@pytest.fixture(scope="session")
def cfg15():
    """Reference symmetric setup: 15 dB SNR, 0.6 cross gain."""
    return symmetric_config(15.0)


@pytest.fixture(scope="session")
def bler15(cfg15):
    return bler_budget_from_qos(cfg15.q_hc, cfg15.q_lc)
