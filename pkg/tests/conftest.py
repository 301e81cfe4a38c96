import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ordalg.fixtures import fixtures


@pytest.fixture(scope="session")
def figs():
    return fixtures()


@pytest.fixture(scope="session")
def fig1(figs):
    return figs.posets["fig1"]


@pytest.fixture(scope="session")
def fig2(figs):
    return figs.posets["fig2"]


@pytest.fixture(scope="session")
def fig3(figs):
    return figs.posets["fig3"]


@pytest.fixture(scope="session")
def fig4(figs):
    return figs.posets["fig4"]


@pytest.fixture(scope="session")
def fig5(figs):
    return figs.posets["fig5"]
