import os

import pytest

from symquiv.config import TameKind
from symquiv.quiver_core import build_canonical

DATA = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data')


# function, class, module, session
@pytest.fixture(scope='session')
def a11_02():
    return build_canonical(TameKind.A11, 0, 2)


@pytest.fixture(scope='session')
def a11_06():
    return build_canonical(TameKind.A11, 0, 6)


@pytest.fixture(scope='session')
def a02_22():
    return build_canonical(TameKind.A02, 2, 2)


@pytest.fixture(scope='session')
def d10_5():
    return build_canonical(TameKind.D10, 5)


@pytest.fixture(scope='session')
def example_dim(a11_06):
    # 2h + 4e1 + 3(e2+δe2) + 2e4
    return a11_06.vector({"1": 6, "2": 5, "3": 2, "4": 4, "σ(1)": 6, "σ(2)": 5, "σ(3)": 2})


@pytest.fixture(scope='session')
def data_dir():
    return DATA
