import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "backend"))

from described_maps import ABSOLUTE, DOUBLE, HAT, IDENTITY, constant_pl  # noqa: E402
from finite_models import complete_structure, diagonal_structure  # noqa: E402
from finite_spaces import discrete_space, sierpinski_space  # noqa: E402
from lca_core import QuantifierStrategy  # noqa: E402


@pytest.fixture
def rho_s2():
    return diagonal_structure(2)


@pytest.fixture
def rho_s3():
    return diagonal_structure(3)


@pytest.fixture
def rho_l2():
    return complete_structure(2)


@pytest.fixture
def sierpinski():
    return sierpinski_space()


@pytest.fixture
def discrete2():
    return discrete_space(["x0", "x1"], name="X2")


@pytest.fixture
def pl_maps():
    return [IDENTITY, DOUBLE, ABSOLUTE, HAT, constant_pl(0)]


@pytest.fixture
def sampled_1000():
    return QuantifierStrategy.sampled(1000, 7, 20)


@pytest.fixture
def sampled_500():
    return QuantifierStrategy.sampled(500, 7, 20)
