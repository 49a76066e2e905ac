import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hochduflo.liealg import LieAlgebra


@pytest.fixture(scope="session")
def abelian1():
    return LieAlgebra.abelian(1)


@pytest.fixture(scope="session")
def abelian2():
    return LieAlgebra.abelian(2)


@pytest.fixture(scope="session")
def aff1():
    return LieAlgebra.aff1()


@pytest.fixture(scope="session")
def heis3():
    return LieAlgebra.heisenberg3()


@pytest.fixture(scope="session")
def sl2():
    return LieAlgebra.sl2()
