import pytest

from projfem.assemble.operators import OperatorSet
from projfem.schemes.state import ElementPair, SchemeConfig
from projfem.services.simulator import build_operators


@pytest.fixture(autouse=True)
def setup_unit_test(monkeypatch):
    """Set up environment variables for all unit tests."""
    monkeypatch.setenv("PROJFEM_APP_NAME", "projfem-test")
    monkeypatch.setenv("PROJFEM_OUTPUT_DIR", "test_output")


@pytest.fixture(scope="session")
def th_ops_4() -> OperatorSet:
    """Taylor-Hood operators on the 4x4 mesh."""
    return build_operators(SchemeConfig(n=4, k=0.1, T=0.1))


@pytest.fixture(scope="session")
def th_ops_8() -> OperatorSet:
    """Taylor-Hood operators on the 8x8 mesh."""
    return build_operators(SchemeConfig(n=8, k=0.1, T=0.1))


@pytest.fixture(scope="session")
def mini_ops_4() -> OperatorSet:
    """MINI operators on the 4x4 mesh."""
    return build_operators(SchemeConfig(n=4, k=0.1, T=0.1, pair=ElementPair.MINI))


@pytest.fixture(scope="session")
def th_ops_16() -> OperatorSet:
    """Taylor-Hood operators on the 16x16 mesh."""
    return build_operators(SchemeConfig(n=16, k=0.1, T=0.1))
