import pytest


@pytest.fixture(autouse=True)
def mock_env_for_integration_tests(monkeypatch, tmp_path):
    """Set up environment variables for all integration tests."""
    monkeypatch.setenv("PROJFEM_APP_NAME", "projfem-test")
    monkeypatch.setenv("PROJFEM_OUTPUT_DIR", str(tmp_path / "test_output"))
    monkeypatch.setenv("PROJFEM_LOG", "error")
    monkeypatch.setenv("PROJFEM_WORKERS", "1")
