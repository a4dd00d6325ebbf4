import pytest

from pentamap.conformal import build_quad, solve_field


@pytest.fixture(scope="session")
def shared_field():
    """One fine harmonic field for every suite that needs psi."""
    return solve_field(build_quad(), mesh_size=0.004)
