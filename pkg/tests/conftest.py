import pytest

from qie.cycle import CycleSpec
from qie.medium import TWO_LEVEL


@pytest.fixture
def fig_spec() -> CycleSpec:
    """Reference two-level cycle: omega_fb=1, omega3=2*omega4=4, T_h=1,
    sigma_h=0.1, tau_h=tau_fb=1."""
    return CycleSpec(TWO_LEVEL, 1.0, 4.0, 2.0, 1.0, 0.1, 1.0, 1.0)
