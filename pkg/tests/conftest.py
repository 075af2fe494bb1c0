import mpmath
import pytest
from hypothesis import settings

settings.register_profile("thetakit", max_examples=40, deadline=None)
settings.load_profile("thetakit")

GRID = (1j, 2j, 0.3 + 1.2j, 1 + 1j)


def jtheta(kind, v, tau, deriv=0, dps=30):
    """Independent reference: mpmath's theta with our conventions (argument pi*v, d/dv)."""
    with mpmath.workdps(dps):
        q = mpmath.exp(1j * mpmath.pi * mpmath.mpc(tau))
        val = mpmath.jtheta(kind, mpmath.pi * mpmath.mpc(v), q, deriv) * mpmath.pi**deriv
        return complex(val)


def rel(a, b):
    s = max(abs(a), abs(b))
    return 0.0 if s == 0 else abs(a - b) / s


@pytest.fixture
def grid():
    return GRID
