"""Pick the compiled kernels when available; ``THETAKIT_PURE=1`` forces Python."""

import os

from . import _purekernels

BACKEND = "python"
kernels = _purekernels

if os.environ.get("THETAKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        kernels = _compiled
        BACKEND = "cython"

fourier = kernels.fourier
product = kernels.product
wpow_sum = kernels.wpow_sum
exponent_sum = kernels.exponent_sum
binomial_sum = kernels.binomial_sum
