"""Kernel selection: compiled extension when available, numpy otherwise.

Set ``SSCOSAMP_PURE_PYTHON=1`` to force the numpy kernels.
"""
import os

from . import _kernels_py

COMPILED = False
kernels = _kernels_py

if not os.environ.get("SSCOSAMP_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        kernels = _compiled
        COMPILED = True

eta_dp = kernels.eta_dp
eta_prime_dp = kernels.eta_prime_dp
enumerate_separated = kernels.enumerate_separated
dr_update = kernels.dr_update
