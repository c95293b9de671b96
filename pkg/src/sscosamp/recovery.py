"""Signal-space CoSaMP with a pluggable sparse projection."""
from dataclasses import dataclass, field

import numpy as np

from .dictionary import SupportSet
from .errors import DimensionError, SolverNonconvergenceError
from .projections import (
    BACKENDS,
    DEFAULT_CONFIG,
    ProjectionConfig,
    least_squares,
    project,
    project_onto_support,
)


@dataclass(frozen=True)
class RecoveryConfig:
    k: int
    backend: str = "omp"
    max_outer_iterations: int = 50
    residual_tolerance: float = 1e-10
    stall_window: int = 5
    stall_factor: float = 1e-6
    projection: ProjectionConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}; choose from {BACKENDS}")
        if self.max_outer_iterations < 1 or self.stall_window < 1:
            raise ValueError("iteration limits must be at least 1")
        if not (self.residual_tolerance > 0 and self.stall_factor > 0):
            raise ValueError("tolerances must be positive")


@dataclass
class SSCoSaMPState:
    residual: np.ndarray
    estimate: np.ndarray
    support: SupportSet
    iteration: int = 0
    residual_history: list = field(default_factory=list)
    # projection calls that hit the basis-pursuit iteration cap
    solver_failures: int = 0


def apply_real(A, x):
    """``A @ x`` for real ``A`` and complex ``x``, one real product per part."""
    x = np.asarray(x)
    if not np.iscomplexobj(x):
        return A @ x
    if x.ndim == 1:
        out = A @ np.stack([x.real, x.imag], axis=1)
        return out[:, 0] + 1j * out[:, 1]
    return A @ x.real + 1j * (A @ x.imag)


def apply_real_adjoint(A, r):
    return apply_real(A.T, r)


def constrained_least_squares(A, dictionary, T, y):
    """``argmin |y - A z|`` over ``z`` in the span of ``D_T``.

    Solved as least squares in the coefficients of ``A D_T``; rank-deficient
    systems take the minimum-norm coefficients.
    """
    if not isinstance(T, SupportSet):
        T = SupportSet(T, dictionary.d)
    if len(T) > dictionary.n:
        raise DimensionError(f"|T| = {len(T)} exceeds n = {dictionary.n}")
    if len(T) == 0:
        return np.zeros(dictionary.n, dtype=np.complex128)
    DT = dictionary.columns(T)
    beta = least_squares(apply_real(A, DT), np.asarray(y, dtype=np.complex128))
    return DT @ beta


def _project(dictionary, w, s, config, state):
    try:
        return project(dictionary, w, s, config.backend, config.projection)
    except SolverNonconvergenceError as err:
        # keep going with the projection built from the last l1 iterate
        state.solver_failures += 1
        return err.outcome


def recover(A, dictionary, y, config):
    """Recover ``x = D alpha`` from ``y = A x + e``.

    Each pass: proxy ``A^* r``; identify ``2k`` atoms with the projection
    backend; merge with the current support; least squares over the merged
    span; prune to ``k`` atoms with the backend and project.  Stops when the
    residual drops to ``residual_tolerance``, after ``max_outer_iterations``
    passes, or when the best residual has not improved by a relative
    ``stall_factor`` within ``stall_window`` passes.  A pass that reproduces
    the previous support and estimate exactly is a fixed point, so the loop
    also stops there.  Returns the iterate with
    the smallest residual and its state.
    """
    A = np.asarray(A, dtype=np.float64)
    y = np.asarray(y, dtype=np.complex128)
    m, n = A.shape
    if n != dictionary.n:
        raise DimensionError(f"A has {n} columns, dictionary has {dictionary.n} rows")
    if y.shape != (m,):
        raise DimensionError(f"y has shape {y.shape}, expected ({m},)")
    if m > n:
        raise DimensionError(f"need m <= n, got m={m}, n={n}")
    k = config.k
    if 2 * k > n:
        raise DimensionError(f"identification of 2k = {2 * k} atoms needs 2k <= n = {n}")

    d = dictionary.d
    x = np.zeros(n, dtype=np.complex128)
    gamma = SupportSet((), d)
    r = y.copy()
    state = SSCoSaMPState(residual=r, estimate=x, support=gamma)
    best = (float(np.linalg.norm(r)), r, x, gamma)
    last_gain = 0
    ell = 0
    while True:
        proxy = apply_real_adjoint(A, r)
        omega = _project(dictionary, proxy, 2 * k, config, state).support
        T = omega.union(gamma)
        w_tilde = constrained_least_squares(A, dictionary, T, y)
        prev_gamma, prev_x = gamma, x
        gamma = _project(dictionary, w_tilde, k, config, state).support
        x = project_onto_support(dictionary, gamma, w_tilde)
        r = y - apply_real(A, x)
        ell += 1
        res = float(np.linalg.norm(r))
        state.residual_history.append(res)
        if res < best[0] * (1.0 - config.stall_factor):
            last_gain = ell
        if res < best[0]:
            best = (res, r, x, gamma)
        if res <= config.residual_tolerance:
            break
        if ell >= config.max_outer_iterations:
            break
        if ell - last_gain >= config.stall_window:
            break
        if gamma == prev_gamma and np.array_equal(x, prev_x):
            break

    state.residual, state.estimate, state.support = best[1], best[2], best[3]
    state.iteration = ell
    return state.estimate, state
