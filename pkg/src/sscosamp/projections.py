"""Near-optimal sparse projections onto a dictionary.

Every backend maps ``(w, s)`` to an ``s``-atom (or smaller) support ``L`` and
the orthogonal projection of ``w`` onto ``span(D_L)``.  Backends are selected
by name through :func:`project`: ``"omp"``, ``"cosamp"``, ``"l1"`` and the
exhaustive ``"oracle"``.
"""
import itertools
from dataclasses import dataclass
from math import comb

import numpy as np
import scipy.fft
import scipy.linalg

from . import _core
from .dictionary import SupportSet
from .errors import (
    DimensionError,
    EnumerationSizeError,
    MismatchedInputError,
    SolverNonconvergenceError,
)

# least-squares systems worse than this fall back to the min-norm SVD solve
COND_LIMIT = 1e12

BACKENDS = ("omp", "cosamp", "l1", "oracle")


@dataclass(frozen=True)
class ProjectionConfig:
    epsilon: float = 1e-12
    max_iterations: int = 100
    l1_tolerance: float = 1e-8
    l1_max_iterations: int = 20000
    l1_relaxation: float = 1.8
    l1_change_tolerance: float = 1e-10
    enumeration_cap: int = 2_000_000
    cosamp_stall_window: int = 3
    cosamp_stall_tolerance: float = 1e-7
    tie_break: str = "lowest-index"

    def __post_init__(self):
        for name in ("epsilon", "l1_tolerance", "l1_change_tolerance", "cosamp_stall_tolerance"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("max_iterations", "l1_max_iterations", "enumeration_cap", "cosamp_stall_window"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if not 0 < self.l1_relaxation < 2:
            raise ValueError("l1_relaxation must lie in (0, 2)")
        if self.tie_break != "lowest-index":
            raise ValueError("only the lowest-index tie break is supported")


DEFAULT_CONFIG = ProjectionConfig()


@dataclass(frozen=True, eq=False)
class ProjectionOutcome:
    support: SupportSet
    projected: np.ndarray
    coefficients: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool
    target: np.ndarray
    sparsity: int


def least_squares(M, b):
    """Least-squares coefficients of ``b`` in the columns of ``M``.

    Column-pivoted QR; rank-deficient or badly conditioned systems
    (condition estimate above ``COND_LIMIT``) use the minimum-norm solution.
    """
    rows, cols = M.shape
    if cols == 0:
        return np.zeros(0, dtype=np.complex128)
    if cols <= rows:
        Q, R, piv = scipy.linalg.qr(M, mode="economic", pivoting=True)
        diag = np.abs(np.diag(R))
        if diag[0] > 0 and diag[-1] * COND_LIMIT > diag[0]:
            coef = np.empty(cols, dtype=np.result_type(M, b, np.complex128))
            coef[piv] = scipy.linalg.solve_triangular(R, Q.conj().T @ b)
            return coef
    return np.linalg.lstsq(M, b, rcond=None)[0]


def _as_signal(dictionary, w):
    w = np.asarray(w, dtype=np.complex128)
    if w.shape != (dictionary.n,):
        raise DimensionError(f"expected a length-{dictionary.n} vector, got shape {w.shape}")
    return w


def _outcome(dictionary, w, s, idx, iterations, converged):
    support = SupportSet(idx, dictionary.d)
    M = dictionary.columns(support)
    coef = least_squares(M, w)
    projected = M @ coef if len(support) else np.zeros_like(w)
    return ProjectionOutcome(
        support=support,
        projected=projected,
        coefficients=coef,
        residual_norm=float(np.linalg.norm(w - projected)),
        iterations=int(iterations),
        converged=bool(converged),
        target=w,
        sparsity=int(s),
    )


def project_onto_support(dictionary, support, w):
    """Orthogonal projection of ``w`` onto the span of ``D_support``."""
    w = np.asarray(w, dtype=np.complex128)
    if not isinstance(support, SupportSet):
        support = SupportSet(support, dictionary.d)
    if len(support) == 0:
        return np.zeros_like(w)
    M = dictionary.columns(support)
    return M @ least_squares(M, w)


def _top(values, count):
    """Indices of the ``count`` largest entries; ties go to the lower index."""
    if count <= 0:
        return np.zeros(0, dtype=np.intp)
    return np.argsort(-values, kind="stable")[:count]


def project_omp(dictionary, w, s, config=DEFAULT_CONFIG):
    """Orthogonal matching pursuit, stopping once ``|r| <= config.epsilon``."""
    w = _as_signal(dictionary, w)
    if s > dictionary.n:
        raise DimensionError(f"OMP sparsity {s} exceeds signal dimension {dictionary.n}")
    scale = max(float(np.linalg.norm(w)), 1e-300)
    selected = []
    r = w
    res = float(np.linalg.norm(w))
    while len(selected) < s and res > config.epsilon:
        corr = np.abs(dictionary.adjoint(r))
        corr[selected] = -1.0
        j = int(np.argmax(corr))
        if corr[j] <= 1e-13 * scale:
            break
        trial = selected + [j]
        M = dictionary.columns(trial)
        proj = M @ least_squares(M, w)
        new_res = float(np.linalg.norm(w - proj))
        if new_res >= res:
            break
        selected = trial
        r = w - proj
        res = new_res
    return _outcome(dictionary, w, s, selected, len(selected), res <= config.epsilon)


def project_cosamp(dictionary, w, s, config=DEFAULT_CONFIG):
    """CoSaMP with ``D`` as the sensing matrix.

    Each pass merges the ``2s`` strongest proxy atoms into the current
    support, fits by least squares and keeps the ``s`` largest coefficients.
    The residual is taken against the orthogonal projection onto the kept
    atoms: with coherent atoms the pruned coefficients of the merged fit
    cancel badly and leave a residual larger than ``w`` itself.  Stops on
    ``|r| <= epsilon``, on a stall (relative decrease below
    ``cosamp_stall_tolerance`` across ``cosamp_stall_window`` passes) or at
    ``max_iterations``.  The support with the smallest residual is returned,
    with ``w`` projected orthogonally onto it.
    """
    w = _as_signal(dictionary, w)
    if 3 * s > dictionary.d:
        raise DimensionError(f"CoSaMP needs 3s <= d, got s={s}, d={dictionary.d}")
    support = np.zeros(0, dtype=np.intp)
    r = w
    res = float(np.linalg.norm(w))
    history = [res]
    best_res, best_support = res, support
    converged = res <= config.epsilon
    it = 0
    while not converged and it < config.max_iterations:
        it += 1
        proxy = np.abs(dictionary.adjoint(r))
        omega = _top(proxy, 2 * s)
        T = np.union1d(omega, support)
        beta = least_squares(dictionary.columns(T), w)
        mags = np.abs(beta)
        keep = _top(mags, s)
        keep = np.sort(keep[mags[keep] > 0])
        support = T[keep]
        r = w - project_onto_support(dictionary, support, w)
        res = float(np.linalg.norm(r))
        history.append(res)
        if res < best_res:
            best_res, best_support = res, support
        if res <= config.epsilon:
            converged = True
        elif len(history) > config.cosamp_stall_window:
            ref = history[-1 - config.cosamp_stall_window]
            if ref - res < config.cosamp_stall_tolerance * ref:
                converged = True
    return _outcome(dictionary, w, s, best_support, it, converged)


def basis_pursuit(dictionary, x, tol=1e-8, max_iterations=20000, relaxation=1.8,
                  change_tol=1e-10, check_every=10):
    """Solve ``min |alpha|_1  s.t.  D alpha = x`` by Douglas-Rachford splitting.

    The DFT dictionary is a tight frame (``D D^* = (d/n) I``), so the affine
    projection is exact: overwrite the first ``n`` Fourier coefficients.  The
    threshold is ``|D^* x|_inf / |D|^2``.  Converged when the sparse iterate
    has relative feasibility ``|D a - x| / |x| <= tol`` and relative change
    ``<= change_tol`` between consecutive iterations.

    Returns ``(alpha, iterations)``; raises :class:`SolverNonconvergenceError`
    carrying the last iterate when ``max_iterations`` is reached.
    """
    x = _as_signal(dictionary, x)
    n, d = dictionary.n, dictionary.d
    xnorm = float(np.linalg.norm(x))
    if xnorm == 0.0:
        return np.zeros(d, dtype=np.complex128), 0
    X = np.sqrt(n) * x
    z = dictionary.adjoint(x) * (n / d)
    gamma = float(np.abs(z).max())
    b_prev = None
    b = z
    for it in range(1, max_iterations + 1):
        F = scipy.fft.fft(z)
        F[:n] = X
        a = scipy.fft.ifft(F, overwrite_x=True)
        b = _core.dr_update(z, a, gamma, relaxation)
        if it % check_every == check_every - 1:
            b_prev = b
        elif it % check_every == 0:
            feas = np.linalg.norm(scipy.fft.fft(b)[:n] - X) / (np.sqrt(n) * xnorm)
            bnorm = max(float(np.linalg.norm(b)), 1e-300)
            change = float(np.linalg.norm(b - b_prev)) / bnorm
            if feas <= tol and change <= change_tol:
                return b, it
    raise SolverNonconvergenceError(
        f"basis pursuit did not converge in {max_iterations} iterations",
        last_iterate=b, iterations=max_iterations)


def _l1_support(alpha, s):
    mags = np.abs(alpha)
    keep = _top(mags, s)
    return np.sort(keep[mags[keep] > 0])


def project_l1(dictionary, w, s, config=DEFAULT_CONFIG):
    """Basis pursuit, then the ``s`` largest-magnitude coefficients as support."""
    w = _as_signal(dictionary, w)
    if s > dictionary.n:
        raise DimensionError(f"l1 sparsity {s} exceeds signal dimension {dictionary.n}")
    try:
        alpha, its = basis_pursuit(
            dictionary, w, tol=config.l1_tolerance, max_iterations=config.l1_max_iterations,
            relaxation=config.l1_relaxation, change_tol=config.l1_change_tolerance)
    except SolverNonconvergenceError as err:
        err.outcome = _outcome(dictionary, w, s, _l1_support(err.last_iterate, s),
                               err.iterations, False)
        raise
    return _outcome(dictionary, w, s, _l1_support(alpha, s), its, True)


def project_oracle(dictionary, w, s, config=DEFAULT_CONFIG, chunk=4096):
    """Exhaustive best ``s``-atom projection; ties go to the lexicographically first support."""
    w = _as_signal(dictionary, w)
    d = dictionary.d
    if not 0 <= s <= d:
        raise DimensionError(f"sparsity {s} outside [0, {d}]")
    total = comb(d, s)
    if total > config.enumeration_cap:
        raise EnumerationSizeError(f"C({d}, {s}) = {total} exceeds cap {config.enumeration_cap}")
    if s == 0:
        return _outcome(dictionary, w, s, [], 0, True)
    residuals = np.empty(total)
    combos = itertools.combinations(range(d), s)
    E = dictionary.entries
    pos = 0
    while pos < total:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.intp)
        M = np.moveaxis(E[:, block], 0, 1)  # (B, n, s)
        Q = np.linalg.qr(M, mode="reduced")[0]
        coef = np.einsum("bij,i->bj", Q.conj(), w)
        r = w[None, :] - np.einsum("bij,bj->bi", Q, coef)
        residuals[pos:pos + len(block)] = np.linalg.norm(r, axis=1)
        pos += len(block)
    tol = 1e-12 * max(float(np.linalg.norm(w)), 1.0)
    first = int(np.flatnonzero(residuals <= residuals.min() + tol)[0])
    best = next(itertools.islice(itertools.combinations(range(d), s), first, None))
    return _outcome(dictionary, w, s, best, total, True)


_DISPATCH = {
    "omp": project_omp,
    "cosamp": project_cosamp,
    "l1": project_l1,
    "oracle": project_oracle,
}


def project(dictionary, w, s, backend="omp", config=DEFAULT_CONFIG):
    """Dispatch to a projection backend by name."""
    try:
        fn = _DISPATCH[backend]
    except KeyError:
        raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}") from None
    return fn(dictionary, w, s, config)


def near_optimality_ratios(outcome, oracle):
    """``(|w - P_S w| / |w - P_opt w|, |P_S w| / |P_opt w|)`` against the oracle.

    Residuals below ``1e-12 |w|`` count as zero: two zero residuals give a
    ratio of 1, a nonzero one over a zero oracle residual gives ``inf``.
    """
    if outcome.sparsity != oracle.sparsity or not np.array_equal(outcome.target, oracle.target):
        raise MismatchedInputError("outcomes were computed for different (w, s)")
    zero = 1e-12 * max(float(np.linalg.norm(oracle.target)), 1e-300)
    r_out = outcome.residual_norm if outcome.residual_norm > zero else 0.0
    r_opt = oracle.residual_norm if oracle.residual_norm > zero else 0.0
    if r_opt == 0.0:
        C = 1.0 if r_out == 0.0 else np.inf
    else:
        C = r_out / r_opt
    p_out = float(np.linalg.norm(outcome.projected))
    p_opt = float(np.linalg.norm(oracle.projected))
    c = 1.0 if p_opt == 0.0 else p_out / p_opt
    return float(C), float(c)
