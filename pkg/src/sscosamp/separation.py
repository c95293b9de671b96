"""Separation analysis for supports in an overcomplete DFT dictionary.

Dominance factors ``eta`` (worst off-diagonal row sum of the support gram
matrix) and ``eta_prime`` (worst correlation sum from an outside column),
the Gershgorin restricted-isometry bound they imply, the OMP exact-recovery
magnitude threshold and the ERC constant.

Three modes compute the dominance factors:

``exact``
    the exact worst case over all supports with minimum cyclic separation
    ``h_min``, found by dynamic programming over cyclic placements.
``envelope``
    closed-form worst-case recipes using the csc coherence envelope.
``brute``
    exhaustive enumeration of separated supports (small ``d`` only).
"""
from dataclasses import dataclass
from math import ceil, comb, floor

import numpy as np

from . import _core
from .dictionary import SupportSet, envelope
from .errors import (
    EnumerationSizeError,
    HypothesisViolatedError,
    IndexRangeError,
    InfeasibleSeparationError,
    SingularSubmatrixError,
)

DEFAULT_ENUMERATION_CAP = 2_000_000
SINGULAR_TOL = 1e-10

_MODE_ALIASES = {
    "exact": "exact",
    "exact-gram": "exact",
    "envelope": "envelope",
    "brute": "brute",
    "brute-force": "brute",
}


def normalize_mode(mode):
    try:
        return _MODE_ALIASES[str(mode).lower()]
    except KeyError:
        raise ValueError(f"unknown bound mode {mode!r}; use exact, envelope or brute") from None


@dataclass(frozen=True)
class SeparationProfile:
    h_min: int
    k: int
    eta: float
    eta_prime: float
    mode: str
    # False records an envelope-mode value pair with eta > eta_prime
    ordered: bool = True

    @property
    def delta_bound(self):
        return self.eta

    @property
    def B(self):
        return b_ratio(self.eta, self.eta_prime)

    @property
    def theorem_hypothesis(self):
        return self.B < 1


@dataclass(frozen=True)
class DominanceReport:
    support: SupportSet
    delta_per_row: tuple
    well_separated: bool
    lambda_min: float
    off_diag_max_row_sum: float


def well_separated(dictionary, support):
    """Strict diagonal dominance test of ``D_S^* D_S``."""
    if not isinstance(support, SupportSet):
        support = SupportSet(support, dictionary.d)
    if len(support) == 0:
        raise IndexRangeError("support must be nonempty")
    if support.d != dictionary.d:
        raise IndexRangeError("support modulus does not match the dictionary")
    G = dictionary.gram_submatrix(support)
    mags = np.abs(G)
    off = mags.sum(axis=1) - np.diag(mags)
    deltas = np.real(np.diag(G)) - off
    lam = float(np.linalg.eigvalsh(G)[0])
    return DominanceReport(
        support=support,
        delta_per_row=tuple(float(v) for v in deltas),
        well_separated=bool(np.all(deltas > 0)),
        lambda_min=lam,
        off_diag_max_row_sum=float(off.max()),
    )


def _check_feasible(dictionary, h_min, k):
    if h_min < 1 or k < 1:
        raise InfeasibleSeparationError(f"need h_min >= 1 and k >= 1, got h_min={h_min}, k={k}")
    if h_min * k > dictionary.d:
        raise InfeasibleSeparationError(
            f"no {k}-support of {dictionary.d} columns has separation {h_min}")


def _brute(dictionary, h_min, k, cap):
    size = comb(dictionary.d, k)
    if size > cap:
        raise EnumerationSizeError(f"C({dictionary.d}, {k}) = {size} exceeds cap {cap}")
    eta, eta_p, count = _core.enumerate_separated(
        np.ascontiguousarray(dictionary.gram_profile), int(h_min), int(k))
    if count == 0:
        raise InfeasibleSeparationError(f"no separated supports for h_min={h_min}, k={k}")
    return eta, eta_p


def envelope_eta(n, d, h_min, k):
    """``2 * sum_{j <= ceil((k-1)/2)} f(j h_min)``: equally spaced worst row."""
    terms = ceil((k - 1) / 2)
    return float(2.0 * sum(envelope(n, d, j * h_min) for j in range(1, terms + 1)))


def envelope_eta_prime(n, d, h_min, k):
    """``f(1) + sum_{j=1}^{r} f(j h + 1) + f(j h - 1)`` with ``r = floor((k+1)/2)``."""
    r = floor((k + 1) / 2)
    total = envelope(n, d, 1)
    for j in range(1, r + 1):
        total += envelope(n, d, j * h_min + 1) + envelope(n, d, j * h_min - 1)
    return float(total)


def _factors(dictionary, h_min, k, mode, cap):
    mode = normalize_mode(mode)
    _check_feasible(dictionary, h_min, k)
    if mode == "envelope":
        return mode, envelope_eta(dictionary.n, dictionary.d, h_min, k), \
            envelope_eta_prime(dictionary.n, dictionary.d, h_min, k)
    if mode == "brute":
        eta, eta_p = _brute(dictionary, h_min, k, cap)
        return mode, eta, eta_p
    w = np.ascontiguousarray(dictionary.gram_profile)
    return mode, float(_core.eta_dp(w, int(h_min), int(k))), \
        float(_core.eta_prime_dp(w, int(h_min), int(k)))


def eta_bound(dictionary, h_min, k, mode="exact", cap=DEFAULT_ENUMERATION_CAP):
    """Dominance factors for supports of size ``k`` with separation ``>= h_min``."""
    mode, eta, eta_p = _factors(dictionary, int(h_min), int(k), mode, cap)
    return SeparationProfile(
        h_min=int(h_min), k=int(k), eta=eta, eta_prime=eta_p, mode=mode,
        ordered=bool(eta <= eta_p + 1e-12),
    )


def eta_prime_bound(dictionary, h_min, k, mode="exact", cap=DEFAULT_ENUMERATION_CAP):
    return _factors(dictionary, int(h_min), int(k), mode, cap)[2]


def rip_bound(dictionary, h_min, k, mode="exact", cap=DEFAULT_ENUMERATION_CAP):
    """Restricted isometry bound ``delta_k <= eta`` for separated supports.

    Any ``alpha`` supported on ``k`` atoms with pairwise cyclic separation
    ``>= h_min`` satisfies
    ``(1 - delta) |alpha|^2 <= |D alpha|^2 <= (1 + delta) |alpha|^2``
    with ``delta = profile.delta_bound`` (Gershgorin on the support gram).
    """
    return eta_bound(dictionary, h_min, k, mode, cap)


def b_ratio(eta, eta_prime):
    """``eta' / (1 - eta)``, or ``inf`` once ``eta >= 1``."""
    if eta >= 1:
        return np.inf
    return float(eta_prime / (1.0 - eta))


def omp_threshold(eta, eta_prime, epsilon):
    """Smallest coefficient magnitude OMP needs for exact support recovery.

    ``2 epsilon / (1 - eta - eta')``; requires ``eta + eta' < 1``.
    """
    if epsilon < 0:
        raise ValueError(f"noise bound must be nonnegative, got {epsilon}")
    gap = 1.0 - eta - eta_prime
    if not gap > 0:
        raise HypothesisViolatedError(
            f"eta + eta' = {eta + eta_prime:.6g} >= 1; threshold undefined")
    return 2.0 * epsilon / gap


def erc_constant(dictionary, support):
    """``max_{i not in S} |pinv(D_S) phi_i|_1``."""
    if not isinstance(support, SupportSet):
        support = SupportSet(support, dictionary.d)
    G = dictionary.gram_submatrix(support)
    lam = float(np.linalg.eigvalsh(G)[0])
    if lam <= SINGULAR_TOL:
        raise SingularSubmatrixError(f"support gram has lambda_min = {lam:.3g}")
    idx = support.as_array()
    off = np.setdiff1d(np.arange(dictionary.d), idx)
    if off.size == 0:
        return 0.0
    # pinv(D_S) phi_i = G^{-1} D_S^* phi_i
    cross = dictionary.gram_row[(off[None, :] - idx[:, None]) % dictionary.d]
    coef = np.linalg.solve(G, cross)
    return float(np.abs(coef).sum(axis=0).max())
