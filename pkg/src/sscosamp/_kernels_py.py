"""Pure-Python (numpy) versions of the hot kernels.

Same call signatures and results as the compiled ``_kernels`` extension;
used when the extension is not built or ``SSCOSAMP_PURE_PYTHON`` is set.

``w`` is always the cyclic gram-magnitude profile of a dictionary:
``w[h] = |(D*D)_{p, p+h}|`` for ``h`` in ``[0, d)``, symmetric in ``h -> d-h``.
"""
import itertools

import numpy as np

_NEG = -np.inf


def _chain_dp(w, lo, hi, h, count):
    """Max total weight of ``count`` points in ``[lo, hi]`` with gaps >= h."""
    if count == 0:
        return 0.0
    if hi < lo:
        return _NEG
    vals = w[lo:hi + 1]
    best = vals.copy()
    for _ in range(count - 1):
        pm = np.maximum.accumulate(best)
        new = np.full_like(best, _NEG)
        if h < best.size:
            new[h:] = vals[h:] + pm[:-h]
        best = new
    return float(best.max())


def eta_dp(w, h, k):
    """Worst row off-diagonal sum over supports with min separation >= h.

    The gram magnitudes only depend on cyclic offsets, so the worst row can
    be rotated to index 0; the remaining k-1 atoms then sit on the line
    ``[h, d-h]`` with gaps >= h.
    """
    w = np.asarray(w, dtype=np.float64)
    d = w.shape[0]
    if k <= 1:
        return 0.0
    return _chain_dp(w, h, d - h, h, k - 1)


def eta_prime_dp(w, h, k):
    """Worst off-support column correlation sum, support separation >= h.

    The outside column is rotated to index 0 and the support lives in
    ``[1, d-1]``.  Only supports whose first atom is closer than ``h`` to 0
    feel the wrap-around gap, so those starts are solved one by one.
    """
    w = np.asarray(w, dtype=np.float64)
    d = w.shape[0]
    if d < 2:
        return 0.0
    if k <= 1:
        return float(w[1:].max())
    best = _chain_dp(w, h, d - 1, h, k)
    if h <= 1:
        return best
    starts = np.arange(1, h)
    q = np.arange(d)
    cur = np.full((starts.size, d), _NEG)
    cur[np.arange(starts.size), starts] = w[starts]
    for _ in range(k - 1):
        pm = np.maximum.accumulate(cur, axis=1)
        new = np.full_like(cur, _NEG)
        new[:, h:] = w[h:] + pm[:, :-h]
        cur = new
    allowed = q[None, :] <= (d - h + starts)[:, None]
    cur = np.where(allowed, cur, _NEG)
    return float(max(best, cur.max()))


def enumerate_separated(w, h, k):
    """Brute-force (eta, eta_prime, count) over all separated k-supports."""
    w = np.asarray(w, dtype=np.float64)
    d = w.shape[0]
    idx = np.arange(d)
    circ = w[(idx[:, None] - idx[None, :]) % d]
    eta = _NEG
    eta_p = _NEG
    count = 0
    for omega in itertools.combinations(range(d), k):
        if k >= 2:
            gaps = np.diff(omega)
            if gaps.min() < h or omega[0] + d - omega[-1] < h:
                continue
        count += 1
        col_sums = circ[:, list(omega)].sum(axis=1)
        inside = np.zeros(d, dtype=bool)
        inside[list(omega)] = True
        # row sums inside the support exclude the unit diagonal
        row = (col_sums[inside] - w[0]).max() if k >= 2 else 0.0
        eta = max(eta, row)
        if not inside.all():
            eta_p = max(eta_p, col_sums[~inside].max())
    if count == 0:
        return _NEG, _NEG, 0
    if eta_p == _NEG:
        eta_p = 0.0
    return float(eta), float(eta_p), count


def dr_update(z, a, gamma, relax):
    """One reflected soft-threshold step of the basis pursuit splitting.

    Returns ``b = soft(2a - z, gamma)`` and updates ``z += relax * (b - a)``
    in place.
    """
    t = 2.0 * a - z
    mag = np.abs(t)
    scale = np.maximum(1.0 - gamma / np.maximum(mag, 1e-300), 0.0)
    b = t * scale
    z += relax * (b - a)
    return b
