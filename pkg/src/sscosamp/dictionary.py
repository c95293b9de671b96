"""Overcomplete DFT dictionaries and cyclic index supports."""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.fft

from .errors import DimensionError, IndexRangeError

# below this, sin(pi h / d) is treated as zero (column paired with itself)
_SIN_GUARD = 1e-15


def cyclic_distance(p, q, d):
    """Distance between column indices ``p`` and ``q`` measured modulo ``d``."""
    if d < 1:
        raise IndexRangeError(f"modulus must be positive, got {d}")
    for v in (p, q):
        if not 0 <= v < d:
            raise IndexRangeError(f"index {v} outside [0, {d})")
    gap = abs(int(p) - int(q))
    return min(gap, d - gap)


@dataclass(frozen=True)
class SupportSet:
    """Sorted distinct column indices in ``[0, d)``."""

    indices: tuple
    d: int

    def __init__(self, indices, d):
        d = int(d)
        idx = tuple(sorted(int(i) for i in indices))
        if d < 1:
            raise IndexRangeError(f"modulus must be positive, got {d}")
        if len(set(idx)) != len(idx):
            raise IndexRangeError(f"duplicate indices in {idx}")
        if idx and (idx[0] < 0 or idx[-1] >= d):
            raise IndexRangeError(f"indices {idx} outside [0, {d})")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "d", d)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, item):
        return item in self.indices

    def as_array(self):
        return np.asarray(self.indices, dtype=np.intp)

    def union(self, other):
        if other.d != self.d:
            raise DimensionError("supports over different dictionaries")
        return SupportSet(set(self.indices) | set(other.indices), self.d)

    def min_separation(self):
        """Smallest pairwise cyclic distance; ``d`` for fewer than two atoms."""
        if len(self.indices) < 2:
            return self.d
        idx = self.indices
        gaps = [b - a for a, b in zip(idx, idx[1:])]
        gaps.append(idx[0] + self.d - idx[-1])
        return min(gaps)


@dataclass(frozen=True, eq=False)
class Dictionary:
    """The ``n x d`` overcomplete DFT, ``D[j, k] = exp(-2 pi i j k / d) / sqrt(n)``.

    The dense matrix is materialized once and marked read-only.  ``apply`` and
    ``adjoint`` use FFTs and agree with the dense products to ~1e-13.
    """

    n: int
    d: int
    entries: np.ndarray = field(repr=False)

    @property
    def f_lo(self):
        """Low-pass band edge ``n / 2`` of the rows, in frequency samples."""
        return self.n / 2

    @property
    def shape(self):
        return (self.n, self.d)

    @cached_property
    def gram_profile(self):
        """``w[h] = |(D*D)_{p, p+h}|`` for every cyclic offset ``h``."""
        h = np.arange(self.d)
        # fold to the shorter way round so w[h] == w[d - h] bit for bit
        h = np.minimum(h, self.d - h)
        s_den = np.sin(np.pi * h / self.d)
        # reduce n*h mod d first so exact orthogonality gives an exact zero
        s_num = np.sin(np.pi * ((self.n * h) % self.d) / self.d)
        out = np.ones(self.d)
        ok = np.abs(s_den) >= _SIN_GUARD
        out[ok] = np.abs(s_num[ok]) / (self.n * np.abs(s_den[ok]))
        out.flags.writeable = False
        return out

    @cached_property
    def gram_row(self):
        """Complex gram row: ``(D*D)_{p, q} = gram_row[(q - p) % d]``."""
        row = scipy.fft.fft(np.r_[np.ones(self.n), np.zeros(self.d - self.n)]) / self.n
        row.flags.writeable = False
        return row

    def column(self, k):
        if not 0 <= k < self.d:
            raise IndexRangeError(f"column {k} outside [0, {self.d})")
        return self.entries[:, k]

    def columns(self, support):
        idx = support.as_array() if isinstance(support, SupportSet) else np.asarray(support, dtype=np.intp)
        return self.entries[:, idx]

    def gram_submatrix(self, support):
        """``D_S^* D_S`` from the closed-form gram row."""
        idx = support.as_array() if isinstance(support, SupportSet) else np.asarray(support, dtype=np.intp)
        return self.gram_row[(idx[None, :] - idx[:, None]) % self.d]

    def apply(self, alpha):
        """``D @ alpha`` (accepts a trailing-axis batch)."""
        alpha = np.asarray(alpha)
        if alpha.shape[-1] != self.d:
            raise DimensionError(f"expected {self.d} coefficients, got {alpha.shape[-1]}")
        return scipy.fft.fft(alpha, axis=-1)[..., :self.n] / np.sqrt(self.n)

    def adjoint(self, x):
        """``D^* @ x`` (accepts a trailing-axis batch)."""
        x = np.asarray(x)
        if x.shape[-1] != self.n:
            raise DimensionError(f"expected {self.n} samples, got {x.shape[-1]}")
        return scipy.fft.ifft(x, n=self.d, axis=-1) * (self.d / np.sqrt(self.n))

    def gram_magnitude(self, h):
        """``|(D*D)_{p, p+h}|``; depends only on the offset ``h``."""
        if not 0 <= h < self.d:
            raise IndexRangeError(f"offset {h} outside [0, {self.d})")
        return float(self.gram_profile[int(h)])

    def coherence_envelope(self, h):
        """``1 / (n sin(pi h / d))``, an upper bound on ``gram_magnitude(h)``."""
        if not 1 <= h < self.d:
            raise IndexRangeError(f"envelope offset {h} outside [1, {self.d})")
        return envelope(self.n, self.d, h)


def envelope(n, d, h):
    """Csc coherence envelope, periodic in ``h`` with period ``d``; inf at multiples of ``d``."""
    s = abs(np.sin(np.pi * (h % d) / d))
    if s < _SIN_GUARD:
        return np.inf
    return float(1.0 / (n * s))


def build(n, d):
    """Build the ``n x d`` overcomplete DFT dictionary (``d >= n >= 1``)."""
    n, d = int(n), int(d)
    if n < 1 or d < 1:
        raise DimensionError(f"dimensions must be positive, got n={n}, d={d}")
    if d < n:
        raise DimensionError(f"need d >= n, got n={n}, d={d}")
    j = np.arange(n)[:, None]
    k = np.arange(d)[None, :]
    # exact integer phase reduction keeps entries accurate for large j*k
    entries = np.exp(-2j * np.pi * ((j * k) % d) / d) / np.sqrt(n)
    entries.flags.writeable = False
    return Dictionary(n=n, d=d, entries=entries)
