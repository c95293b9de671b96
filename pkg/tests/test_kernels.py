"""Both kernel implementations against plain enumeration."""
import itertools

import numpy as np
import pytest

from sscosamp.dictionary import build


def reference(w, h, k):
    d = len(w)
    eta, eta_p, count = 0.0, 0.0, 0
    for combo in itertools.combinations(range(d), k):
        gaps = np.diff(np.r_[combo, combo[0] + d]) if k > 1 else [d]
        if min(gaps) < h:
            continue
        count += 1
        idx = np.array(combo)
        for p in idx:
            eta = max(eta, sum(w[(q - p) % d] for q in idx if q != p))
        for p in set(range(d)) - set(combo):
            eta_p = max(eta_p, sum(w[(q - p) % d] for q in idx))
    return eta, eta_p, count


CASES = [(n, d, k, h) for n, d in [(8, 16), (4, 12), (6, 18)]
         for k in (1, 2, 3, 4) for h in (1, 2, 3, 4) if k * h <= d]


@pytest.mark.parametrize("n,d,k,h", CASES)
def test_dp_matches_enumeration(kernels, n, d, k, h):
    w = np.ascontiguousarray(build(n, d).gram_profile)
    eta, eta_p, count = reference(w, h, k)
    assert kernels.eta_dp(w, h, k) == pytest.approx(eta, abs=1e-12)
    assert kernels.eta_prime_dp(w, h, k) == pytest.approx(eta_p, abs=1e-12)
    e2, ep2, c2 = kernels.enumerate_separated(w, h, k)
    assert (e2, ep2, c2) == (pytest.approx(eta, abs=1e-12), pytest.approx(eta_p, abs=1e-12), count)


def test_dp_random_profiles(kernels):
    rng = np.random.default_rng(3)
    for _ in range(20):
        d = int(rng.integers(6, 14))
        w = rng.random(d)
        w[0] = 1.0
        w[1:] = (w[1:] + w[1:][::-1]) / 2
        k = int(rng.integers(1, 4))
        h = int(rng.integers(1, d // k + 1))
        eta, eta_p, _ = reference(w, h, k)
        assert kernels.eta_dp(w, h, k) == pytest.approx(eta, abs=1e-12)
        assert kernels.eta_prime_dp(w, h, k) == pytest.approx(eta_p, abs=1e-12)


def test_dr_update(kernels):
    rng = np.random.default_rng(0)
    z = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    a = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    gamma, relax = 0.7, 1.8
    v = 2 * a - z
    mag = np.abs(v)
    b_ref = np.where(mag > gamma, v * (1 - gamma / np.maximum(mag, 1e-300)), 0)
    z_ref = z + relax * (b_ref - a)
    z_in = z.copy()
    b = kernels.dr_update(z_in, a, gamma, relax)
    assert np.allclose(b, b_ref, atol=1e-14)
    assert np.allclose(z_in, z_ref, atol=1e-14)


def test_implementations_agree_at_scale(kernels):
    from sscosamp import _kernels_py
    w = np.ascontiguousarray(build(256, 1024).gram_profile)
    for k, h in [(4, 63), (8, 16), (8, 107), (16, 6)]:
        assert kernels.eta_dp(w, h, k) == pytest.approx(_kernels_py.eta_dp(w, h, k), abs=1e-12)
        assert kernels.eta_prime_dp(w, h, k) == pytest.approx(
            _kernels_py.eta_prime_dp(w, h, k), abs=1e-12)
