import numpy as np
import pytest

from sscosamp.dictionary import SupportSet, build, cyclic_distance, envelope
from sscosamp.errors import DimensionError, IndexRangeError


def dense_gram_entry(n, d, h):
    j = np.arange(n)
    return abs(np.exp(-2j * np.pi * j * h / d).sum()) / n


def test_orthonormal_gram_is_identity():
    D = build(4, 4)
    assert np.allclose(D.entries.conj().T @ D.entries, np.eye(4), atol=1e-12)


def test_overcomplete_columns_unit_norm(big):
    assert big.shape == (256, 1024)
    assert np.allclose(np.linalg.norm(big.entries, axis=0), 1.0, atol=1e-12)


def test_first_column_constant(small):
    assert np.allclose(small.column(0), np.ones(8) / np.sqrt(8), atol=0, rtol=1e-15)


def test_entry_formula(small):
    j, k = np.meshgrid(np.arange(8), np.arange(16), indexing="ij")
    assert np.allclose(small.entries, np.exp(-2j * np.pi * j * k / 16) / np.sqrt(8), atol=1e-14)


@pytest.mark.parametrize("n,d", [(0, 4), (4, 0), (8, 4)])
def test_build_rejects_bad_dims(n, d):
    with pytest.raises(DimensionError):
        build(n, d)


def test_entries_are_read_only(small):
    with pytest.raises(ValueError):
        small.entries[0, 0] = 0


def test_gram_magnitude_examples(big):
    assert big.gram_magnitude(0) == 1.0
    assert big.gram_magnitude(4) == 0.0
    assert big.gram_magnitude(2) == pytest.approx(0.63662, abs=1e-5)
    assert big.gram_magnitude(1) == pytest.approx(0.90032, abs=1e-5)


def test_gram_magnitude_matches_geometric_series(big):
    for h in [1, 2, 3, 5, 17, 100, 511, 512, 1000]:
        assert big.gram_magnitude(h) == pytest.approx(dense_gram_entry(256, 1024, h), abs=1e-12)


def test_gram_magnitude_range(small):
    with pytest.raises(IndexRangeError):
        small.gram_magnitude(16)
    with pytest.raises(IndexRangeError):
        small.gram_magnitude(-1)


def test_envelope_examples(big):
    assert big.coherence_envelope(512) == pytest.approx(1 / 256, rel=1e-14)
    assert big.coherence_envelope(2) == pytest.approx(0.63662, abs=1e-5)
    assert big.coherence_envelope(1) == pytest.approx(1.27324, abs=1e-5)
    with pytest.raises(IndexRangeError):
        big.coherence_envelope(0)
    assert envelope(256, 1024, 1024) == np.inf


def test_envelope_bounds_gram(big):
    h = np.arange(1, 1024)
    env = np.array([big.coherence_envelope(int(v)) for v in h])
    assert np.all(big.gram_profile[1:] <= env + 1e-12)


def test_gram_symmetry_and_zeros(big):
    g = big.gram_profile
    assert np.array_equal(g[1:], g[1:][::-1])
    zeros = np.flatnonzero(g == 0)
    assert np.array_equal(zeros, np.arange(4, 1024, 4))


def test_orthonormal_profile_vanishes():
    assert np.all(build(8, 8).gram_profile[1:] == 0)


def test_gram_row_matches_dense(small):
    G = small.entries.conj().T @ small.entries
    S = SupportSet([0, 3, 7, 12], 16)
    assert np.allclose(small.gram_submatrix(S), G[np.ix_(S.as_array(), S.as_array())], atol=1e-14)


def test_fft_paths_match_dense(big):
    rng = np.random.default_rng(1)
    a = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
    x = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    assert np.allclose(big.apply(a), big.entries @ a, atol=1e-10)
    assert np.allclose(big.adjoint(x), big.entries.conj().T @ x, atol=1e-10)


def test_cyclic_distance():
    assert cyclic_distance(0, 1023, 1024) == 1
    assert cyclic_distance(5, 5, 1024) == 0
    assert cyclic_distance(10, 200, 1024) == 190
    with pytest.raises(IndexRangeError):
        cyclic_distance(0, 1024, 1024)


def test_support_set():
    S = SupportSet([7, 1, 4], 8)
    assert S.indices == (1, 4, 7)
    assert S.min_separation() == 2
    assert SupportSet([3], 8).min_separation() == 8
    assert S.union(SupportSet([0], 8)).indices == (0, 1, 4, 7)
    with pytest.raises(IndexRangeError):
        SupportSet([1, 1], 8)
    with pytest.raises(IndexRangeError):
        SupportSet([8], 8)


def test_f_lo(big):
    assert big.f_lo == 128
