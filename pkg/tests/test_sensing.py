import json

import numpy as np
import pytest

from sscosamp.dictionary import build
from sscosamp.errors import DimensionError, InfeasibleSeparationError, ZeroSignalError
from sscosamp.recovery import RecoveryConfig
from sscosamp.sensing import (
    SparseRepresentation,
    add_noise,
    derive_seed,
    gaussian_matrix,
    gen_clustered,
    gen_separated,
    load_instance,
    make_instance,
    run_instance,
    snr_db,
)
from sscosamp.separation import eta_bound, well_separated


def test_gaussian_deterministic():
    assert np.array_equal(gaussian_matrix(16, 32, 5), gaussian_matrix(16, 32, 5))


def test_gaussian_column_norms():
    norms = np.linalg.norm(gaussian_matrix(128, 256, 1), axis=0)
    assert 0.85 <= norms.mean() <= 1.15


def test_gaussian_square_invertible():
    assert np.linalg.cond(gaussian_matrix(256, 256, 2)) < 1e8


def test_gaussian_dims():
    with pytest.raises(DimensionError):
        gaussian_matrix(33, 32, 0)


def test_clustered(big):
    one = gen_clustered(big, 1, 3)
    assert one.k == 1
    rep = gen_clustered(big, 8, 4)
    idx = np.array(rep.support.indices)
    start = next(i for i in idx if (i - 1) % 1024 not in rep.support)
    assert sorted((start + np.arange(8)) % 1024) == list(idx)


def test_clustered_not_separated(big):
    for seed in range(5):
        for k in (3, 5, 8):
            assert not well_separated(big, gen_clustered(big, k, seed).support).well_separated


def test_separated(big):
    assert gen_separated(big, 1, 1, 0).k == 1
    for seed in range(20):
        assert gen_separated(big, 8, 64, seed).support.min_separation() >= 64
    eq = gen_separated(big, 8, 128, 7).support.indices
    assert set(np.diff(eq)) == {128}
    with pytest.raises(InfeasibleSeparationError):
        gen_separated(big, 8, 129, 0)


def test_separated_is_well_separated_when_eta_below_one(big):
    assert eta_bound(big, 16, 8).eta < 1
    for seed in range(20):
        assert well_separated(big, gen_separated(big, 8, 16, seed).support).well_separated


def test_floor(big):
    rep = gen_separated(big, 8, 16, 1, values="gaussian", floor=0.3)
    assert np.abs(rep.coefficients[rep.support.as_array()]).min() == pytest.approx(0.3, rel=1e-14)
    rep = gen_separated(big, 8, 16, 1, values="phase", floor=0.3)
    assert np.allclose(np.abs(rep.coefficients[rep.support.as_array()]), 0.3, rtol=1e-14)


def test_representation_invariant(small):
    from sscosamp.dictionary import SupportSet
    coef = np.zeros(16, complex)
    coef[3] = 1
    with pytest.raises(ValueError):
        SparseRepresentation(coef, SupportSet([4], 16))


def test_snr():
    x = np.array([3.0, 4.0])
    assert snr_db(x, x) == np.inf
    assert snr_db(x, np.zeros(2)) == 0.0
    assert snr_db(x, x * (1 - 1e-5)) == pytest.approx(100.0, abs=1e-9)
    with pytest.raises(ZeroSignalError):
        snr_db(np.zeros(2), np.zeros(2))


def test_noise():
    assert not add_noise(np.ones(5), 0.0, 1).any()
    e = add_noise(np.ones(64), 1e-3, 2)
    assert np.linalg.norm(e) == pytest.approx(1e-3, abs=1e-12)
    assert np.linalg.norm(e) < 1e-3
    assert np.array_equal(e, add_noise(np.ones(64), 1e-3, 2))


def test_derive_seed_independent_of_order():
    a = [derive_seed(7, i) for i in range(5)]
    b = [derive_seed(7, i) for i in reversed(range(5))][::-1]
    assert a == b and len(set(a)) == 5


def test_instance_invariants_and_roundtrip(big, tmp_path):
    inst = make_instance(big, 64, 8, 9, structure="separated", h_min=32, epsilon=1e-3)
    assert np.linalg.norm(inst.e) <= 1e-3 + 1e-12
    assert np.allclose(inst.y, inst.A @ inst.x_true.real + 1j * (inst.A @ inst.x_true.imag)
                       + inst.e, atol=1e-12)
    path = tmp_path / "inst.json"
    inst.save(path)
    data = json.loads(path.read_text())
    assert data["support"] == list(inst.alpha.support.indices)
    again = load_instance(str(path))
    assert np.array_equal(again.y, inst.y)
    assert np.array_equal(again.alpha.coefficients, inst.alpha.coefficients)
    assert load_instance(inst.to_json()).seed == 9


def test_run_instance_report(big):
    inst = make_instance(big, 256, 8, 1, structure="separated", h_min=16)
    report, x, state = run_instance(inst, RecoveryConfig(k=8))
    assert report.perfect == (report.snr_db > 100)
    assert report.support_recovered
    assert report.residual_history == tuple(state.residual_history)
