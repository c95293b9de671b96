"""Measurement ensembles, structured sparse signals, noise and recovery metrics.

All randomness comes from Philox generators keyed by integer seeds; trial
seeds are derived from ``(master_seed, *key)`` so results never depend on
the order or process in which trials run.
"""
import json
import time
from dataclasses import dataclass

import numpy as np

from .dictionary import Dictionary, SupportSet, build
from .errors import DimensionError, InfeasibleSeparationError, ZeroSignalError
from .recovery import apply_real, recover

PERFECT_SNR_DB = 100.0
NOISE_SHRINK = 1.0 - 1e-9
INSTANCE_FORMAT = "sscosamp-instance/1"


def rng_from_seed(seed):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def derive_seed(master_seed, *key):
    """Deterministic 63-bit sub-seed for ``(master_seed, *key)``."""
    state = np.random.SeedSequence([int(master_seed), *[int(v) for v in key]]).generate_state(2, np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1])) & ((1 << 63) - 1)


@dataclass(frozen=True, eq=False)
class SparseRepresentation:
    coefficients: np.ndarray
    support: SupportSet

    def __post_init__(self):
        off = np.ones(self.coefficients.shape[0], dtype=bool)
        off[self.support.as_array()] = False
        if np.any(self.coefficients[off] != 0):
            raise ValueError("coefficients must vanish off the support")

    @property
    def k(self):
        return len(self.support)

    def synthesize(self, dictionary):
        return dictionary.apply(self.coefficients)


def gaussian_matrix(m, n, seed):
    """``m x n`` matrix of i.i.d. ``N(0, 1/m)`` entries."""
    if not 1 <= m <= n:
        raise DimensionError(f"need 1 <= m <= n, got m={m}, n={n}")
    return rng_from_seed(seed).standard_normal((m, n)) / np.sqrt(m)


def _values(rng, k, values, floor):
    if values == "phase":
        out = np.exp(2j * np.pi * rng.random(k))
    elif values == "gaussian":
        out = (rng.standard_normal(k) + 1j * rng.standard_normal(k)) / np.sqrt(2)
    else:
        raise ValueError(f"unknown value model {values!r}; use 'phase' or 'gaussian'")
    if floor is not None:
        if values == "phase":
            out = out * floor
        else:
            out = out * (floor / np.abs(out).min())
    return out


def _representation(dictionary, idx, rng, values, floor):
    support = SupportSet(idx, dictionary.d)
    coef = np.zeros(dictionary.d, dtype=np.complex128)
    # values are drawn in sorted-index order
    coef[support.as_array()] = _values(rng, len(support), values, floor)
    return SparseRepresentation(coefficients=coef, support=support)


def gen_clustered(dictionary, k, seed, values="phase", floor=None):
    """``k`` cyclically consecutive atoms starting at a uniform random index."""
    if not 1 <= k <= dictionary.d:
        raise DimensionError(f"need 1 <= k <= d, got k={k}")
    rng = rng_from_seed(seed)
    start = int(rng.integers(dictionary.d))
    idx = (start + np.arange(k)) % dictionary.d
    return _representation(dictionary, idx, rng, values, floor)


def gen_separated(dictionary, k, h_min, seed, values="phase", floor=None):
    """``k`` atoms with pairwise cyclic separation ``>= h_min``.

    Atoms start on a randomly rotated grid of spacing ``d/k`` and each is
    pushed forward by a jitter in ``[0, floor(d/k) - h_min]``, which keeps
    every gap at least ``h_min``.
    """
    d = dictionary.d
    if k < 1 or h_min < 1 or k * h_min > d:
        raise InfeasibleSeparationError(f"no {k}-support of {d} columns has separation {h_min}")
    rng = rng_from_seed(seed)
    base = (np.arange(k) * d) // k
    jitter_cap = d // k - h_min
    offset = int(rng.integers(d))
    jitter = rng.integers(0, jitter_cap + 1, size=k) if jitter_cap > 0 else np.zeros(k, dtype=int)
    idx = (offset + base + jitter) % d
    rep = _representation(dictionary, idx, rng, values, floor)
    if rep.support.min_separation() < h_min or len(rep.support) != k:
        raise InfeasibleSeparationError("generated support violates the separation")  # pragma: no cover
    return rep


def add_noise(x_meas, epsilon, seed):
    """Complex Gaussian direction scaled to norm ``epsilon * (1 - 1e-9)``."""
    if epsilon < 0:
        raise ValueError(f"noise bound must be nonnegative, got {epsilon}")
    size = np.asarray(x_meas).shape[0]
    if epsilon == 0:
        return np.zeros(size, dtype=np.complex128)
    rng = rng_from_seed(seed)
    e = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return e * (epsilon * NOISE_SHRINK / np.linalg.norm(e))


def snr_db(x, x_hat):
    """``20 log10(|x| / |x - x_hat|)``; ``inf`` for an exact match."""
    x = np.asarray(x)
    nx = float(np.linalg.norm(x))
    if nx == 0:
        raise ZeroSignalError("reference signal has zero norm")
    err = float(np.linalg.norm(x - np.asarray(x_hat)))
    if err == 0:
        return np.inf
    return 20.0 * np.log10(nx / err)


@dataclass(frozen=True, eq=False)
class SensingInstance:
    """``y = A D alpha + e`` together with everything needed to regenerate it."""

    A: np.ndarray
    dictionary: Dictionary
    alpha: SparseRepresentation
    x_true: np.ndarray
    e: np.ndarray
    y: np.ndarray
    epsilon: float
    seed: int
    m: int
    structure: str
    h_min: int
    values: str
    matrix: str
    floor: float | None = None

    def to_dict(self):
        coef = self.alpha.coefficients[self.alpha.support.as_array()]
        return {
            "format": INSTANCE_FORMAT,
            "n": self.dictionary.n,
            "d": self.dictionary.d,
            "m": self.m,
            "k": self.alpha.k,
            "seed": self.seed,
            "structure": self.structure,
            "h_min": self.h_min,
            "values": self.values,
            "matrix": self.matrix,
            "epsilon": self.epsilon,
            "floor": self.floor,
            "support": list(self.alpha.support.indices),
            "coefficients": [[float(c.real), float(c.imag)] for c in coef],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")


def measurement_matrix(kind, m, n, seed):
    if kind == "gaussian":
        return gaussian_matrix(m, n, seed)
    if kind == "identity":
        if m != n:
            raise DimensionError("identity measurements need m = n")
        return np.eye(n)
    raise ValueError(f"unknown matrix kind {kind!r}")


def _sub_seeds(seed):
    # independent streams for A, the signal and the noise
    return [derive_seed(seed, i) for i in range(3)]


def make_instance(dictionary, m, k, seed, structure="separated", h_min=1, epsilon=0.0,
                  values="phase", matrix="gaussian", floor=None):
    """Generate a sensing instance; fully determined by its arguments."""
    seed_a, seed_sig, seed_noise = _sub_seeds(seed)
    A = measurement_matrix(matrix, m, dictionary.n, seed_a)
    if structure == "separated":
        alpha = gen_separated(dictionary, k, h_min, seed_sig, values, floor)
    elif structure == "clustered":
        alpha = gen_clustered(dictionary, k, seed_sig, values, floor)
    else:
        raise ValueError(f"unknown structure {structure!r}")
    return _assemble(dictionary, A, alpha, epsilon, seed, m, structure, h_min, values, matrix,
                     floor, seed_noise)


def _assemble(dictionary, A, alpha, epsilon, seed, m, structure, h_min, values, matrix, floor,
              seed_noise):
    x = alpha.synthesize(dictionary)
    clean = apply_real(A, x)
    e = add_noise(clean, epsilon, seed_noise)
    return SensingInstance(
        A=A, dictionary=dictionary, alpha=alpha, x_true=x, e=e, y=clean + e,
        epsilon=float(epsilon), seed=int(seed), m=int(m), structure=structure,
        h_min=int(h_min), values=values, matrix=matrix, floor=floor,
    )


def load_instance(source, dictionary=None):
    """Rebuild an instance from its JSON form (path, string or dict).

    ``A`` and the noise are regenerated from the seed; the support and
    coefficients are taken from the file.
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
        else:
            with open(text) as fh:
                data = json.load(fh)
    if data.get("format") != INSTANCE_FORMAT:
        raise ValueError(f"not a {INSTANCE_FORMAT} file")
    if dictionary is None or dictionary.shape != (data["n"], data["d"]):
        dictionary = build(data["n"], data["d"])
    seed = int(data["seed"])
    seed_a, _, seed_noise = _sub_seeds(seed)
    A = measurement_matrix(data["matrix"], data["m"], dictionary.n, seed_a)
    coef = np.zeros(dictionary.d, dtype=np.complex128)
    support = SupportSet(data["support"], dictionary.d)
    coef[support.as_array()] = [complex(re, im) for re, im in data["coefficients"]]
    alpha = SparseRepresentation(coefficients=coef, support=support)
    return _assemble(dictionary, A, alpha, data["epsilon"], seed, data["m"], data["structure"],
                     data["h_min"], data["values"], data["matrix"], data.get("floor"), seed_noise)


@dataclass(frozen=True)
class RecoveryReport:
    snr_db: float
    perfect: bool
    iterations: int
    residual_history: tuple
    support_recovered: bool
    wall_time: float


def evaluate(instance, x_hat, state, wall_time=0.0):
    snr = snr_db(instance.x_true, x_hat)
    return RecoveryReport(
        snr_db=snr,
        perfect=bool(snr > PERFECT_SNR_DB),
        iterations=state.iteration,
        residual_history=tuple(state.residual_history),
        support_recovered=state.support == instance.alpha.support,
        wall_time=wall_time,
    )


def run_instance(instance, config):
    """Run SSCoSaMP on ``instance`` and score it."""
    t0 = time.perf_counter()
    x_hat, state = recover(instance.A, instance.dictionary, instance.y, config)
    return evaluate(instance, x_hat, state, time.perf_counter() - t0), x_hat, state
