"""Finite-size empirical oracle for the extreme sparse singular values.

Samples m x n standard Gaussian matrices, walks supports of size k
(exhaustively when C(n, k) fits the budget, otherwise a deterministic
sample), and records

    uric = max over supports of sigma_max(A[:, S]) / sqrt(m)
    lric = min over supports of sigma_min(A[:, S]) / sqrt(m)

per matrix trial.  The extremes sandwich the theoretical bounds at
finite n and are the package's ground truth for acceptance checks.

Randomness is counter-based: every matrix entry is a pure function of
(seed, trial, row, col) through a splitmix64-style mixer feeding a
Box-Muller transform.  Trials are therefore reproducible independently
of evaluation order and safe to fan out.

Per-support extreme singular values come from the k x k Gram form of
the submatrix (symmetric PSD eigenproblem), evaluated in bulk across
supports; the Gram matrices are gathered from a single precomputed
A^T A per trial.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
# Stream separators for the two Box-Muller uniforms.
_STREAM_A = 0x243F6A8885A308D3
_STREAM_B = 0x13198A2E03707344

MODE_EXHAUSTIVE = "exhaustive"
MODE_SAMPLED = "sampled"


def _mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z + np.uint64(_GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def _trial_base(seed: int, trial: int) -> int:
    return _mix64(_mix64(seed & _MASK64) ^ _mix64(trial & _MASK64))


def _entry_normals(seed: int, trial: int, m: int, n: int) -> np.ndarray:
    """m x n standard normals keyed per entry by (seed, trial, row, col)."""
    base = np.uint64(_trial_base(seed, trial))
    rows = np.arange(m, dtype=np.uint64)[:, None]
    cols = np.arange(n, dtype=np.uint64)[None, :]
    with np.errstate(over="ignore"):
        key = _mix64_array((rows << np.uint64(32) | cols) ^ base)
        a = _mix64_array(key ^ np.uint64(_STREAM_A))
        b = _mix64_array(key ^ np.uint64(_STREAM_B))
    # 53-bit uniforms offset into (0, 1) so log never sees zero.
    u1 = ((a >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    u2 = ((b >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


@dataclass(frozen=True)
class GaussianMatrix:
    """An m x n matrix of i.i.d. standard normals, reproducible from its key."""

    m: int
    n: int
    seed: int
    trial: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if not 0 < self.m < self.n:
            raise ValueError(f"requires 0 < m < n, got m={self.m}, n={self.n}")
        if self.entries.shape != (self.m, self.n):
            raise ValueError(f"entries shape {self.entries.shape} != ({self.m}, {self.n})")


@dataclass(frozen=True)
class SupportSet:
    """Strictly increasing 0-based column indices of one sparse support."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.indices:
            raise ValueError("support must be nonempty")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"indices must be strictly increasing, got {self.indices}")
        if self.indices[0] < 0:
            raise ValueError(f"indices must be nonnegative, got {self.indices}")


@dataclass(frozen=True)
class EmpiricalEstimate:
    """Across-trial statistics of one normalized extreme.

    In sampled mode the per-trial uric values are lower bounds on the
    exhaustive extreme and the lric values upper bounds (max/min over a
    subset of supports).
    """

    quantity: str  # "uric" | "lric"
    mean: float
    stddev: float
    trials: int
    mode: str  # MODE_EXHAUSTIVE | MODE_SAMPLED
    supports_per_trial: int
    per_trial: tuple[float, ...]


def sample_matrix(m: int, n: int, seed: int, trial: int = 0) -> GaussianMatrix:
    """Draw the (seed, trial)-keyed Gaussian matrix and sanity-check it.

    The entries must look like standard normals in bulk: sample mean
    within 4/sqrt(mn) and sample variance within 1 +- 4*sqrt(2/(mn)).
    A violation indicates a generator defect, not an unlucky draw, and
    raises ArithmeticError.
    """
    if not 0 < m < n:
        raise ValueError(f"sample_matrix requires 0 < m < n, got m={m}, n={n}")
    entries = _entry_normals(seed, trial, m, n)
    entries.setflags(write=False)
    count = m * n
    mean = float(entries.mean())
    var = float(entries.var())
    if abs(mean) > 4.0 / math.sqrt(count):
        raise ArithmeticError(f"generator sanity check failed: mean {mean} at m={m}, n={n}")
    if abs(var - 1.0) > 4.0 * math.sqrt(2.0 / count):
        raise ArithmeticError(f"generator sanity check failed: variance {var} at m={m}, n={n}")
    return GaussianMatrix(m=m, n=n, seed=seed, trial=trial, entries=entries)


def extremal_singular(matrix: GaussianMatrix, support: SupportSet) -> tuple[float, float]:
    """(sigma_min, sigma_max) of the column submatrix on one support.

    Computed from the eigenvalues of the k x k Gram form, which is
    symmetric PSD; tiny negative eigenvalues from rounding are clamped.
    """
    idx = np.asarray(support.indices, dtype=np.intp)
    if idx[-1] >= matrix.n:
        raise ValueError(f"support {support.indices} out of range for n={matrix.n}")
    sub = matrix.entries[:, idx]
    eigs = np.linalg.eigvalsh(sub.T @ sub)
    return math.sqrt(max(float(eigs[0]), 0.0)), math.sqrt(max(float(eigs[-1]), 0.0))


def _sample_support(n: int, k: int, base: int, counter: int) -> tuple[int, ...]:
    """Floyd's uniform k-subset of {0..n-1}, keyed by (base, counter)."""
    state = _mix64(base ^ _mix64(counter))
    chosen: set[int] = set()
    for j in range(n - k, n):
        state = _mix64(state)
        t = state % (j + 1)
        chosen.add(t if t not in chosen else j)
    return tuple(sorted(chosen))


def _sampled_supports(n: int, k: int, budget: int, seed: int, trial: int) -> np.ndarray:
    """First `budget` distinct supports of the deterministic (seed, trial)
    sequence.  Prefixes of the same sequence are nested, so growing the
    budget can only extend the support set."""
    base = _mix64(_trial_base(seed, trial) ^ 0x5851F42D4C957F2D)
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    counter = 0
    limit = 50 * budget + 1000
    while len(out) < budget:
        sup = _sample_support(n, k, base, counter)
        counter += 1
        if sup not in seen:
            seen.add(sup)
            out.append(sup)
        if counter > limit:
            raise RuntimeError(
                f"could not draw {budget} distinct supports from C({n},{k})={math.comb(n, k)}"
            )
    return np.asarray(out, dtype=np.intp)


def _extreme_gram_eigs(gram_full: np.ndarray, supports: np.ndarray) -> tuple[float, float]:
    """(min, max) eigenvalue over all k x k Gram blocks indexed by supports."""
    lam_min = math.inf
    lam_max = -math.inf
    chunk = 20000
    for start in range(0, supports.shape[0], chunk):
        block = supports[start : start + chunk]
        grams = gram_full[block[:, :, None], block[:, None, :]]
        eigs = np.linalg.eigvalsh(grams)
        lam_min = min(lam_min, float(eigs[:, 0].min()))
        lam_max = max(lam_max, float(eigs[:, -1].max()))
    return lam_min, lam_max


def empirical_ric(
    m: int,
    n: int,
    k: int,
    trials: int,
    support_budget: int,
    seed: int,
) -> tuple[EmpiricalEstimate, EmpiricalEstimate]:
    """Per-trial extremes of the normalized sparse singular values.

    Exhausts all C(n, k) supports per trial when that count fits within
    support_budget, otherwise evaluates support_budget distinct sampled
    supports.  Returns (uric estimate, lric estimate).
    """
    if not 0 < k < m < n:
        raise ValueError(f"requires 0 < k < m < n, got k={k}, m={m}, n={n}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if support_budget < 1:
        raise ValueError(f"support_budget must be >= 1, got {support_budget}")

    total = math.comb(n, k)
    exhaustive = total <= support_budget
    if exhaustive:
        all_supports = np.fromiter(
            itertools.chain.from_iterable(itertools.combinations(range(n), k)),
            dtype=np.intp,
            count=total * k,
        ).reshape(total, k)

    sqrt_m = math.sqrt(m)
    uric_per_trial: list[float] = []
    lric_per_trial: list[float] = []
    for trial in range(trials):
        matrix = sample_matrix(m, n, seed, trial)
        gram_full = matrix.entries.T @ matrix.entries
        supports = all_supports if exhaustive else _sampled_supports(n, k, support_budget, seed, trial)
        lam_min, lam_max = _extreme_gram_eigs(gram_full, supports)
        uric_per_trial.append(math.sqrt(max(lam_max, 0.0)) / sqrt_m)
        lric_per_trial.append(math.sqrt(max(lam_min, 0.0)) / sqrt_m)

    def build(quantity: str, values: list[float]) -> EmpiricalEstimate:
        arr = np.asarray(values)
        return EmpiricalEstimate(
            quantity=quantity,
            mean=float(arr.mean()),
            stddev=float(arr.std(ddof=1)) if trials > 1 else 0.0,
            trials=trials,
            mode=MODE_EXHAUSTIVE if exhaustive else MODE_SAMPLED,
            supports_per_trial=total if exhaustive else support_budget,
            per_trial=tuple(values),
        )

    return build("uric", uric_per_trial), build("lric", lric_per_trial)
