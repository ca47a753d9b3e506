"""Seeded GUE sampling and statistical validation against the exact formulas.

Sample s of a run is drawn from the counter-based Philox stream whose
128-bit key is the pair (seed, s), so every sample depends only on
(seed, s) and results do not depend on how samples are scheduled.
Uniform variates are turned into normals by Box-Muller.  Within a sample
the N^2 normals are consumed in a fixed layout: the N diagonal entries
first, then for each a < b in row-major order one (real, imaginary) pair
for H_ab.

Entry variances follow the weight exp(-(N/2) Tr H^2): diagonal entries
have variance 1/N and off-diagonal entries have <|H_ab|^2> = 1/N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

JACOBI_SWEEP_CAP = 40
_EIG_BATCH = 512


@dataclass(frozen=True)
class SampleStats:
    """Estimator summary: mean, standard error, and number of samples."""

    mean: float
    std_error: float
    sample_count: int

    def __post_init__(self):
        if self.std_error < 0:
            raise ValueError("standard error cannot be negative")
        if self.sample_count < 1:
            raise ValueError("need at least one sample")


@dataclass(frozen=True)
class HermitianSample:
    """One GUE draw; conjugate symmetry holds exactly by construction."""

    N: int
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.shape != (self.N, self.N):
            raise ValueError("entries must be an N x N matrix")
        if not (self.entries == self.entries.conj().T).all():
            raise ValueError("matrix is not Hermitian")
        if (np.diag(self.entries).imag != 0).any():
            raise ValueError("diagonal must be real")


def _normals(seed: int, index: int, count: int) -> np.ndarray:
    """`count` Box-Muller normals from the (seed, index) Philox stream.

    (seed, index) fills the full 2x64-bit Philox key, so distinct samples
    get disjoint streams no matter how many blocks each one consumes.
    """
    key = np.array([seed % 2**64, index % 2**64], dtype=np.uint64)
    gen = np.random.Generator(np.random.Philox(key=key))
    m = (count + 1) // 2
    u = gen.random(2 * m)
    r = np.sqrt(-2.0 * np.log(1.0 - u[:m]))  # 1 - u lies in (0, 1]
    angle = 2.0 * np.pi * u[m:]
    out = np.empty(2 * m)
    out[0::2] = r * np.cos(angle)
    out[1::2] = r * np.sin(angle)
    return out[:count]


def _gue_matrix(N: int, seed: int, index: int) -> np.ndarray:
    z = _normals(seed, index, N * N)
    h = np.zeros((N, N), dtype=complex)
    h[np.diag_indices(N)] = z[:N] / math.sqrt(N)
    if N > 1:
        iu, ju = np.triu_indices(N, k=1)
        re = z[N::2]
        im = z[N + 1::2]
        vals = (re + 1j * im) / math.sqrt(2 * N)
        h[iu, ju] = vals
        h[ju, iu] = vals.conj()
    return h


def sample_gue(N: int, seed: int, index: int = 0) -> HermitianSample:
    """Draw sample `index` of the stream started by `seed`."""
    if N < 1:
        raise ValueError(f"sample_gue requires N >= 1, got {N}")
    return HermitianSample(N, _gue_matrix(N, seed, index))


def hermitian_eigenvalues(H: HermitianSample, tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues by cyclic Jacobi rotations, ascending.

    Sweeps run until the off-diagonal Frobenius norm drops below tol;
    exceeding the sweep cap raises.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.array(H.entries, dtype=complex)
    n = a.shape[0]
    if n == 1:
        return a.real.diagonal().copy()
    for _ in range(JACOBI_SWEEP_CAP):
        off = a - np.diag(np.diag(a))
        if np.linalg.norm(off) < tol:
            return np.sort(np.diag(a).real)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                if apq == 0:
                    continue
                # atan2-based phase stays finite even for subnormal pivots
                phi = math.atan2(apq.imag, apq.real)
                phase = complex(math.cos(phi), math.sin(phi))
                theta = 0.5 * math.atan2(2 * abs(apq), (a[p, p] - a[q, q]).real)
                c, s = math.cos(theta), math.sin(theta)
                # unitary: [[c, -s], [s e^{-i phi}, c e^{-i phi}]] on (p, q)
                col_p = c * a[:, p] + s * phase.conjugate() * a[:, q]
                col_q = -s * a[:, p] + c * phase.conjugate() * a[:, q]
                a[:, p], a[:, q] = col_p, col_q
                row_p = c * a[p, :] + s * phase * a[q, :]
                row_q = -s * a[p, :] + c * phase * a[q, :]
                a[p, :], a[q, :] = row_p, row_q
    raise RuntimeError(f"Jacobi iteration did not reach tol={tol} in {JACOBI_SWEEP_CAP} sweeps")


@lru_cache(maxsize=8)
def _eigenvalue_samples(N: int, samples: int, seed: int) -> np.ndarray:
    """(samples, N) eigenvalue array; LAPACK eigvalsh batched over samples."""
    out = np.empty((samples, N))
    for start in range(0, samples, _EIG_BATCH):
        stop = min(start + _EIG_BATCH, samples)
        batch = np.stack([_gue_matrix(N, seed, s) for s in range(start, stop)])
        out[start:stop] = np.linalg.eigvalsh(batch)
    out.setflags(write=False)
    return out


def _stats(values: np.ndarray) -> SampleStats:
    n = len(values)
    mean = float(np.mean(values))
    sd = float(np.std(values, ddof=1)) if n > 1 else 0.0
    return SampleStats(mean, sd / math.sqrt(n), n)


def estimate_wilson(N: int, t: float, samples: int, seed: int) -> SampleStats:
    """Mean and standard error of (1/N) sum_k exp(it lambda_k) over samples.

    The real part is reported; the imaginary part must vanish within five
    standard errors (it does in distribution, since -H and H are equally
    likely).
    """
    if samples < 100:
        raise ValueError(f"need at least 100 samples, got {samples}")
    eigs = _eigenvalue_samples(N, samples, seed % 2**64)
    values = np.exp(1j * t * eigs).mean(axis=1)
    im = _stats(values.imag)
    if im.std_error > 0 and abs(im.mean) > 5 * im.std_error:
        raise RuntimeError(
            f"imaginary part {im.mean} inconsistent with zero at {im.std_error} std error"
        )
    return _stats(values.real)


def estimate_density_histogram(N: int, samples: int, bins: int,
                               lam_range: tuple[float, float],
                               seed: int) -> list[SampleStats]:
    """Per-bin normalized eigenvalue histogram with per-bin standard errors.

    Bin j of the result estimates the average of rho_N over the j-th of
    `bins` equal subdivisions of lam_range; counts are normalized by
    samples * N * bin_width.
    """
    lo, hi = lam_range
    if bins < 10:
        raise ValueError(f"need at least 10 bins, got {bins}")
    if not lo < hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if samples < 2:
        raise ValueError("need at least two samples")
    eigs = _eigenvalue_samples(N, samples, seed % 2**64)
    width = (hi - lo) / bins
    x = (eigs - lo) / width
    inside = (x >= 0) & (x < bins)
    rows = np.broadcast_to(np.arange(samples)[:, None], eigs.shape)
    counts = np.zeros((samples, bins))
    np.add.at(counts, (rows[inside], x[inside].astype(int)), 1.0)
    per_sample = counts / (N * width)
    means = per_sample.mean(axis=0)
    sds = per_sample.std(axis=0, ddof=1)
    root = math.sqrt(samples)
    return [
        SampleStats(float(m), float(sd) / root, samples)
        for m, sd in zip(means, sds)
    ]


def zscore(est: SampleStats, reference: float) -> float:
    """(mean - reference) / std_error."""
    if est.std_error == 0:
        raise ValueError("z-score undefined for zero standard error")
    return (est.mean - reference) / est.std_error
