"""Deterministic test-matrix corpus for accuracy and cost experiments.

Four classes, emitted in a fixed order from one seeded generator:

(i)   structured special matrices cycling through a fixed set of
      constructions chosen for difficult structure (defective eigenvalues,
      non-normality, high nilpotency index, wide spectral spread);
(ii)  dense random matrices, entries cycling through standard normal,
      uniform(0,1), and uniform(-0.5,0.5);
(iii) strictly upper-triangular nilpotent matrices with random bandwidth;
(iv)  the nine 2x2 involutory matrices [[1, lam],[0,-1]], lam = 1, 10, ...,
      1e8, whose norm wildly overstates their spectral content.

Classes (i)-(iii) are rescaled to log-uniform target norms in the
configured range.  Class (iv) is emitted verbatim: rescaling would destroy
the A^2 = I identity that makes this family a closed-form accuracy probe
for overscaling, so its norms intentionally run out of range.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from .matcore import DenseMatrix, norm1

CLASS_STRUCTURED = "structured"
CLASS_RANDOM = "random"
CLASS_NILPOTENT = "nilpotent"
CLASS_OVERSCALING = "overscaling"


@dataclass(frozen=True)
class CorpusSpec:
    dimension_cap: int = 16
    count_per_class: tuple[int, int, int, int] = (791, 1200, 500, 9)
    seed: int = 0
    norm_range: tuple[float, float] = (1e-4, 10.0 ** 4.1)

    def __post_init__(self) -> None:
        if self.dimension_cap < 2:
            raise ValueError("dimension_cap must be at least 2")
        if len(self.count_per_class) != 4:
            raise ValueError("count_per_class needs exactly four entries")
        if any(c <= 0 for c in self.count_per_class):
            raise ValueError("counts must be positive")
        if self.count_per_class[3] > 9:
            raise ValueError("the involutory family has only nine members")
        lo, hi = self.norm_range
        if not (0.0 < lo < hi):
            raise ValueError(f"bad norm range ({lo}, {hi})")


def _jordan(n: int, lam: float) -> DenseMatrix:
    return lam * np.eye(n) + np.eye(n, k=1)


def _circulant(n: int) -> DenseMatrix:
    first = np.zeros(n)
    first[0] = 2.0
    first[1] = -1.0
    first[-1] = 1.0
    return np.array([np.roll(first, i) for i in range(n)], dtype=float)


def _frank(n: int) -> DenseMatrix:
    m = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if j >= i - 1:
                m[i, j] = n - max(i, j)
    return m


def _tridiagonal(n: int, sub: float, diag: float, sup: float) -> DenseMatrix:
    return (sub * np.eye(n, k=-1) + diag * np.eye(n)
            + sup * np.eye(n, k=1))


def _householder(n: int) -> DenseMatrix:
    v = np.ones((n, 1))
    return np.eye(n) - 2.0 / n * (v @ v.T)


def _rotation_generator(n: int) -> DenseMatrix:
    m = np.zeros((n, n))
    for i in range(0, n - 1, 2):
        m[i, i + 1] = 1.0
        m[i + 1, i] = -1.0
    return m


def _cyclic_shift(n: int) -> DenseMatrix:
    return np.eye(n, k=1) + np.eye(n, k=-(n - 1))


def _checkerboard(n: int) -> DenseMatrix:
    i, j = np.indices((n, n))
    return np.where((i + j) % 2 == 0, 1.0, -1.0)


def _hilbert(n: int) -> DenseMatrix:
    i, j = np.indices((n, n))
    return 1.0 / (i + j + 1.0)


def _lehmer(n: int) -> DenseMatrix:
    i, j = np.indices((n, n)) + 1
    return np.minimum(i, j) / np.maximum(i, j)


def _clement(n: int) -> DenseMatrix:
    m = np.zeros((n, n))
    for i in range(n - 1):
        m[i, i + 1] = i + 1.0
        m[i + 1, i] = n - 1.0 - i
    return m


def _alternating_bidiagonal(n: int) -> DenseMatrix:
    return np.diag([(-1.0) ** i for i in range(n)]) + np.eye(n, k=1)


def _grcar(n: int) -> DenseMatrix:
    m = -np.eye(n, k=-1)
    for k in range(4):
        m += np.eye(n, k=k)
    return m


def _lower_ones(n: int) -> DenseMatrix:
    return np.tril(np.ones((n, n)))


def _companion(n: int) -> DenseMatrix:
    m = np.eye(n, k=-1)
    m[0, :] = 1.0
    return m


def _pascal_lower(n: int) -> DenseMatrix:
    m = np.zeros((n, n))
    m[:, 0] = 1.0
    for i in range(1, n):
        for j in range(1, i + 1):
            m[i, j] = m[i - 1, j - 1] + m[i - 1, j]
    return m


def _log_spaced_diagonal(n: int) -> DenseMatrix:
    return np.diag(np.logspace(-2.0, 2.0, n))


_STRUCTURED = (
    lambda n: _jordan(n, 0.0),
    lambda n: _jordan(n, 0.5),
    lambda n: _jordan(n, -1.0),
    _circulant,
    _frank,
    lambda n: _tridiagonal(n, -1.0, 2.0, -1.0),
    lambda n: _tridiagonal(n, 1.0, 0.0, -1.0),
    _householder,
    _rotation_generator,
    _cyclic_shift,
    lambda n: np.ones((n, n)),
    _checkerboard,
    _hilbert,
    _lehmer,
    _clement,
    _alternating_bidiagonal,
    _grcar,
    _lower_ones,
    _companion,
    _pascal_lower,
    _log_spaced_diagonal,
)


def _rescaled(m: DenseMatrix, target: float) -> DenseMatrix:
    return m * (target / norm1(m))


def generate_corpus(spec: CorpusSpec) -> list[tuple[DenseMatrix, str]]:
    """Emit the corpus for a spec; same spec always gives identical output."""
    rng = np.random.default_rng(spec.seed)
    lg_lo = math.log10(spec.norm_range[0])
    lg_hi = math.log10(spec.norm_range[1])
    cap = spec.dimension_cap

    def target() -> float:
        return 10.0 ** rng.uniform(lg_lo, lg_hi)

    out: list[tuple[DenseMatrix, str]] = []
    for i in range(spec.count_per_class[0]):
        n = int(rng.integers(2, cap + 1))
        m = _STRUCTURED[i % len(_STRUCTURED)](n)
        out.append((_rescaled(m, target()), CLASS_STRUCTURED))
    for i in range(spec.count_per_class[1]):
        n = int(rng.integers(2, cap + 1))
        if i % 3 == 0:
            m = rng.standard_normal((n, n))
        elif i % 3 == 1:
            m = rng.uniform(0.0, 1.0, (n, n))
        else:
            m = rng.uniform(-0.5, 0.5, (n, n))
        out.append((_rescaled(m, target()), CLASS_RANDOM))
    for _ in range(spec.count_per_class[2]):
        n = int(rng.integers(2, cap + 1))
        band = int(rng.integers(1, n))
        m = rng.standard_normal((n, n))
        mask = np.triu(np.ones((n, n)), k=1) - np.triu(np.ones((n, n)),
                                                       k=band + 1)
        out.append((_rescaled(m * mask, target()), CLASS_NILPOTENT))
    for j in range(spec.count_per_class[3]):
        m = np.array([[1.0, 10.0 ** j], [0.0, -1.0]])
        out.append((m, CLASS_OVERSCALING))
    return out
