"""Monte Carlo estimates over Haar-random unitaries.

Sampling uses complex Ginibre matrices and QR with the phase of ``diag(R)``
moved into ``Q``.  Each run splits its seed into fixed-size chunks with
independent substreams, so results do not depend on how chunks are scheduled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .combinatorics import Partition
from .moments import power_sum_expansion
from .words import Word

CHUNK = 4096
MIN_SAMPLES = 1000


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_haar(d: int, rng=None, size: int | None = None) -> np.ndarray:
    """A Haar unitary of shape ``(d, d)``, or a stack of ``size`` of them."""
    if d < 1:
        raise ValueError("d must be positive")
    rng = _rng(rng)
    shape = (d, d) if size is None else (size, d, d)
    G = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    Q, R = np.linalg.qr(G)
    diag = np.diagonal(R, axis1=-2, axis2=-1)
    phase = diag / np.abs(diag)
    return Q * phase[..., None, :]


def unitarity_residual(U: np.ndarray) -> float:
    d = U.shape[-1]
    return float(np.max(np.abs(U @ np.conj(np.swapaxes(U, -1, -2)) - np.eye(d))))


def evaluate_word(w: Sequence[int], matrices: Sequence[np.ndarray]) -> np.ndarray:
    """Ordered product with ``X_i`` for letter ``i`` and ``X_i^*`` for ``-i``.

    ``matrices`` may hold single matrices or equally sized stacks.
    """
    w = tuple(w)
    rank = max((abs(a) for a in w), default=0)
    if rank > len(matrices):
        raise ValueError(f"word of rank {rank} needs {rank} matrices, got {len(matrices)}")
    if not matrices:
        raise ValueError("at least one matrix is needed to fix the dimension")
    ref = np.asarray(matrices[0])
    d = ref.shape[-1]
    out = np.broadcast_to(np.eye(d, dtype=complex), ref.shape).copy()
    for a in w:
        M = np.asarray(matrices[abs(a) - 1])
        out = out @ (M if a > 0 else np.conj(np.swapaxes(M, -1, -2)))
    return out


def _eigen_power_sums(M: np.ndarray, m: int) -> np.ndarray:
    ev = np.linalg.eigvals(M)
    if not np.all(np.isfinite(ev)):
        raise FloatingPointError("non-finite eigenvalues")
    return np.stack([np.sum(ev**k, axis=-1) for k in range(1, m + 1)], axis=-1)


def elementary_from_power_sums(p: np.ndarray, m: int) -> np.ndarray:
    """``e_m`` from ``p_1..p_m`` (last axis) by Newton's identities."""
    e = [np.ones(p.shape[:-1], dtype=complex)]
    for k in range(1, m + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * p[..., i - 1] for i in range(1, k + 1))
        e.append(acc / k)
    return e[m]


def complete_from_power_sums(p: np.ndarray, m: int) -> np.ndarray:
    h = [np.ones(p.shape[:-1], dtype=complex)]
    for k in range(1, m + 1):
        h.append(sum(h[k - i] * p[..., i - 1] for i in range(1, k + 1)) / k)
    return h[m]


def char_poly_coefficient(M: np.ndarray, m: int) -> np.ndarray:
    """``c_m(M)``, the coefficient of ``t^{d-m}`` in ``det(t - M)``, for normal ``M``."""
    d = np.asarray(M).shape[-1]
    if not 1 <= m <= d:
        raise ValueError(f"need 1 <= m <= d, got m={m}, d={d}")
    return (-1) ** m * elementary_from_power_sums(_eigen_power_sums(M, m), m)


def sym_trace(M: np.ndarray, m: int) -> np.ndarray:
    """``tr Sym^m(M)``, the complete homogeneous polynomial of the eigenvalues."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return np.ones(np.asarray(M).shape[:-2], dtype=complex)
    return complete_from_power_sums(_eigen_power_sums(M, m), m)


def schur_trace(M: np.ndarray, lam: Partition) -> np.ndarray:
    """``rho_lam(M)`` through the power-sum expansion."""
    m = sum(lam)
    p = _eigen_power_sums(M, m)
    out = 0
    for mu, coef in power_sum_expansion(lam):
        term = np.ones(p.shape[:-1], dtype=complex)
        for k in mu:
            term = term * p[..., k - 1]
        out = out + float(coef) * term
    return out


# --------------------------------------------------------------------------
# statistics and empirical moments
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Statistic:
    """``cm``, ``cm2``, ``sym``, ``sym2``, ``schur``, ``schur2`` or ``trpow``."""

    kind: str
    m: int = 1
    partition: Partition = ()

    def __str__(self) -> str:
        if self.kind.startswith("schur") or self.kind == "trpow":
            return f"{self.kind}:" + str(list(self.partition)).replace(" ", "")
        return f"{self.kind}:{self.m}"

    def evaluate(self, M: np.ndarray) -> np.ndarray:
        k = self.kind
        if k == "cm":
            return char_poly_coefficient(M, self.m)
        if k == "cm2":
            return np.abs(char_poly_coefficient(M, self.m)) ** 2 + 0j
        if k == "sym":
            return sym_trace(M, self.m)
        if k == "sym2":
            return np.abs(sym_trace(M, self.m)) ** 2 + 0j
        if k == "schur":
            return schur_trace(M, self.partition)
        if k == "schur2":
            return np.abs(schur_trace(M, self.partition)) ** 2 + 0j
        if k == "trpow":
            # tr_mu for mu = partition: prod_k tr(M^{mu_k})
            p = _eigen_power_sums(M, max(self.partition))
            out = np.ones(p.shape[:-1], dtype=complex)
            for j in self.partition:
                out = out * p[..., j - 1]
            return out
        raise ValueError(f"unknown statistic {k!r}")


def parse_statistic(text: str) -> Statistic:
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind in ("cm", "cm2", "sym", "sym2"):
        m = int(arg)
        if m < 1:
            raise ValueError("m must be positive")
        return Statistic(kind, m)
    if kind in ("schur", "schur2", "trpow"):
        parts = tuple(int(p) for p in arg.strip().strip("[]()").split(",") if p.strip())
        if not parts:
            raise ValueError(f"{kind} needs a partition")
        return Statistic(kind, sum(parts), tuple(sorted(parts, reverse=True)))
    raise ValueError(f"bad statistic {text!r}; use cm:M, cm2:M, sym:M, sym2:M, schur:[...], schur2:[...], trpow:[...]")


@dataclass(frozen=True)
class EmpiricalMoment:
    mean: complex
    stderr: float
    n: int
    seed: int | None

    def agrees(self, exact, k: float = 5.0, floor: float = 1e-9) -> bool:
        """``|mean - exact| <= k * stderr`` (plus a tiny floor for zero-variance statistics)."""
        return abs(self.mean - complex(float(exact))) <= k * self.stderr + floor

    def to_json(self) -> dict:
        return {"mean": [self.mean.real, self.mean.imag], "stderr": self.stderr, "n": self.n, "seed": self.seed}


def _chunk_sums(fn: Callable[[np.random.Generator, int], np.ndarray], n: int, seed) -> tuple[complex, float]:
    n_chunks = -(-n // CHUNK)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    s1 = 0j
    s2 = 0.0
    for idx, ss in enumerate(streams):
        size = min(CHUNK, n - idx * CHUNK)
        vals = fn(np.random.default_rng(ss), size)
        s1 += complex(np.sum(vals))
        s2 += float(np.sum(np.abs(vals) ** 2))
    return s1, s2


def _summarize(s1: complex, s2: float, n: int, seed) -> EmpiricalMoment:
    mean = s1 / n
    var = max(s2 - n * abs(mean) ** 2, 0.0) / (n - 1)
    return EmpiricalMoment(mean, math.sqrt(var / n), n, seed)


def empirical_moment(
    w: Sequence[int],
    statistic,
    d: int,
    n: int = 100_000,
    seed: int = 0,
) -> EmpiricalMoment:
    """Mean and standard error of ``statistic(w(X_1, ..., X_r))`` over ``n`` draws."""
    if n < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples")
    stat = statistic if isinstance(statistic, Statistic) else parse_statistic(statistic)
    w = Word(w)
    r = max(w.rank, 1)

    def fn(rng, size):
        mats = [sample_haar(d, rng, size) for _ in range(r)]
        return stat.evaluate(evaluate_word(w, mats))

    s1, s2 = _chunk_sums(fn, n, seed)
    return _summarize(s1, s2, n, seed)


def empirical_trace_product(
    words: Sequence[Sequence[int]],
    d: int,
    n: int = 100_000,
    seed: int = 0,
) -> EmpiricalMoment:
    """Estimate ``E prod_k tr w_k`` with all words evaluated on the same draws."""
    if n < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples")
    words = [Word(w) for w in words]
    r = max([w.rank for w in words] + [1])

    def fn(rng, size):
        mats = [sample_haar(d, rng, size) for _ in range(r)]
        out = np.ones(size, dtype=complex)
        for w in words:
            out = out * np.trace(evaluate_word(w, mats), axis1=-2, axis2=-1)
        return out

    s1, s2 = _chunk_sums(fn, n, seed)
    return _summarize(s1, s2, n, seed)


def sample_complex_normals(m: int, rng=None, size: int = 1) -> np.ndarray:
    """Standard complex Gaussians with ``E|Z|^2 = 1``, shape ``(size, m)``."""
    rng = _rng(rng)
    return (rng.standard_normal((size, m)) + 1j * rng.standard_normal((size, m))) / math.sqrt(2)


def gaussian_limit_moment(poly, n: int = 100_000, seed: int = 0) -> EmpiricalMoment:
    """Empirical ``E|P(Z_1, ..., Z_m)|^2`` for a limit polynomial ``P``."""
    if n < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples")

    def fn(rng, size):
        return np.abs(poly.evaluate(sample_complex_normals(poly.m, rng, size))) ** 2 + 0j

    s1, s2 = _chunk_sums(fn, n, seed)
    return _summarize(s1, s2, n, seed)
