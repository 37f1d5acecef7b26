"""Deterministic random streams.

Every public operation that needs randomness takes an integer seed and
derives its own generator here.  Distinct subsystems use distinct fixed
labels so that adding draws in one place never perturbs another.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK = (1 << 63) - 1


def subsystem_rng(seed: int, label: str) -> np.random.Generator:
    """Generator for one subsystem, decorrelated from other labels."""
    return np.random.default_rng([zlib.crc32(label.encode("ascii")), int(seed) & _MASK])


def spawn_seed(rng: np.random.Generator) -> int:
    """Draw a child seed for a nested seeded operation."""
    return int(rng.integers(0, _MASK, dtype=np.int64))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian draws (independent re/im parts)."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def unit_gamma(rng: np.random.Generator, margin: float = 0.2) -> complex:
    """Random point on the unit circle, bounded away from +-1.

    The excluded arcs keep the path-blending factor well conditioned for
    every real t in [0, 1].
    """
    theta = rng.uniform(margin, np.pi - margin)
    if rng.uniform() < 0.5:
        theta = -theta
    return complex(np.cos(theta), np.sin(theta))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary via QR with phase-fixed diagonal."""
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diagonal(r).copy()
    d = d / np.abs(d)
    return q * d[None, :]
