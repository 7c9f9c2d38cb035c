"""Seeded random fixtures: Ginibre matrices, Haar unitaries, random states.

Complex Gaussian entries are real + 1j*imag with independent N(0, 1) parts;
random states are G G* normalized to unit trace, which avoids singular or
otherwise degenerate fixtures with probability one.
"""

from __future__ import annotations

import numpy as np

from .linalg import DensityMatrix, dagger, hermitian_part


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(n: int, rng) -> np.ndarray:
    rng = rng_from(rng)
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_hermitian(n: int, rng) -> np.ndarray:
    return hermitian_part(ginibre(n, rng))


def random_unitary(n: int, rng) -> np.ndarray:
    """Haar-distributed unitary via phase-corrected QR of a Ginibre matrix."""
    q, r = np.linalg.qr(ginibre(n, rng))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density(n: int, rng, tol: float | None = None) -> DensityMatrix:
    g = ginibre(n, rng_from(rng))
    m = g @ dagger(g)
    m = m / np.trace(m).real
    if tol is None:
        return DensityMatrix(m)
    return DensityMatrix(m, tol=tol)


def commuting_unitary(eigenvectors: np.ndarray, rng) -> np.ndarray:
    """Random unitary diagonal in the given orthonormal eigenbasis.

    Commutes with every operator sharing that eigenbasis, e.g. the state the
    basis was taken from.
    """
    rng = rng_from(rng)
    n = eigenvectors.shape[0]
    phases = np.exp(2j * np.pi * rng.random(n))
    return eigenvectors @ (phases[:, None] * dagger(eigenvectors))
