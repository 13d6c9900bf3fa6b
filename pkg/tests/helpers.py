"""Shared random-instance builders for the test suite."""

import numpy as np

from tribell import DensityMatrix, PureState


def random_pure(rng) -> PureState:
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    return PureState(amps / np.linalg.norm(amps))


def random_density(rng, rank: int | None = None) -> DensityMatrix:
    if rank is None:
        rank = int(rng.integers(1, 9))
    mat = rng.normal(size=(8, rank)) + 1j * rng.normal(size=(8, rank))
    rho = mat @ mat.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def random_angles(rng, n: int = 3) -> np.ndarray:
    return rng.uniform(0.0, 2.0 * np.pi, n)
