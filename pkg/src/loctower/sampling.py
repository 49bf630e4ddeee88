"""Random normal towers with planted spectra, for property tests and demos."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .tower import OperatorTower, tower_from_top

KINDS = ("general", "hermitian", "unitary")


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR with phase correction."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def lattice_values(rng: np.random.Generator, size: int, kind: str) -> np.ndarray:
    """Values drawn from a lattice with spacing >= 0.5, so repeats are
    exact and distinct values are far apart."""
    if kind == "hermitian":
        return rng.integers(-6, 7, size) / 2.0 + 0j
    if kind == "unitary":
        return np.exp(2j * np.pi * rng.integers(0, 12, size) / 12)
    return (rng.integers(-4, 5, size) + 1j * rng.integers(-4, 5, size)) / 2.0


def random_dims(rng: np.random.Generator, max_levels: int = 6, max_dim: int = 16) -> list:
    n = int(rng.integers(1, max_levels + 1))
    top = int(rng.integers(n, max_dim + 1))
    return sorted(int(d) for d in rng.choice(np.arange(1, top + 1), size=n, replace=False))


@dataclass(frozen=True, eq=False)
class PlantedTower:
    tower: OperatorTower
    blocks: tuple      # planted eigenvalues of each new block
    kind: str

    @property
    def values(self) -> np.ndarray:
        return np.concatenate(self.blocks)

    def first_level(self, z, tol: float = 1e-8) -> int:
        """Level of the first block containing ``z`` (0 if none)."""
        for i, b in enumerate(self.blocks):
            if np.min(np.abs(b - z)) <= tol:
                return i + 1
        return 0

    def level_values(self, level: int) -> np.ndarray:
        return np.concatenate(self.blocks[:level])


def planted_normal_tower(rng: np.random.Generator, dims=None, kind: str = "general") -> PlantedTower:
    """Normal tower ``blockdiag(U_k D_k U_k*)`` with ``D_k`` from the lattice.

    Block ``k`` spans the coordinates ``d_{k-1}+1 .. d_k``; each block gets
    its own random unitary, so every level subspace is reducing.
    """
    if dims is None:
        dims = random_dims(rng)
    dims = list(dims)
    sizes = np.diff([0] + dims)
    blocks, mats = [], []
    for s in sizes:
        vals = lattice_values(rng, int(s), kind)
        u = random_unitary(rng, int(s))
        blocks.append(vals)
        mats.append((u * vals) @ u.conj().T)
    top = scipy.linalg.block_diag(*mats)
    return PlantedTower(tower_from_top(dims, top), tuple(blocks), kind)


def random_polynomial(rng: np.random.Generator, max_degree: int = 3):
    """Random terms ``(j, k, coeff)`` with ``j + k <= max_degree``."""
    n_terms = int(rng.integers(1, 5))
    terms = []
    for _ in range(n_terms):
        deg = int(rng.integers(0, max_degree + 1))
        j = int(rng.integers(0, deg + 1))
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        terms.append((j, deg - j, c))
    return terms
