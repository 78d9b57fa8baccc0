import numpy as np
from scipy.linalg import expm


def annihilation(dim):
    """Truncated m with m|n⟩ = √n |n−1⟩."""
    return np.diag(np.sqrt(np.arange(1, dim)), k=1)


def squeeze_generator(r, theta, dim):
    """(z* m² − z m†²)/2 on the first `dim` Fock levels."""
    z = r * np.exp(1j * theta)
    m = annihilation(dim)
    m2 = m @ m
    return 0.5 * (np.conj(z) * m2 - z * m2.conj().T)


def oracle_coefficients(r, theta, dim):
    """Brute-force ⟨2n|S(z)|0⟩ from a dense matrix exponential.

    The generator only couples levels of equal parity, so the exponential is
    taken on the even block; returns the even amplitudes c_0, c_2, ...
    """
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    even = squeeze_generator(r, theta, dim)[::2, ::2]
    return expm(even)[:, 0]
