"""Dense linear algebra helpers for the tiny matrices used throughout this package.

Everything here is specialized to 2x2 complex, 3x3 real, and 4x4 complex
matrices; inputs are plain numpy arrays and all functions are pure.
"""

from dataclasses import dataclass

import numpy as np

SIGMA0 = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)

#: all four Pauli operators, identity first
PAULIS = (SIGMA0, SIGMA1, SIGMA2, SIGMA3)


@dataclass
class Tolerances:
    """Central table of numeric tolerances.

    The module-level instance ``tolerances`` is read at call time, so tests
    or callers with unusual requirements can adjust a field globally instead
    of threading keyword arguments through every layer.
    """

    hermiticity: float = 1e-9
    eigen_residual: float = 1e-9
    rotation: float = 1e-12
    svd_residual: float = 1e-10
    eigenvalue_product: float = 1e-8
    state_trace: float = 1e-9
    state_negativity: float = 1e-9
    unitarity: float = 1e-10
    filter_trace: float = 1e-12
    faithful_margin: float = 1e-9
    ppt_negativity: float = 1e-9


tolerances = Tolerances()


@dataclass
class EigenSpectrum:
    """Real eigenvalues in descending order; eigenvector i is ``eigenvectors[:, i]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def kron(a, b):
    """Kronecker product of two 2x2 matrices, entry ((2i+k),(2j+l)) = a[i,j]*b[k,l]."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(f"kron expects 2x2 factors, got {a.shape} and {b.shape}")
    return np.kron(a, b)


def herm_eigen(a, atol=None):
    """Full spectrum of a Hermitian matrix.

    Parameters
    ----------
    a : (n, n) complex array
        Hermitian within `atol` (max-norm of a - a^dagger).
    atol : float, optional
        Hermiticity tolerance; defaults to ``tolerances.hermiticity``.

    Returns
    -------
    EigenSpectrum
        Eigenvalues descending, orthonormal eigenvector columns.
    """
    a = np.asarray(a, dtype=complex)
    if atol is None:
        atol = tolerances.hermiticity
    dev = np.abs(a - a.conj().T).max()
    if dev > atol:
        raise ValueError(f"matrix is not Hermitian: max |a - a^dagger| = {dev:.3e}")
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    order = np.argsort(w)[::-1]
    return EigenSpectrum(eigenvalues=w[order], eigenvectors=v[:, order])


def general_eigenvalues(a):
    """All eigenvalues of a square complex matrix, sorted by descending real part.

    The product of the returned values equals det(a) up to float error.
    """
    a = np.asarray(a, dtype=complex)
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"eigenvalue iteration did not converge: {exc}") from exc
    order = np.lexsort((-vals.imag, -vals.real))
    return vals[order]


def svd3(t):
    """Rotation-diagonal-rotation decomposition of a real 3x3 matrix.

    Returns (o1, d, o2) with t = o1 @ diag(d) @ o2.T, det(o1) = det(o2) = +1,
    |d| sorted descending. Sign flips needed to make both orthogonal factors
    proper rotations are absorbed into d, pushed onto the smallest-magnitude
    entry, so d has exactly one negative entry when det(t) < 0 and none when
    det(t) > 0.
    """
    t = np.asarray(t, dtype=float)
    if t.shape != (3, 3):
        raise ValueError(f"svd3 expects a 3x3 matrix, got {t.shape}")
    u, s, vt = np.linalg.svd(t)
    d = s.astype(float)
    if np.linalg.det(u) < 0:
        u = u.copy()
        u[:, 2] *= -1
        d[2] = -d[2]
    if np.linalg.det(vt) < 0:
        vt = vt.copy()
        vt[2, :] *= -1
        d[2] = -d[2]
    d = d + 0.0  # normalize -0.0
    return u, d, vt.T
