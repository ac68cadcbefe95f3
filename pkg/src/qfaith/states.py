"""Two-qubit state constructors and conversions between matrix and Pauli forms.

Convention: computational basis ordered |00>, |01>, |10>, |11>, with the
sigma_z +1 eigenstate mapped to |0>. All states are 4x4 complex numpy arrays.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import PAULIS, SIGMA0, kron, tolerances

_BELL_VECTORS = {
    "phi_plus": np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    "phi_minus": np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
    "psi_plus": np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    "psi_minus": np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
}

BELL_NAMES = tuple(_BELL_VECTORS)


@dataclass
class PauliRep:
    """Bloch vectors r (qubit A), s (qubit B) and 3x3 correlation matrix t."""

    r: np.ndarray
    s: np.ndarray
    t: np.ndarray


def projector(psi):
    """Rank-1 projector |psi><psi| of a (normalized) state vector."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def assert_density_matrix(rho, name="state"):
    """Validate Hermiticity, unit trace and positivity; raise ValueError naming the violation."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"{name}: expected a 4x4 matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError(f"{name}: entries are not finite")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > tolerances.hermiticity:
        raise ValueError(f"{name}: not Hermitian (max deviation {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tolerances.state_trace:
        raise ValueError(f"{name}: trace is {tr:.12g}, expected 1")
    lo = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
    if lo < -tolerances.state_negativity:
        raise ValueError(f"{name}: negative eigenvalue {lo:.3e}, not positive semidefinite")
    return rho


def ptrace_a(rho):
    """Reduced state of qubit B."""
    return np.einsum("abad->bd", np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2))


def ptrace_b(rho):
    """Reduced state of qubit A."""
    return np.einsum("abcb->ac", np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2))


def from_pauli(rep):
    """Assemble a density matrix from its Pauli coefficients.

    rho = (1/4) (I + r.sigma x I + I x s.sigma + sum_nm t_nm sigma_n x sigma_m).
    Raises ValueError if the coefficients do not describe a physical state.
    """
    r = np.asarray(rep.r, dtype=float)
    s = np.asarray(rep.s, dtype=float)
    t = np.asarray(rep.t, dtype=float)
    rho = kron(SIGMA0, SIGMA0).astype(complex)
    for i in range(3):
        rho += r[i] * kron(PAULIS[i + 1], SIGMA0)
        rho += s[i] * kron(SIGMA0, PAULIS[i + 1])
        for j in range(3):
            rho += t[i, j] * kron(PAULIS[i + 1], PAULIS[j + 1])
    rho *= 0.25
    return assert_density_matrix(rho, name="from_pauli result")


def to_pauli(rho):
    """Pauli coefficients of a state: r_n = Tr(rho sigma_n x I), t_nm = Tr(rho sigma_n x sigma_m)."""
    rho = np.asarray(rho, dtype=complex)
    r = np.array([np.trace(rho @ kron(PAULIS[i + 1], SIGMA0)).real for i in range(3)])
    s = np.array([np.trace(rho @ kron(SIGMA0, PAULIS[j + 1])).real for j in range(3)])
    t = np.array(
        [
            [np.trace(rho @ kron(PAULIS[i + 1], PAULIS[j + 1])).real for j in range(3)]
            for i in range(3)
        ]
    )
    return PauliRep(r=r, s=s, t=t)


def bell_state(which):
    """Projector onto one of the four Bell states: phi_plus, phi_minus, psi_plus, psi_minus."""
    try:
        vec = _BELL_VECTORS[which]
    except KeyError:
        raise ValueError(f"unknown Bell state {which!r}, expected one of {BELL_NAMES}") from None
    return projector(vec)


def bell_vector(which):
    """State vector of a Bell state (same labels as bell_state)."""
    try:
        return _BELL_VECTORS[which].copy()
    except KeyError:
        raise ValueError(f"unknown Bell state {which!r}, expected one of {BELL_NAMES}") from None


def rank2_bd(theta):
    """Rank-2 Bell-diagonal state sin^2(theta)|phi+><phi+| + cos^2(theta)|phi-><phi-|.

    Correlation matrix diag(-cos 2theta, cos 2theta, 1); concurrence |cos 2theta|.
    """
    theta = float(theta)
    if not 0.0 <= theta < np.pi / 2:
        raise ValueError(f"theta must lie in [0, pi/2), got {theta}")
    w = np.sin(theta) ** 2
    return w * bell_state("phi_plus") + (1.0 - w) * bell_state("phi_minus")


def bell_diag_eigenvalues(t1, t2, t3):
    """The four eigenvalues of a Bell-diagonal state with correlation diag(t1, t2, t3).

    Returned in the fixed order
    ((1+t1-t2+t3), (1+t1+t2-t3), (1-t1+t2+t3), (1-t1-t2-t3)) / 4,
    which pairs them with phi+, psi+, phi-, psi- respectively.
    """
    return 0.25 * np.array(
        [
            1 + t1 - t2 + t3,
            1 + t1 + t2 - t3,
            1 - t1 + t2 + t3,
            1 - t1 - t2 - t3,
        ]
    )


def bell_diagonal(t1, t2, t3):
    """Bell-diagonal state with r = s = 0 and correlation matrix diag(t1, t2, t3)."""
    lam = bell_diag_eigenvalues(t1, t2, t3)
    if lam.min() < -1e-12:
        raise ValueError(
            f"correlation coefficients ({t1}, {t2}, {t3}) give a negative eigenvalue "
            f"{lam.min():.3e}; not a physical state"
        )
    rho = 0.25 * (
        kron(SIGMA0, SIGMA0)
        + t1 * kron(PAULIS[1], PAULIS[1])
        + t2 * kron(PAULIS[2], PAULIS[2])
        + t3 * kron(PAULIS[3], PAULIS[3])
    )
    return rho


def random_state(seed, rank=4):
    """Random density matrix of the given rank, G G^dagger / Tr with Ginibre G.

    Deterministic per seed: G has shape (4, rank) with independent standard
    complex Gaussian entries drawn from ``numpy.random.default_rng(seed)``.
    """
    if rank not in (1, 2, 3, 4):
        raise ValueError(f"rank must be 1..4, got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_product_state(rng):
    """Random product state vector |a> x |b> with Haar-uniform single-qubit factors."""
    a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    a /= np.linalg.norm(a)
    b /= np.linalg.norm(b)
    return np.kron(a, b)


def random_separable_state(rng, max_terms=6):
    """Random mixture of product states (manifestly separable)."""
    k = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(k))
    rho = np.zeros((4, 4), dtype=complex)
    for w in weights:
        rho += w * projector(random_pure_product_state(rng))
    return rho


def state_fidelity_pure(rho, psi):
    """Overlap <psi|rho|psi> with a pure reference state."""
    psi = np.asarray(psi, dtype=complex)
    return float(np.real(psi.conj() @ np.asarray(rho, dtype=complex) @ psi))


def trace_distance(a, b):
    """Trace distance (1/2)||a - b||_1 between two Hermitian matrices."""
    diff = np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex)
    return 0.5 * float(np.abs(np.linalg.eigvalsh(0.5 * (diff + diff.conj().T))).sum())
