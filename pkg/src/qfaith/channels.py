"""Local filters and decoherence maps acting on two-qubit states.

A local filter is the Hermitian, trace-decreasing single-qubit operation
mu * (I + nu n.sigma) followed by renormalization of the two-qubit state;
it models polarization-dependent loss. Dephasing along an axis models
polarization-mode-dispersion-style decoherence.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import PAULIS, SIGMA0, kron, tolerances

_AXES = {
    "x": np.array([1.0, 0.0, 0.0]),
    "y": np.array([0.0, 1.0, 0.0]),
    "z": np.array([0.0, 0.0, 1.0]),
}


def unit_direction(axis):
    """Normalize an axis spec ('x'/'y'/'z' or a 3-vector) to a unit 3-vector."""
    if isinstance(axis, str):
        try:
            return _AXES[axis].copy()
        except KeyError:
            raise ValueError(f"unknown axis label {axis!r}") from None
    v = np.asarray(axis, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"direction must be a 3-vector, got shape {v.shape}")
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        raise ValueError("direction vector has zero norm")
    return v / norm


@dataclass
class LocalFilter:
    """Filter magnitude nu in [0, 1] and unit direction in Stokes space.

    The overall scale mu is stored for completeness but cancels whenever the
    filtered state is renormalized.
    """

    nu: float
    n_hat: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))
    mu: float = 1.0

    def __post_init__(self):
        self.nu = float(self.nu)
        if not 0.0 <= self.nu <= 1.0:
            raise ValueError(f"filter magnitude nu must lie in [0, 1], got {self.nu}")
        if self.mu <= 0:
            raise ValueError(f"filter scale mu must be positive, got {self.mu}")
        self.n_hat = unit_direction(self.n_hat)


def filter_matrix(f):
    """2x2 matrix mu * (I + nu n.sigma); Hermitian PSD with eigenvalues mu*(1 +- nu)."""
    n = f.n_hat
    m = SIGMA0 + f.nu * (n[0] * PAULIS[1] + n[1] * PAULIS[2] + n[2] * PAULIS[3])
    return f.mu * m


def _apply(rho, op):
    rho = np.asarray(rho, dtype=complex)
    out = op @ rho @ op.conj().T
    tr = np.trace(out).real
    if tr <= tolerances.filter_trace:
        raise ValueError("filter annihilates the state (vanishing trace)")
    return out / tr


def apply_filter_a(rho, f):
    """Filter qubit A: (f x I) rho (f x I)^dagger, renormalized."""
    return _apply(rho, kron(filter_matrix(f), SIGMA0))


def apply_filter_b(rho, f):
    """Filter qubit B: (I x f) rho (I x f)^dagger, renormalized."""
    return _apply(rho, kron(SIGMA0, filter_matrix(f)))


def dephase(rho, strength, axis="z"):
    """Phase damping on qubit A along `axis`.

    In the eigenbasis of axis.sigma, coherences between the two eigenstates
    are multiplied by (1 - strength); populations and trace are untouched.
    Implemented as the random-unitary mixture
    rho -> (1 - s/2) rho + (s/2) (Z x I) rho (Z x I) with Z = axis.sigma,
    which is completely positive for any strength in [0, 1].
    """
    strength = float(strength)
    if not 0.0 <= strength <= 1.0:
        raise ValueError(f"dephasing strength must lie in [0, 1], got {strength}")
    rho = np.asarray(rho, dtype=complex)
    n = unit_direction(axis)
    z = n[0] * PAULIS[1] + n[1] * PAULIS[2] + n[2] * PAULIS[3]
    za = kron(z, SIGMA0)
    return (1.0 - 0.5 * strength) * rho + 0.5 * strength * (za @ rho @ za)


def local_rotate(rho, ua, ub):
    """Conjugate by a product unitary: (ua x ub) rho (ua x ub)^dagger."""
    ua = np.asarray(ua, dtype=complex)
    ub = np.asarray(ub, dtype=complex)
    for name, u in (("ua", ua), ("ub", ub)):
        dev = np.abs(u @ u.conj().T - SIGMA0).max()
        if dev > tolerances.unitarity:
            raise ValueError(f"{name} is not unitary (max |u u^dagger - I| = {dev:.3e})")
    u = kron(ua, ub)
    return u @ np.asarray(rho, dtype=complex) @ u.conj().T
