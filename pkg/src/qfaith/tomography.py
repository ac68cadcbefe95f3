"""Simulated 36-setting coincidence tomography and maximum-likelihood reconstruction.

Measurement model: both arms project onto one of the six single-qubit states
H, V, D, A, R, L (the eigenstates of the three Pauli operators), giving 36
projective settings with one detector per arm. Each setting accumulates
coincidences over a number of detector gates; the per-gate coincidence
probability is

    pair_rate * efficiency^2 * <ab|rho|ab>  +  2 * dark * (pair_rate * efficiency + dark)

where the second term collects first-order accidental coincidences from dark
counts. Counts are Poisson-distributed around mean * gates.

Reconstruction maximizes the Poisson log-likelihood sum_i (k_i ln mu_i - mu_i)
over physical states parameterized as rho = G G^dagger / Tr(G G^dagger) with a
lower-triangular complex G (16 real parameters), so positivity and unit trace
hold by construction. The analytic gradient in G-space is 2 * (B G) with
B = (A - Tr(A rho) I) / Tr(G G^dagger) and A = sum_i w_i P_i,
w_i = dL/dp_i; optimization uses L-BFGS-B on the normalized likelihood.
"""

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import metrics
from .linalg import PAULIS, SIGMA0, kron, tolerances
from .states import PauliRep, assert_density_matrix

PROJECTOR_KETS = {
    "H": np.array([1, 0], dtype=complex),
    "V": np.array([0, 1], dtype=complex),
    "D": np.array([1, 1], dtype=complex) / np.sqrt(2),
    "A": np.array([1, -1], dtype=complex) / np.sqrt(2),
    "R": np.array([1, 1j], dtype=complex) / np.sqrt(2),
    "L": np.array([1, -1j], dtype=complex) / np.sqrt(2),
}

#: fixed enumeration of the 36 settings (A label, B label)
SETTING_LABELS = tuple(itertools.product("HVDARL", repeat=2))

#: label -> (Pauli index, outcome sign)
PAULI_AXIS_OF = {
    "H": (3, +1.0),
    "V": (3, -1.0),
    "D": (1, +1.0),
    "A": (1, -1.0),
    "R": (2, +1.0),
    "L": (2, -1.0),
}


@dataclass
class CountRecord:
    """Accumulated coincidences for one projective setting."""

    a: str
    b: str
    gates: int
    coincidences: int

    def __post_init__(self):
        if self.a not in PROJECTOR_KETS or self.b not in PROJECTOR_KETS:
            raise ValueError(f"unknown setting labels ({self.a!r}, {self.b!r})")
        if self.gates <= 0:
            raise ValueError(f"gates must be positive, got {self.gates}")
        if not 0 <= self.coincidences <= self.gates:
            raise ValueError(
                f"coincidences must lie in [0, gates], got {self.coincidences} / {self.gates}"
            )


@dataclass
class TomoConfig:
    """Detection model parameters for simulation and likelihood evaluation."""

    pair_rate: float = 0.01
    efficiency: float = 0.2
    dark_prob: float = 4e-5
    gates: int = 50_000_000
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.pair_rate < 0.2:
            raise ValueError(f"pair_rate must lie in (0, 0.2), got {self.pair_rate}")
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError(f"efficiency must lie in (0, 1], got {self.efficiency}")
        if self.dark_prob < 0.0:
            raise ValueError(f"dark_prob must be non-negative, got {self.dark_prob}")
        if self.gates < 1:
            raise ValueError(f"gates must be at least 1, got {self.gates}")

    @property
    def signal_scale(self):
        """Per-gate factor multiplying the Born probability."""
        return self.pair_rate * self.efficiency**2

    @property
    def accidental_prob(self):
        """Per-gate accidental coincidence probability."""
        return 2.0 * self.dark_prob * (self.pair_rate * self.efficiency + self.dark_prob)


def setting_ket(a, b):
    """Product state |ab> for a pair of projector labels."""
    return np.kron(PROJECTOR_KETS[a], PROJECTOR_KETS[b])


def _setting_projectors():
    return np.stack(
        [np.outer(setting_ket(a, b), setting_ket(a, b).conj()) for a, b in SETTING_LABELS]
    )


_PROJECTORS = _setting_projectors()


def born_probabilities(rho):
    """<ab|rho|ab> for all 36 settings, in SETTING_LABELS order."""
    return np.einsum("sij,ji->s", _PROJECTORS, np.asarray(rho, dtype=complex)).real


def coincidence_means(rho, cfg):
    """Expected coincidence counts per setting (mean of the Poisson law)."""
    per_gate = cfg.signal_scale * born_probabilities(rho) + cfg.accidental_prob
    return cfg.gates * per_gate


def simulate_counts(rho, cfg, exact_means=False, rng=None):
    """Draw one simulated 36-setting data set.

    With `exact_means` the Poisson sampling is skipped and each record holds
    the rounded expected count (the noiseless limit used for consistency
    checks). `rng` overrides the generator derived from cfg.seed, which the
    bootstrap uses to draw independent replicas deterministically.
    """
    means = coincidence_means(rho, cfg)
    if exact_means:
        counts = np.rint(means).astype(np.int64)
    else:
        if rng is None:
            rng = np.random.default_rng(cfg.seed)
        counts = rng.poisson(means)
    counts = np.minimum(counts, cfg.gates)
    return [
        CountRecord(a=a, b=b, gates=cfg.gates, coincidences=int(k))
        for (a, b), k in zip(SETTING_LABELS, counts)
    ]


def _records_by_setting(records):
    """Validate completeness and return {(a, b): record}."""
    seen = {}
    for rec in records:
        key = (rec.a, rec.b)
        if key in seen:
            raise ValueError(f"duplicated setting {key}")
        seen[key] = rec
    missing = [lab for lab in SETTING_LABELS if lab not in seen]
    if missing:
        raise ValueError(f"missing settings: {missing}")
    extra = [key for key in seen if key not in set(SETTING_LABELS)]
    if extra:
        raise ValueError(f"unknown settings: {extra}")
    return seen


def linear_inversion(records):
    """Pauli coefficients estimated from normalized count ratios.

    Settings are grouped into the nine Pauli basis pairs; each group of four
    outcome combinations estimates one correlation entry and one copy of each
    marginal component (copies are averaged). The result can violate
    positivity; it only seeds the maximum-likelihood fit.
    """
    by_setting = _records_by_setting(records)
    t = np.zeros((3, 3))
    r_acc = np.zeros(3)
    s_acc = np.zeros(3)
    for m in (1, 2, 3):
        labels_a = [lab for lab, (ax, _) in PAULI_AXIS_OF.items() if ax == m]
        for n in (1, 2, 3):
            labels_b = [lab for lab, (ax, _) in PAULI_AXIS_OF.items() if ax == n]
            total = 0.0
            tt = rr = ss = 0.0
            for la in labels_a:
                for lb in labels_b:
                    k = by_setting[(la, lb)].coincidences
                    sa = PAULI_AXIS_OF[la][1]
                    sb = PAULI_AXIS_OF[lb][1]
                    total += k
                    tt += sa * sb * k
                    rr += sa * k
                    ss += sb * k
            if total <= 0:
                raise ValueError(f"no counts in basis pair ({m}, {n})")
            t[m - 1, n - 1] = tt / total
            r_acc[m - 1] += rr / total
            s_acc[n - 1] += ss / total
    return PauliRep(r=r_acc / 3.0, s=s_acc / 3.0, t=t)


def project_to_physical(rep, floor=1e-6):
    """Nearest-ish physical state from (possibly unphysical) Pauli coefficients.

    Eigenvalues of the Hermitian unit-trace matrix are clipped at `floor` and
    renormalized, keeping the seed of the likelihood fit full rank.
    """
    raw = kron(SIGMA0, SIGMA0).astype(complex)
    for i in range(3):
        raw += rep.r[i] * kron(PAULIS[i + 1], SIGMA0)
        raw += rep.s[i] * kron(SIGMA0, PAULIS[i + 1])
        for j in range(3):
            raw += rep.t[i, j] * kron(PAULIS[i + 1], PAULIS[j + 1])
    raw *= 0.25
    w, v = np.linalg.eigh(0.5 * (raw + raw.conj().T))
    w = np.clip(w, floor, None)
    rho = (v * w) @ v.conj().T
    return rho / np.trace(rho).real


@dataclass
class MleResult:
    """Outcome of a maximum-likelihood fit; `rho` is the best iterate either way."""

    rho: np.ndarray
    converged: bool
    iterations: int
    grad_norm: float
    log_likelihood: float


_LOWER = np.tril_indices(4, k=-1)
_N_PARAMS = 4 + 2 * len(_LOWER[0])


def _g_from_params(x):
    g = np.zeros((4, 4), dtype=complex)
    g[np.diag_indices(4)] = x[:4]
    g[_LOWER] = x[4:10] + 1j * x[10:16]
    return g


def _params_from_g(g):
    x = np.empty(_N_PARAMS)
    x[:4] = np.real(np.diag(g))
    x[4:10] = g[_LOWER].real
    x[10:16] = g[_LOWER].imag
    return x


def _neg_log_likelihood_and_grad(x, counts, gates, cfg):
    """Normalized negative Poisson log-likelihood and its gradient.

    With a config, the modeled mean is gates * (signal_scale * p + accidental);
    without one, an overall scale is profiled out analytically each call
    (its optimum is sum(k) / sum(gates * p)), which leaves the gradient
    through the scale zero at the profiled point.
    """
    g = _g_from_params(x)
    m = g @ g.conj().T
    tr = np.trace(m).real
    rho = m / tr
    p = np.clip(np.einsum("sij,ji->s", _PROJECTORS, rho).real, 1e-12, None)

    k_tot = counts.sum()
    if cfg is not None:
        mu = gates * (cfg.signal_scale * p + cfg.accidental_prob)
        dmu_dp = gates * cfg.signal_scale
    else:
        scale = k_tot / (gates * p).sum()
        mu = scale * gates * p
        dmu_dp = scale * gates

    ll = float((counts * np.log(mu) - mu).sum())
    w = (counts / mu - 1.0) * dmu_dp
    a_mat = np.tensordot(w, _PROJECTORS, axes=(0, 0))
    b_mat = (a_mat - np.trace(a_mat @ rho).real * np.eye(4)) / tr
    w_full = 2.0 * (b_mat @ g)
    grad = np.empty(_N_PARAMS)
    grad[:4] = np.real(np.diag(w_full))
    grad[4:10] = w_full[_LOWER].real
    grad[10:16] = w_full[_LOWER].imag

    norm = max(float(k_tot), 1.0)
    return -ll / norm, -grad / norm


def mle_reconstruct(records, config=None, grad_tol=1e-7, max_iter=100_000):
    """Maximum-likelihood state from a complete 36-setting record set.

    Parameters
    ----------
    records : iterable of CountRecord
        All 36 settings exactly once.
    config : TomoConfig, optional
        Detection model. When omitted, accidentals are not modeled and the
        overall count scale is profiled from the data.
    grad_tol : float
        Convergence threshold on the max-norm of the normalized gradient.
    max_iter : int
        Iteration cap; hitting it returns converged=False with the best iterate.
    """
    by_setting = _records_by_setting(records)
    ordered = [by_setting[lab] for lab in SETTING_LABELS]
    counts = np.array([rec.coincidences for rec in ordered], dtype=float)
    gates = np.array([rec.gates for rec in ordered], dtype=float)

    try:
        seed_rep = linear_inversion(ordered)
        rho0 = project_to_physical(seed_rep)
    except ValueError:
        rho0 = 0.25 * np.eye(4, dtype=complex)
    rho0 = 0.98 * rho0 + 0.02 * 0.25 * np.eye(4)
    x0 = _params_from_g(np.linalg.cholesky(rho0))

    res = minimize(
        _neg_log_likelihood_and_grad,
        x0,
        args=(counts, gates, config),
        jac=True,
        method="L-BFGS-B",
        options={"maxiter": max_iter, "maxfun": 10 * max_iter, "ftol": 1e-15, "gtol": grad_tol},
    )
    g = _g_from_params(res.x)
    m = g @ g.conj().T
    rho = m / np.trace(m).real
    grad_norm = float(np.abs(res.jac).max())
    converged = bool(res.success or grad_norm <= grad_tol)
    k_tot = max(float(counts.sum()), 1.0)
    return MleResult(
        rho=assert_density_matrix(rho, name="MLE reconstruction"),
        converged=converged,
        iterations=int(res.nit),
        grad_norm=grad_norm,
        log_likelihood=float(-res.fun * k_tot),
    )


@dataclass
class ErrorBarReport:
    """Point estimates plus parametric-bootstrap spread for concurrence and FEF."""

    concurrence: float
    fef: float
    faithful: bool
    concurrence_mean: float
    concurrence_std: float
    fef_mean: float
    fef_std: float
    resamples: int
    mle_failures: int


def metrics_with_errorbars(records, cfg, resamples=50):
    """Parametric bootstrap around the maximum-likelihood estimate.

    Counts are re-simulated from the fitted state `resamples` times (seeds
    derived from cfg.seed), each replica is refit, and the spread of the
    resulting concurrence and FEF is reported alongside the point estimates.
    """
    if resamples < 50:
        raise ValueError(f"resamples must be at least 50, got {resamples}")
    fit = mle_reconstruct(records, config=cfg)
    c_hat = metrics.concurrence(fit.rho)
    f_hat = metrics.fef_spectral(fit.rho)

    seeds = np.random.SeedSequence(cfg.seed).spawn(resamples)
    c_vals, f_vals = [], []
    failures = 0 if fit.converged else 1
    for child in seeds:
        rng = np.random.default_rng(child)
        replica = simulate_counts(fit.rho, cfg, rng=rng)
        refit = mle_reconstruct(replica, config=cfg)
        if not refit.converged:
            failures += 1
        c_vals.append(metrics.concurrence(refit.rho))
        f_vals.append(metrics.fef_spectral(refit.rho))

    c_vals = np.array(c_vals)
    f_vals = np.array(f_vals)
    return ErrorBarReport(
        concurrence=float(c_hat),
        fef=float(f_hat),
        faithful=bool(f_hat > 0.5 + tolerances.faithful_margin),
        concurrence_mean=float(c_vals.mean()),
        concurrence_std=float(c_vals.std(ddof=1)),
        fef_mean=float(f_vals.mean()),
        fef_std=float(f_vals.std(ddof=1)),
        resamples=resamples,
        mle_failures=failures,
    )


#: single-qubit rotation mapping the z-axis onto the x-axis on the Bloch sphere,
#: for data recorded with the H/V basis rotated a quarter turn
HV_TO_DA = np.array([[1, -1], [1, 1]], dtype=complex) / np.sqrt(2)
