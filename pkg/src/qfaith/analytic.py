"""Closed forms and boundary solvers for filtered rank-2 Bell-diagonal states.

The scenario family: the rank-2 state sin^2(theta)|phi+><phi+| +
cos^2(theta)|phi-><phi-| (correlation diag(-cos 2theta, cos 2theta, 1),
concurrence C0 = |cos 2theta|) subjected to one or two local filters. Closed
forms here are cross-validated against the apply-filter pipeline in the test
suite; the scan helpers do that cross-validation row by row.

Sign convention: the closed forms take theta itself, so cos(2 theta) is
signed. theta < pi/4 puts the weight on phi-, theta > pi/4 on phi+; which
Bell state dominates matters only when both qubits are filtered.
"""

import numpy as np

from . import channels, metrics, states
from .channels import LocalFilter
from .linalg import svd3
from .states import to_pauli

_DEGENERATE_DEN = 1e-12


def theta_from_correlation(c):
    """The theta in [0, pi/2) whose rank-2 state has cos(2 theta) = c.

    c is signed: positive weights phi- more heavily, negative weights phi+.
    The concurrence of the resulting state is |c|.
    """
    c = float(c)
    if not -1.0 < c <= 1.0:
        raise ValueError(f"correlation amplitude must lie in (-1, 1], got {c}")
    return 0.5 * np.arccos(c)


def _k(nu):
    """Correlation damping factor (1 - nu^2) / (1 + nu^2) of a single filter."""
    return (1.0 - nu**2) / (1.0 + nu**2)


def conc_single(theta, nu):
    """Concurrence after one filter of magnitude nu: |cos 2theta| (1-nu^2)/(1+nu^2).

    Independent of the filter direction.
    """
    return abs(np.cos(2.0 * theta)) * _k(nu)


def fef_single_x(theta, nu):
    """FEF after one x-oriented filter: (1 + C0 + (C0 + 1) k) / 4 with k = (1-nu^2)/(1+nu^2).

    k equals the concurrence ratio C/C0, so the FEF is monotone in the
    surviving concurrence at fixed C0. Written in terms of k the formula has
    no singularity at C0 = 0.
    """
    c0 = abs(np.cos(2.0 * theta))
    return 0.25 * (1.0 + c0 + (c0 + 1.0) * _k(nu))


def fef_single_z(theta, nu):
    """FEF after one z-oriented filter, via the closed form over the damped correlations.

    The filtered correlation diagonal is (-c k, c k, 1) with c = cos 2theta,
    which evaluates to (1 + |c| k) / 2: strictly above 1/2 whenever any
    concurrence survives, so this orientation never produces an unfaithful
    state.
    """
    c = np.cos(2.0 * theta)
    return metrics.fef_closed_form(np.array([-c * _k(nu), c * _k(nu), 1.0]))


def unfaithful_region(c0, c):
    """Whether (C0, C) lies in the entangled-but-undetectable region: C <= C0 (1-C0)/(1+C0)."""
    c0 = float(c0)
    c = float(c)
    if not 0.0 <= c <= c0 <= 1.0:
        raise ValueError(f"need 0 <= C <= C0 <= 1, got C0={c0}, C={c}")
    return c <= c0 * (1.0 - c0) / (1.0 + c0)


def unfaithful_boundary(c0):
    """Largest concurrence that is still unfaithful at initial concurrence c0."""
    return c0 * (1.0 - c0) / (1.0 + c0)


def critical_nu_single(theta):
    """Smallest x-filter magnitude at which the filtered state's FEF reaches 1/2.

    Solving (1 - nu^2)/(1 + nu^2) = (1 - C0)/(1 + C0) gives nu* = sqrt(C0).
    """
    c0 = abs(np.cos(2.0 * theta))
    if c0 >= 1.0 - 1e-15:
        raise ValueError("a maximally entangled start never becomes unfaithful (C0 = 1)")
    if c0 <= 1e-15:
        raise ValueError("the state is already separable at theta = pi/4 (C0 = 0)")
    return float(np.sqrt(c0))


def _two_filter_denominator(theta, nu_a, nu_b):
    den = (nu_a**2 + 1.0) * (nu_b**2 + 1.0) - 4.0 * nu_a * nu_b * np.cos(2.0 * theta)
    if den <= _DEGENERATE_DEN:
        raise ValueError("degenerate two-filter denominator (simultaneous extinction)")
    return den


def conc_two(theta, nu_a, nu_b):
    """Concurrence after x-filters of magnitudes nu_a, nu_b on the two qubits."""
    num = abs((nu_a**2 - 1.0) * (nu_b**2 - 1.0) * np.cos(2.0 * theta))
    return num / _two_filter_denominator(theta, nu_a, nu_b)


def fef_two(theta, nu_a, nu_b):
    """FEF after x-filters on both qubits.

    max(sin^2(theta) (nu_a nu_b + 1)^2, cos^2(theta) (nu_a nu_b - 1)^2)
    over the same denominator as :func:`conc_two`.
    """
    den = _two_filter_denominator(theta, nu_a, nu_b)
    plus = np.sin(theta) ** 2 * (nu_a * nu_b + 1.0) ** 2
    minus = np.cos(theta) ** 2 * (nu_a * nu_b - 1.0) ** 2
    return max(plus, minus) / den


def fef_two_max(theta, nu_a, tol=1e-8):
    """(nu_b, FEF) at the maximum of fef_two over nu_b in [0, 1].

    Found numerically: a coarse grid locates the basin, golden-section search
    refines it. This is the trusted value; see
    :func:`fef_two_peak_formula` for a closed-form candidate that must be
    checked against it before use.
    """
    grid = np.linspace(0.0, 1.0, 201)
    vals = np.array([fef_two(theta, nu_a, nb) for nb in grid])
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]

    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = fef_two(theta, nu_a, c)
    fd = fef_two(theta, nu_a, d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fef_two(theta, nu_a, c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fef_two(theta, nu_a, d)
    nu_b = 0.5 * (a + b)
    return float(nu_b), float(fef_two(theta, nu_a, nu_b))


def fef_two_peak_formula(theta, nu_a):
    """Closed-form candidate for the peak two-filter FEF.

    Known to disagree with the numeric maximum over part of the parameter
    space; use :func:`fef_two_max_discrepancy` to quantify the residual
    before trusting it anywhere.
    """
    c2 = np.cos(2.0 * theta)
    c4 = np.cos(4.0 * theta)
    den = 1.0 + nu_a**4 - 2.0 * nu_a * c4
    plus = ((1.0 + nu_a**2) ** 2 + 4.0 * nu_a**2 * c2) * np.sin(theta) ** 2
    minus = ((1.0 + nu_a**2) ** 2 - 4.0 * nu_a**2 * c2) * np.cos(theta) ** 2
    return max(plus, minus) / den


def fef_two_max_discrepancy(theta, nu_a):
    """|numeric peak - closed-form candidate|; beyond 1e-6 the candidate is unreliable."""
    _, f_max = fef_two_max(theta, nu_a)
    return abs(f_max - fef_two_peak_formula(theta, nu_a))


def crossing_nu_b(theta, nu_a, bracket=(0.0, 1.0), tol=1e-10):
    """The nu_b at which the two-filter FEF crosses 1/2, by bisection.

    Requires a sign change of fef_two - 1/2 over the bracket; returns None
    when the curve stays on one side.
    """
    lo, hi = bracket
    f_lo = fef_two(theta, nu_a, lo) - 0.5
    f_hi = fef_two(theta, nu_a, hi) - 0.5
    if f_lo == 0.0:
        return float(lo)
    if f_hi == 0.0:
        return float(hi)
    if f_lo * f_hi > 0:
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = fef_two(theta, nu_a, mid) - 0.5
        if f_mid == 0.0:
            return float(mid)
        if f_lo * f_mid < 0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return float(0.5 * (lo + hi))


def _filtered_single(theta, nu, orientation):
    """Pipeline state: rank-2 Bell-diagonal state with one filter applied to qubit A."""
    rho = states.rank2_bd(theta)
    return channels.apply_filter_a(rho, LocalFilter(nu=nu, n_hat=channels.unit_direction(orientation)))


def _filtered_two(theta, nu_a, nu_b, orientation):
    rho = states.rank2_bd(theta)
    n = channels.unit_direction(orientation)
    rho = channels.apply_filter_a(rho, LocalFilter(nu=nu_a, n_hat=n))
    return channels.apply_filter_b(rho, LocalFilter(nu=nu_b, n_hat=n))


SCAN_SINGLE_COLUMNS = (
    "theta",
    "nu",
    "conc_closed",
    "conc_pipeline",
    "fef_closed",
    "fef_pipeline",
    "faithful",
)

SCAN_TWO_COLUMNS = ("theta", "nu_a", "nu_b", "conc", "fef", "faithful")


def scan_single(thetas, nus, orientation="x"):
    """Grid scan of the single-filter scenario.

    One row per (theta, nu) point with closed-form and pipeline values side
    by side. For 'x' and 'z' orientations the dedicated formulas provide the
    closed column; for any other direction the closed column comes from the
    correlation-diagonal closed form of the constructed state, which is still
    an independent route from the spectral pipeline value.
    """
    label = orientation if isinstance(orientation, str) else "n"
    rows = []
    for theta in np.atleast_1d(np.asarray(thetas, dtype=float)):
        for nu in np.atleast_1d(np.asarray(nus, dtype=float)):
            rho = _filtered_single(theta, nu, orientation)
            c_pipe = metrics.concurrence(rho)
            f_pipe = metrics.fef_spectral(rho)
            c_closed = conc_single(theta, nu)
            if label == "x":
                f_closed = fef_single_x(theta, nu)
            elif label == "z":
                f_closed = fef_single_z(theta, nu)
            else:
                _, d, _ = svd3(to_pauli(rho).t)
                f_closed = metrics.fef_closed_form(d)
            rows.append(
                (
                    float(theta),
                    float(nu),
                    float(c_closed),
                    float(c_pipe),
                    float(f_closed),
                    float(f_pipe),
                    bool(metrics.is_faithful(rho)),
                )
            )
    return rows


def scan_two(thetas, nu_as, nu_bs, orientation="x", crosscheck_tol=1e-9):
    """Grid scan of the two-filter scenario, one row per (theta, nu_a, nu_b).

    For the x orientation every row is cross-validated against the closed
    forms; a disagreement beyond `crosscheck_tol` raises, since it would mean
    the pipeline and the formulas have diverged.
    """
    label = orientation if isinstance(orientation, str) else "n"
    rows = []
    for theta in np.atleast_1d(np.asarray(thetas, dtype=float)):
        for nu_a in np.atleast_1d(np.asarray(nu_as, dtype=float)):
            for nu_b in np.atleast_1d(np.asarray(nu_bs, dtype=float)):
                rho = _filtered_two(theta, nu_a, nu_b, orientation)
                c = metrics.concurrence(rho)
                f = metrics.fef_spectral(rho)
                if label == "x":
                    dc = abs(c - conc_two(theta, nu_a, nu_b))
                    df = abs(f - fef_two(theta, nu_a, nu_b))
                    if dc > crosscheck_tol or df > crosscheck_tol:
                        raise AssertionError(
                            f"closed form and pipeline disagree at "
                            f"(theta={theta}, nu_a={nu_a}, nu_b={nu_b}): "
                            f"dC={dc:.3e}, dF={df:.3e}"
                        )
                rows.append(
                    (
                        float(theta),
                        float(nu_a),
                        float(nu_b),
                        float(c),
                        float(f),
                        bool(metrics.is_faithful(rho)),
                    )
                )
    return rows
