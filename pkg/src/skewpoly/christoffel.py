"""Shift-transformation coefficients and their residual identities.

Each transformation relates the family at shift m to the family at shift m+1
with one factor of z; residuals are returned as polynomials so tests can
assert exact zero and diagnostics can point at the failing coefficient.

Coefficient conventions (ratios of tau values, boundary taus are 0):

    A_n^m  = P_{2n+1}^{(m)}(0) / P_{2n}^{(m)}(0) = d/dt_1 log tau_{2n}^{(m+1)}
    B_n^m  = tau_{2n+2}^{(m)} tau_{2n-2}^{(m+1)} / (tau_{2n}^{(m)} tau_{2n}^{(m+1)})
    C_n^m  = tau_{2n}^{(m)} tau_{2n+2}^{(m+1)} / (tau_{2n+2}^{(m)} tau_{2n}^{(m+1)})
    D_n^m  = d/dt_1 log tau_{2n+2}^{(m)}  (the zero-ratio form at shift m-1 is
             only defined for m >= 1 and is checked against this in the tests)

    xi_n^m  = tau_n^{(m)} tau_{n+1}^{(m+1)} / (tau_{n+1}^{(m)} tau_n^{(m+1)})
    eta_n^m = tau_{n+2}^{(m)} tau_{n-1}^{(m+1)} / (tau_{n+1}^{(m)} tau_n^{(m+1)})
"""

from __future__ import annotations

from dataclasses import dataclass

from .families import taus
from .moments import MomentSystem
from .poly import PolyInZ
from .scalars import exact_div


@dataclass(frozen=True)
class SopCoeffs:
    a: object
    b: object
    c: object
    d: object


@dataclass(frozen=True)
class PsopCoeffs:
    xi: object
    eta: object


def sop_coeffs(sys: MomentSystem, n: int, m: int) -> SopCoeffs:
    t = taus(sys)
    a = exact_div(t.sop_at_zero(2 * n + 1, m), t.sop_at_zero(2 * n, m))
    b = exact_div(t.tau(2 * n + 2, m) * t.tau(2 * n - 2, m + 1),
                  t.tau(2 * n, m) * t.tau(2 * n, m + 1))
    c = exact_div(t.tau(2 * n, m) * t.tau(2 * n + 2, m + 1),
                  t.tau(2 * n + 2, m) * t.tau(2 * n, m + 1))
    d = t.dt1_log_tau(2 * n + 2, m)
    return SopCoeffs(a, b, c, d)


def sop_coeff_d_ratio(sys: MomentSystem, n: int, m: int):
    """Zero-value form of D_n^m, defined for m >= 1 only."""
    if m < 1:
        raise ValueError("ratio form of D needs m >= 1")
    t = taus(sys)
    return exact_div(t.sop_at_zero(2 * n + 3, m - 1), t.sop_at_zero(2 * n + 2, m - 1))


def sop_transform_residual(sys: MomentSystem, n: int, m: int,
                           coeffs: SopCoeffs | None = None):
    """Residual pair of the two skew-orthogonal shift identities at (n, m)."""
    sys.require_exact()
    t = taus(sys)
    co = coeffs or sop_coeffs(sys, n, m)
    res1 = (t.sop(2 * n + 1, m) - co.a * t.sop(2 * n, m)
            - (t.sop(2 * n, m + 1) - co.b * t.sop(2 * n - 2, m + 1)).shift(1))
    res2 = (t.sop(2 * n + 2, m) - co.c * t.sop(2 * n, m)
            - (t.sop(2 * n + 1, m + 1) - co.d * t.sop(2 * n, m + 1)).shift(1))
    return res1, res2


def psop_coeffs(sys: MomentSystem, n: int, m: int, k: int = 1) -> PsopCoeffs:
    t = taus(sys)
    xi = exact_div(t.tau(n, m, k) * t.tau(n + 1, m + 1, k),
                   t.tau(n + 1, m, k) * t.tau(n, m + 1, k))
    eta = exact_div(t.tau(n + 2, m, k) * t.tau(n - 1, m + 1, k),
                    t.tau(n + 1, m, k) * t.tau(n, m + 1, k))
    return PsopCoeffs(xi, eta)


def psop_transform_residual(sys: MomentSystem, n: int, m: int, k: int = 1,
                            coeffs: PsopCoeffs | None = None) -> PolyInZ:
    """One-component partial-family residual at unified index n."""
    sys.require_exact()
    t = taus(sys)
    co = coeffs or psop_coeffs(sys, n, m, k)
    return (t.psop(n + 1, m, k) + co.xi * t.psop(n, m, k)
            - (t.psop(n, m + 1, k) + co.eta * t.psop(n - 1, m + 1, k)).shift(1))


def psop_multi_residuals(sys: MomentSystem, n: int, m: int, k: int,
                         swap_ef: bool = False):
    """Residual pair of the two multi-component transform identities.

    ``swap_ef`` deliberately exchanges the roles of the E and F coefficients
    (negative control)."""
    sys.require_exact()
    t = taus(sys)
    e = exact_div(t.tau(2 * n, m) * t.tau(2 * n + 1, m + 1, k),
                  t.tau(2 * n + 1, m, k) * t.tau(2 * n, m + 1))
    f = exact_div(t.tau(2 * n + 2, m) * t.tau(2 * n - 1, m + 1, k),
                  t.tau(2 * n + 1, m, k) * t.tau(2 * n, m + 1))
    if swap_ef:
        e, f = f, e
    g = exact_div(t.tau(2 * n + 1, m, k) * t.tau(2 * n + 2, m + 1),
                  t.tau(2 * n + 2, m) * t.tau(2 * n + 1, m + 1, k))
    h = exact_div(t.tau(2 * n + 3, m, k) * t.tau(2 * n, m + 1),
                  t.tau(2 * n + 2, m) * t.tau(2 * n + 1, m + 1, k))
    res1 = (t.psop(2 * n + 1, m, k) + e * t.sop(2 * n, m)
            - (t.sop(2 * n, m + 1) + f * t.psop(2 * n - 1, m + 1, k)).shift(1))
    res2 = (t.sop(2 * n + 2, m) + g * t.psop(2 * n + 1, m, k)
            - (t.psop(2 * n + 1, m + 1, k) + h * t.sop(2 * n, m + 1)).shift(1))
    return res1, res2


def laurent_toda_residual(sys: MomentSystem, n: int):
    """Under the laurent tag the two transforms close into one family."""
    sys.require_exact()
    if sys.constraint != "laurent":
        raise ValueError("toda reduction requires the laurent constraint tag")
    t = taus(sys)
    a_n = t.dt1_log_tau(2 * n, 0)
    a_n1 = t.dt1_log_tau(2 * n + 2, 0)
    b_n = exact_div(t.tau(2 * n - 2, 0) * t.tau(2 * n + 2, 0),
                    t.tau(2 * n, 0) * t.tau(2 * n, 0))
    res1 = (t.sop(2 * n + 1, 0) - a_n * t.sop(2 * n, 0)
            - (t.sop(2 * n, 0) - b_n * t.sop(2 * n - 2, 0)).shift(1))
    res2 = (t.sop(2 * n + 2, 0) - t.sop(2 * n, 0)
            - (t.sop(2 * n + 1, 0) - a_n1 * t.sop(2 * n, 0)).shift(1))
    return res1, res2


def laurent_lv_coeff_check(sys: MomentSystem, n: int):
    """xi_n + eta_n - 1 for the laurent partial family; exactly 0."""
    sys.require_exact()
    if sys.constraint != "laurent":
        raise ValueError("the lattice coefficient check requires the laurent tag")
    t = taus(sys)
    if n == 0:
        xi = t.dt1_log_tau(1, 0)
        eta = 0
    else:
        xi = t.dt1_log_tau(n + 1, 0) - t.dt1_log_tau(n, 0)
        eta = exact_div(t.tau(n + 2, 0) * t.tau(n - 1, 0),
                        t.tau(n, 0) * t.tau(n + 1, 0))
    return xi + eta - 1
