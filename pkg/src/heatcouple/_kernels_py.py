"""Pure-NumPy per-step kernels.

Drop-in equivalents of the compiled module ``_kernels_cy``; selected by
:mod:`heatcouple.backend` when the extension is unavailable.  All functions
expect C-contiguous float64 arrays; callers normalize their inputs.
"""
from __future__ import annotations

import numpy as np

from .errors import DomainError, SingularSystemError

BACKEND = "python"

PIVOT_FLOOR = 1e-300

# largest |exponent| handled by the repeated-multiplication fast path
_INT_EXP_LIMIT = 16


def _small_int_exponent(a: float) -> int | None:
    n = int(round(a))
    if abs(a - n) <= 1e-12 * max(1.0, abs(a)) and abs(n) <= _INT_EXP_LIMIT:
        return n
    return None


def field_power(values: np.ndarray, a: float) -> np.ndarray:
    """Elementwise values**a: repeated multiplication for small integer a,
    exp(a*log(v)) otherwise (positive values only)."""
    n = _small_int_exponent(a)
    if n is not None:
        if n < 0 and np.any(values == 0.0):
            raise DomainError(f"zero temperature with negative exponent a={a}")
        out = np.ones_like(values)
        for _ in range(abs(n)):
            out *= values
        return 1.0 / out if n < 0 else out
    if np.any(values <= 0.0):
        raise DomainError(f"non-positive temperature with non-integer exponent a={a}")
    return np.exp(a * np.log(values))


def thomas_solve(lower: np.ndarray, diag: np.ndarray, upper: np.ndarray,
                 rhs: np.ndarray) -> np.ndarray:
    """Direct elimination for a tridiagonal system, no pivoting."""
    m = diag.shape[0]
    a = lower.tolist()
    b = diag.tolist()
    c = upper.tolist()
    d = rhs.tolist()

    cp = [0.0] * (m - 1)
    dp = [0.0] * m
    piv = b[0]
    if abs(piv) < PIVOT_FLOOR:
        raise SingularSystemError("zero pivot in row 0")
    if m > 1:
        cp[0] = c[0] / piv
    dp[0] = d[0] / piv
    for i in range(1, m):
        piv = b[i] - a[i - 1] * cp[i - 1]
        if abs(piv) < PIVOT_FLOOR:
            raise SingularSystemError(f"zero pivot in row {i}")
        if i < m - 1:
            cp[i] = c[i] / piv
        dp[i] = (d[i] - a[i - 1] * dp[i - 1]) / piv

    x = dp
    for i in range(m - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return np.asarray(x)


def tridiag_matvec(lower: np.ndarray, diag: np.ndarray, upper: np.ndarray,
                   v: np.ndarray) -> np.ndarray:
    # accumulate in ascending column order so the result matches a dense
    # row-times-vector product term for term
    out = np.zeros_like(v)
    out[1:] += lower * v[:-1]
    out += diag * v
    out[:-1] += upper * v[1:]
    return out


def residual_interior(t_new: np.ndarray, t_old: np.ndarray, a: float,
                      beta: float) -> np.ndarray:
    """Nonlinear implicit residual at the interior nodes.

    beta = gamma*dt/(2*dx^2); the braced flux terms use the new-level field,
    whose end entries hold the fixed boundary temperatures.
    """
    pa = field_power(t_new, a)
    pa1 = pa * t_new
    c = t_new[1:-1]
    braces = (pa1[2:] - pa[2:] * c + pa[1:-1] * t_new[2:] - 2.0 * pa1[1:-1]
              + pa[1:-1] * t_new[:-2] - pa[:-2] * c + pa1[:-2])
    return c - t_old[1:-1] - beta * braces


def jacobian_bands(t_new: np.ndarray, a: float, beta: float):
    """Bands of the residual Jacobian over the interior unknowns."""
    pa = field_power(t_new, a)
    pam1 = pa / t_new  # T**(a-1)
    c = t_new[1:-1]
    pac = pa[1:-1]
    pal = pa[:-2]
    par = pa[2:]
    diag = 1.0 - beta * (-par + a * pam1[1:-1] * t_new[2:] - 2.0 * (a + 1.0) * pac
                         + a * pam1[1:-1] * t_new[:-2] - pal)
    sub = -beta * (pac - a * pam1[:-2] * c + (a + 1.0) * pal)
    sup = -beta * (pac - a * pam1[2:] * c + (a + 1.0) * par)
    # rows next to a boundary lose the band that would couple to the fixed node
    return sub[1:], diag, sup[:-1]


def lagged_bands(t_diff: np.ndarray, t_rhs: np.ndarray, a: float, beta: float):
    """Linear system with diffusivities lagged to ``t_diff`` and right-hand
    side taken from ``t_rhs``; known boundary terms are moved to the rhs."""
    pa = field_power(t_diff, a)
    sub = -beta * (pa[:-2] + pa[1:-1])
    diag = 1.0 + beta * (pa[2:] + 2.0 * pa[1:-1] + pa[:-2])
    sup = -beta * (pa[2:] + pa[1:-1])
    rhs = t_rhs[1:-1].copy()
    rhs[0] += beta * (pa[0] + pa[1]) * t_rhs[0]
    rhs[-1] += beta * (pa[-1] + pa[-2]) * t_rhs[-1]
    return sub[1:], diag, sup[:-1], rhs
