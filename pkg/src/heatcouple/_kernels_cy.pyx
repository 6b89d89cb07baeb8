# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-step kernels; mirrors ``_kernels_py`` function for function."""

from libc.math cimport exp, fabs, log, round as c_round

import numpy as np

from .errors import DomainError, SingularSystemError

BACKEND = "cython"

PIVOT_FLOOR = 1e-300

cdef double _PIVOT_FLOOR = 1e-300
cdef int _INT_EXP_LIMIT = 16


cdef inline double _int_pow(double t, int n) noexcept nogil:
    cdef double r = 1.0
    cdef int i
    for i in range(n if n >= 0 else -n):
        r *= t
    return 1.0 / r if n < 0 else r


cdef bint _small_int_exponent(double a, int* n) noexcept nogil:
    cdef double rounded = c_round(a)
    if fabs(a - rounded) <= 1e-12 * max(1.0, fabs(a)) and fabs(rounded) <= _INT_EXP_LIMIT:
        n[0] = <int> rounded
        return True
    return False


def field_power(double[::1] values, double a):
    """Elementwise values**a: repeated multiplication for small integer a,
    exp(a*log(v)) otherwise (positive values only)."""
    cdef Py_ssize_t m = values.shape[0], i
    cdef int n = 0
    out = np.empty(m)
    cdef double[::1] o = out
    if _small_int_exponent(a, &n):
        if n < 0:
            for i in range(m):
                if values[i] == 0.0:
                    raise DomainError(f"zero temperature with negative exponent a={a}")
        with nogil:
            for i in range(m):
                o[i] = _int_pow(values[i], n)
        return out
    for i in range(m):
        if values[i] <= 0.0:
            raise DomainError(f"non-positive temperature with non-integer exponent a={a}")
    with nogil:
        for i in range(m):
            o[i] = exp(a * log(values[i]))
    return out


def thomas_solve(double[::1] lower, double[::1] diag, double[::1] upper,
                 double[::1] rhs):
    """Direct elimination for a tridiagonal system, no pivoting."""
    cdef Py_ssize_t m = diag.shape[0], i
    cp_arr = np.zeros(m - 1 if m > 1 else 0)
    x_arr = np.empty(m)
    cdef double[::1] cp = cp_arr
    cdef double[::1] x = x_arr
    cdef double piv = diag[0]
    cdef Py_ssize_t bad = -1

    if fabs(piv) < _PIVOT_FLOOR:
        raise SingularSystemError("zero pivot in row 0")
    if m > 1:
        cp[0] = upper[0] / piv
    x[0] = rhs[0] / piv
    with nogil:
        for i in range(1, m):
            piv = diag[i] - lower[i - 1] * cp[i - 1]
            if fabs(piv) < _PIVOT_FLOOR:
                bad = i
                break
            if i < m - 1:
                cp[i] = upper[i] / piv
            x[i] = (rhs[i] - lower[i - 1] * x[i - 1]) / piv
    if bad >= 0:
        raise SingularSystemError(f"zero pivot in row {bad}")
    with nogil:
        for i in range(m - 2, -1, -1):
            x[i] = x[i] - cp[i] * x[i + 1]
    return x_arr


def tridiag_matvec(double[::1] lower, double[::1] diag, double[::1] upper,
                   double[::1] v):
    cdef Py_ssize_t m = diag.shape[0], i
    out = np.empty(m)
    cdef double[::1] o = out
    if m == 1:
        o[0] = diag[0] * v[0]
        return out
    with nogil:
        # ascending column order, matching a dense row-times-vector product
        o[0] = diag[0] * v[0] + upper[0] * v[1]
        for i in range(1, m - 1):
            o[i] = lower[i - 1] * v[i - 1] + diag[i] * v[i] + upper[i] * v[i + 1]
        o[m - 1] = lower[m - 2] * v[m - 2] + diag[m - 1] * v[m - 1]
    return out


def residual_interior(double[::1] t_new, double[::1] t_old, double a,
                      double beta):
    """Nonlinear implicit residual at the interior nodes.

    beta = gamma*dt/(2*dx^2); the braced flux terms use the new-level field,
    whose end entries hold the fixed boundary temperatures.
    """
    cdef Py_ssize_t n = t_new.shape[0], k
    pa_arr = field_power(np.asarray(t_new), a)
    cdef double[::1] pa = pa_arr
    out = np.empty(n - 2)
    cdef double[::1] f = out
    cdef double tl, tc, tr, pal, pac, par, braces
    with nogil:
        for k in range(1, n - 1):
            tl = t_new[k - 1]
            tc = t_new[k]
            tr = t_new[k + 1]
            pal = pa[k - 1]
            pac = pa[k]
            par = pa[k + 1]
            braces = (par * tr - par * tc + pac * tr - 2.0 * (pac * tc)
                      + pac * tl - pal * tc + pal * tl)
            f[k - 1] = tc - t_old[k] - beta * braces
    return out


def jacobian_bands(double[::1] t_new, double a, double beta):
    """Bands of the residual Jacobian over the interior unknowns."""
    cdef Py_ssize_t n = t_new.shape[0], m = n - 2, k, i
    pa_arr = field_power(np.asarray(t_new), a)
    cdef double[::1] pa = pa_arr
    sub_arr = np.empty(m - 1 if m > 1 else 0)
    diag_arr = np.empty(m)
    sup_arr = np.empty(m - 1 if m > 1 else 0)
    cdef double[::1] sub = sub_arr
    cdef double[::1] diag = diag_arr
    cdef double[::1] sup = sup_arr
    cdef double tl, tc, tr, pal, pac, par, pamc
    with nogil:
        for k in range(1, n - 1):
            i = k - 1
            tl = t_new[k - 1]
            tc = t_new[k]
            tr = t_new[k + 1]
            pal = pa[k - 1]
            pac = pa[k]
            par = pa[k + 1]
            pamc = pac / tc  # T_k**(a-1)
            diag[i] = 1.0 - beta * (-par + a * pamc * tr - 2.0 * (a + 1.0) * pac
                                    + a * pamc * tl - pal)
            # rows next to a boundary lose the band that would couple to the
            # fixed node
            if i > 0:
                sub[i - 1] = -beta * (pac - a * (pal / tl) * tc + (a + 1.0) * pal)
            if i < m - 1:
                sup[i] = -beta * (pac - a * (par / tr) * tc + (a + 1.0) * par)
    return sub_arr, diag_arr, sup_arr


def lagged_bands(double[::1] t_diff, double[::1] t_rhs, double a, double beta):
    """Linear system with diffusivities lagged to ``t_diff`` and right-hand
    side taken from ``t_rhs``; known boundary terms are moved to the rhs."""
    cdef Py_ssize_t n = t_diff.shape[0], m = n - 2, k, i
    pa_arr = field_power(np.asarray(t_diff), a)
    cdef double[::1] pa = pa_arr
    sub_arr = np.empty(m - 1 if m > 1 else 0)
    diag_arr = np.empty(m)
    sup_arr = np.empty(m - 1 if m > 1 else 0)
    rhs_arr = np.empty(m)
    cdef double[::1] sub = sub_arr
    cdef double[::1] diag = diag_arr
    cdef double[::1] sup = sup_arr
    cdef double[::1] rhs = rhs_arr
    with nogil:
        for k in range(1, n - 1):
            i = k - 1
            diag[i] = 1.0 + beta * (pa[k + 1] + 2.0 * pa[k] + pa[k - 1])
            rhs[i] = t_rhs[k]
            if i > 0:
                sub[i - 1] = -beta * (pa[k - 1] + pa[k])
            if i < m - 1:
                sup[i] = -beta * (pa[k + 1] + pa[k])
        rhs[0] += beta * (pa[0] + pa[1]) * t_rhs[0]
        rhs[m - 1] += beta * (pa[n - 1] + pa[n - 2]) * t_rhs[n - 1]
    return sub_arr, diag_arr, sup_arr, rhs_arr
