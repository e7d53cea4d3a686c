# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the routines in ``_fallback``.

Scalar loops over typed memoryviews; identical algorithms and stopping rules.
"""
import numpy as np

from libc.math cimport exp, fabs, sqrt, M_PI

from .errors import EigenNoConvergence, ParameterError, SeriesNonConvergence

cdef extern from "complex.h" nogil:
    double complex csqrt(double complex)
    double cabs(double complex)

cdef double EPS = 2.220446049250313e-16
cdef double ERF_SWITCH = 3.0
cdef double ERF_SATURATE = 6.0
cdef double ZETA_BUDGET = 64.0
cdef int MAX_TERMS = 2000


cdef int _erf_scalar(double x, double* out) nogil:
    cdef double ax = fabs(x), x2, term, total, f, C, D, an, delta
    cdef int n
    if ax < ERF_SWITCH:
        x2 = x * x
        term = x
        total = x
        for n in range(1, MAX_TERMS):
            term = term * (2.0 * x2 / (2 * n + 1))
            total += term
            if fabs(term) <= EPS * 0.25 * fabs(total):
                break
        out[0] = 2.0 / sqrt(M_PI) * exp(-x2) * total
        return 0
    if x != x:
        out[0] = x
        return 0
    if ax >= ERF_SATURATE:
        out[0] = 1.0 if x > 0 else -1.0
        return 0
    f = ax
    C = f
    D = 0.0
    for n in range(1, MAX_TERMS):
        an = 0.5 * n
        D = ax + an * D
        if D == 0.0:
            D = 1e-300
        C = ax + an / C
        if C == 0.0:
            C = 1e-300
        D = 1.0 / D
        delta = C * D
        f = f * delta
        if fabs(delta - 1.0) <= 2.0 * EPS:
            out[0] = 1.0 - exp(-ax * ax) / (sqrt(M_PI) * f)
            if x < 0:
                out[0] = -out[0]
            return 0
    return 1


def erf(x):
    cdef double[::1] xv = np.ascontiguousarray(np.ravel(np.asarray(x, dtype=float)))
    res = np.empty(xv.shape[0])
    cdef double[::1] rv = res
    cdef Py_ssize_t i
    cdef int bad = 0
    with nogil:
        for i in range(xv.shape[0]):
            bad |= _erf_scalar(xv[i], &rv[i])
    if bad:
        raise SeriesNonConvergence("erfc continued fraction did not converge")
    return res.reshape(np.shape(x))


cdef int _kummer_scalar(double a, double c, double z, double* out) nogil:
    cdef double term = 1.0, total = 1.0, comp = 0.0, t
    cdef int n
    for n in range(MAX_TERMS):
        term = term * ((a + n) / (c + n) / (n + 1)) * z
        t = total + term
        if fabs(total) >= fabs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        if term == 0.0 or (fabs(term) <= EPS * 0.25 * fabs(total + comp)
                           and fabs((a + n + 1) * z) <= fabs((c + n + 1) * (n + 2))):
            out[0] = total + comp
            return 0
    return 1


def hyp1f1(double a, double c, zeta):
    if c <= 0 and c == int(c):
        raise ParameterError(f"1F1 undefined for non-positive integer c = {c}")
    arr = np.asarray(zeta, dtype=float)
    if arr.size and np.max(np.abs(arr)) > ZETA_BUDGET:
        raise SeriesNonConvergence(
            f"|zeta| = {np.max(np.abs(arr)):.6g} exceeds the series budget {ZETA_BUDGET}"
        )
    cdef double[::1] zv = np.ascontiguousarray(np.ravel(arr))
    res = np.empty(zv.shape[0])
    cdef double[::1] rv = res
    cdef Py_ssize_t i
    cdef int bad = 0
    with nogil:
        for i in range(zv.shape[0]):
            if zv[i] < 0:
                bad |= _kummer_scalar(c - a, c, -zv[i], &rv[i])
                rv[i] = exp(zv[i]) * rv[i]
            else:
                bad |= _kummer_scalar(a, c, zv[i], &rv[i])
    if bad:
        raise SeriesNonConvergence(f"1F1({a}, {c}; z) series did not converge in {MAX_TERMS} terms")
    return res.reshape(arr.shape)


cdef int _tql(double complex[::1] d, double complex[::1] e, int max_iter) nogil:
    cdef Py_ssize_t n = d.shape[0], l, m, i
    cdef int it
    cdef double dd
    cdef double complex g, r, s, c, p, f, b
    cdef bint deflated
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = cabs(d[m]) + cabs(d[m + 1])
                if cabs(e[m]) <= EPS * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                return 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = csqrt(g * g + 1.0)
            if cabs(g - r) > cabs(g + r):
                r = -r
            g = d[m] - d[l] + e[l] / (g + r)
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = csqrt(f * f + g * g)
                e[i + 1] = r
                if r == 0:
                    d[i + 1] = d[i + 1] - p
                    e[m] = 0.0
                    deflated = True
                    break
                if cabs(r) < 1e-8 * (cabs(f) + cabs(g)):
                    return 2
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if deflated:
                continue
            d[l] = d[l] - p
            e[l] = g
            e[m] = 0.0
    return 0


def tridiag_eigvals(diag, off, int max_iter=60):
    dv = np.array(diag, dtype=complex)
    n = dv.shape[0]
    ev = np.zeros(n, dtype=complex)
    if np.shape(off)[0] != n - 1:
        raise ParameterError("off-diagonal must have length n-1")
    ev[: n - 1] = off
    cdef double complex[::1] d = dv
    cdef double complex[::1] e = ev
    cdef int status
    with nogil:
        status = _tql(d, e, max_iter)
    if status == 1:
        raise EigenNoConvergence(f"QL: no convergence after {max_iter} sweeps")
    if status == 2:
        raise EigenNoConvergence("QL: isotropic breakdown of complex rotation")
    return dv
