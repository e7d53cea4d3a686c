"""Pure-Python kernels (numpy-vectorized where it is natural).

Same contracts as the compiled ``_kernels`` module; selected by
:mod:`ermakov_susy.kernels` when the extension is missing.
"""
import cmath
import math

import numpy as np

from .errors import EigenNoConvergence, ParameterError, SeriesNonConvergence

_TWO_OVER_SQRTPI = 2.0 / math.sqrt(math.pi)
_EPS = 2.220446049250313e-16
ERF_SWITCH = 3.0
ERF_SATURATE = 6.0  # erfc(6) < 2^-53, so erf rounds to +-1
ZETA_BUDGET = 64.0
MAX_TERMS = 2000


def erf(x):
    """Error function, |error| < 1e-14 on the real line.

    Positive-term series ``e^{-x^2} sum 2^n x^{2n+1} / (2n+1)!!`` below
    ``|x| = 3`` (no cancellation), Lentz continued fraction for erfc above.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    ax = np.abs(x)

    small = ax < ERF_SWITCH
    if np.any(small):
        xs = x[small]
        x2 = xs * xs
        term = xs.copy()
        total = xs.copy()
        for n in range(1, MAX_TERMS):
            term = term * (2.0 * x2 / (2 * n + 1))
            total += term
            if np.all(np.abs(term) <= _EPS * 0.25 * np.abs(total)):
                break
        out[small] = _TWO_OVER_SQRTPI * np.exp(-x2) * total

    large = (ax >= ERF_SWITCH) & (ax < ERF_SATURATE)
    if np.any(large):
        xl = ax[large]
        out[large] = np.sign(x[large]) * (1.0 - _erfc_cf(xl))
    sat = ax >= ERF_SATURATE
    out[sat] = np.sign(x[sat])
    out[np.isnan(x)] = np.nan
    return out


def _erfc_cf(x):
    # erfc(x) sqrt(pi) e^{x^2} = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    tiny = 1e-300
    f = x.copy()
    C = f.copy()
    D = np.zeros_like(x)
    for n in range(1, MAX_TERMS):
        an = 0.5 * n
        D = x + an * D
        D = np.where(D == 0.0, tiny, D)
        C = x + an / C
        C = np.where(C == 0.0, tiny, C)
        D = 1.0 / D
        delta = C * D
        f = f * delta
        if np.all(np.abs(delta - 1.0) <= 2.0 * _EPS):
            break
    else:
        raise SeriesNonConvergence("erfc continued fraction did not converge")
    return np.exp(-x * x) / (math.sqrt(math.pi) * f)


def hyp1f1(a, c, zeta):
    """Kummer function 1F1(a; c; zeta) for real arguments.

    Negative ``zeta`` goes through Kummer's transformation
    ``1F1(a;c;z) = e^z 1F1(c-a;c;-z)`` so the summed series never alternates
    through large terms. Neumaier-compensated summation, term-ratio stop.
    """
    a = float(a)
    c = float(c)
    if c <= 0 and c == int(c):
        raise ParameterError(f"1F1 undefined for non-positive integer c = {c}")
    zeta = np.asarray(zeta, dtype=float)
    if np.any(np.abs(zeta) > ZETA_BUDGET):
        raise SeriesNonConvergence(
            f"|zeta| = {np.max(np.abs(zeta)):.6g} exceeds the series budget {ZETA_BUDGET}"
        )
    neg = zeta < 0
    out = np.empty_like(zeta)
    if np.any(~neg):
        out[~neg] = _kummer_series(a, c, zeta[~neg])
    if np.any(neg):
        zn = zeta[neg]
        out[neg] = np.exp(zn) * _kummer_series(c - a, c, -zn)
    return out


def _kummer_series(a, c, z):
    term = np.ones_like(z)
    total = np.ones_like(z)
    comp = np.zeros_like(z)
    for n in range(MAX_TERMS):
        ratio = (a + n) / (c + n) / (n + 1)
        term = term * ratio * z
        t = total + term
        comp += np.where(np.abs(total) >= np.abs(term), (total - t) + term, (term - t) + total)
        total = t
        done = (np.abs(term) <= _EPS * 0.25 * np.abs(total + comp)) & (
            np.abs((a + n + 1) * z) <= np.abs((c + n + 1) * (n + 2))
        )
        if np.all(done | (term == 0.0)):
            return total + comp
    raise SeriesNonConvergence(f"1F1({a}, {c}; z) series did not converge in {MAX_TERMS} terms")


def tridiag_eigvals(diag, off, max_iter=60):
    """All eigenvalues of a complex *symmetric* tridiagonal matrix.

    Implicit QL with Wilkinson-type shifts using complex orthogonal (not
    unitary) rotations. ``diag`` has length n, ``off`` length n-1.
    """
    d = [complex(v) for v in diag]
    n = len(d)
    e = [complex(v) for v in off] + [0j]
    if len(e) != n:
        raise ParameterError("off-diagonal must have length n-1")
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise EigenNoConvergence(f"QL: no convergence for eigenvalue {l} after {max_iter} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = cmath.sqrt(g * g + 1.0)
            if abs(g - r) > abs(g + r):
                r = -r
            g = d[m] - d[l] + e[l] / (g + r)
            s = c = 1.0 + 0j
            p = 0j
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = cmath.sqrt(f * f + g * g)
                e[i + 1] = r
                if r == 0:
                    d[i + 1] -= p
                    e[m] = 0j
                    deflated = True
                    break
                if abs(r) < 1e-8 * (abs(f) + abs(g)):
                    raise EigenNoConvergence("QL: isotropic breakdown of complex rotation")
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
            d[l] -= p
            e[l] = g
            e[m] = 0j
    return np.array(d, dtype=complex)
