"""Parametric solutions of the Ermakov equation.

Given two independent solutions ``z, v`` of ``u'' = (V - eps) u`` with
Wronskian ``w0``, every real positive

    alpha = sqrt(a v^2 + b v z + c z^2)

solves ``alpha'' = (V - eps) alpha + lambda0 / alpha^3`` with
``lambda0 = -w0^2 (b^2 - 4ac) / 4``.
"""
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d
from scipy.optimize import minimize_scalar

from .errors import (
    NonRealLambda0,
    NotPositive,
    NotRealQuadraticForm,
    QuadratureFailure,
    ZeroCrossing,
)
from .jets import JetFunction, antiderivative
from .quadrature import gauss_legendre

PROBE_POINTS = 2048
POSITIVITY_FLOOR = 1e-12
REAL_FORM_TOL = 1e-10


@dataclass(frozen=True)
class FundamentalPair:
    """Two independent solutions of ``-u'' + (V - eps) u = 0``."""

    z: JetFunction
    v: JetFunction
    w0: complex
    epsilon: float
    potential: JetFunction
    domain: tuple

    @property
    def midpoint(self):
        return 0.5 * (self.domain[0] + self.domain[1])

    def m_jet(self, x, order=0):
        """Jet of ``M = V - eps``."""
        return self.potential.jet(x, order) - self.epsilon

    def wronskian(self, x):
        zj = self.z.jet(x, 1)
        vj = self.v.jet(x, 1)
        return zj.c[0] * vj.c[1] - zj.c[1] * vj.c[0]

    def schrodinger_residuals(self, x):
        """|-u'' + (V - eps) u| for u = z and u = v."""
        m = self.m_jet(x).c[0]
        out = []
        for u in (self.z, self.v):
            j = u.jet(x, 2)
            out.append(np.abs(-j.deriv(2) + m * j.c[0]))
        return tuple(out)


@dataclass(frozen=True)
class ErmakovParams:
    a: complex
    b: complex
    c: complex
    lambda0: float


@dataclass(frozen=True)
class AlphaFunction:
    """Real positive Ermakov amplitude with analytic derivatives."""

    func: JetFunction
    params: ErmakovParams
    pair: FundamentalPair

    def jet(self, x, order=0):
        return self.func.jet(x, order)

    def __call__(self, x):
        return self.func(x)

    value = __call__

    def first_derivative(self, x):
        return self.func.derivative(x, 1)

    def second_derivative(self, x):
        return self.func.derivative(x, 2)

    def third_derivative(self, x):
        return self.func.derivative(x, 3)

    @property
    def lambda0(self):
        return self.params.lambda0

    @property
    def epsilon(self):
        return self.pair.epsilon

    @property
    def potential(self):
        return self.pair.potential

    @property
    def domain(self):
        return self.pair.domain


def wronskian(f, g, x):
    """f g' - f' g for two JetFunctions."""
    fj = f.jet(x, 1)
    gj = g.jet(x, 1)
    return fj.c[0] * gj.c[1] - fj.c[1] * gj.c[0]


def _check_zero_free(z, lo, hi, window=8):
    """Sign changes for real ``z``; for complex ``z``, |z| dipping far below
    its neighbourhood. Judged locally so fast growth is not mistaken for a zero."""
    if hi <= lo:
        return
    xs = np.linspace(lo, hi, 2049)
    zs = np.asarray(z(xs))
    mod = np.abs(zs)
    exact = np.nonzero(mod == 0.0)[0]
    if exact.size:
        raise ZeroCrossing(xs[exact[0]])
    if not np.iscomplexobj(zs) or np.max(np.abs(zs.imag)) == 0.0:
        s = np.sign(np.real(zs))
        flips = np.nonzero(s[1:] != s[:-1])[0]
        if flips.size:
            raise ZeroCrossing(0.5 * (xs[flips[0]] + xs[flips[0] + 1]))
        return
    local = maximum_filter1d(mod, size=2 * window + 1, mode="nearest")
    dips = np.nonzero(mod <= 1e-8 * local)[0]
    if dips.size:
        raise ZeroCrossing(xs[dips[0]])


def second_solution(z, w0, x0, domain=None, tol=1e-10):
    """Second solution ``v = z w0 int_{x0}^{x} z^{-2}`` with W(z, v) = w0.

    ``z`` must not vanish between ``x0`` and any requested point; when
    ``domain`` is given the whole interval is checked up front.
    """
    if domain is not None:
        _check_zero_free(z, *domain)

    def inv_z2(y):
        return 1.0 / np.asarray(z(y)) ** 2

    def q_value(x):
        span = float(np.max(np.abs(x - x0), initial=0.0))
        _check_zero_free(z, min(x0, float(np.min(x))), max(x0, float(np.max(x))))
        panels = max(2, int(np.ceil(span / 0.25)))
        fine = gauss_legendre(inv_z2, np.full_like(x, x0), x, panels=panels)
        coarse = gauss_legendre(inv_z2, np.full_like(x, x0), x, panels=panels // 2)
        err = float(np.max(np.abs(fine - coarse), initial=0.0))
        if err > tol * (1.0 + float(np.max(np.abs(fine), initial=0.0))):
            raise QuadratureFailure("second-solution integral did not converge", err)
        return w0 * fine

    def rule(x, order):
        x = np.asarray(x, dtype=float)
        zj = z.jet(x, order)
        q0 = q_value(x)
        if order == 0:
            return zj * q0
        dq = (zj.truncate(order - 1) ** 2).reciprocal() * w0
        return zj * antiderivative(q0, dq)

    return JetFunction(rule, name="second solution")


def lambda0_from_params(a, b, c, w0):
    """lambda0 = -w0^2 (b^2 - 4ac) / 4, required to be real."""
    w2 = complex(w0) ** 2
    val = -w2 * (complex(b) ** 2 - 4.0 * complex(a) * complex(c)) / 4.0
    scale = abs(w2) * (abs(complex(b)) ** 2 + 4.0 * abs(complex(a) * complex(c))) / 4.0
    if abs(val.imag) > 1e-12 * max(scale, abs(val)):
        raise NonRealLambda0(f"lambda0 = {val} is not real")
    return float(val.real)


def quadratic_form_probe(pair, a, b, c, points=PROBE_POINTS):
    """Check ``a v^2 + b v z + c z^2`` is real and positive on the domain.

    Positivity is judged against the size of the individual terms, so a form
    that grows like ``e^{x^2}`` is not rejected for its dynamic range.
    Returns ``(x, form)`` on the probe grid.
    """
    lo, hi = pair.domain
    x = np.linspace(lo, hi, points + 2)
    z = np.asarray(pair.z(x), dtype=complex)
    v = np.asarray(pair.v(x), dtype=complex)
    t1, t2, t3 = a * v * v, b * v * z, c * z * z
    q = t1 + t2 + t3
    scale = np.abs(t1) + np.abs(t2) + np.abs(t3)
    bad_im = np.abs(q.imag) > REAL_FORM_TOL * np.maximum(1.0, scale)
    if np.any(bad_im):
        i = int(np.argmax(np.abs(q.imag)))
        raise NotRealQuadraticForm(x[i], q.imag[i])
    rel = q.real / np.where(scale > 0, scale, 1.0)
    i = int(np.argmin(rel))
    if not rel[i] > POSITIVITY_FLOOR:
        raise NotPositive(x[i], q.real[i])
    # a form that only touches zero can hide between samples: refine the minimum
    lo_i, hi_i = max(i - 1, 0), min(i + 1, len(x) - 1)
    if hi_i > lo_i:
        def rel_at(t):
            zt, vt = complex(pair.z(t)), complex(pair.v(t))
            terms = (a * vt * vt, b * vt * zt, c * zt * zt)
            return sum(terms).real / sum(abs(t_) for t_ in terms)

        best = minimize_scalar(rel_at, bounds=(x[lo_i], x[hi_i]), method="bounded",
                               options={"xatol": 1e-12})
        if not best.fun > POSITIVITY_FLOOR:
            raise NotPositive(best.x, best.fun)
    return x, q.real


def build_alpha(pair, a, b, c):
    """alpha = sqrt(a v^2 + b v z + c z^2) with jets chained analytically."""
    lam0 = lambda0_from_params(a, b, c, pair.w0)
    quadratic_form_probe(pair, a, b, c)

    def rule(x, order):
        zj = pair.z.jet(x, order)
        vj = pair.v.jet(x, order)
        q = vj * vj * a + vj * zj * b + zj * zj * c
        return q.real.sqrt()

    return AlphaFunction(JetFunction(rule, name="alpha"), ErmakovParams(a, b, c, lam0), pair)


def ermakov_residual(alpha, x, relative=False):
    """|alpha'' - (V - eps) alpha - lambda0 / alpha^3|.

    With ``relative=True`` the residual is divided by the sum of the term
    magnitudes, the natural scale for amplitudes that grow without bound.
    """
    aj = alpha.jet(x, 2)
    al = aj.c[0]
    m = alpha.pair.m_jet(x).c[0]
    terms = (aj.deriv(2), m * al, alpha.lambda0 / al ** 3)
    res = np.abs(terms[0] - terms[1] - terms[2])
    if relative:
        res = res / (np.abs(terms[0]) + np.abs(terms[1]) + np.abs(terms[2]) + 1e-300)
    return res[()] if np.ndim(res) == 0 else res


def j_invariant(u, alpha, x):
    """J / j0 = (u' alpha - u alpha')^2 + lambda0 (u / alpha)^2, with j0 = 1."""
    uj = u.jet(x, 1)
    aj = alpha.jet(x, 1)
    w = uj.c[1] * aj.c[0] - uj.c[0] * aj.c[1]
    out = w ** 2 + alpha.lambda0 * (uj.c[0] / aj.c[0]) ** 2
    return out[()] if np.ndim(out) == 0 else out
