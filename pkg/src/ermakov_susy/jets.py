"""Truncated Taylor arithmetic ("jets") for exact derivatives.

A :class:`Jet` stores normalized Taylor coefficients ``c[k] = f^(k)(x) / k!``
of a function at an array of points. Arithmetic and elementary functions
propagate the coefficients with the usual recurrences, so every derivative
used by the residual checks is analytic (forward-mode differentiation),
never a finite difference.

:class:`JetFunction` wraps a rule ``(x, order) -> Jet`` and is the common
currency for wavefunctions, potentials, superpotentials and amplitudes.
"""
import math

import numpy as np

from . import kernels

_SQRT_PI = math.sqrt(math.pi)


def _coeffs(other, like):
    """Coefficients of ``other`` broadcast against jet ``like``."""
    if isinstance(other, Jet):
        return other.c
    c = np.zeros((like.c.shape[0],) + np.broadcast_shapes(like.c.shape[1:], np.shape(other)),
                 dtype=np.result_type(like.c, other))
    c[0] = other
    return c


def _match(a, b):
    k = min(a.shape[0], b.shape[0])
    return a[:k], b[:k]


class Jet:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs)

    @classmethod
    def variable(cls, x, order):
        x = np.asarray(x, dtype=float)
        c = np.zeros((order + 1,) + x.shape)
        c[0] = x
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @property
    def order(self):
        return self.c.shape[0] - 1

    @property
    def value(self):
        return self.c[0]

    def deriv(self, k):
        """k-th derivative values."""
        return self.c[k] * math.factorial(k)

    def derivatives(self):
        fact = np.array([math.factorial(k) for k in range(self.order + 1)], dtype=float)
        return self.c * fact.reshape((-1,) + (1,) * (self.c.ndim - 1))

    def d(self):
        """The derivative as a jet of one lower order."""
        k = np.arange(1, self.order + 1, dtype=float).reshape((-1,) + (1,) * (self.c.ndim - 1))
        return Jet(self.c[1:] * k)

    def truncate(self, order):
        return Jet(self.c[: order + 1])

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return Jet(-self.c)

    def __add__(self, other):
        a, b = _match(self.c, _coeffs(other, self))
        return Jet(a + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = _match(self.c, _coeffs(other, self))
        return Jet(a - b)

    def __rsub__(self, other):
        a, b = _match(self.c, _coeffs(other, self))
        return Jet(b - a)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * other)
        a, b = _match(self.c, other.c)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.result_type(a, b))
        for k in range(out.shape[0]):
            for j in range(k + 1):
                out[k] += a[j] * b[k - j]
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c / other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise TypeError("only non-negative integer powers are supported")
        out = None
        for _ in range(n):
            out = self if out is None else out * self
        if out is None:
            return Jet(_coeffs(1.0, self))
        return out

    def reciprocal(self):
        g = self.c
        h = np.zeros_like(g, dtype=np.result_type(g, float))
        h[0] = 1.0 / g[0]
        for k in range(1, g.shape[0]):
            acc = np.zeros_like(h[0])
            for j in range(1, k + 1):
                acc = acc + g[j] * h[k - j]
            h[k] = -acc * h[0]
        return Jet(h)

    def conj(self):
        return Jet(np.conj(self.c))

    @property
    def real(self):
        return Jet(np.real(self.c))

    @property
    def imag(self):
        return Jet(np.imag(self.c))

    # -- elementary functions -------------------------------------------
    def _integrate(self, g0, h):
        """Jet g with g(x0) = g0 and g' = h * self'."""
        f = self.c
        h = h.c
        g = np.zeros(f.shape, dtype=np.result_type(f, h, g0))
        g[0] = g0
        for k in range(1, f.shape[0]):
            acc = np.zeros_like(g[0])
            for j in range(1, k + 1):
                acc = acc + j * f[j] * h[k - j]
            g[k] = acc / k
        return Jet(g)

    def exp(self):
        f = self.c
        g = np.zeros(f.shape, dtype=np.result_type(f, float))
        g[0] = np.exp(f[0])
        for k in range(1, f.shape[0]):
            acc = np.zeros_like(g[0])
            for j in range(1, k + 1):
                acc = acc + j * f[j] * g[k - j]
            g[k] = acc / k
        return Jet(g)

    def sqrt(self):
        f = self.c
        g = np.zeros(f.shape, dtype=np.result_type(f, float))
        g[0] = np.sqrt(f[0])
        for k in range(1, f.shape[0]):
            acc = np.zeros_like(g[0])
            for j in range(1, k):
                acc = acc + g[j] * g[k - j]
            g[k] = (f[k] - acc) / (2.0 * g[0])
        return Jet(g)

    def log(self):
        return self._integrate(np.log(self.c[0]), self.reciprocal())

    def _sincos(self, hyperbolic):
        f = self.c
        s = np.zeros(f.shape, dtype=np.result_type(f, float))
        co = np.zeros_like(s)
        if hyperbolic:
            s[0], co[0] = np.sinh(f[0]), np.cosh(f[0])
        else:
            s[0], co[0] = np.sin(f[0]), np.cos(f[0])
        sign = 1.0 if hyperbolic else -1.0
        for k in range(1, f.shape[0]):
            acc_s = np.zeros_like(s[0])
            acc_c = np.zeros_like(s[0])
            for j in range(1, k + 1):
                acc_s = acc_s + j * f[j] * co[k - j]
                acc_c = acc_c + j * f[j] * s[k - j]
            s[k] = acc_s / k
            co[k] = sign * acc_c / k
        return Jet(s), Jet(co)

    def sin(self):
        return self._sincos(False)[0]

    def cos(self):
        return self._sincos(False)[1]

    def sinh(self):
        return self._sincos(True)[0]

    def cosh(self):
        return self._sincos(True)[1]

    def tanh(self):
        s, c = self._sincos(True)
        return s / c

    def arctan(self):
        inner = (self.truncate(max(self.order - 1, 0)) ** 2 + 1.0).reciprocal()
        return self._integrate(np.arctan(self.c[0]), inner)

    def erf(self):
        f0 = self.c[0]
        if np.iscomplexobj(f0):
            raise TypeError("erf jets are real-valued only")
        low = self.truncate(max(self.order - 1, 0))
        inner = (-(low * low)).exp() * (2.0 / _SQRT_PI)
        return self._integrate(kernels.erf(f0), inner)

    def __repr__(self):
        return f"Jet(order={self.order}, shape={self.c.shape[1:]})"


def antiderivative(value, derivative_jet):
    """Jet whose value is ``value`` and whose derivative jet is given."""
    d = derivative_jet.c
    g = np.zeros((d.shape[0] + 1,) + d.shape[1:], dtype=np.result_type(d, value))
    g[0] = value
    for k in range(1, g.shape[0]):
        g[k] = d[k - 1] / k
    return Jet(g)


def schrodinger_jet(u0, u1, m_jet):
    """Jet of a solution of u'' = M u from its value, slope, and M's jet.

    Coefficients follow from ``(k+2)(k+1) u_{k+2} = sum_j m_j u_{k-j}``.
    """
    m = m_jet.c
    order = m.shape[0] + 1
    u = np.zeros((order + 1,) + np.shape(u0), dtype=np.result_type(u0, u1, m))
    u[0] = u0
    if order >= 1:
        u[1] = u1
    for k in range(0, order - 1):
        acc = np.zeros_like(u[0])
        for j in range(k + 1):
            acc = acc + m[j] * u[k - j]
        u[k + 2] = acc / ((k + 2) * (k + 1))
    return Jet(u)


class JetFunction:
    """A function of one real variable that can report its Taylor jet.

    ``rule(x, order)`` must return a :class:`Jet` of at least ``order``.
    Calling the object evaluates the function; scalars in, scalars out.
    """

    def __init__(self, rule, name=None):
        self._rule = rule
        self.name = name

    @classmethod
    def from_expression(cls, expr, name=None):
        """Build from ``expr(X) -> Jet`` where ``X`` is the variable jet."""
        return cls(lambda x, order: expr(Jet.variable(x, order)), name=name)

    @classmethod
    def constant(cls, value, name=None):
        def rule(x, order):
            x = np.asarray(x, dtype=float)
            c = np.zeros((order + 1,) + x.shape, dtype=np.result_type(value, float))
            c[0] = value
            return Jet(c)

        return cls(rule, name=name)

    def jet(self, x, order=0):
        return self._rule(np.asarray(x, dtype=float), order).truncate(order)

    def __call__(self, x):
        out = self.jet(x, 0).c[0]
        return out[()] if np.ndim(out) == 0 else out

    def derivative(self, x, k=1):
        out = self.jet(x, k).deriv(k)
        return out[()] if np.ndim(out) == 0 else out

    def conj(self):
        return JetFunction(lambda x, order: self._rule(x, order).conj(), name=self.name)

    def __repr__(self):
        return f"JetFunction({self.name or self._rule!r})"
