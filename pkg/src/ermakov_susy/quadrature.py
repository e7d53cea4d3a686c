"""Uniform grids and composite Simpson quadrature with Richardson estimates."""
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, QuadratureFailure

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


@dataclass(frozen=True)
class Grid:
    """Uniform grid ``x_min, x_min + h, ..., x_max`` with ``n`` points."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ParameterError(f"grid needs n >= 3 points, got {self.n}")
        if not self.x_max > self.x_min:
            raise ParameterError(f"empty grid interval [{self.x_min}, {self.x_max}]")

    @property
    def h(self):
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def points(self):
        return np.linspace(self.x_min, self.x_max, self.n)

    @property
    def interior(self):
        return self.points[1:-1]

    @property
    def symmetric(self):
        return abs(self.x_min + self.x_max) <= 1e-12 * max(abs(self.x_min), abs(self.x_max))

    @classmethod
    def parse(cls, spec):
        """``"xmin,xmax,n"`` -> Grid."""
        try:
            lo, hi, n = spec.split(",")
            lo, hi, n = float(lo), float(hi), int(n)
        except ValueError as exc:
            raise ParameterError(f"grid spec must be 'xmin,xmax,n', got {spec!r}") from exc
        return cls(lo, hi, n)


def simpson_nodes(n):
    """Smallest node count >= n of the form 4m + 1 (Simpson on h and 2h)."""
    n = max(int(n), 5)
    return n + (-(n - 1)) % 4


def _simpson(y, h):
    return h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum(axis=0) + 2.0 * y[2:-1:2].sum(axis=0))


def simpson_richardson(y, h):
    """Simpson on spacing h and 2h; returns (value_h, error_estimate)."""
    fine = _simpson(y, h)
    coarse = _simpson(y[::2], 2.0 * h)
    return fine, float(np.max(np.abs(fine - coarse))) / 15.0


def integrate(f, grid, tol=1e-6):
    """Integrate ``f`` over the grid interval.

    Nodes are the grid's, rounded up to a Simpson-and-Richardson friendly count.
    Returns ``(value, err_estimate)``; raises QuadratureFailure when the
    estimate exceeds ``tol * max(1, |value|)``.
    """
    n = simpson_nodes(grid.n)
    x = np.linspace(grid.x_min, grid.x_max, n)
    y = np.asarray(f(x))
    if not np.all(np.isfinite(y)):
        raise QuadratureFailure("integrand is not finite on the grid")
    value, err = simpson_richardson(y, x[1] - x[0])
    if err > tol * max(1.0, abs(value)):
        raise QuadratureFailure("composite Simpson did not reach tolerance", err)
    return value, err


def tail_estimate(x, y, window=0.1):
    """Decay test and tail bound for a non-negative integrand on a finite box.

    Compares the maximum over the outermost ``window`` fraction of each end
    with the next window inwards. Decay on both sides (ratio < 1/2) gives a
    geometric-series bound on the mass beyond the box; otherwise the
    integrand is treated as non-decaying and the bound is ``inf``.
    """
    y = np.abs(np.asarray(y))
    n = len(x)
    w = max(2, int(window * n))
    if 2 * w >= n:
        return False, float("inf")
    width = abs(x[w] - x[0])
    tail = 0.0
    for outer, inner in ((y[:w], y[w:2 * w]), (y[-w:], y[-2 * w:-w])):
        m_out, m_in = outer.max(), inner.max()
        if m_in == 0.0:
            continue
        r = m_out / m_in
        if r >= 0.5:
            return False, float("inf")
        tail += m_out * width * r / (1.0 - r)
    return True, tail


def gauss_legendre(f, a, b, panels=1):
    """Composite 10-point Gauss-Legendre of ``f`` between arrays ``a`` and ``b``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    total = 0.0
    edges = np.linspace(0.0, 1.0, panels + 1)
    for p in range(panels):
        lo = a + (b - a) * edges[p]
        hi = a + (b - a) * edges[p + 1]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        for t, w in zip(_GL_NODES, _GL_WEIGHTS):
            total = total + w * half * f(mid + half * t)
    return total


class CumulativeIntegral:
    """Antiderivative of a smooth function, tabulated once, evaluated anywhere.

    Composite Simpson on ``nodes`` points (4m + 1), refined by doubling until
    the Richardson estimate of the running integral is below ``tol``
    relative. The stored table is the extrapolated (Boole) value on every
    fourth node; points between table nodes are completed with Gauss-Legendre.
    """

    def __init__(self, f, x_min, x_max, nodes=4097, tol=1e-10, max_nodes=2 ** 18 + 1):
        self.f = f
        self.x_min = float(x_min)
        self.x_max = float(x_max)
        nodes = simpson_nodes(nodes)
        while True:
            table, err = self._table(nodes)
            scale = 1.0 + float(np.max(np.abs(table)))
            if err <= tol * scale:
                break
            if nodes >= max_nodes:
                raise QuadratureFailure("cumulative Simpson table did not converge", err / scale)
            nodes = 2 * (nodes - 1) + 1
        self.error_estimate = err
        self.nodes = nodes
        self._table_values = table
        self._x = np.linspace(self.x_min, self.x_max, nodes)[::4]

    def _table(self, nodes):
        x = np.linspace(self.x_min, self.x_max, nodes)
        y = np.asarray(self.f(x))
        h = x[1] - x[0]
        pair = h / 3.0 * (y[:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
        fine = np.concatenate([[0.0], np.cumsum(pair)])
        yc = y[::2]
        quad = 2.0 * h / 3.0 * (yc[:-2:2] + 4.0 * yc[1:-1:2] + yc[2::2])
        coarse = np.concatenate([[0.0], np.cumsum(quad)])
        diff = fine[::2] - coarse
        err = float(np.max(np.abs(diff))) / 15.0
        # the extrapolated table is Boole's rule; err stays a conservative bound
        return fine[::2] + diff / 15.0, err

    def __call__(self, x):
        """Integral of f from x_min to x."""
        x = np.asarray(x, dtype=float)
        step = self._x[1] - self._x[0]
        idx = np.clip(np.rint((x - self.x_min) / step).astype(int), 0, len(self._x) - 1)
        base = self._x[idx]
        reach = float(np.max(np.abs(x - base), initial=0.0)) / step
        piece = gauss_legendre(self.f, base, x, panels=int(min(256, max(1, np.ceil(reach)))))
        return self._table_values[idx] + piece
