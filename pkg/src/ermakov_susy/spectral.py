"""Finite-difference Hamiltonians on Dirichlet boxes and their complex spectra."""
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import kernels
from .errors import EigenNoConvergence, NonFinitePotential, ParameterError
from .quadrature import Grid, integrate, simpson_nodes, tail_estimate

__all__ = [
    "Grid",
    "integrate",
    "DiscreteHamiltonian",
    "SpectralReport",
    "discretize",
    "spectrum",
    "eigenvector",
    "milne_count",
]

DENSE_LIMIT = 2000


@dataclass(frozen=True)
class DiscreteHamiltonian:
    """(-psi_{i-1} + 2 psi_i - psi_{i+1}) / h^2 + V(x_i) psi_i on interior points.

    The off-diagonal is the real constant -1/h^2; only the diagonal carries
    the imaginary part of the potential.
    """

    grid: Grid
    diag: np.ndarray = field(repr=False)
    off: float
    tag: str = ""

    @property
    def size(self):
        return self.diag.shape[0]

    @property
    def x(self):
        return self.grid.interior

    def dense(self):
        n = self.size
        m = np.diag(self.diag.astype(complex))
        i = np.arange(n - 1)
        m[i, i + 1] = self.off
        m[i + 1, i] = self.off
        return m

    def matvec(self, psi):
        out = self.diag * psi
        out[1:] += self.off * psi[:-1]
        out[:-1] += self.off * psi[1:]
        return out


def discretize(potential, grid):
    """Second-order central differences with Dirichlet ends."""
    if grid.n < 3:
        raise ParameterError("grid needs at least one interior point")
    x = grid.interior
    v = np.asarray(potential(x), dtype=complex).reshape(x.shape)
    bad = np.nonzero(~np.isfinite(v))[0]
    if bad.size:
        # index in the full grid, ends included
        raise NonFinitePotential(int(bad[0]) + 1, x[bad[0]])
    h2 = grid.h ** 2
    return DiscreteHamiltonian(grid, 2.0 / h2 + v, -1.0 / h2,
                               getattr(potential, "family_tag", ""))


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: np.ndarray = field(repr=False)
    m: int
    max_imag_low_m: float
    matched_reference: list
    tolerance: float

    @property
    def lowest(self):
        return self.eigenvalues[: self.m]

    def passed(self):
        return all(d <= self.tolerance for _, _, d in self.matched_reference)


def _eigvals(H, method):
    if method == "dense":
        if H.size > DENSE_LIMIT:
            raise ParameterError(f"dense solve limited to n <= {DENSE_LIMIT}, got {H.size}")
        try:
            return scipy.linalg.eigvals(H.dense(), overwrite_a=True, check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise EigenNoConvergence(f"LAPACK eigenvalue iteration failed: {exc}") from exc
    if method == "tridiagonal":
        return kernels.tridiag_eigvals(H.diag, np.full(H.size - 1, H.off))
    raise ParameterError(f"unknown eigen method {method!r}")


def spectrum(H, m, reference=(), tolerance=None, method="dense"):
    """All eigenvalues of ``H`` sorted by real part, with a reference comparison.

    Each reference energy is matched to the nearest computed eigenvalue. The
    tolerance is only recorded (and used by :meth:`SpectralReport.passed`),
    never applied silently.
    """
    m = int(m)
    if not 0 < m <= H.size:
        raise ParameterError(f"m must be in [1, {H.size}], got {m}")
    ev = np.asarray(_eigvals(H, method), dtype=complex)
    ev = ev[np.lexsort((ev.imag, ev.real))]
    low = ev[:m]
    matched = []
    for e in reference:
        i = int(np.argmin(np.abs(ev - e)))
        matched.append((complex(e), complex(ev[i]), float(abs(ev[i] - e))))
    tol = float("nan") if tolerance is None else float(tolerance)
    return SpectralReport(ev, m, float(np.max(np.abs(low.imag))), matched, tol)


def eigenvector(H, energy, iterations=3):
    """Inverse iteration for the eigenvector nearest ``energy`` (interior points)."""
    n = H.size
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = H.off
    ab[1] = H.diag - energy
    ab[2, :-1] = H.off
    # a tiny shift keeps the banded solve regular at an exact eigenvalue
    ab[1] += 1e-10 * (1.0 + abs(energy))
    vec = np.ones(n, dtype=complex)
    for _ in range(iterations):
        vec = scipy.linalg.solve_banded((1, 1), ab, vec)
        vec /= np.linalg.norm(vec)
    return vec


def milne_count(alpha, lam, grid):
    """N = (lambda/pi) int alpha^-2 dx over the grid, with a tail bound.

    Returns ``(N, tail)``; ``tail`` is ``inf`` when alpha^-2 does not decay
    towards the box edges.
    """
    if lam == 0:
        return 0.0, 0.0
    dens = lambda y: 1.0 / np.asarray(alpha(y)) ** 2  # noqa: E731
    value, _ = integrate(dens, grid, tol=1e-8)
    x = np.linspace(grid.x_min, grid.x_max, simpson_nodes(grid.n))
    _, tail = tail_estimate(x, dens(x))
    return float(lam * value / np.pi), float(abs(lam) * tail / np.pi)
