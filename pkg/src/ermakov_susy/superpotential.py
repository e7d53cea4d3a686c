"""Complex superpotentials and transformation functions built from alpha."""
import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ExcludedBranch, LambdaMismatch, ZeroLambdaBranch
from .jets import Jet, JetFunction, antiderivative
from .quadrature import CumulativeIntegral


class Branch(enum.Enum):
    CONVENTIONAL = "Conventional"
    EXCLUDED = "Excluded"
    COMPLEX = "Complex"


def classify(lambda0):
    """Branch of the u-functions for a given lambda0."""
    if lambda0 == 0:
        return Branch.CONVENTIONAL
    if lambda0 < 0:
        return Branch.EXCLUDED
    return Branch.COMPLEX


def _check_lambda(alpha, lam):
    lam0 = alpha.lambda0
    if classify(lam0) is Branch.EXCLUDED:
        raise ExcludedBranch(f"lambda0 = {lam0} < 0 gives an imaginary lambda")
    if lam == 0:
        raise ZeroLambdaBranch("lambda = 0: use conventional_superpotential for the real branch")
    if abs(lam * lam - lam0) > 1e-12 * max(abs(lam0), 1e-300):
        raise LambdaMismatch(f"lambda^2 = {lam * lam!r} does not match lambda0 = {lam0!r}")


def _beta_rule(alpha, lam):
    def rule(x, order):
        a = alpha.jet(x, order + 1)
        real = -(a.d() / a.truncate(order))
        imag = (a.truncate(order) ** 2).reciprocal() * lam
        return Jet(real.c + 1j * imag.c)

    return rule


@dataclass(frozen=True)
class Superpotential:
    """beta = -alpha'/alpha + i lambda / alpha^2 solving the Riccati equation."""

    alpha: object
    lam: float
    func: JetFunction = field(repr=False)

    @property
    def epsilon(self):
        return self.alpha.epsilon

    @property
    def potential(self):
        return self.alpha.potential

    def jet(self, x, order=0):
        return self.func.jet(x, order)

    def __call__(self, x):
        return self.func(x)

    def beta_R(self, x):
        return np.real(self.func(x))

    def beta_I(self, x):
        return np.imag(self.func(x))

    def derivative(self, x, k=1):
        return self.func.derivative(x, k)


def beta(alpha, lam):
    """Complex superpotential for amplitude ``alpha`` and signed ``lam``."""
    _check_lambda(alpha, lam)
    return Superpotential(alpha, float(lam), JetFunction(_beta_rule(alpha, float(lam)), name="beta"))


def conventional_superpotential(alpha):
    """Real beta = -(ln alpha)' for lambda0 = 0 (degenerate consistency check)."""
    if alpha.lambda0 != 0:
        raise LambdaMismatch(f"conventional branch needs lambda0 = 0, got {alpha.lambda0}")

    def rule(x, order):
        a = alpha.jet(x, order + 1)
        return -(a.d() / a.truncate(order))

    return Superpotential(alpha, 0.0, JetFunction(rule, name="beta_0"))


def riccati_residual(beta_fn, x, relative=False):
    """|-beta' + beta^2 + eps - V|."""
    b = beta_fn.jet(x, 1)
    v = beta_fn.potential.jet(x, 0).c[0]
    eps = beta_fn.epsilon
    terms = (-b.c[1], b.c[0] ** 2, eps - v)
    res = np.abs(terms[0] + terms[1] + terms[2])
    if relative:
        res = res / (sum(np.abs(t) for t in terms) + 1e-300)
    return res[()] if np.ndim(res) == 0 else res


def riccati_parts(beta_fn, x):
    """Residuals of the real and imaginary Riccati components, separately.

    ``-bR' + bR^2 - bI^2 + eps - V`` and ``-bI' + 2 bI bR``.
    """
    b = beta_fn.jet(x, 1)
    br, bi = b.c[0].real, b.c[0].imag
    dbr, dbi = b.c[1].real, b.c[1].imag
    v = beta_fn.potential.jet(x, 0).c[0]
    re = np.abs(-dbr + br ** 2 - bi ** 2 + beta_fn.epsilon - v)
    im = np.abs(-dbi + 2.0 * bi * br)
    return re, im


@dataclass(frozen=True)
class TransformationFunction:
    """u = alpha exp(-i lambda int_{x0}^{x} alpha^-2), with |u| = alpha."""

    alpha: object
    lam: float
    x0: float
    phase_integral: CumulativeIntegral = field(repr=False)
    func: JetFunction = field(repr=False)

    def __call__(self, x):
        return self.func(x)

    def jet(self, x, order=0):
        return self.func.jet(x, order)

    def accumulated(self, x):
        """int_{x0}^{x} alpha^-2 dy."""
        return self.phase_integral(x) - self.phase_integral(self.x0)

    def phase(self, x):
        """Xi(x) = -lambda int_{x0}^{x} alpha^-2 dy."""
        return -self.lam * self.accumulated(x)


def transformation_function(alpha, lam, x0=0.0, nodes=4097, tol=1e-10):
    """u_lambda with the phase integral tabulated eagerly (thread-safe reads)."""
    _check_lambda(alpha, lam)
    lam = float(lam)
    lo, hi = alpha.domain
    table = CumulativeIntegral(lambda y: 1.0 / alpha(y) ** 2, lo, hi, nodes=nodes, tol=tol)
    origin = float(table(x0))

    def rule(x, order):
        a = alpha.jet(x, order)
        s0 = table(x) - origin
        if order == 0:
            s = Jet(np.asarray(s0)[None, ...])
        else:
            s = antiderivative(s0, (a.truncate(order - 1) ** 2).reciprocal())
        return a * (s * (-1j * lam)).exp()

    return TransformationFunction(alpha, lam, float(x0), table, JetFunction(rule, name="u"))


def hydrodynamics(beta_fn, x):
    """(density alpha^2, flux velocity -2 beta_I, current velocity * density)."""
    al = beta_fn.alpha(x)
    rho = al * al
    velocity = -2.0 * beta_fn.lam / rho
    return rho, velocity, velocity * rho
