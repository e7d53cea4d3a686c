"""Darboux partner potentials, ladder operators and bi-orthogonal states.

Operators act on :class:`~ermakov_susy.jets.JetFunction` objects and return
new ones, so chains such as ``H~ B psi`` are differentiated exactly.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EnergyBelowFactorization, ParameterError, QuadratureFailure
from .jets import JetFunction
from .quadrature import integrate, simpson_nodes, tail_estimate


@dataclass(frozen=True)
class ComplexPotential:
    """Partner potential V~ = V + 2 beta' with provenance."""

    func: JetFunction = field(repr=False)
    source: JetFunction = field(repr=False)
    epsilon: float
    lam: float
    family_tag: str = "generic"

    def __call__(self, x):
        return self.func(x)

    def jet(self, x, order=0):
        return self.func.jet(x, order)

    def conj(self):
        return ComplexPotential(self.func.conj(), self.source, self.epsilon, -self.lam,
                                self.family_tag)


def darboux_potential(beta_fn, family_tag="generic"):
    source = beta_fn.potential

    def rule(x, order):
        return source.jet(x, order) + beta_fn.jet(x, order + 1).d() * 2.0

    return ComplexPotential(JetFunction(rule, name="V~"), source, beta_fn.epsilon, beta_fn.lam,
                            family_tag)


def decomposition(alpha, lam, x):
    """(V - 2 (ln alpha)'', -4 lam alpha' / alpha^3): the real and imaginary parts of V~."""
    a = alpha.jet(x, 2)
    al, d1, d2 = a.c[0], a.deriv(1), a.deriv(2)
    v = alpha.potential(x)
    re = v - 2.0 * (d2 / al - (d1 / al) ** 2)
    im = -4.0 * lam * d1 / al ** 3
    return re, im


def riccati2_residual(beta_fn, vtilde, x):
    """|beta' + beta^2 + eps - V~|."""
    b = beta_fn.jet(x, 1)
    return np.abs(b.c[1] + b.c[0] ** 2 + beta_fn.epsilon - vtilde(x))


# -- operators -------------------------------------------------------------

_LADDER = {
    # (sign of derivative, conjugate beta)
    "A": (-1.0, False),
    "B": (1.0, False),
    "A+": (1.0, True),
    "B+": (-1.0, True),
}


def ladder(which, beta_fn, psi):
    """A = -d/dx + beta, B = d/dx + beta, A+ = d/dx + beta*, B+ = -d/dx + beta*."""
    key = which.replace("†", "+").replace("dagger", "+")
    try:
        sign, conj = _LADDER[key]
    except KeyError:
        raise ParameterError(f"unknown ladder operator {which!r}") from None

    def rule(x, order):
        p = psi.jet(x, order + 1)
        b = beta_fn.jet(x, order)
        if conj:
            b = b.conj()
        return p.d() * sign + b * p.truncate(order)

    return JetFunction(rule, name=f"{key}psi")


def ladder_apply(which, beta_fn, psi, x):
    return ladder(which, beta_fn, psi)(x)


def hamiltonian(potential, psi):
    """(-d^2/dx^2 + V) psi for any potential exposing ``jet``."""

    def rule(x, order):
        p = psi.jet(x, order + 2)
        return -p.d().d() + potential.jet(x, order) * p.truncate(order)

    return JetFunction(rule, name="Hpsi")


def _residual(lhs, rhs, x, relative):
    left, right = lhs(x), rhs(x)
    res = np.abs(left - right)
    if relative:
        res = res / (np.abs(left) + np.abs(right) + 1e-300)
    return res


def factorization_residual(beta_fn, psi, x, relative=False):
    """|(A B + eps) psi - H psi|."""
    ab = ladder("A", beta_fn, ladder("B", beta_fn, psi))
    eps = beta_fn.epsilon
    lhs = JetFunction(lambda y, order: ab.jet(y, order) + psi.jet(y, order) * eps)
    return _residual(lhs, hamiltonian(beta_fn.potential, psi), x, relative)


def intertwining_residual(beta_fn, vtilde, psi, x, relative=False):
    """|H~ B psi - B H psi|."""
    lhs = hamiltonian(vtilde, ladder("B", beta_fn, psi))
    rhs = ladder("B", beta_fn, hamiltonian(beta_fn.potential, psi))
    return _residual(lhs, rhs, x, relative)


def adjoint_intertwining_residual(beta_fn, vtilde, phi, x, relative=False):
    """|H B+ phi - B+ H~+ phi|, with H~+ = -d^2 + conj(V~)."""
    lhs = hamiltonian(beta_fn.potential, ladder("B+", beta_fn, phi))
    rhs = ladder("B+", beta_fn, hamiltonian(vtilde.conj(), phi))
    return _residual(lhs, rhs, x, relative)


def eigen_residual(vtilde, psi, energy, x, relative=False):
    """|(-d^2 + V~ - E) psi|."""
    lhs = hamiltonian(vtilde, psi)
    rhs = JetFunction(lambda y, order: psi.jet(y, order) * energy)
    return _residual(lhs, rhs, x, relative)


# -- states ----------------------------------------------------------------


@dataclass(frozen=True)
class BiorthogonalState:
    """Eigenfunction of H~ (``psi_tilde``) and of H~+ (``psi_bar``) at one energy."""

    energy: float
    psi_tilde: JetFunction = field(repr=False)
    psi_bar: JetFunction = field(repr=False)


def partner_state(psi, energy, beta_fn, dual=False):
    """(psi' + beta psi) / sqrt(E - eps); with ``dual`` beta is conjugated."""
    gap = energy - beta_fn.epsilon
    if not gap > 0:
        raise EnergyBelowFactorization(
            f"E = {energy} must exceed the factorization energy {beta_fn.epsilon}"
        )
    op = ladder("A+" if dual else "B", beta_fn, psi)
    norm = 1.0 / math.sqrt(gap)
    return JetFunction(lambda x, order: op.jet(x, order) * norm,
                       name="psi_bar" if dual else "psi_tilde")


def biorthogonal_state(psi, energy, beta_fn):
    return BiorthogonalState(float(energy), partner_state(psi, energy, beta_fn),
                             partner_state(psi, energy, beta_fn, dual=True))


@dataclass(frozen=True)
class MissingState:
    """psi~_eps = c_eps / u_lambda, annihilated by A."""

    epsilon: float
    c_eps: complex
    func: JetFunction = field(repr=False)
    normalizable: bool
    tail_bound: float
    binorm: complex

    def __call__(self, x):
        return self.func(x)

    def jet(self, x, order=0):
        return self.func.jet(x, order)

    def density(self, x):
        return np.abs(self.func(x)) ** 2

    def biorthogonal(self):
        """Bi-normalized pair with int psi_tilde^2 dx = 1 and psi_bar = conj(psi_tilde)."""
        if not self.normalizable:
            raise ParameterError("missing state is not normalizable; no bi-orthogonal pair")
        scale = 1.0 / np.sqrt(complex(self.binorm))
        tilde = JetFunction(lambda x, order: self.func.jet(x, order) * scale, name="psi_tilde_eps")
        return BiorthogonalState(self.epsilon, tilde, tilde.conj())


def missing_state(u, grid):
    """Missing state of the partner Hamiltonian from the transformation function.

    Normalizability is decided by the decay of ``1/alpha^2`` towards the grid
    ends (see :func:`~ermakov_susy.quadrature.tail_estimate`). When
    normalizable, ``c_eps`` is real positive and the L^2 norm is one.
    """
    alpha = u.alpha
    n = simpson_nodes(grid.n)
    x = np.linspace(grid.x_min, grid.x_max, n)
    dens = 1.0 / alpha(x) ** 2
    decaying, tail = tail_estimate(x, dens)
    base = JetFunction(lambda y, order: u.jet(y, order).reciprocal(), name="1/u")
    if not decaying:
        return MissingState(alpha.epsilon, 1.0, base, False, float("inf"), complex("nan"))
    mass, _ = integrate(lambda y: 1.0 / alpha(y) ** 2, grid, tol=1e-8)
    c_eps = 1.0 / math.sqrt(mass)
    func = JetFunction(lambda y, order: base.jet(y, order) * c_eps, name="psi_eps")
    binorm, err = integrate(lambda y: func(y) ** 2, grid, tol=1e-6)
    if not np.isfinite(binorm):
        raise QuadratureFailure("missing-state binorm is not finite", err)
    return MissingState(alpha.epsilon, c_eps, func, True, tail * c_eps ** 2, complex(binorm))


def biproduct(f, g, grid, tol=1e-6):
    """int conj(f) g dx over the grid interval (composite Simpson)."""
    value, _ = integrate(lambda y: np.conj(f(y)) * g(y), grid, tol=tol)
    return complex(value)


def gram_matrix(states, grid):
    """G[n, m] = <psi_bar_n | psi_tilde_m> for a list of BiorthogonalState."""
    size = len(states)
    g = np.empty((size, size), dtype=complex)
    for i, si in enumerate(states):
        for j, sj in enumerate(states):
            g[i, j] = biproduct(si.psi_bar, sj.psi_tilde, grid)
    return g
