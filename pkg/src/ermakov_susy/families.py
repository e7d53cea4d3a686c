"""Closed-form catalog: periodic, hyperbolic (Poschl-Teller-like) and oscillator families.

Every family amplitude is first validated through the generic
:func:`~ermakov_susy.ermakov.build_alpha` route (reality, positivity,
lambda0) and then evaluated from its closed form. The two routes agree to
rounding error, which the test-suite checks.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .darboux import ComplexPotential, MissingState, darboux_potential
from .errors import (
    AsymmetricDomain,
    ExcludedBranch,
    LambdaOutOfRange,
    NonFinitePotential,
    OrderTooLarge,
    ParameterError,
    SeriesNonConvergence,
    ZeroCrossingRisk,
    ZeroLambdaBranch,
)
from .ermakov import AlphaFunction, ErmakovParams, FundamentalPair, build_alpha
from .jets import Jet, JetFunction, schrodinger_jet
from .superpotential import beta

SQRT_PI = math.sqrt(math.pi)
MAX_HERMITE = 30
LN_1E14 = 14.0 * math.log(10.0)


# -- special functions --------------------------------------------------------


def special_erf(x):
    """Error function (series below |x| = 3, continued fraction above)."""
    return kernels.erf(x)


def special_1f1(a, c, zeta):
    """Kummer's 1F1(a; c; zeta) for real arguments, |zeta| <= 64."""
    return kernels.hyp1f1(a, c, zeta)


# -- fundamental pairs ----------------------------------------------------------


def free_pair(k, domain):
    """z = e^{-ikx}, v = e^{ikx} for V = 0, eps = k^2; W(z, v) = 2ik.

    ``k`` may be complex; ``k = i kappa / 2`` gives the real exponentials of
    the hyperbolic family.
    """
    k = complex(k)
    if k.real == 0.0:
        kap = 2.0 * k.imag
        z = JetFunction.from_expression(lambda X: (X * (-0.5 * kap)).exp(), name="z")
        v = JetFunction.from_expression(lambda X: (X * (0.5 * kap)).exp(), name="v")
        w0, eps = kap, -0.25 * kap * kap
    else:
        z = JetFunction.from_expression(lambda X: (X * (-1j * k)).exp(), name="z")
        v = JetFunction.from_expression(lambda X: (X * (1j * k)).exp(), name="v")
        w0, eps = 2j * k, (k * k).real
    return FundamentalPair(z, v, w0, eps, JetFunction.constant(0.0, name="V=0"), tuple(domain))


def _closed_alpha(expr, validated, lambda0):
    """AlphaFunction evaluating ``expr``, with lambda0 pinned to its exact family value.

    The generic route computes lambda0 through complex Wronskian arithmetic;
    it agrees with the family value to rounding, which ``build_alpha`` has
    already checked against the pair.
    """
    p = validated.params
    if abs(p.lambda0 - lambda0) > 1e-10 * max(1.0, abs(lambda0)):
        raise ParameterError(f"family lambda0 {lambda0} disagrees with the pair ({p.lambda0})")
    return AlphaFunction(JetFunction.from_expression(expr, name="alpha"),
                         ErmakovParams(p.a, p.b, p.c, lambda0), validated.pair)


def _wrap_potential(vt, expr, tag):
    return ComplexPotential(JetFunction.from_expression(expr, name="V~"), vt.source, vt.epsilon,
                            vt.lam, tag)


# -- periodic -----------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicFamily:
    k: float
    lam: float
    variant: str = "cos"

    def __post_init__(self):
        if not self.k > 0:
            raise ParameterError(f"periodic family needs k > 0, got {self.k}")
        if self.lam == 0:
            raise ParameterError("periodic family needs lambda != 0")
        if self.variant not in ("cos", "sin"):
            raise ParameterError(f"variant must be 'cos' or 'sin', got {self.variant!r}")

    @property
    def gamma(self):
        return math.sqrt(1.0 + (self.lam / self.k) ** 2)

    @property
    def period(self):
        return math.pi / self.k

    @property
    def coefficients(self):
        if self.variant == "cos":
            return 0.5, self.gamma, 0.5
        return 0.5j, self.gamma, -0.5j

    def default_domain(self):
        return (-10.0 * self.period, 10.0 * self.period)


def periodic(k, lam, variant="cos", domain=None):
    """Periodic PT-symmetric partners of the free particle at E = k^2.

    ``variant="cos"`` gives alpha^2 = cos 2kx + gamma, ``"sin"`` gives
    alpha^2 = gamma - sin 2kx (the a = -c = i/2 choice).
    Returns ``(alpha, beta, V~)``.
    """
    fam = PeriodicFamily(float(k), float(lam), variant)
    pair = free_pair(fam.k, domain or fam.default_domain())
    a, b, c = fam.coefficients
    generic = build_alpha(pair, a, b, c)
    g, kk = fam.gamma, fam.k
    if variant == "cos":
        alpha = _closed_alpha(lambda X: ((X * (2.0 * kk)).cos() + g).sqrt(), generic, fam.lam ** 2)
    else:
        alpha = _closed_alpha(lambda X: (g - (X * (2.0 * kk)).sin()).sqrt(), generic, fam.lam ** 2)
    bet = beta(alpha, fam.lam)
    vt = darboux_potential(bet, family_tag=f"periodic-{variant}")
    if variant == "cos":
        lam_ = fam.lam

        def expr(X):
            cs = (X * (2.0 * kk)).cos()
            sn = (X * (2.0 * kk)).sin()
            num = (cs * g + 1.0) * (4.0 * kk * kk) + sn * (4j * lam_ * kk)
            return num / ((cs + g) * (cs + g))

        vt = _wrap_potential(vt, expr, vt.family_tag)
    return alpha, bet, vt


# -- hyperbolic -----------------------------------------------------------------


@dataclass(frozen=True)
class HyperbolicFamily:
    kappa: float
    lam: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ParameterError(f"hyperbolic family needs kappa > 0, got {self.kappa}")
        if abs(self.lam) > 0.5 * self.kappa:
            raise LambdaOutOfRange(
                f"|lambda| = {abs(self.lam)} exceeds kappa/2 = {0.5 * self.kappa}"
            )

    @property
    def theta(self):
        return math.sqrt(max(0.0, 1.0 - 4.0 * (self.lam / self.kappa) ** 2))

    @property
    def epsilon(self):
        return -0.25 * self.kappa ** 2

    def default_domain(self):
        # 2 e^{-kappa L} = 1e-14 bounds the density envelope at the edges
        half = (LN_1E14 + math.log(2.0)) / self.kappa
        return (-half, half)

    def c_eps(self):
        """Normalization of the missing state; sqrt(kappa/2) at lambda = 0."""
        lam = abs(self.lam)
        if lam == 0:
            return math.sqrt(0.5 * self.kappa)
        return math.sqrt(lam / self._opening())

    def phase_slope(self):
        """(kappa / 2 lambda)(1 - theta), the bounded arctan prefactor."""
        if self.lam == 0:
            return 0.0
        return self.kappa * (1.0 - self.theta) / (2.0 * self.lam)

    def milne_count(self):
        """(lambda/pi) int_R alpha^-2 = arccos(theta) / pi."""
        return math.copysign(self._opening(), self.lam) / math.pi

    def _opening(self):
        # arccos(theta), written as arcsin(2|lam|/kappa) to stay accurate as lam -> 0
        return math.asin(min(1.0, 2.0 * abs(self.lam) / self.kappa))


def hyperbolic_alpha(kappa, lam, domain=None):
    """alpha = sqrt(cosh(kappa x) + theta); lambda = 0 is allowed here."""
    fam = HyperbolicFamily(float(kappa), float(lam))
    pair = free_pair(0.5j * fam.kappa, domain or fam.default_domain())
    generic = build_alpha(pair, 0.5, fam.theta, 0.5)
    th, kap = fam.theta, fam.kappa
    alpha = _closed_alpha(lambda X: ((X * kap).cosh() + th).sqrt(), generic, fam.lam ** 2)
    return fam, alpha


def hyperbolic_potential_expr(kappa, lam):
    th = HyperbolicFamily(kappa, lam).theta

    def expr(X):
        ch = (X * kappa).cosh()
        sh = (X * kappa).sinh()
        num = (ch * th + 1.0) * (kappa * kappa) + sh * (2j * lam * kappa)
        return -(num / ((ch + th) * (ch + th)))

    return expr


def hyperbolic_missing_state(fam):
    """psi_eps = c alpha^-1 exp{i arctan[s tanh(kappa x / 2)]}, with s bounded by 1."""
    s = fam.phase_slope()
    if abs(s) > 1.0 + 1e-15:
        raise ParameterError(f"arctan argument bound {s} exceeds 1")
    c, kap, th = fam.c_eps(), fam.kappa, fam.theta

    def expr(X):
        amp = ((X * kap).cosh() + th).sqrt().reciprocal() * c
        phase = ((X * (0.5 * kap)).tanh() * s).arctan()
        return amp * (phase * 1j).exp()

    func = JetFunction.from_expression(expr, name="psi_eps")
    # int psi^2 over R = c^2 sin(arccos theta) / |lam| = 2 c^2 / kappa
    return MissingState(fam.epsilon, c, func, True, 0.0, complex(2.0 * c * c / kap))


def hyperbolic(kappa, lam, domain=None):
    """Poschl-Teller-like complex partners of the free particle at E = -kappa^2/4.

    Returns ``(alpha, beta, V_lambda, missing_state)``; the single bound
    energy is ``-kappa^2 / 4`` for every ``0 < |lambda| <= kappa/2``.
    """
    fam, alpha = hyperbolic_alpha(kappa, lam, domain)
    bet = beta(alpha, fam.lam)
    vt = darboux_potential(bet, family_tag="hyperbolic")
    vt = _wrap_potential(vt, hyperbolic_potential_expr(fam.kappa, fam.lam), "hyperbolic")
    return alpha, bet, vt, hyperbolic_missing_state(fam)


def poschl_teller_special(kappa):
    """The theta = 0 member: V = [1 + i sinh(kappa x)] V_PT with V_PT = -kappa^2 / cosh^2.

    Returns ``(V, psi_eps)`` with ``psi_eps`` normalized.
    """
    kappa = float(kappa)
    _, _, vt, ms = hyperbolic(kappa, 0.5 * kappa)

    def expr(X):
        ch = (X * kappa).cosh()
        return -(((X * kappa).sinh() * 1j + 1.0) * (ch * ch).reciprocal()) * (kappa * kappa)

    vt = _wrap_potential(vt, expr, "poschl-teller")

    def psi_expr(X):
        amp = ((X * kappa).cosh().reciprocal() * (kappa / math.pi)).sqrt()
        return amp * ((X * (0.5 * kappa)).tanh().arctan() * 1j).exp()

    return vt, JetFunction.from_expression(psi_expr, name="psi_eps")


def poschl_teller_energy(kappa):
    """Ground energy of the real well -kappa^2 / cosh^2(kappa x)."""
    return -0.25 * kappa ** 2 * (math.sqrt(5.0) - 1.0) ** 2


# -- oscillator -------------------------------------------------------------------


def _x2_potential():
    return JetFunction.from_expression(lambda X: X * X, name="x^2")


def _osc_closed_pair(domain):
    z = JetFunction.from_expression(lambda X: (X * X * 0.5).exp(), name="z")
    v = JetFunction.from_expression(lambda X: (X * X * 0.5).exp() * X.erf() * (0.5 * SQRT_PI),
                                    name="v")
    return FundamentalPair(z, v, 1.0, -1.0, _x2_potential(), tuple(domain))


def _kummer_solution(a, c, odd, eps):
    """x^odd 1F1(a; c; x^2) e^{-x^2/2} with jets from the Schrodinger recursion."""

    def rule(x, order):
        x = np.asarray(x, dtype=float)
        x2 = x * x
        if np.any(x2 > 64.0):
            raise SeriesNonConvergence(f"1F1 argument x^2 = {float(np.max(x2))} exceeds 64")
        f = kernels.hyp1f1(a, c, x2)
        df = 2.0 * x * (a / c) * kernels.hyp1f1(a + 1.0, c + 1.0, x2)
        g = np.exp(-0.5 * x2)
        if odd:
            val = x * f * g
            slope = (f + x * df - x2 * f) * g
        else:
            val = f * g
            slope = (df - x * f) * g
        m = Jet.variable(x, max(order - 2, 0)) ** 2 - eps
        if order < 2:
            m = m.truncate(0)
        return schrodinger_jet(val, slope, m).truncate(order)

    return JetFunction(rule, name="1F1 solution")


def osc_fundamental(eps=-1.0, domain=(-8.0, 8.0)):
    """Fundamental pair of V = x^2 at energy ``eps`` with W(z, v) = 1.

    ``eps = -1`` uses e^{x^2/2} and (sqrt(pi)/2) e^{x^2/2} erf(x); other
    energies use the Kummer-function forms, limited to |x| <= 8.
    """
    eps = float(eps)
    if eps == -1.0:
        return _osc_closed_pair(domain)
    z = _kummer_solution((1.0 - eps) / 4.0, 0.5, False, eps)
    v = _kummer_solution((3.0 - eps) / 4.0, 1.5, True, eps)
    return FundamentalPair(z, v, 1.0, eps, _x2_potential(), tuple(domain))


@dataclass(frozen=True)
class OscillatorFamily:
    """alpha = e^{x^2/2} [a erf^2 + b erf + c]^{1/2} at eps = -1."""

    a: float
    b: float
    c: float

    epsilon = -1.0

    def __post_init__(self):
        if self.a < 0:
            raise ParameterError(f"oscillator family needs a >= 0, got {self.a}")
        if self.a == 0:
            if not self.c > abs(self.b):
                raise ZeroCrossingRisk(f"a = 0 needs c > |b|, got b = {self.b}, c = {self.c}")
        elif not self.c > self.b * self.b / (4.0 * self.a):
            raise ZeroCrossingRisk(
                f"c = {self.c} must exceed b^2/(4a) = {self.b * self.b / (4.0 * self.a)}"
            )

    @property
    def lambda0(self):
        return (4.0 * self.a * self.c - self.b * self.b) / math.pi

    @property
    def lam(self):
        lam0 = self.lambda0
        if lam0 < 0:
            raise ExcludedBranch(f"lambda0 = {lam0} < 0 for (a, b, c) = {(self.a, self.b, self.c)}")
        if lam0 == 0:
            raise ZeroLambdaBranch("lambda0 = 0: the partner is real, use the conventional path")
        return math.sqrt(lam0)

    def pair_coefficients(self):
        """Coefficients of v^2, vz, z^2 for the pair with v = (sqrt(pi)/2) e^{x^2/2} erf."""
        return 4.0 * self.a / math.pi, 2.0 * self.b / SQRT_PI, self.c

    def mirror(self):
        return OscillatorFamily(self.a, -self.b, self.c)


def oscillator_alpha(a, b, c, domain=(-8.0, 8.0)):
    """Closed-form oscillator amplitude without the family's lambda0 > 0 requirement."""
    a, b, c = float(a), float(b), float(c)
    pair = osc_fundamental(-1.0, domain)
    A, B, C = 4.0 * a / math.pi, 2.0 * b / SQRT_PI, c
    generic = build_alpha(pair, A, B, C)

    def expr(X):
        e = X.erf()
        return (X * X * 0.5).exp() * (e * e * a + e * b + c).sqrt()

    return _closed_alpha(expr, generic, (4.0 * a * c - b * b) / math.pi)


def _osc_potential_jet(X, a, b, c, lam):
    # raise the order by one so the derivative keeps the requested order
    order = X.order
    Y = Jet.variable(X.c[0], order + 1)
    e = Y.erf()
    q = e * e * a + e * b + c
    inner = (e * (2.0 * a) + (b - 1j * SQRT_PI * lam)) / ((Y * Y).exp() * q * SQRT_PI)
    return X * X - 2.0 - inner.d() * 2.0


def osc_family(a, b, c, lam_sign=1, domain=(-8.0, 8.0)):
    """Complex partners of the oscillator with spectrum {-1, 1, 3, 5, ...}.

    Returns ``(alpha, beta, V~)``. lambda = sign * sqrt((4ac - b^2) / pi).
    """
    fam = OscillatorFamily(float(a), float(b), float(c))
    alpha = oscillator_alpha(fam.a, fam.b, fam.c, domain)
    lam = math.copysign(fam.lam, lam_sign)
    bet = beta(alpha, lam)
    vt = darboux_potential(bet, family_tag="oscillator")
    vt = _wrap_potential(vt, lambda X: _osc_potential_jet(X, fam.a, fam.b, fam.c, lam), "oscillator")
    return alpha, bet, vt


def oscillator_eigenstate(n):
    """Normalized Hermite-Gaussian psi_n of V = x^2 and its energy 2n + 1."""
    n = int(n)
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if n > MAX_HERMITE:
        raise OrderTooLarge(f"n = {n} exceeds the Hermite budget {MAX_HERMITE}")

    def expr(X):
        # psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}
        prev = None
        cur = (X * X * -0.5).exp() * math.pi ** -0.25
        for k in range(n):
            nxt = X * cur * math.sqrt(2.0 / (k + 1))
            if prev is not None:
                nxt = nxt - prev * math.sqrt(k / (k + 1.0))
            prev, cur = cur, nxt
        return cur

    return JetFunction.from_expression(expr, name=f"psi_{n}"), 2.0 * n + 1.0


# -- diagnostics ------------------------------------------------------------------


def pt_defect(potential, grid):
    """max |conj(V(-x)) - V(x)| over a grid symmetric about zero."""
    if not grid.symmetric:
        raise AsymmetricDomain(f"grid [{grid.x_min}, {grid.x_max}] is not symmetric about 0")
    x = grid.points
    vals = np.asarray(potential(x))
    mirror = np.asarray(potential(-x))
    bad = np.nonzero(~(np.isfinite(vals) & np.isfinite(mirror)))[0]
    if bad.size:
        raise NonFinitePotential(int(bad[0]), x[bad[0]])
    return float(np.max(np.abs(np.conj(mirror) - vals)))
