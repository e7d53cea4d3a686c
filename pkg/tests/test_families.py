import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ermakov_susy import darboux as dx
from ermakov_susy import families as fm
from ermakov_susy.ermakov import ermakov_residual, lambda0_from_params
from ermakov_susy.errors import (
    AsymmetricDomain,
    ExcludedBranch,
    LambdaOutOfRange,
    NonFinitePotential,
    OrderTooLarge,
    ParameterError,
    ZeroCrossingRisk,
    ZeroLambdaBranch,
)
from ermakov_susy.jets import JetFunction
from ermakov_susy.quadrature import Grid, integrate
from ermakov_susy.superpotential import riccati_residual

from conftest import OSC_REF, SQRT_PI

SYM = Grid(-12.0, 12.0, 2001)


# -- periodic ---------------------------------------------------------------------


def test_periodic_examples(periodic11):
    alpha, _, vt = periodic11
    assert fm.PeriodicFamily(1.0, 1.0).gamma == math.sqrt(2.0)
    v0 = vt(0.0)
    assert abs(v0.real - 4 / (1 + math.sqrt(2))) < 1e-14
    assert v0.imag == 0.0
    assert abs(ermakov_residual(alpha, math.pi / 3)) < 1e-10


def test_periodic_oracle_value():
    # k = 1, lambda = 0.5 at x = 0.3 (mpmath)
    _, _, vt = fm.periodic(1.0, 0.5)
    ref = 2.0364452503575238418 + 0.29901482974405682145j
    assert abs(vt(0.3) - ref) < 1e-14


@pytest.mark.parametrize("k,lam", [(0.5, 1.0), (1.0, 1.0), (1.0, 0.5)])
def test_periodic_panels_finite_and_periodic(k, lam):
    _, _, vt = fm.periodic(k, lam)
    x = np.linspace(-3 * math.pi / k, 3 * math.pi / k, 2001)
    v = vt(x)
    assert np.all(np.isfinite(v))
    assert np.max(np.abs(vt(x + math.pi / k) - v)) < 1e-12
    assert fm.pt_defect(vt, SYM) < 1e-10


def test_periodic_sin_variant():
    alpha, b, vt = fm.periodic(1.0, 0.5, variant="sin")
    g = math.sqrt(1.25)
    x = np.linspace(-5, 5, 201)
    assert np.max(np.abs(alpha(x) ** 2 - (g - np.sin(2 * x)))) < 1e-14
    assert np.max(riccati_residual(b, x, relative=True)) < 1e-12
    assert np.max(np.abs(vt(x + math.pi) - vt(x))) < 1e-12
    # a shift by a quarter period maps cos 2x to -sin 2x
    _, _, vc = fm.periodic(1.0, 0.5)
    assert np.max(np.abs(vt(x) - vc(x + math.pi / 4))) < 1e-12


def test_periodic_rejects():
    with pytest.raises(ParameterError):
        fm.periodic(1.0, 0.0)
    with pytest.raises(ParameterError):
        fm.periodic(-1.0, 0.5)
    with pytest.raises(ParameterError):
        fm.periodic(1.0, 0.5, variant="tan")


# -- hyperbolic ---------------------------------------------------------------------


def test_hyperbolic_examples():
    fam = fm.HyperbolicFamily(1.0, 0.2)
    assert abs(fam.theta - 0.916515138991168) < 1e-15
    assert fam.epsilon == -0.25
    assert fm.HyperbolicFamily(1.0, 0.5).theta == 0.0
    # kappa = 1, lambda = 0.2 (mpmath)
    assert abs(fam.milne_count() - 0.13098988043445461724) < 1e-15
    assert abs(fm.HyperbolicFamily(1.0, 0.5).milne_count() - 0.5) < 1e-15


def test_hyperbolic_out_of_range():
    with pytest.raises(LambdaOutOfRange):
        fm.hyperbolic(1.0, 0.51)
    with pytest.raises(ParameterError):
        fm.hyperbolic(0.0, 0.1)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(0.01, 0.5))
def test_hyperbolic_missing_state_is_bound(kappa, ratio):
    lam = ratio * kappa
    _, _, vt, ms = fm.hyperbolic(kappa, lam)
    x = np.linspace(-12 / kappa, 12 / kappa, 200)
    res = dx.eigen_residual(vt, ms.func, -0.25 * kappa ** 2, x, relative=True)
    assert np.max(res) < 1e-8
    assert fm.pt_defect(vt, Grid(-20 / kappa, 20 / kappa, 801)) < 1e-10


@pytest.mark.parametrize("lam", [0.2, 0.45, 0.5])
def test_hyperbolic_conjugate_pair(lam):
    x = np.linspace(-15, 15, 301)
    _, _, vp, mp = fm.hyperbolic(1.0, lam)
    _, _, vm, mm = fm.hyperbolic(1.0, -lam)
    assert np.max(np.abs(vm(x) - np.conj(vp(x)))) < 1e-12
    assert np.max(np.abs(mm(x) - np.conj(mp(x)))) < 1e-12


def test_hyperbolic_missing_density_matches_alpha():
    alpha, _, _, ms = fm.hyperbolic(1.0, 0.3)
    x = np.linspace(-20, 20, 401)
    assert np.allclose(ms.density(x), ms.c_eps ** 2 / alpha(x) ** 2, rtol=1e-13, atol=0)
    norm, _ = integrate(ms.density, Grid(*alpha.domain, 8001), tol=1e-10)
    assert abs(norm - 1.0) < 1e-8


def test_poschl_teller_special():
    for kappa in (1.0, 2.0):
        vt, psi = fm.poschl_teller_special(kappa)
        assert psi(0.0) == pytest.approx(math.sqrt(kappa / math.pi), abs=1e-15)
        assert np.imag(psi(0.0)) == 0.0
        x = np.linspace(-8 / kappa, 8 / kappa, 300)
        ref = (1 + 1j * np.sinh(kappa * x)) * (-kappa ** 2 / np.cosh(kappa * x) ** 2)
        assert np.max(np.abs(vt(x) - ref)) < 1e-13 * kappa ** 2
        grid = Grid(-40 / kappa, 40 / kappa, 8001)
        norm, _ = integrate(lambda y: np.abs(psi(y)) ** 2, grid, tol=1e-10)
        assert abs(norm - 1.0) < 1e-8
        res = dx.eigen_residual(vt, psi, -0.25 * kappa ** 2, x, relative=True)
        assert np.max(res) < 1e-10


def test_poschl_teller_energy():
    # ground energy of -1/cosh^2 (mpmath eigenvalue oracle)
    assert abs(fm.poschl_teller_energy(1.0) - (-0.3819660112501051518)) < 1e-15
    assert 1.5 < fm.poschl_teller_energy(1.0) / -0.25 < 1.6


# -- oscillator ---------------------------------------------------------------------


def test_osc_fundamental_closed_forms():
    pair = fm.osc_fundamental(-1.0)
    x = np.linspace(-4, 4, 17)
    assert np.allclose(pair.z(x), np.exp(x * x / 2), rtol=1e-15)
    assert np.allclose(pair.v(x), SQRT_PI / 2 * np.exp(x * x / 2) *
                       np.vectorize(math.erf)(x), rtol=1e-14, atol=1e-300)
    # the terms of W grow like e^{x^2}; W itself stays 1
    assert np.max(np.abs(pair.wronskian(x) - 1.0) / np.exp(x * x)) < 1e-15


def test_osc_family_examples(osc):
    alpha, b, vt = osc
    assert alpha(0.0) == 1.0
    assert abs(b.lam - math.sqrt(3) / 2) < 1e-15
    assert riccati_residual(b, 0.0) < 1e-10
    for x in (6.0, -6.0):
        assert abs(vt(x) - (x * x - 2)) < 1e-10


def test_osc_potential_oracle(osc):
    # mpmath evaluation of x^2 - 2 - 2 d/dx[(b + 2a erf - i sqrt(pi) lam) / (sqrt(pi) alpha^2)]
    _, _, vt = osc
    refs = {
        0.5: -0.78024969579457637587 - 1.5264728284335725669j,
        -1.2: -0.25007339168614772028 + 1.2505220202439638786j,
        2.0: 2.0762371719449983231 - 0.047928979642009789643j,
    }
    for x, ref in refs.items():
        assert abs(vt(x) - ref) < 1e-13


def test_osc_generic_route_matches_closed_form(osc):
    _, b, vt = osc
    x = np.linspace(-6, 6, 400)
    generic = dx.darboux_potential(b)(x)
    assert np.max(np.abs(generic - vt(x)) / (np.abs(vt(x)) + 1)) < 1e-10


def test_osc_mirror_is_pt_image():
    a, b, c = OSC_REF
    x = np.linspace(-6, 6, 301)
    _, _, v = fm.osc_family(a, b, c)
    _, _, m = fm.osc_family(a, -b, c)
    assert np.max(np.abs(m(x) - np.conj(v(-x)))) < 1e-12
    assert fm.OscillatorFamily(a, b, c).mirror() == fm.OscillatorFamily(a, -b, c)


def test_osc_conjugate_pair():
    x = np.linspace(-6, 6, 301)
    _, _, vp = fm.osc_family(*OSC_REF, lam_sign=1)
    _, _, vm = fm.osc_family(*OSC_REF, lam_sign=-1)
    assert np.max(np.abs(vm(x) - np.conj(vp(x)))) < 1e-12


def test_osc_pt_defect():
    grid = Grid(-8.0, 8.0, 2001)
    _, _, broken = fm.osc_family(*OSC_REF)
    assert fm.pt_defect(broken, grid) > 0.1
    _, _, sym = fm.osc_family(1.0, 0.0, 1.0)
    assert fm.pt_defect(sym, grid) < 1e-10


def test_osc_family_preconditions():
    with pytest.raises(ZeroCrossingRisk):
        fm.osc_family(1.0, 2.0, 1.0)
    with pytest.raises(ZeroCrossingRisk):
        fm.osc_family(0.0, 1.0, 0.5)
    with pytest.raises(ParameterError):
        fm.osc_family(-1.0, 0.0, 1.0)
    # a = 0 with c > |b| keeps the amplitude positive but lambda0 = -b^2/pi
    with pytest.raises(ExcludedBranch):
        fm.osc_family(0.0, 0.5, 1.0)
    with pytest.raises(ZeroLambdaBranch):
        fm.osc_family(0.0, 0.0, 1.0)
    assert fm.oscillator_alpha(0.0, 0.5, 1.0)(0.0) == 1.0


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(-3.0, 3.0), st.floats(0.05, 3.0))
def test_osc_lambda0_consistency(a, b, c):
    fam_ok = c > b * b / (4 * a)
    if not fam_ok:
        with pytest.raises(ZeroCrossingRisk):
            fm.OscillatorFamily(a, b, c)
        return
    fam = fm.OscillatorFamily(a, b, c)
    A, B, C = fam.pair_coefficients()
    assert lambda0_from_params(A, B, C, 1.0) > 0
    assert abs(lambda0_from_params(A, B, C, 1.0) - fam.lambda0) <= 1e-12 * max(1.0, fam.lambda0)


def test_oscillator_eigenstates():
    psi0, e0 = fm.oscillator_eigenstate(0)
    x = np.linspace(-5, 5, 41)
    assert np.allclose(psi0(x), math.pi ** -0.25 * np.exp(-x * x / 2), rtol=1e-15)
    assert e0 == 1.0
    assert fm.oscillator_eigenstate(1)[1] == 3.0
    grid = Grid(-10.0, 10.0, 2001)
    states = [fm.oscillator_eigenstate(n)[0] for n in range(5)]
    for n in range(5):
        for m in range(5):
            val, _ = integrate(lambda y: states[n](y) * states[m](y), grid, tol=1e-12)
            assert abs(val - (n == m)) < 1e-10
    with pytest.raises(OrderTooLarge):
        fm.oscillator_eigenstate(31)
    with pytest.raises(ParameterError):
        fm.oscillator_eigenstate(-1)


def test_oscillator_eigenstate_equation():
    x = np.linspace(-6, 6, 200)
    for n in (0, 3, 10, 30):
        psi, e = fm.oscillator_eigenstate(n)
        j = psi.jet(x, 2)
        res = np.abs(-j.deriv(2) + (x * x - e) * j.c[0])
        assert np.max(res) < 1e-9 * (1 + e)


# -- diagnostics and special functions ----------------------------------------------


def test_pt_defect_errors(hyper045):
    _, _, vt, _ = hyper045
    with pytest.raises(AsymmetricDomain):
        fm.pt_defect(vt, Grid(-1.0, 2.0, 11))
    pole = JetFunction.from_expression(lambda X: X.reciprocal())
    with pytest.raises(NonFinitePotential), np.errstate(divide="ignore"):
        fm.pt_defect(pole, Grid(-1.0, 1.0, 11))


def test_special_functions():
    assert fm.special_erf(0.0) == 0.0
    assert fm.special_erf(np.inf) == 1.0
    assert fm.special_erf(-np.inf) == -1.0
    assert abs(fm.special_erf(1.0) - 0.84270079294971486934) < 1e-15
    assert abs(fm.special_1f1(0.5, 0.5, 2.0) - math.exp(2.0)) < 1e-12 * math.exp(2.0)
    x = np.linspace(0.01, 4, 100)
    lhs = fm.special_1f1(0.5, 1.5, -x * x)
    assert np.max(np.abs(lhs - SQRT_PI / 2 * fm.special_erf(x) / x)) < 1e-10
