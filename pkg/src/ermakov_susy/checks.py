"""Invariant suites run by ``ermakov-susy verify`` and the acceptance tests.

Residuals are relative: each is divided by the sum of the magnitudes of the
terms it balances, the natural scale for amplitudes that grow like
``e^{x^2/2}``. Every probe uses 1000 points.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import darboux as dx
from . import families as fm
from .ermakov import ermakov_residual, j_invariant
from .quadrature import Grid, integrate
from .superpotential import (
    Branch,
    classify,
    conventional_superpotential,
    riccati_residual,
    transformation_function,
)
from .jets import JetFunction

PROBE_POINTS = 1000
RESIDUAL_TOL = 1e-7
EIGEN_TOL = 1e-6
GRAM_TOL = 1e-5
PT_TOL = 1e-10


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool
    kind: str = "max"  # "max": value <= threshold, "min": value >= threshold

    def as_dict(self):
        return {"name": self.name, "value": self.value, "threshold": self.threshold,
                "passed": self.passed}


def _max(name, value, threshold):
    v = float(np.max(value))
    return CheckResult(name, v, threshold, bool(v <= threshold))


def _min(name, value, threshold):
    v = float(np.min(value))
    return CheckResult(name, v, threshold, bool(v >= threshold), "min")


@dataclass
class FamilyBundle:
    """Everything a suite needs about one catalog member."""

    name: str
    alpha: object
    beta: object
    vtilde: object
    probe: np.ndarray
    grid: Grid
    sources: list  # [(psi, E)] eigen- or scattering solutions of the source problem
    missing_closed: object = None
    gram_sources: list = None
    pt_expected: bool = True


def probe_grid(lo, hi, points=PROBE_POINTS):
    return np.linspace(lo, hi, points)


def _plane_wave(q):
    return JetFunction.from_expression(lambda X: (X * q).cos(), name=f"cos({q}x)")


def bundle(family, params):
    """Build the catalog member described by ``family`` and its parameter dict."""
    p = dict(params)
    if family == "periodic":
        k, lam = float(p.get("k", 1.0)), float(p.get("lambda", 0.5))
        alpha, bet, vt = fm.periodic(k, lam, p.get("variant", "cos"))
        per = math.pi / k
        q = k + 0.7
        return FamilyBundle("periodic", alpha, bet, vt, probe_grid(-2 * per, 2 * per),
                            Grid(-10 * per, 10 * per, 4001), [(_plane_wave(q), q * q)])
    if family == "hyperbolic":
        kappa, lam = float(p.get("kappa", 1.0)), float(p.get("lambda", 0.45))
        alpha, bet, vt, ms = fm.hyperbolic(kappa, lam)
        lo, hi = alpha.domain
        q = 0.6 * kappa
        return FamilyBundle("hyperbolic", alpha, bet, vt, probe_grid(-20 / kappa, 20 / kappa),
                            Grid(lo, hi, 8001), [(_plane_wave(q), q * q)], missing_closed=ms)
    if family == "oscillator":
        a = float(p.get("a", math.pi / 4))
        b = float(p.get("b", math.sqrt(math.pi) / 2))
        c = float(p.get("c", 1.0))
        alpha, bet, vt = fm.osc_family(a, b, c, p.get("lambda_sign", 1))
        states = [fm.oscillator_eigenstate(n) for n in range(4)]
        return FamilyBundle("oscillator", alpha, bet, vt, probe_grid(-6.0, 6.0),
                            Grid(-8.0, 8.0, 4001), states, gram_sources=states,
                            pt_expected=(b == 0))
    raise ValueError(f"unknown family {family!r}")


def core_checks(fb):
    """Ermakov, Riccati, decomposition and closed-form consistency."""
    x = fb.probe
    al, bt, vt = fb.alpha, fb.beta, fb.vtilde
    out = []
    pair = al.pair
    zj, vj = pair.z.jet(x, 1), pair.v.jet(x, 1)
    t1, t2 = zj.c[0] * vj.c[1], zj.c[1] * vj.c[0]
    out.append(_max("wronskian", np.abs(t1 - t2 - pair.w0) / (np.abs(t1) + np.abs(t2)),
                    RESIDUAL_TOL))
    out.append(_max("ermakov", ermakov_residual(al, x, relative=True), RESIDUAL_TOL))
    out.append(_max("riccati_source", riccati_residual(bt, x, relative=True), RESIDUAL_TOL))
    b = bt.jet(x, 1)
    terms = (b.c[1], b.c[0] ** 2, bt.epsilon - vt(x))
    ric2 = np.abs(sum(terms)) / sum(np.abs(t) for t in terms)
    out.append(_max("riccati_partner", ric2, RESIDUAL_TOL))
    # -beta does not solve the source equation once lambda != 0
    flipped = np.abs(b.c[1] + b.c[0] ** 2 + bt.epsilon - al.potential(x))
    out.append(_min("riccati_asymmetry", flipped[len(x) // 3], 1e-3))
    generic = dx.darboux_potential(bt)(x)
    closed = vt(x)
    out.append(_max("closed_form_potential",
                    np.abs(generic - closed) / (np.abs(closed) + 1.0), RESIDUAL_TOL))
    re, im = dx.decomposition(al, bt.lam, x)
    scale = np.abs(closed) + 1.0
    out.append(_max("decomposition", np.maximum(np.abs(re - closed.real), np.abs(im - closed.imag))
                    / scale, RESIDUAL_TOL))
    jz = np.asarray(j_invariant(pair.z, al, x))
    uj, aj = pair.z.jet(x, 1), al.jet(x, 1)
    jscale = ((np.abs(uj.c[1] * aj.c[0]) + np.abs(uj.c[0] * aj.c[1])) ** 2
              + abs(al.lambda0) * np.abs(uj.c[0] / aj.c[0]) ** 2)
    mid = len(x) // 2
    out.append(_max("j_invariant", np.abs(jz - jz[mid]) / np.maximum(jscale, jscale[mid]),
                    RESIDUAL_TOL))
    return out


def operator_checks(fb):
    """Factorization, both intertwinings, eigen-residuals and A psi_eps = 0."""
    x = fb.probe
    bt, vt = fb.beta, fb.vtilde
    out = []
    fac, inter, adj, eig = [], [], [], []
    for psi, energy in fb.sources:
        fac.append(dx.factorization_residual(bt, psi, x, relative=True))
        inter.append(dx.intertwining_residual(bt, vt, psi, x, relative=True))
        st = dx.biorthogonal_state(psi, energy, bt)
        adj.append(dx.adjoint_intertwining_residual(bt, vt, st.psi_bar, x, relative=True))
        eig.append(dx.eigen_residual(vt, st.psi_tilde, energy, x, relative=True))
    out.append(_max("factorization", np.max(fac), RESIDUAL_TOL))
    out.append(_max("intertwining", np.max(inter), RESIDUAL_TOL))
    out.append(_max("adjoint_intertwining", np.max(adj), RESIDUAL_TOL))
    out.append(_max("partner_eigen", np.max(eig), EIGEN_TOL))
    u = transformation_function(fb.alpha, bt.lam)
    # B u = 0 identically, so measure against the size of H~ acting on u
    res = dx.intertwining_residual(bt, vt, u.func, x)
    scale = np.abs(u.func.derivative(x, 2)) + np.abs(vt(x) * u(x))
    out.append(_max("transformation_intertwining", res / scale, RESIDUAL_TOL))
    inv_u = JetFunction(lambda y, order: u.jet(y, order).reciprocal())
    a_psi = dx.ladder_apply("A", bt, inv_u, x)
    scale = np.abs(inv_u.derivative(x)) + np.abs(bt(x) * inv_u(x))
    out.append(_max("annihilation", np.abs(a_psi) / scale, RESIDUAL_TOL))
    return out, u


def missing_checks(fb, u):
    out = []
    ms = dx.missing_state(u, fb.grid)
    expected = fb.name != "periodic"
    out.append(CheckResult("missing_normalizable", float(ms.normalizable), float(expected),
                           ms.normalizable == expected, "flag"))
    if ms.normalizable:
        norm, _ = integrate(ms.density, fb.grid, tol=1e-8)
        out.append(_max("missing_norm", abs(norm - 1.0), 1e-8))
        if fb.missing_closed is not None:
            x = fb.probe
            diff = np.abs(fb.missing_closed(x) - ms(x)) / np.abs(ms(x)).max()
            out.append(_max("missing_closed_form", diff, 1e-8))
    return out, ms


def gram_checks(fb, ms):
    if not fb.gram_sources or not ms.normalizable:
        return []
    states = [ms.biorthogonal()]
    states += [dx.biorthogonal_state(psi, e, fb.beta) for psi, e in fb.gram_sources]
    g = dx.gram_matrix(states, fb.grid)
    return [_max("gram", np.abs(g - np.eye(len(states))), GRAM_TOL)]


def pt_checks(fb):
    lo = max(-abs(fb.grid.x_min), -abs(fb.grid.x_max))
    defect = fm.pt_defect(fb.vtilde, Grid(lo, -lo, 2001))
    if fb.pt_expected:
        return [_max("pt_defect", defect, PT_TOL)]
    return [_min("pt_defect_broken", defect, 0.0)]


def conjugate_pair_check(family, params):
    p = dict(params)
    p["lambda" if family != "oscillator" else "lambda_sign"] = -float(
        p.get("lambda" if family != "oscillator" else "lambda_sign",
              {"periodic": 0.5, "hyperbolic": 0.45, "oscillator": 1}[family]))
    plus, minus = bundle(family, params), bundle(family, p)
    x = plus.probe
    dv = np.abs(minus.vtilde(x) - np.conj(plus.vtilde(x))) / (np.abs(plus.vtilde(x)) + 1.0)
    return [_max("conjugate_pair", dv, 1e-12)]


def conventional_checks(alpha):
    x = probe_grid(*alpha.domain)
    b0 = conventional_superpotential(alpha)
    return [
        _max("ermakov", ermakov_residual(alpha, x, relative=True), RESIDUAL_TOL),
        _max("riccati_source", riccati_residual(b0, x, relative=True), RESIDUAL_TOL),
    ]


def run_suite(family, params):
    """Full invariant suite for one catalog member; returns a list of CheckResult."""
    fb = bundle(family, params)
    results = core_checks(fb)
    ops, u = operator_checks(fb)
    results += ops
    miss, ms = missing_checks(fb, u)
    results += miss
    results += gram_checks(fb, ms)
    results += pt_checks(fb)
    results += conjugate_pair_check(family, params)
    return results


def branch_of(family, params):
    """Branch implied by the parameters, before any construction."""
    p = dict(params)
    if family == "oscillator":
        a = float(p.get("a", math.pi / 4))
        b = float(p.get("b", math.sqrt(math.pi) / 2))
        c = float(p.get("c", 1.0))
        return classify((4.0 * a * c - b * b) / math.pi)
    lam = float(p.get("lambda", 0.5 if family == "periodic" else 0.45))
    return Branch.CONVENTIONAL if lam == 0 else Branch.COMPLEX
