import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from ermakov_susy import _fallback, kernels
from ermakov_susy.errors import EigenNoConvergence, ParameterError, SeriesNonConvergence

BACKENDS = [_fallback]
try:
    from ermakov_susy import _kernels

    BACKENDS.append(_kernels)
except ImportError:  # pragma: no cover - extension not built
    pass

IDS = [b.__name__.rsplit(".", 1)[-1] for b in BACKENDS]

# 30-digit oracle values (mpmath), frozen
ERF = {0.5: 0.52049987781304653768, 1.0: 0.84270079294971486934, 2.5: 0.99959304798255504106,
       3.5: 0.99999925690162765859, 5.0: 0.99999999999846254021}
HYP = [
    (0.5, 1.5, -4.0, 0.44104069538121083998),
    (0.75, 0.5, 9.0, 20150.475725579681691),
    (1.25, 1.5, 30.0, 4455099805532.8514728),
    (-0.5, 0.5, 2.0, -2.0687594722901869112),
    (0.25, 0.5, -20.0, 0.23347296885611818667),
]


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")
    if len(BACKENDS) == 2:
        assert kernels.BACKEND == "compiled"


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
@pytest.mark.parametrize("x", sorted(ERF))
def test_erf_oracle(mod, x):
    assert abs(mod.erf(x) - ERF[x]) < 1e-14
    assert abs(mod.erf(-x) + ERF[x]) < 1e-14


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
def test_erf_limits(mod):
    assert mod.erf(0.0) == 0.0
    assert mod.erf(40.0) == 1.0
    assert mod.erf(-40.0) == -1.0
    assert mod.erf(np.inf) == 1.0


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
def test_erf_vectorized_shape(mod):
    x = np.linspace(-4, 4, 12).reshape(3, 4)
    y = mod.erf(x)
    assert y.shape == (3, 4)
    assert np.all(np.abs(y - np.vectorize(math.erf)(x)) < 1e-14)


@settings(max_examples=200, deadline=None)
@given(st.floats(-8.0, 8.0))
def test_erf_matches_libm(x):
    for mod in BACKENDS:
        assert abs(mod.erf(x) - math.erf(x)) < 1e-14


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
@pytest.mark.parametrize("a,c,z,ref", HYP)
def test_hyp1f1_oracle(mod, a, c, z, ref):
    assert abs(mod.hyp1f1(a, c, z) - ref) <= 1e-12 * abs(ref)


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
def test_hyp1f1_identities(mod):
    # 1F1(a; a; z) = e^z and 1F1(0; c; z) = 1
    assert abs(mod.hyp1f1(0.5, 0.5, 2.0) - math.exp(2.0)) < 1e-12 * math.exp(2.0)
    assert mod.hyp1f1(0.0, 0.5, 7.0) == 1.0


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-3, 4.0))
def test_hyp1f1_erf_cross_check(x):
    # 1F1(1/2; 3/2; -x^2) = (sqrt(pi)/2) erf(x) / x
    for mod in BACKENDS:
        lhs = mod.hyp1f1(0.5, 1.5, -x * x)
        rhs = 0.5 * math.sqrt(math.pi) * mod.erf(x) / x
        assert abs(lhs - rhs) < 1e-10


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
def test_hyp1f1_errors(mod):
    with pytest.raises(ParameterError):
        mod.hyp1f1(0.5, -2.0, 1.0)
    with pytest.raises(SeriesNonConvergence):
        mod.hyp1f1(0.5, 1.5, 65.0)


def test_backends_agree():
    if len(BACKENDS) < 2:
        pytest.skip("compiled extension not built")
    x = np.linspace(-7, 7, 501)
    # the vectorized continued fraction may stop one iteration later: a few ulp
    assert np.max(np.abs(BACKENDS[0].erf(x) - BACKENDS[1].erf(x))) <= 4.5e-16
    z = np.linspace(-60, 60, 241)
    a, b = BACKENDS[0].hyp1f1(0.75, 0.5, z), BACKENDS[1].hyp1f1(0.75, 0.5, z)
    assert np.max(np.abs(a - b) / np.abs(a)) < 1e-13


def _random_tridiag(n, seed, imag=0.3):
    rng = np.random.default_rng(seed)
    d = rng.normal(size=n) + 1j * imag * rng.normal(size=n)
    e = rng.normal(size=n - 1)
    return d, e


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_tridiag_matches_lapack(mod, seed):
    d, e = _random_tridiag(40, seed)
    m = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    ref = np.sort_complex(scipy.linalg.eigvals(m))
    got = np.sort_complex(mod.tridiag_eigvals(d, e))
    assert np.max(np.abs(ref - got)) < 1e-10


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
def test_tridiag_known_spectrum(mod):
    ev = np.sort(mod.tridiag_eigvals([2.0, 2.0, 2.0], [-1.0, -1.0]).real)
    assert np.allclose(ev, [2 - math.sqrt(2), 2, 2 + math.sqrt(2)], atol=1e-14)


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
def test_tridiag_shape_error(mod):
    with pytest.raises((ParameterError, ValueError)):
        mod.tridiag_eigvals([1.0, 2.0, 3.0], [1.0])


@pytest.mark.parametrize("mod", BACKENDS, ids=IDS)
def test_tridiag_breakdown_detected(mod):
    # complex-symmetric matrices can have isotropic (q^T q = 0) directions;
    # the 2x2 block [[1, i], [i, -1]] is nilpotent and defeats complex rotations
    with pytest.raises(EigenNoConvergence):
        mod.tridiag_eigvals([1.0, -1.0], [1j])


def test_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, ERMAKOV_SUSY_PURE_PYTHON="1")
    proc = subprocess.run([sys.executable, "-c",
                           "from ermakov_susy import kernels; print(kernels.BACKEND)"],
                          env=env, capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "python"
