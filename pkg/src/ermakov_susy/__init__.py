"""Complex supersymmetric partners of real potentials built from Ermakov amplitudes."""
from .darboux import (
    BiorthogonalState,
    ComplexPotential,
    MissingState,
    biproduct,
    darboux_potential,
    intertwining_residual,
    ladder_apply,
    missing_state,
    partner_state,
)
from .ermakov import (
    AlphaFunction,
    FundamentalPair,
    build_alpha,
    ermakov_residual,
    lambda0_from_params,
    second_solution,
)
from .errors import ErmakovSusyError, NumericalError, ParameterError
from .families import (
    hyperbolic,
    osc_family,
    osc_fundamental,
    oscillator_eigenstate,
    periodic,
    poschl_teller_special,
    pt_defect,
    special_1f1,
    special_erf,
)
from .kernels import BACKEND
from .quadrature import Grid, integrate
from .spectral import discretize, milne_count, spectrum
from .superpotential import Branch, beta, classify, riccati_residual, transformation_function

__version__ = "0.1.0"

__all__ = [
    "AlphaFunction", "BACKEND", "BiorthogonalState", "Branch", "ComplexPotential",
    "ErmakovSusyError", "FundamentalPair", "Grid", "MissingState", "NumericalError",
    "ParameterError", "beta", "biproduct", "build_alpha", "classify", "darboux_potential",
    "discretize", "ermakov_residual", "hyperbolic", "integrate", "intertwining_residual",
    "ladder_apply", "lambda0_from_params", "milne_count", "missing_state", "osc_family",
    "osc_fundamental", "oscillator_eigenstate", "partner_state", "periodic",
    "poschl_teller_special", "pt_defect", "riccati_residual", "second_solution", "special_1f1",
    "special_erf", "spectrum", "transformation_function",
]
