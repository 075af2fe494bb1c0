"""thetakit: Jacobi theta functions through their c_2p expansion, with exact q-series checks."""

from ._backend import BACKEND
from .config import DEFAULT, DEFAULT_GRID, EvalConfig, HalfPlanePoint, RunConfig, ThetaKind, parse_tau
from .elliptic import WpParams, a2p_closed, agm_K, jacobi_zn, wp_addition_form, wp_expansion, wp_lattice, wp_oracle
from .errors import (
    BadConstantTerm,
    DivisionByZero,
    DomainError,
    NoConvergence,
    NonUnitFactor,
    OutsideStrip,
    Overflow,
    PoleAtLatticePoint,
    PoleAtV,
    SeedFailure,
    ThetaKitError,
    ZeroConstantTerm,
)
from .qseries import QSeries, lambert_expand, lambert_invert, mobius, qs_exp, qs_inv, qs_log, qs_mul, qs_product
from .report import Residual
from .rr import RRValue, rogers_G, rogers_H, rr_cf, rr_exp, rr_modular_checks, rr_product, rr_theta_quotient
from .theta import (
    c2p_binomial,
    c2p_closed,
    c2p_formal_binomial,
    c2p_formal_closed,
    c2p_recursive,
    dedekind_eta,
    evaluate_theta,
    theta_expansion,
    theta_fourier,
    theta_product,
)

__version__ = "0.1.0"
