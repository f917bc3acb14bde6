"""Approximate-deconvolution MHD models on the periodic box.

Fields are complex numpy arrays of shape (3, n, n, n) holding the Fourier
coefficients c_k of g(x) = sum_k c_k exp(i k.x), in FFT index order.
"""

from ._core import (
    BlowUpError,
    ConfigError,
    ModelKind,
    ModelParams,
    ParameterError,
    ShapeError,
    SnapshotError,
    SolenoidalityError,
    SymmetryError,
    cancellation_check,
    check_invariants,
    cross_helicity,
    dealias,
    deconvolve,
    divergence_residual,
    dn_symbol,
    energy_report,
    helmholtz,
    helmholtz_symbol,
    hs_norm,
    inverse_helmholtz,
    leray_project,
    random_solenoidal,
    read_snapshot,
    rhs,
    simulate,
    step,
    taylor_green,
    to_physical,
    to_spectral,
    wavenumbers,
    write_snapshot,
)

__all__ = [name for name in dir() if not name.startswith("_")]
