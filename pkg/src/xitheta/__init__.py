"""Theta-kernel moments, the modulus |xi|^2 and the polynomials f_{tau,n}."""
from .errors import CacheError, CapacityError, DomainError, PrecisionError, XiThetaError
from .theta import ThetaPoint, ToleranceSpec, psi, psi_array, psi_series, psi_tail_bound, psi_via_modular
from .quadrature import OscillationHint, QuadratureResult, integrate_finite, integrate_line, integrate_semiinf
from .moments import (
    InnerKernel,
    MomentTable,
    build_moment_table,
    cosine_kernel_C,
    cosine_kernel_D,
    cosine_kernels,
    inner_kernel,
    moment_A,
    moment_S,
    one_dim_integrals,
)
from .xi import F_direct, F_rhs, ModulusPoint, dF_dtau, dF_dtau_fd, modulus_point, xi_direct
from .coeffs import (
    CoefficientSet,
    EvenPolynomial,
    build_coefficients,
    build_f,
    coeff_a,
    coeff_a0,
    coeff_trail_even,
    coeff_trail_odd,
)
from .polyalg import (
    RationalPolynomial,
    RootCountReport,
    corollary_iv_gap,
    discriminant,
    discriminant_biquadratic,
    hermite_signature_count,
    min_nonneg_s,
    quantize,
    sturm_count,
)
from .scan import ScanConfig, ScanRecord, cache_load, cache_store, run_scan, verify_all

__version__ = "0.1.0"
