"""Charge renormalization and g-2 in bilocal (non-local) QED."""

__version__ = "0.1.0"

from .gauge import GaugeScanResult, certify_unique_root, gauge_lhs, gauge_residual  # noqa: E402
from .moments import (  # noqa: E402
    LEPTONS,
    LeptonSpec,
    MomentResult,
    anomalous_moment_exact,
    anomalous_moment_large_m,
    anomalous_moment_small_m,
    g_minus_2_comparison,
)
from .quadrature import (  # noqa: E402
    QuadratureConfig,
    QuadratureResult,
    integrate_finite,
    integrate_semi_infinite,
    scan_sign_changes,
)
from .renorm import (  # noqa: E402
    Coupling,
    ZRatioReport,
    i_half_on_shell,
    i_zero_on_shell,
    j1_integral,
    renormalized_alpha_inv,
    rho_photon,
    verify_i_on_shell_by_quadrature,
    z1_over_z2,
    z4_over_z3,
)
from .specfun import aux_f, aux_g, bessel_k1, cos_integral, sin_integral  # noqa: E402
