"""Exact and numerical tools for restricted-box moments of Weyl sums.

Submodules
----------
phases       Weyl sums, shifted sums, and the Dirichlet kernel, with exact
             rational phase reduction.
cutoffs      the fixed smooth bump, its Fourier transform, the periodized
             cutoff, and the averaged kernel built from it.
arcs         major/minor arc dissections of the circle with exact measure
             and overlap accounting.
counting     exact solution counts and frequency profiles of power-sum
             systems via brute force or meet-in-the-middle enumeration.
moments      restricted-box moments of Weyl sums: exact even-moment
             formula, quadrature, Monte Carlo, and cutoff-weighted counts.
experiments  N-grid sweeps, log-log slope fits, exponent predictions, and
             CSV output.
cli          command-line front end over all of the above.
"""

from .arcs import (ArcDissection, Classification, RationalApprox,
                   build_dissection, classify, disjointness_guaranteed,
                   f_exponent, rational_approx)
from .counting import (CountResult, FrequencyProfile, SystemSpec, count_brute,
                       count_mitm, dump_profile, joint_profile, load_profile,
                       profile, profile_brute)
from .cutoffs import (CutoffConfig, PhiHatTable, g_bound, g_exact, g_fourier,
                      phi, phi_hat, psi)
from .errors import BudgetError
from .experiments import (ExponentPrediction, SweepResult, SweepRow,
                          fit_loglog, predict_exponent, sweep_windowed_quintic,
                          sweep_moment, write_csv)
from .moments import (BoxKernel, MomentResult, MomentSpec, compute_moment,
                      moment_exact_even, moment_mc, moment_quadrature,
                      weighted_count_S, weighted_count_T, weighted_count_U)
from .phases import (PhaseVector, ShiftedCoefficients, eval_K, eval_f,
                     eval_f_many, shift_coeffs, shift_jacobian_determinant,
                     verify_shift_identity)

__all__ = [
    "ArcDissection", "BoxKernel", "BudgetError", "Classification",
    "CountResult", "CutoffConfig", "ExponentPrediction", "FrequencyProfile",
    "MomentResult", "MomentSpec", "PhaseVector", "PhiHatTable",
    "RationalApprox", "ShiftedCoefficients", "SweepResult", "SweepRow",
    "SystemSpec", "build_dissection", "classify", "compute_moment",
    "count_brute", "count_mitm", "disjointness_guaranteed", "dump_profile",
    "eval_K", "eval_f", "eval_f_many", "f_exponent", "fit_loglog", "g_bound",
    "g_exact", "g_fourier", "joint_profile", "load_profile",
    "moment_exact_even", "moment_mc", "moment_quadrature", "phi", "phi_hat",
    "predict_exponent", "profile", "profile_brute", "psi", "rational_approx",
    "shift_coeffs", "shift_jacobian_determinant", "sweep_windowed_quintic",
    "sweep_moment", "verify_shift_identity", "weighted_count_S",
    "weighted_count_T", "weighted_count_U", "write_csv",
]
__version__ = "0.1.0"
