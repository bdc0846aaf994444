"""Riemannian geometry of SPD matrices, Cartan barycenters of discrete measures,
geometric mean flows and the barycentric trajectory ``beta(t) = G(X #_t mu)``."""
from .barycenter import (
    SolverOptions,
    SolverReport,
    cartan_barycenter,
    gradient_flow_integrate,
    karcher_residual,
    resolvent,
    riemannian_gradient,
    solve,
)
from .errors import ConvergenceError, InvalidArgumentError, NotPositiveDefiniteError, NumericalFailure
from .generate import RunConfig, generate_measure, random_measure, random_spd, stream
from .measure import (
    DiscreteMeasure,
    congruence_pushforward,
    dirac,
    geometric_flow,
    log_mean,
    mixture,
    moment_integral,
    power_pushforward,
    pushforward,
)
from .spd import (
    as_spd,
    congruence,
    geodesic,
    is_spd,
    jacobi_eigh,
    ky_fan,
    loewner_leq,
    mat_exp,
    mat_log,
    mat_pow,
    mat_sqrt,
    operator_norm,
    riem_dist,
    schatten,
    sym_eig,
)
from .trajectory import (
    beta,
    beta_prime_fd,
    beta_prime_zero,
    fixed_point_check,
    flow_law_check,
    lie_trotter_scan,
    lipschitz_probe,
    norm_monotonicity_scan,
)
from .wasserstein import CouplingPlan, d1w, permutation_oracle, transport_simplex

__version__ = "0.1.0"
