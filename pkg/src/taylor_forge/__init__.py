"""Taylor series solutions of linear ODEs and simple PDEs, with radius estimates."""
from .errors import (
    CenterMismatchError,
    DegenerateProblemError,
    DescriptorError,
    DomainError,
    InsufficientCoefficientsError,
    NearSingularError,
    NumericFailure,
    OrderExceededError,
    SelfCheckError,
    SeriesOverflowError,
    SingularCenterError,
    TaylorForgeError,
)
from .jets import DerivativeOracle
from .multivar import MultiTaylor, SeparablePDEProblem, eval_multitaylor, lemma5_solve, pde_exp_product, pde_exp_sum, pde_geometric
from .ode import (
    ClosedFormSolution,
    LinearImplicitODE,
    SolverConfig,
    expinvsq_derivative_stream,
    expinvsq_taylor,
    solve_gaussian_cdf,
    solve_harmonic,
    solve_homogeneous_const,
    solve_newton_cooling,
    solve_nonhomogeneous,
    theorem1_extend,
)
from .radius import RadiusEstimate, estimate_radius, multivariate_diagonal_sequence, root_sequence
from .series import (
    DerivativeStream,
    LaurentPolynomial,
    Polynomial,
    TaylorSeries,
    cauchy_product,
    denormalize,
    differentiate,
    eval_partial_sum,
    normalize,
)

__version__ = "0.1.0"
