"""Three-index Mittag-Leffler functions, their calculus, and multi-order FDE solvers."""

from .contour import ContourSpec, eval_hankel_contour
from .errors import (
    DomainError,
    ParameterMismatchError,
    QuadratureError,
    SeriesNotConvergedError,
    SeriesOverflowError,
    SingularStepError,
    SingularTransformError,
    TalbotDivergenceError,
)
from .fractional import (
    FracOrder,
    GridFunction,
    caputo_derivative_univariate,
    caputo_l1_numeric,
    caputo_power,
    nth_derivative_univariate,
    rl_derivative_univariate,
    rl_integral_univariate,
)
from .kernels import beta, log_gamma, log_pochhammer, pochhammer, reciprocal_gamma
from .laplace import (
    TransformValue,
    convolution_closed_form,
    convolve_numeric,
    laplace_closed_form,
    talbot_invert,
    transform_at,
)
from .series import (
    EvalResult,
    LambdaTriple,
    MLParams,
    SeriesControl,
    eval_fox_wright_1psi1,
    eval_prabhakar,
    eval_trivariate,
    eval_univariate,
    eval_univariate_grid,
)
from .solver import (
    Forcing,
    IVPSpec,
    SolutionTrace,
    numeric_oracle_solve,
    particular_solution,
    residual_check,
    solve,
    solve_homogeneous,
    solve_homogeneous_fox_wright,
    trinomial,
)
from .verify import CheckResult, all_check_names, run_checks

__version__ = "0.1.0"
