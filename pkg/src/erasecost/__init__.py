"""erasecost: minimum expected cost of overwriting information under
mutual-information leakage constraints, with encoder constructions and
seeded Monte Carlo verification."""

__version__ = "0.1.0"

from .cost import CostMatrix, expected_cost, gamma_min, hamming_cost, sequence_cost
from .errors import (
    AllMasslessError,
    ConfigError,
    DimensionMismatchError,
    DomainError,
    ErasureError,
    IndexOutOfRangeError,
    InternalError,
    LengthMismatchError,
    MissingQuantileError,
    NegativeEntryError,
    NonPositiveMassError,
    ScaleGuardError,
    ValidationError,
)
from .independence import (
    RepeatedSymbolVerdict,
    WeakIndependenceReport,
    is_weakly_independent,
    repeated_symbol_verdict,
)
from .prob import (
    Channel,
    Distribution,
    JointSource,
    binary_entropy,
    binary_entropy_inverse,
    constant_channel,
    entropy,
    identity_channel,
    induced_joint_y_xhat,
    joint_from_marginal_and_rows,
    make_channel,
    make_distribution,
    make_joint,
    mutual_information,
    push_forward,
)
from .sim import (
    Encoder,
    FiniteRandomnessEncoder,
    ProductEncoder,
    RepeatedSymbolEncoder,
    SimulationReport,
    SpectrumHistogram,
    block_mutual_information,
    build_finite_randomness_encoder,
    build_product_encoder,
    build_repeated_encoder,
    induced_per_letter_channel,
    product_block_channel,
    simulate,
    worst_case_proxy,
)
from .solver import (
    ContinuityReport,
    ErasureInstance,
    SolverConfig,
    SolverResult,
    SolverStatus,
    binary_closed_form,
    brute_force_oracle,
    continuity_probe,
    min_cost_n,
    mixed_source_cost,
    solve_min_cost,
    solve_zero_leakage,
)
