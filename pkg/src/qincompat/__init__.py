"""Distance-based incompatibility and disturbance measures for quantum measurements."""

from .errors import (
    DegenerateObservableError,
    DimensionMismatchError,
    LengthMismatchError,
    NotHermitianError,
    NotPositiveError,
    NumericalFailureError,
    ObjectiveNaNError,
    ParamOutOfRangeError,
    ParseError,
    QincompatError,
    ValidationError,
)
from .core import (
    DensityMatrix,
    HermitianObservable,
    Instrument,
    Povm,
    PureState,
    canonical_instrument,
    commutator_maxnorm,
    luders_from_povm,
    measurement_effects,
    projective_instrument,
    spectral_decompose,
)
from .probdist import (
    ProbDist,
    chebyshev_distance,
    classical_fidelity,
    fidelity_distance,
    renyi2_entropy,
    variational_distance,
)
from .quantum import (
    apply_instrument,
    outcome_distribution,
    pure_channel_fidelity,
    quantum_fidelity,
    sequential_distribution,
    trace_distance,
)
from .optimize import (
    OptimizerConfig,
    OptResult,
    Provenance,
    maximize_over_pure_states,
)
from .constructions import (
    asymmetric_pair,
    commuting_subspace_pair,
    computational_observable,
    degenerate_observable,
    fourier_basis,
    fourier_mub_pair,
    mub_triple_qubit,
    random_density_matrix,
    random_observable,
    random_povm,
    random_pure_state,
    random_unitary,
    trine_povm,
    z_channel,
)
from .incompatibility import (
    BoundCheck,
    IncompatReport,
    Measure,
    ScanReport,
    ScanRow,
    analytic_seed_states,
    check_bounds,
    closed_form,
    commuting_fixture,
    conjecture_scan,
    directional_incompatibility,
    maximal_disturbance,
    pair_distance_objective,
    pair_incompatibility,
    set_incompatibility,
)
from .accessible import RankOnePovm, acc_fid_objective, q_acc_upper_bound
from .serialization import load_observable_file, save_observable_file

__version__ = "0.1.0"

__all__ = [
    "DegenerateObservableError",
    "DimensionMismatchError",
    "LengthMismatchError",
    "NotHermitianError",
    "NotPositiveError",
    "NumericalFailureError",
    "ObjectiveNaNError",
    "ParamOutOfRangeError",
    "ParseError",
    "QincompatError",
    "ValidationError",
    "DensityMatrix",
    "HermitianObservable",
    "Instrument",
    "Povm",
    "PureState",
    "canonical_instrument",
    "commutator_maxnorm",
    "luders_from_povm",
    "measurement_effects",
    "projective_instrument",
    "spectral_decompose",
    "ProbDist",
    "chebyshev_distance",
    "classical_fidelity",
    "fidelity_distance",
    "renyi2_entropy",
    "variational_distance",
    "apply_instrument",
    "outcome_distribution",
    "pure_channel_fidelity",
    "quantum_fidelity",
    "sequential_distribution",
    "trace_distance",
    "OptimizerConfig",
    "OptResult",
    "Provenance",
    "maximize_over_pure_states",
    "asymmetric_pair",
    "commuting_subspace_pair",
    "computational_observable",
    "degenerate_observable",
    "fourier_basis",
    "fourier_mub_pair",
    "mub_triple_qubit",
    "random_density_matrix",
    "random_observable",
    "random_povm",
    "random_pure_state",
    "random_unitary",
    "trine_povm",
    "z_channel",
    "BoundCheck",
    "IncompatReport",
    "Measure",
    "ScanReport",
    "ScanRow",
    "analytic_seed_states",
    "check_bounds",
    "closed_form",
    "commuting_fixture",
    "conjecture_scan",
    "directional_incompatibility",
    "maximal_disturbance",
    "pair_distance_objective",
    "pair_incompatibility",
    "set_incompatibility",
    "RankOnePovm",
    "acc_fid_objective",
    "q_acc_upper_bound",
    "load_observable_file",
    "save_observable_file",
]
