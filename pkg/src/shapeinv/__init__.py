"""Shape-invariant potentials toolkit.

Algebraic bound-state spectra from superpotential factorization, point
canonical transformations between solvable families, truncated ladder-algebra
verification, and an independent finite-difference eigensolver to check it
all against.
"""

from .core import (
    DomainSpec,
    Grid,
    ParameterRule,
    Potential,
    RemainderSequence,
    ShapeInvariantModel,
    Spectrum,
    Superpotential,
    WaveFunction,
    parameter_orbit,
    partner_potentials,
    shape_invariance_residual,
)
from .catalog import (
    build_by_name,
    default_grid,
    make_coulomb_effective,
    make_hulthen,
    make_kratzer,
    make_morse,
    make_pt1,
    oracle_grid,
)
from .spectrum import (
    algebraic_levels,
    count_nodes,
    ground_state,
    ladder_states,
    raise_state,
    shift_model,
)
from .oracle import EigenResult, SpectrumComparison, compare_spectra, solve_bound_states
from .pct import (
    PCTMap,
    exp_map,
    logcos_map,
    map_from_function,
    map_wavefunction,
    pullback_wavefunction,
    residual_check,
    transform_potential,
)
from .ladder import (
    AlgebraReport,
    TruncatedLadderRep,
    build_rep,
    classify_algebra,
    commutator_residuals,
)
from . import errors

__version__ = "0.1.0"

__all__ = [
    "DomainSpec", "Grid", "ParameterRule", "Potential", "RemainderSequence",
    "ShapeInvariantModel", "Spectrum", "Superpotential", "WaveFunction",
    "parameter_orbit", "partner_potentials", "shape_invariance_residual",
    "build_by_name", "default_grid", "oracle_grid",
    "make_coulomb_effective", "make_hulthen", "make_kratzer", "make_morse",
    "make_pt1",
    "algebraic_levels", "count_nodes", "ground_state", "ladder_states",
    "raise_state", "shift_model",
    "EigenResult", "SpectrumComparison", "compare_spectra", "solve_bound_states",
    "PCTMap", "exp_map", "logcos_map", "map_from_function", "map_wavefunction",
    "pullback_wavefunction", "residual_check", "transform_potential",
    "AlgebraReport", "TruncatedLadderRep", "build_rep", "classify_algebra",
    "commutator_residuals",
    "errors",
    "__version__",
]
