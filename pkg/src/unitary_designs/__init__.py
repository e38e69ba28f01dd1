"""Unitary t-designs and codes: representation-theoretic dimensions, Haar
moments, zonal polynomials, size bounds, design verification, group
constructions and weighted-design fitting."""

from .bounds import (
    BoundReport,
    absolute_code_bound,
    absolute_design_bound,
    annihilator_Ft,
    general_relative_bound,
    rel_code_bound_1,
    rel_code_bound_2,
    rel_design_bound_1,
    rel_design_bound_2,
    tight3_residual,
)
from .design_verify import (
    VerificationReport,
    frame_potential,
    is_design,
    moment_operator_residual,
    strength,
    zonal_design_check,
)
from .errors import DesignError, InputError, InvariantViolation
from .group_designs import (
    CharacterData,
    PhaseCanonicalSet,
    abs_character_data,
    character_design_check,
    chau_design,
    clifford_design,
    close_group,
)
from .moments import haar_moment
from .repdims import dim_hom, dim_hom_closed, weyl_dimension
from .signatures import enumerate_signatures, partitions_max_parts, signature_stats
from .unitary_sets import (
    UnitarySet,
    WeightedUnitarySet,
    distance_profile,
    gram_abs2,
    load_set,
    sample_haar,
    save_set,
    weyl_heisenberg,
)
from .weighted_opt import FitResult, fit_weights, prune_support
from .zonal import char_eval, trace_powers, zonal_eval, zonal_table1_oracle

__version__ = "0.1.0"
