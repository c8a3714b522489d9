"""Optimal estimation of three parallel qubit spins.

Python bindings over the C++ core: the named measurement catalog, the
estimator map and estimation fidelity, Monte Carlo averaging, adaptive
protocol simulation, unitary-design checks, and the scalar bound functions
with their exact constants.
"""

from ._core import (
    Povm,
    Protocol,
    SimResult,
    adaptive_compose,
    analytic_fidelity,
    antisym_projector,
    average_fidelity_mc,
    bound_constants,
    branch_seed_state,
    canonicalize_sym2,
    catalog_names,
    coarse_grain,
    concurrence,
    estimation_fidelity,
    fiducial_pair_state,
    fiducial_triple_state,
    flatten_protocol,
    frame_potential,
    haar_frame_potential,
    is_t_design,
    k0_povm,
    k1_povm,
    local_xyz,
    m2_povm,
    m_1to2,
    m_2to1,
    mub_check,
    octahedron_collective,
    optimal_estimators,
    pair_norm_excess,
    permutation_operator,
    povm_by_name,
    product_twirl_closed_form,
    protocol_1to2,
    protocol_2to1,
    psi_plus,
    q_map,
    q_map_product,
    q_norm_product,
    q_norm_product_max,
    q_norm_surplus,
    random_povm,
    restrict_antisym,
    restrict_sym,
    run_suite,
    simulate_protocol,
    simulate_protocol_haar,
    sym2_povm_moments,
    sym_overlap_product,
    sym_projector,
    unitary_set,
    verify_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
