"""Photon-pair beamsplitter statistics and exclusivity-graph contextuality analysis.

The package simulates one or two single photons meeting at a beamsplitter
(including partial distinguishability), assembles the conditional outcome
table over all measurement contexts of a three-fiber setup, and evaluates
sums of exclusive-event probabilities against the noncontextual, projective
quantum, and algebraic packing bounds.
"""

__version__ = "0.1.0"

from .contextuality import (
    PENTAGON,
    TRIANGLE,
    EventSpec,
    ExclusivityGraph,
    SweepResult,
    all_assignments,
    assignment_satisfies,
    cycle_graph,
    derive_exclusivity,
    event_probability,
    events_exclusive,
    fractional_packing_max,
    independence_number,
    inequality_sum,
    lovasz_theta_odd_cycle,
    noncontextual_max,
    standard_events,
    sweep_eta,
)
from .experiment import (
    ALL_CONTEXTS,
    COINCIDENCE,
    FIBERS,
    PAIR_CONTEXTS,
    REFLECTED,
    TRANSMITTED,
    CheckReport,
    IdentityResult,
    OutcomeTable,
    check_indistinguishability,
    check_no_disturbance,
    full_table,
    load_table,
    make_outcome,
    marginal_probability,
    outcome_assigns,
    outcome_matches,
    parse_table,
    run_context,
)
from .fock import (
    FockState,
    PureState,
    basis_state,
    fock_basis,
    inner_product,
    make_fock,
    normalize,
    pure_state,
    state_norm,
)
from .optics import (
    BALANCED,
    BeamsplitterSpec,
    DistinguishabilityParam,
    PairDistribution,
    SinglePhotonDistribution,
    apply_interferometer,
    beamsplitter_unitary,
    pair_outcome_distribution,
    permanent,
    scattering_amplitude,
    single_outcome_distribution,
)
