"""Exact computations with centralizers of semisimple torus elements in
adjoint groups of type D over odd characteristic.

The library works entirely in the Weyl-group/torus shadow of the group: torus
elements are vectors over Q/Z, Weyl and Frobenius elements are signed
permutations with a p-power part, and every statement about component groups,
rational classes and the maps omega/theta is checked with exact arithmetic.
A small matrix model of SO_2l over finite fields cross-validates the abstract
actions.
"""

from .centralizer import (
    CentralizerData,
    CosetReps,
    SemidirectReport,
    component_group,
    coset_reps,
    fiber_action,
    stabilizer,
    verify_semidirect,
)
from .errors import (
    BoundExceeded,
    ConfigError,
    DenominatorDivisibleByP,
    DenominatorNotSplit,
    DladError,
    FrobeniusPowerZero,
    HypothesisViolated,
    NotClosedUnderNegation,
    NotFixed,
    NotInStabilizer,
    NotStable,
    OddParity,
    RankMismatch,
    SingularBasis,
    UnclassifiableComponent,
)
from .exactnum import QZ, IntMatrix, QZVector, coroot_basis, qz, solve_basis
from .matmodel import (
    FiniteField,
    MatrixReport,
    OrthMatrix,
    crosscheck_action,
    crosscheck_suite,
    field_for,
    perm_matrix,
    root_subgroup,
    torus_matrix,
    verify_graph_auto,
    verify_prop21,
)
from .rational import (
    CheckReport,
    Cor26Report,
    GeomClass,
    RationalClassTable,
    RationalEntry,
    ScenarioFinding,
    canonical_form,
    class_stable,
    cor26_explore,
    cor32_check,
    enumerate_geom_classes,
    geom_class_of,
    rational_classes,
    rem24_check,
    scenario_search,
    theorem_b_check,
)
from .roots import Root, RootSubsystem, choose_basis, full_root_system, phi_x, simple_roots
from .torus import (
    AdTorusElem,
    Center,
    CenterElem,
    ScTorusElem,
    ThetaCoset,
    act_ad,
    act_sc,
    center,
    expand_so,
    lift,
    omega,
    project,
    theta,
    theta_raw,
)
from .weyl import ExtElem, SignedPerm, all_signed_perms, gamma, weyl_d

__version__ = "0.1.0"
