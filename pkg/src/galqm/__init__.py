"""Quantum-like mechanics on vector spaces over finite fields GF(q), in exact arithmetic."""

from .gf import FieldElement, FieldParams, abs_val, enumerate_elements, is_irreducible, make_field
from .states import Bra, Ket, ProjectivePoint, bracket, canonicalize, projective_points, same_ray
from .observables import (
    Observable,
    all_spin_observables,
    expectation,
    is_basis,
    make_spin_observable,
    outcome_probabilities,
    pauli_like,
)
from .tensor import (
    JointTable,
    LocalMap,
    TwoPartyState,
    apply_local,
    enumerate_entangled,
    is_product,
    joint_table,
    local_orbits,
    product_observable,
    singlet,
    tensor_ket,
)
from .chsh import ChshQuad, chsh_correlator, chsh_sweep, verify_symmetry_identities
from .hidden import (
    DeterministicStrategy,
    HvInstance,
    chsh_classical_bound,
    enumerate_strategies,
    hv_feasible,
    zero_cell_filter,
)

__version__ = "0.1.0"
