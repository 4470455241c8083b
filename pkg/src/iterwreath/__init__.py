"""Iterated wreath products of S2 as binary-tree automorphism towers.

Exact construction and brute-force verification of the tower's structure:
cosets, centers, centralizer algebras, conjugation orbits, the Mackey
decomposition for adjacent levels, and bases and generating sets for the
endomorphism algebras of iterated induction and restriction.
"""

from .treegroup import (
    LevelMismatch,
    LevelTooLarge,
    NotATreeAutomorphism,
    Permutation,
    SubgroupSpec,
    TreeAutomorphism,
    beta,
    beta_product,
    beta_product_descending,
    conjugate,
    embed_to,
    enumerate_subgroup,
    factorize,
    full_group,
    group_order,
    hat_embed,
    identity,
    inverse,
    multiply,
    perm_embed,
)
from .algebra import AlgebraElement, Orbit, centralizes, class_sum, orbit, orbit_sum
from .structure import (
    CosetSystem,
    OrbitDecomposition,
    PresentationReport,
    VerificationError,
    center,
    center_closed_form,
    centralizer_algebra_basis,
    check_presentation,
    class_count,
    conjugacy_classes,
    double_cosets,
    expand_in_orbit_basis,
    group_centralizer,
    orbit_decomposition,
    predicted_orbit_count,
    predicted_orbit_count_literal,
    right_coset_reps,
)
from .mackey import MackeySummand, conjugate_intersection, mackey_decomposition
from .endo import (
    EndBasis,
    HomSpaceEmpty,
    TensorBasisElement,
    conj_action_tensor,
    d_generator_table,
    d_generators,
    end_ind_res_basis,
    opposite_check,
    power_table,
    tensor_basis,
)

__version__ = "0.1.0"
