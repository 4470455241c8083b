"""Double-coset data for restriction-after-induction between adjacent levels.

For the embedded level-n subgroup inside level n+1, each two-sided coset
contributes one summand: the intersection with its own conjugate decides
whether the summand is a regular bimodule (an identity-functor copy) or the
full induce-from-trivial piece.  Everything is checked at the level of
element sets and dimensions, which is what the finite computation can see.
"""

from __future__ import annotations

from dataclasses import dataclass

from .structure import VerificationError, double_cosets
from .treegroup import (
    MAX_ENUM_LEVEL,
    LevelTooLarge,
    SubgroupSpec,
    TreeAutomorphism,
    group_order,
)

MACKEY_MAX_LEVEL = MAX_ENUM_LEVEL - 1


@dataclass(frozen=True)
class MackeySummand:
    coset_rep: TreeAutomorphism
    intersection: tuple
    kind: str  # "Id" or "Ind0Res0"
    bimodule_dimension: int


def conjugate_intersection(n: int, g: TreeAutomorphism):
    """The subgroup of embedded level-n elements that also lie in gA_ng^-1."""
    if n > MACKEY_MAX_LEVEL:
        raise LevelTooLarge(
            f"intersection computation capped at level {MACKEY_MAX_LEVEL}")
    if g.level != n + 1:
        raise ValueError(f"element level {g.level}, expected {n + 1}")
    base = SubgroupSpec.embedded(n).elements(n + 1)
    ginv = g.inverse()
    conjugated = {g * x * ginv for x in base}
    return tuple(x for x in base if x in conjugated)


def mackey_decomposition(n: int):
    """One summand per two-sided coset, with the full census re-checked.

    Expects exactly |A_n| regular summands (intersection the whole embedded
    subgroup) plus one summand with trivial intersection, and the bimodule
    dimensions |A_n|^2 / |intersection| summing to |A_{n+1}|.
    """
    if n > MACKEY_MAX_LEVEL:
        raise LevelTooLarge(
            f"Mackey decomposition capped at level {MACKEY_MAX_LEVEL}")
    system = double_cosets(n)
    order = group_order(n)
    base = set(SubgroupSpec.embedded(n).elements(n + 1))
    hat = set(SubgroupSpec.hat(n).elements(n + 1))

    summands = []
    for rep, coset in zip(system.stated_representatives, system.cosets):
        inter = conjugate_intersection(n, rep)
        kind = "Id" if rep in hat else "Ind0Res0"
        expected = base if kind == "Id" else {x for x in base if x.is_identity}
        if set(inter) != expected:
            raise VerificationError(
                f"intersection at {rep.cycle_string()} is not the "
                f"{'full subgroup' if kind == 'Id' else 'trivial group'}")
        dim = order * order // len(inter)
        if dim != len(coset):
            raise VerificationError(
                f"dimension {dim} != coset size {len(coset)} at "
                f"{rep.cycle_string()}")
        summands.append(MackeySummand(rep, inter, kind, dim))

    id_count = sum(1 for s in summands if s.kind == "Id")
    triv_count = len(summands) - id_count
    if id_count != order or triv_count != 1:
        raise VerificationError(
            f"summand census {id_count} + {triv_count}, "
            f"expected {order} + 1")
    total = sum(s.bimodule_dimension for s in summands)
    if total != group_order(n + 1):
        raise VerificationError(
            f"dimension audit {total} != {group_order(n + 1)}")
    return tuple(summands)
