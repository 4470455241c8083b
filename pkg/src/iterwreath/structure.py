"""Structural invariants of the tower, verified by brute force.

Closed-form counting formulas are treated as predictions; exhaustive
computation over the finite groups is the ground truth, and every
decomposition built here re-checks its own partition properties.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .algebra import AlgebraElement, Orbit, orbit
from .treegroup import (
    MAX_ENUM_LEVEL,
    LevelTooLarge,
    SubgroupSpec,
    TreeAutomorphism,
    beta,
    beta_product,
    beta_product_descending,
    embed_to,
    full_group,
    group_order,
    identity,
)


class VerificationError(RuntimeError):
    """A structural claim failed its exhaustive re-check."""


# --- counting --------------------------------------------------------------

@lru_cache(maxsize=None)
def class_count(n: int) -> int:
    """Number of conjugacy classes: c_0 = 1, c_n = c_{n-1}(3 + c_{n-1})/2."""
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    if n == 0:
        return 1
    prev = class_count(n - 1)
    num = prev * (3 + prev)
    assert num % 2 == 0
    return num // 2


def predicted_orbit_count(n: int, k: int) -> int:
    """Predicted orbit count of level-n conjugation on the level-(n+k) group.

    Index-corrected reading: |A_n|*...*|A_{n+k-1}| * (c_n + 2**k - 1), which
    reproduces the adjacent-level count |A_n|*(c_n + 1) at k = 1 and the
    class count at k = 0.
    """
    if k < 0:
        raise ValueError(f"offset must be >= 0, got {k}")
    prod = 1
    for j in range(k):
        prod *= group_order(n + j)
    return prod * (class_count(n) + (1 << k) - 1)


def predicted_orbit_count_literal(n: int, k: int) -> int:
    """The stated formula read literally, for comparison against brute force.

    Literally the multiplier for the level-(n+k) action is c_n + a_{k-1}
    with a_0 = 0, a_r = 2*a_{r-1} + 1, i.e. c_n + 2**(k-1) - 1.
    """
    if k < 0:
        raise ValueError(f"offset must be >= 0, got {k}")
    if k == 0:
        return class_count(n)
    prod = 1
    for j in range(k):
        prod *= group_order(n + j)
    return prod * (class_count(n) + (1 << (k - 1)) - 1)


# --- centers and centralizers ----------------------------------------------

def center_closed_form(n: int):
    """{identity, product of all sibling-leaf swaps}, the predicted center."""
    if n == 0:
        return (identity(0),)
    word = [0] * ((1 << n) - 1)
    for pos in range((1 << (n - 1)) - 1, (1 << n) - 1):
        word[pos] = 1
    return tuple(sorted((identity(n), TreeAutomorphism.from_word(word))))


def center(n: int):
    """Brute-force center: elements commuting with every generator."""
    if n > MAX_ENUM_LEVEL:
        raise LevelTooLarge(f"center computation capped at level {MAX_ENUM_LEVEL}")
    gens = SubgroupSpec.full().generators(n)
    return tuple(x for x in full_group(n)
                 if all(x * t == t * x for t in gens))


def group_centralizer(n: int, k: int):
    """Brute-force centralizer of the embedded level-n group at level n+k."""
    if k < 0:
        raise ValueError(f"offset must be >= 0, got {k}")
    ambient = n + k
    if ambient > MAX_ENUM_LEVEL:
        raise LevelTooLarge(
            f"centralizer computation capped at level {MAX_ENUM_LEVEL}")
    gens = SubgroupSpec.embedded(n).generators(ambient)
    return tuple(x for x in full_group(ambient)
                 if all(x * t == t * x for t in gens))


# --- orbit decompositions ---------------------------------------------------

@dataclass(frozen=True)
class OrbitLabel:
    """Structured name for one conjugation orbit.

    kind "class": the orbit is (conjugacy class of `base`) * `shift`;
    kind "beta": the orbit is (orbit of the descending generator product
    over `indices`) * `shift`, with `shift` running over the commuting
    shifted-copy chain.
    """

    kind: str
    base: TreeAutomorphism | None
    indices: tuple
    shift: TreeAutomorphism


@dataclass(frozen=True)
class OrbitDecomposition:
    acting: SubgroupSpec
    ambient_level: int
    orbits: tuple
    labels: tuple | None = None

    @property
    def count(self) -> int:
        return len(self.orbits)


def _orbit_partition(elements, spec: SubgroupSpec, ambient: int):
    """Partition into conjugation orbits, walking generator conjugations."""
    gens = spec.generators(ambient)
    invs = [t.inverse() for t in gens]
    seen = set()
    orbits = []
    for seed in elements:
        if seed in seen:
            continue
        block = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for t, ti in zip(gens, invs):
                y = t * x * ti
                if y not in block:
                    block.add(y)
                    frontier.append(y)
        seen |= block
        elems = tuple(sorted(block))
        orbits.append(Orbit(elems[0], elems, spec))
    return tuple(orbits)


def conjugacy_classes(n: int, allow_large: bool = False) -> OrbitDecomposition:
    """All conjugacy classes by brute force; level 4 is opt-in."""
    if n > MAX_ENUM_LEVEL:
        raise LevelTooLarge(f"class enumeration capped at level {MAX_ENUM_LEVEL}")
    if n == MAX_ENUM_LEVEL and not allow_large:
        raise LevelTooLarge(
            "conjugacy classes at level 4 scan 32768 elements; "
            "pass allow_large=True (CLI: --allow-large)")
    spec = SubgroupSpec.full()
    return OrbitDecomposition(spec, n, _orbit_partition(full_group(n), spec, n))


def orbit_decomposition(n: int, k: int, allow_large: bool = False) -> OrbitDecomposition:
    """Orbits of level-n conjugation on the level-(n+k) group, with labels.

    Each orbit is labeled either (class of g) * h or (orbit of a descending
    generator product) * h; the labeling is re-checked to hit every computed
    orbit exactly once.
    """
    ambient = n + k
    if ambient > MAX_ENUM_LEVEL:
        raise LevelTooLarge(
            f"orbit decomposition capped at ambient level {MAX_ENUM_LEVEL}")
    if k == 0:
        classes = conjugacy_classes(n, allow_large)
        labels = tuple(OrbitLabel("class", o.representative, (), identity(n))
                       for o in classes.orbits)
        return OrbitDecomposition(classes.acting, n, classes.orbits, labels)

    spec = SubgroupSpec.embedded(n)
    orbits = _orbit_partition(full_group(ambient), spec, ambient)
    by_rep = {o.representative: i for i, o in enumerate(orbits)}

    shifts = SubgroupSpec.hat_chain(n, ambient - 1).elements(ambient)
    classes = conjugacy_classes(n)
    label_sets = []
    for cls in classes.orbits:
        emb = tuple(embed_to(x, ambient) for x in cls.elements)
        rep = embed_to(cls.representative, ambient)
        for h in shifts:
            label_sets.append((OrbitLabel("class", rep, (), h),
                               frozenset(x * h for x in emb)))
    for size in range(1, k + 1):
        for indices in combinations(range(n + 1, ambient + 1), size):
            w = beta_product_descending(ambient, indices)
            elems = orbit(w, spec).elements
            for h in shifts:
                label_sets.append((OrbitLabel("beta", None, indices, h),
                                   frozenset(x * h for x in elems)))

    assigned = [None] * len(orbits)
    for label, elems in label_sets:
        idx = by_rep.get(min(elems))
        if idx is None or frozenset(orbits[idx].elements) != elems:
            raise VerificationError(f"label {label} does not match any orbit")
        if assigned[idx] is not None:
            raise VerificationError(
                f"orbit {orbits[idx].representative} labeled twice")
        assigned[idx] = label
    if any(lab is None for lab in assigned):
        raise VerificationError("structured labeling misses some orbits")
    return OrbitDecomposition(spec, ambient, orbits, tuple(assigned))


def centralizer_algebra_basis(n: int, k: int, allow_large: bool = False):
    """Orbit sums of the level-n conjugation action: a centralizer basis.

    Linear independence is free (disjoint supports); commutation with the
    embedded subgroup is re-checked by callers and tests.
    """
    decomp = orbit_decomposition(n, k, allow_large)
    return tuple(AlgebraElement.from_elements(decomp.ambient_level, o.elements)
                 for o in decomp.orbits)


def expand_in_orbit_basis(x: AlgebraElement, basis):
    """Coefficients of x in a disjoint-support orbit-sum basis, or None.

    The coefficient on each basis vector is read off at that orbit's
    representative; the residual must vanish.
    """
    coeffs = []
    residual = x
    for v in basis:
        c = x.coefficient(min(v.terms))
        coeffs.append(c)
        if c:
            residual = residual - v.scaled(c)
    return tuple(coeffs) if residual.is_zero() else None


# --- coset systems -----------------------------------------------------------

@dataclass(frozen=True)
class CosetSystem:
    """A verified partition of the ambient group into cosets.

    `representatives` are the canonical minima of each coset (sorted);
    `stated_representatives` are the generated products whose completeness
    the construction asserts, aligned with `cosets`.
    """

    ambient_level: int
    base_level: int
    kind: str
    representatives: tuple
    sizes: tuple
    cosets: tuple
    stated_representatives: tuple

    @property
    def count(self) -> int:
        return len(self.cosets)


def _verify_partition(cosets, ambient: int, kind: str) -> None:
    total = 0
    union = set()
    for coset in cosets:
        if len(set(coset)) != len(coset):
            raise VerificationError(f"{kind}: repeated element inside a coset")
        total += len(coset)
        union.update(coset)
    order = group_order(ambient)
    if total != order or len(union) != order:
        raise VerificationError(
            f"{kind}: cosets cover {len(union)} of {order} elements "
            f"(total size {total})")


def coset_rep_pairs(base: int, ambient: int):
    """Transversal of the embedded level-`base` subgroup, as (b, I, product).

    b runs over the chain of shifted copies between the two levels and I over
    subsets of {base+1, ..., ambient}; the product b * beta_product(I) is the
    representative.  For ambient == base the single representative is trivial.
    """
    if base > ambient:
        raise ValueError(f"base {base} exceeds ambient {ambient}")
    if base == ambient:
        return ((identity(ambient), (), identity(ambient)),)
    chain = SubgroupSpec.hat_chain(base, ambient - 1).elements(ambient)
    out = []
    for b in chain:
        for size in range(ambient - base + 1):
            for indices in combinations(range(base + 1, ambient + 1), size):
                out.append((b, indices, b * beta_product(ambient, indices)))
    out.sort(key=lambda item: item[2])
    return tuple(out)


def right_coset_reps(n: int, l: int) -> CosetSystem:
    """Right cosets of the embedded level-n group inside level n+l+1."""
    ambient = n + l + 1
    if ambient > MAX_ENUM_LEVEL:
        raise LevelTooLarge(
            f"right-coset enumeration capped at level {MAX_ENUM_LEVEL}")
    base = SubgroupSpec.embedded(n).elements(ambient)
    pairs = coset_rep_pairs(n, ambient)
    cosets = []
    for _, _, rep in pairs:
        cosets.append((tuple(sorted(x * rep for x in base)), rep))
    cosets.sort()
    _verify_partition([c for c, _ in cosets], ambient, "right cosets")
    expected = group_order(ambient) // group_order(n)
    if len(cosets) != expected:
        raise VerificationError(
            f"right cosets: {len(cosets)} cosets, expected {expected}")
    return CosetSystem(
        ambient_level=ambient,
        base_level=n,
        kind="right_cosets",
        representatives=tuple(c[0] for c, _ in cosets),
        sizes=tuple(len(c) for c, _ in cosets),
        cosets=tuple(c for c, _ in cosets),
        stated_representatives=tuple(rep for _, rep in cosets),
    )


def double_cosets(n: int) -> CosetSystem:
    """Two-sided cosets of the embedded level-n group inside level n+1.

    The shifted copy's elements each give a coset of size |A_n| (they
    centralize the embedded subgroup), and the root swap gives one coset of
    size |A_n|**2; the partition and both size claims are re-checked.
    """
    ambient = n + 1
    if ambient > MAX_ENUM_LEVEL:
        raise LevelTooLarge(
            f"double-coset enumeration capped at level {MAX_ENUM_LEVEL}")
    spec = SubgroupSpec.embedded(n)
    base = spec.elements(ambient)
    gens = spec.generators(ambient)
    order = group_order(n)

    systems = []
    for b in SubgroupSpec.hat(n).elements(ambient):
        coset = tuple(sorted(b * y for y in base))
        if len(set(coset)) != order:
            raise VerificationError("shifted-copy coset has repeated elements")
        block = set(coset)
        # left stability by generators makes b*A_n the full two-sided coset
        for t in gens:
            if any(t * x not in block for x in coset):
                raise VerificationError(
                    f"coset of {b.cycle_string()} is not left-stable")
        systems.append((coset, b))

    root = beta(ambient, ambient)
    big = {x * root * y for x in base for y in base}
    if len(big) != order * order:
        raise VerificationError(
            f"root-swap coset has {len(big)} elements, expected {order**2}")
    systems.append((tuple(sorted(big)), root))

    systems.sort()
    _verify_partition([c for c, _ in systems], ambient, "double cosets")
    return CosetSystem(
        ambient_level=ambient,
        base_level=n,
        kind="double_cosets",
        representatives=tuple(c[0] for c, _ in systems),
        sizes=tuple(len(c) for c, _ in systems),
        cosets=tuple(c for c, _ in systems),
        stated_representatives=tuple(rep for _, rep in systems),
    )


# --- defining relations -------------------------------------------------------

@dataclass(frozen=True)
class RelationInstance:
    family: int
    params: tuple
    holds: bool


@dataclass(frozen=True)
class PresentationReport:
    """Evaluation of the three defining relation families at one level.

    Relation symbols are indexed from the root down (symbol 1 is the root
    swap): family 3 only closes under that indexing, which brute force
    confirms.  Instances whose literal index range runs past the deepest
    generator are recorded as untestable instead of evaluated.
    """

    level: int
    instances: tuple
    untestable: tuple

    @property
    def all_pass(self) -> bool:
        return all(inst.holds for inst in self.instances)

    def family_counts(self):
        counts = {1: 0, 2: 0, 3: 0}
        for inst in self.instances:
            counts[inst.family] += 1
        return counts


def check_presentation(n: int) -> PresentationReport:
    """Evaluate the defining relations in the permutation representation."""
    if n > MAX_ENUM_LEVEL:
        raise LevelTooLarge(f"presentation check capped at level {MAX_ENUM_LEVEL}")

    def sym(i):
        # root-first indexing of relation symbols
        return beta(n, n + 1 - i)

    e = identity(n)
    instances = []
    untestable = []
    for i in range(1, n + 1):
        instances.append(RelationInstance(1, (i,), sym(i) * sym(i) == e))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                w = sym(i) * sym(j)
                instances.append(RelationInstance(2, (i, j), (w ** 4).is_identity))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n - i + 1):
                if j + k > n:
                    untestable.append((i, j, k))
                    continue
                w = sym(i) * sym(j) * sym(i) * sym(j + k)
                instances.append(
                    RelationInstance(3, (i, j, k), (w * w).is_identity))
    return PresentationReport(n, tuple(instances), tuple(untestable))
