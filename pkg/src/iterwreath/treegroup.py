"""Exact arithmetic in the tower of iterated wreath products of S2.

The level-n group is the automorphism group of the complete binary tree with
2**n leaves; its order is 2**(2**n - 1).  An element is stored canonically as
a *swap word*: one bit per internal node, breadth-first from the root, bit 1
meaning the node's two subtrees are exchanged.  Each element also carries the
permutation it induces on the leaf labels 1..2**n.

Values are immutable and interned, so equality is cheap and enumeration-heavy
verification loops stay fast.  All functions here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product as _cartesian

# Exhaustive enumeration stops at level 4 (32768 elements); level 5 already
# has 2**31 elements.
MAX_ENUM_LEVEL = 4


class LevelMismatch(ValueError):
    """Combined two elements living at different tree heights."""


class LevelTooLarge(ValueError):
    """An exhaustive enumeration would exceed the desk-scale guard."""


class NotATreeAutomorphism(ValueError):
    """A permutation does not preserve the binary block structure."""


def group_order(level: int) -> int:
    """Order of the level-n group: 2**(2**n - 1)."""
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    return 1 << ((1 << level) - 1)


class Permutation:
    """A bijection of {1, ..., degree} in one-line form."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a bijection of 1..{len(images)}: {images!r}")
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> "Permutation":
        """Build from disjoint cycles given as tuples of labels."""
        images = list(range(1, degree + 1))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + type(cycle)((cycle[0],))):
                images[a - 1] = b
        return cls(images)

    @classmethod
    def from_cycle_string(cls, degree: int, text: str) -> "Permutation":
        """Parse cycle notation like "(1 3)(2 4)"; "e" is the identity."""
        text = text.strip()
        if text == "e":
            return cls.identity(degree)
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"bad cycle string: {text!r}")
        cycles = [
            tuple(int(part) for part in chunk.split())
            for chunk in text[1:-1].split(")(")
        ]
        return cls.from_cycles(degree, cycles)

    def __call__(self, label: int) -> int:
        return self.images[label - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # "self after other": (self * other)(x) == self(other(x)).
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(self.images[i - 1] for i in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return Permutation(inv)

    def cycles(self):
        """Nontrivial cycles, each starting at its smallest label, sorted."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cycle = [start]
            seen[start - 1] = True
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen[nxt - 1] = True
                nxt = self(nxt)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return tuple(out)

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "e"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r})"


# --- swap-word plumbing ---------------------------------------------------
#
# The breadth-first word of a level-n tree has one block of 2**j bits per
# depth j; the left subtree owns the first half of each block.

def _split_word(level, word):
    s = word[0]
    left, right = [], []
    pos = 1
    for j in range(1, level):
        size = 1 << j
        half = size >> 1
        block = word[pos:pos + size]
        left.extend(block[:half])
        right.extend(block[half:])
        pos += size
    return s, tuple(left), tuple(right)


def _merge_word(level, s, left, right):
    out = [s]
    pos = 0
    for j in range(1, level):
        half = 1 << (j - 1)
        out.extend(left[pos:pos + half])
        out.extend(right[pos:pos + half])
        pos += half
    return tuple(out)


def _images_from_word(level, word):
    # Leaf in the left half goes to f_L(i) + s*h, in the right half to
    # f_R(i) + (1-s)*h, with h = 2**(level-1): subtrees act first, the root
    # swap last.
    if level == 0:
        return (1,)
    s, lw, rw = _split_word(level, word)
    li = _images_from_word(level - 1, lw)
    ri = _images_from_word(level - 1, rw)
    h = 1 << (level - 1)
    if s == 0:
        return li + tuple(v + h for v in ri)
    return tuple(v + h for v in li) + ri


def _word_from_images(level, images):
    if level == 0:
        return ()
    h = 1 << (level - 1)
    first_left = all(v <= h for v in images[:h])
    if first_left:
        s = 0
        left = images[:h]
        right = tuple(v - h for v in images[h:])
    else:
        s = 1
        left = tuple(v - h for v in images[:h])
        right = images[h:]
    if not all(1 <= v <= h for v in left) or not all(1 <= v <= h for v in right):
        raise NotATreeAutomorphism(
            f"permutation splits the leaf blocks at level {level}: {images}"
        )
    return _merge_word(level, s,
                       _word_from_images(level - 1, left),
                       _word_from_images(level - 1, right))


# --- canonical, interned elements ----------------------------------------

_pool: dict = {}


class TreeAutomorphism:
    """Canonical tree automorphism: swap word plus its leaf permutation."""

    __slots__ = ("level", "word", "images", "_hash")

    def __init__(self, *args, **kwargs):
        raise TypeError("use TreeAutomorphism.from_word / identity / beta")

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return (isinstance(other, TreeAutomorphism)
                and self.level == other.level and self.word == other.word)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "TreeAutomorphism") -> bool:
        return (self.level, self.word) < (other.level, other.word)

    def __le__(self, other: "TreeAutomorphism") -> bool:
        return (self.level, self.word) <= (other.level, other.word)

    # construction

    @classmethod
    def from_word(cls, word) -> "TreeAutomorphism":
        word = tuple(int(b) for b in word)
        level = (len(word) + 1).bit_length() - 1
        if len(word) != (1 << level) - 1 or not all(b in (0, 1) for b in word):
            raise ValueError(f"bad swap word {word!r}")
        return _from_word(level, word)

    @classmethod
    def identity(cls, level: int) -> "TreeAutomorphism":
        if level < 0:
            raise ValueError(f"level must be >= 0, got {level}")
        return _from_word(level, (0,) * ((1 << level) - 1))

    @classmethod
    def beta(cls, level: int, index: int) -> "TreeAutomorphism":
        """Generator swapping the leftmost node at depth level-index.

        Its permutation is the product of (j, 2**(index-1)+j) over
        j = 1..2**(index-1); index = level gives the root swap.
        """
        if not 1 <= index <= level:
            raise ValueError(f"generator index {index} out of range 1..{level}")
        word = [0] * ((1 << level) - 1)
        word[(1 << (level - index)) - 1] = 1
        return _from_word(level, tuple(word))

    @classmethod
    def from_permutation(cls, level: int, perm) -> "TreeAutomorphism":
        """Unique preimage of a block-structure-preserving permutation."""
        images = perm.images if isinstance(perm, Permutation) else tuple(perm)
        if len(images) != 1 << level:
            raise ValueError(f"degree {len(images)} != 2**{level}")
        Permutation(images)  # bijection check
        word = _word_from_images(level, images)
        return _from_word(level, word)

    # group operations

    def __mul__(self, other: "TreeAutomorphism") -> "TreeAutomorphism":
        # "self after other" on leaf labels.
        if self.level != other.level:
            raise LevelMismatch(f"levels {self.level} and {other.level}")
        gi = self.images
        return _from_images(self.level, tuple(gi[x - 1] for x in other.images))

    def __pow__(self, k: int) -> "TreeAutomorphism":
        if k < 0:
            return self.inverse() ** (-k)
        out = TreeAutomorphism.identity(self.level)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "TreeAutomorphism":
        inv = [0] * len(self.images)
        for i, img in enumerate(self.images):
            inv[img - 1] = i + 1
        return _from_images(self.level, tuple(inv))

    def conjugated_by(self, h: "TreeAutomorphism") -> "TreeAutomorphism":
        """h * self * h**-1."""
        return h * self * h.inverse()

    # views

    @property
    def is_identity(self) -> bool:
        return not any(self.word)

    def to_permutation(self) -> Permutation:
        return Permutation(self.images)

    def word_string(self) -> str:
        return "".join(map(str, self.word))

    def cycle_string(self) -> str:
        return self.to_permutation().cycle_string()

    def __repr__(self) -> str:
        return f"TreeAutomorphism({self.level}, {self.word_string()!r})"

    def __str__(self) -> str:
        return self.cycle_string()


def _build(level, word, images):
    g = object.__new__(TreeAutomorphism)
    g.level = level
    g.word = word
    g.images = images
    g._hash = hash((level, word))
    return g


def _from_word(level, word):
    images = _images_from_word(level, word)
    key = (level, images)
    g = _pool.get(key)
    if g is None:
        g = _pool[key] = _build(level, word, images)
    return g


def _from_images(level, images):
    key = (level, images)
    g = _pool.get(key)
    if g is None:
        g = _pool[key] = _build(level, _word_from_images(level, images), images)
    return g


def identity(level: int) -> TreeAutomorphism:
    return TreeAutomorphism.identity(level)


def beta(level: int, index: int) -> TreeAutomorphism:
    return TreeAutomorphism.beta(level, index)


def multiply(g: TreeAutomorphism, h: TreeAutomorphism) -> TreeAutomorphism:
    return g * h


def inverse(g: TreeAutomorphism) -> TreeAutomorphism:
    return g.inverse()


def conjugate(g: TreeAutomorphism, h: TreeAutomorphism) -> TreeAutomorphism:
    """h * g * h**-1."""
    return g.conjugated_by(h)


def beta_product(level: int, indices) -> TreeAutomorphism:
    """Product of generators over a strictly increasing index list.

    The listed order is the application order read right to left: the
    highest index acts first.  Empty list gives the identity.
    """
    indices = tuple(indices)
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise ValueError(f"indices must be strictly increasing: {indices}")
    return reduce(multiply, (beta(level, i) for i in indices), identity(level))


def beta_product_descending(level: int, indices) -> TreeAutomorphism:
    """Product of generators written largest index first (it acts last).

    This is the inverse of beta_product on the same index set.
    """
    indices = tuple(indices)
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise ValueError(f"indices must be strictly increasing: {indices}")
    return reduce(multiply, (beta(level, i) for i in reversed(indices)),
                  identity(level))


def perm_embed(g: TreeAutomorphism) -> TreeAutomorphism:
    """Inclusion into the next level fixing the new labels 2**n+1..2**(n+1)."""
    zeros = (0,) * len(g.word)
    return _from_word(g.level + 1, _merge_word(g.level + 1, 0, g.word, zeros))


def hat_embed(g: TreeAutomorphism) -> TreeAutomorphism:
    """Copy of g acting on the shifted labels 2**n+k instead of k."""
    zeros = (0,) * len(g.word)
    return _from_word(g.level + 1, _merge_word(g.level + 1, 0, zeros, g.word))


def embed_to(g: TreeAutomorphism, level: int) -> TreeAutomorphism:
    """Iterated label-preserving inclusion up to the given level."""
    if level < g.level:
        raise ValueError(f"cannot embed level {g.level} down to {level}")
    while g.level < level:
        g = perm_embed(g)
    return g


def components(g: TreeAutomorphism):
    """Root swap bit and the two subtree automorphisms (left, right)."""
    if g.level == 0:
        raise ValueError("level-0 element has no components")
    s, lw, rw = _split_word(g.level, g.word)
    return s, _from_word(g.level - 1, lw), _from_word(g.level - 1, rw)


@lru_cache(maxsize=None)
def full_group(level: int):
    """All elements at a level, in lexicographic swap-word order."""
    if level > MAX_ENUM_LEVEL:
        raise LevelTooLarge(
            f"full enumeration is capped at level {MAX_ENUM_LEVEL}; "
            f"level {level} has {group_order(level)} elements")
    n_bits = (1 << level) - 1
    return tuple(_from_word(level, bits)
                 for bits in _cartesian((0, 1), repeat=n_bits))


# --- named standard subgroups ---------------------------------------------

@dataclass(frozen=True)
class SubgroupSpec:
    """A named standard subgroup of the level-`ambient` group.

    kind "full": the whole group; "embedded": the label-preserving copy of the
    level-lo group; "hat": the shifted copy acting on labels 2**lo+1..2**(lo+1);
    "hat_chain": the commuting product of shifted copies for lo..hi;
    "trivial": the identity subgroup.
    """

    kind: str
    lo: int = 0
    hi: int = 0

    @classmethod
    def full(cls) -> "SubgroupSpec":
        return cls("full")

    @classmethod
    def trivial(cls) -> "SubgroupSpec":
        return cls("trivial")

    @classmethod
    def embedded(cls, m: int) -> "SubgroupSpec":
        return cls("embedded", m, m)

    @classmethod
    def hat(cls, m: int) -> "SubgroupSpec":
        return cls("hat", m, m)

    @classmethod
    def hat_chain(cls, lo: int, hi: int) -> "SubgroupSpec":
        if lo > hi:
            raise ValueError(f"chain indices must increase: {lo}..{hi}")
        return cls("hat_chain", lo, hi)

    def validate(self, ambient: int) -> None:
        if self.kind in ("full", "trivial"):
            return
        if self.lo < 0:
            raise ValueError(f"negative subgroup level in {self}")
        needed = self.lo if self.kind == "embedded" else self.hi + 1
        if needed > ambient:
            raise ValueError(f"{self.describe()} does not fit in level {ambient}")

    def describe(self) -> str:
        if self.kind == "full":
            return "full group"
        if self.kind == "trivial":
            return "trivial group"
        if self.kind == "embedded":
            return f"embedded A{self.lo}"
        if self.kind == "hat":
            return f"hat A{self.lo}"
        return f"hat chain A{self.lo}..A{self.hi}"

    def order(self, ambient: int) -> int:
        self.validate(ambient)
        if self.kind == "full":
            return group_order(ambient)
        if self.kind == "trivial":
            return 1
        if self.kind in ("embedded", "hat"):
            return group_order(self.lo)
        out = 1
        for m in range(self.lo, self.hi + 1):
            out *= group_order(m)
        return out

    def generators(self, ambient: int):
        self.validate(ambient)
        if self.kind == "full":
            return tuple(beta(ambient, i) for i in range(1, ambient + 1))
        if self.kind == "trivial":
            return ()
        if self.kind == "embedded":
            return tuple(embed_to(beta(self.lo, i), ambient)
                         for i in range(1, self.lo + 1))
        if self.kind == "hat":
            return tuple(embed_to(hat_embed(beta(self.lo, i)), ambient)
                         for i in range(1, self.lo + 1))
        gens = []
        for m in range(self.lo, self.hi + 1):
            gens.extend(SubgroupSpec.hat(m).generators(ambient))
        return tuple(gens)

    def elements(self, ambient: int):
        """All members at the ambient level, in canonical word order."""
        self.validate(ambient)
        if ambient > MAX_ENUM_LEVEL:
            raise LevelTooLarge(
                f"subgroup enumeration is capped at ambient level "
                f"{MAX_ENUM_LEVEL}, got {ambient}")
        if self.kind == "trivial":
            return (identity(ambient),)
        if self.kind == "full":
            return full_group(ambient)
        if self.kind == "embedded":
            return tuple(sorted(embed_to(g, ambient) for g in full_group(self.lo)))
        if self.kind == "hat":
            return tuple(sorted(embed_to(hat_embed(g), ambient)
                                for g in full_group(self.lo)))
        factor_elems = [SubgroupSpec.hat(m).elements(ambient)
                        for m in range(self.lo, self.hi + 1)]
        return tuple(sorted(reduce(multiply, combo, identity(ambient))
                            for combo in _cartesian(*factor_elems)))


def enumerate_subgroup(spec: SubgroupSpec, ambient: int):
    return spec.elements(ambient)


# --- decomposition along the tower ----------------------------------------

@dataclass(frozen=True)
class Factorization:
    """Unique splitting g = base * hats[0] * ... * hats[-1] * beta_product(I).

    All parts are embedded at the ambient level: `base` lies in the embedded
    level-`base_level` subgroup, hats[j] in the shifted copy of the
    level-(base_level+j) group, and `indices` is a strictly increasing subset
    of {base_level+1, ..., ambient_level}.
    """

    base_level: int
    ambient_level: int
    base: TreeAutomorphism
    hats: tuple
    indices: tuple

    def recompose(self) -> TreeAutomorphism:
        out = reduce(multiply, self.hats, self.base)
        return out * beta_product(self.ambient_level, self.indices)


def factorize(g: TreeAutomorphism, base_level: int) -> Factorization:
    """Split g along the tower above `base_level`.

    Peels one level at a time: an element either avoids the current root swap
    (left subtree carries the lower part, right subtree the shifted factor)
    or contains it, in which case the roles flip and the swap index joins I.
    """
    if base_level < 0 or base_level > g.level:
        raise ValueError(
            f"base level {base_level} out of range 0..{g.level}")
    ambient = g.level
    hats, indices = [], []
    cur = g
    for m in range(ambient, base_level, -1):
        s, left, right = components(cur)
        if s == 0:
            cur, hat = left, right
        else:
            cur, hat = right, left
            indices.append(m)
        hats.append(embed_to(hat_embed(hat), ambient))
    hats.reverse()
    indices.reverse()
    return Factorization(base_level, ambient, embed_to(cur, ambient),
                         tuple(hats), tuple(indices))
