"""Sparse exact-rational arithmetic in the tower's group algebras.

Elements are finite linear combinations of tree automorphisms at a fixed
level with Fraction coefficients; zero coefficients are never stored, and
term iteration is in canonical swap-word order, so serialized output is
byte-deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .treegroup import (
    MAX_ENUM_LEVEL,
    LevelMismatch,
    LevelTooLarge,
    SubgroupSpec,
    TreeAutomorphism,
    identity,
)


class AlgebraElement:
    """Exact rational linear combination of same-level tree automorphisms."""

    __slots__ = ("level", "terms")

    def __init__(self, level: int, terms=None):
        clean = {}
        for g, c in (terms or {}).items():
            if g.level != level:
                raise LevelMismatch(
                    f"term {g!r} has level {g.level}, expected {level}")
            c = Fraction(c)
            if c:
                clean[g] = c
        self.level = level
        self.terms = clean

    @classmethod
    def zero(cls, level: int) -> "AlgebraElement":
        return cls(level)

    @classmethod
    def of(cls, g: TreeAutomorphism, coeff=1) -> "AlgebraElement":
        return cls(g.level, {g: coeff})

    @classmethod
    def one(cls, level: int) -> "AlgebraElement":
        return cls.of(identity(level))

    @classmethod
    def from_elements(cls, level: int, elements) -> "AlgebraElement":
        """Coefficient-1 sum over a set of elements (e.g. an orbit)."""
        return cls(level, {g: 1 for g in elements})

    def coefficient(self, g: TreeAutomorphism) -> Fraction:
        return self.terms.get(g, Fraction(0))

    @property
    def support(self):
        return tuple(sorted(self.terms))

    def canonical_terms(self):
        return tuple((g, self.terms[g]) for g in sorted(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraElement)
                and self.level == other.level and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.level, frozenset(self.terms.items())))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return AlgebraElement(self.level, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.level, {g: -c for g, c in self.terms.items()})

    def scaled(self, c) -> "AlgebraElement":
        c = Fraction(c)
        return AlgebraElement(self.level, {g: c * v for g, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            out = {}
            for g, a in self.terms.items():
                for h, b in other.terms.items():
                    k = g * h
                    out[k] = out.get(k, 0) + a * b
            return AlgebraElement(self.level, out)
        return self.scaled(other)

    def __rmul__(self, other):
        # scalars commute; left algebra multiplication goes through __mul__
        return self.scaled(other)

    def __pow__(self, k: int) -> "AlgebraElement":
        if k < 0:
            raise ValueError("negative powers are not defined here")
        out = AlgebraElement.one(self.level)
        for _ in range(k):
            out = out * self
        return out

    def commutes_with(self, g: TreeAutomorphism) -> bool:
        x = AlgebraElement.of(g)
        return self * x == x * self

    def _check(self, other: "AlgebraElement") -> None:
        if self.level != other.level:
            raise LevelMismatch(f"levels {self.level} and {other.level}")

    def __repr__(self) -> str:
        if not self.terms:
            return "AlgebraElement(0)"
        bits = [f"{c}*{g.cycle_string()}" for g, c in self.canonical_terms()]
        return "AlgebraElement(" + " + ".join(bits) + ")"


@dataclass(frozen=True)
class Orbit:
    """A conjugation orbit: canonical-min representative plus all elements."""

    representative: TreeAutomorphism
    elements: tuple
    acting: SubgroupSpec

    @property
    def size(self) -> int:
        return len(self.elements)


def orbit(g: TreeAutomorphism, acting: SubgroupSpec) -> Orbit:
    """Closure of {g} under conjugation by the acting subgroup.

    Walks the conjugation graph spanned by the subgroup's generators only;
    that suffices because generators generate.
    """
    level = g.level
    if level > MAX_ENUM_LEVEL:
        raise LevelTooLarge(f"orbit computation capped at level {MAX_ENUM_LEVEL}")
    gens = acting.generators(level)
    invs = [t.inverse() for t in gens]
    seen = {g}
    frontier = [g]
    while frontier:
        x = frontier.pop()
        for t, ti in zip(gens, invs):
            y = t * x * ti
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    elems = tuple(sorted(seen))
    return Orbit(elems[0], elems, acting)


def orbit_sum(g: TreeAutomorphism, acting: SubgroupSpec) -> AlgebraElement:
    return AlgebraElement.from_elements(g.level, orbit(g, acting).elements)


def class_sum(g: TreeAutomorphism) -> AlgebraElement:
    """Conjugacy-class sum: orbit sum under the full group."""
    return orbit_sum(g, SubgroupSpec.full())


def centralizes(x: AlgebraElement, sub: SubgroupSpec) -> bool:
    """True iff x commutes with the embedded subgroup.

    Commuting with every generator suffices since generators generate; see
    centralizes_exhaustive for the definitional cross-check.
    """
    return all(x.commutes_with(t) for t in sub.generators(x.level))


def centralizes_exhaustive(x: AlgebraElement, sub: SubgroupSpec) -> bool:
    return all(x.commutes_with(t) for t in sub.elements(x.level))
