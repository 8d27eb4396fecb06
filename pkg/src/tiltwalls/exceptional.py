"""Exceptional collections at Chern level: shifts, mutations, dimension vectors.

A collection is an ordered quadruple of objects (sheaf character + separate
homological shift).  The stability evaluations always consume the *effective*
character (-1)^shift * ch.  The strong collections shipped here are

    p3:  O(-2), O(-1), O, O(1)
    q3:  S*(-2), O(-1), O, O(1)      (S the spinor bundle, S* = S(1))

and the shift (3, 2, 1, 0) turns a strong collection into an Ext one.

Dimension vectors.  An object built from the generators with E_i placed in
cohomological degree i - 3 has character sum((-1)^(3-i) * a_i * ch(E_i)); the
a_i are recovered by solving that 4x4 rational system.  A global sign of -1
is accepted for classes of shifted objects.

Mutations act at lattice level, using that Hom^* between adjacent members of
a strong collection sits in degree 0 with dimension chi:

    L_i:  (E_i, E_{i+1})  ->  (chi*E_i - E_{i+1}, E_i)
    R_i:  (E_i, E_{i+1})  ->  (E_{i+1}, chi*E_{i+1} - E_i)

Mutating an arbitrary user-supplied quadruple is refused, since the formulas
are only valid along orbits of genuinely strong collections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .varieties import (ChernCharacter, FanoVariety, UnsupportedVarietyError, dual,
                        euler_pairing, format_rational, line_bundle, mu_slope,
                        spinor_character, tensor_line, v_vector_strings)

MUTATION_NAMES = ("L0", "L1", "L2", "R0", "R1", "R2")


class LatticeSolveError(ValueError):
    """No non-negative integer dimension vector represents this character."""


class MutationError(ValueError):
    """Mutation requested on a collection where it is not numerically valid."""


@dataclass(frozen=True)
class ExceptionalObject:
    """A sheaf character with a homological shift applied on top.

    `beta_floor`, when set, is the infimum of beta values where the heart
    placement of this class is certified; tests left of it must refuse.
    """

    ch: ChernCharacter
    shift: int = 0
    name: str = ""
    beta_floor: Optional[Fraction] = None

    def effective(self) -> ChernCharacter:
        return self.ch if self.shift % 2 == 0 else -self.ch

    def to_json(self) -> dict:
        entry = {"v": v_vector_strings(self.ch), "shift": self.shift}
        if self.name:
            entry["name"] = self.name
        return entry


@dataclass(frozen=True)
class ExceptionalCollection:
    """An ordered quadruple of exceptional objects on one variety.

    `provenance` is one of "canonical", "mutated", "user"; only the first
    two are trusted for mutation (numeric exceptionality alone does not
    certify the vanishing of backward Homs).
    """

    objects: Tuple[ExceptionalObject, ...]
    variety: FanoVariety
    provenance: str = "user"

    def __post_init__(self):
        if len(self.objects) != 4:
            raise ValueError("collections of length 4 only")
        for obj in self.objects:
            if obj.ch.variety != self.variety:
                raise ValueError("member character on the wrong variety")

    def characters(self) -> Tuple[ChernCharacter, ...]:
        return tuple(obj.ch for obj in self.objects)

    def effective_characters(self) -> Tuple[ChernCharacter, ...]:
        return tuple(obj.effective() for obj in self.objects)

    def shifts(self) -> Tuple[int, ...]:
        return tuple(obj.shift for obj in self.objects)

    def tensor_line(self, k: int) -> "ExceptionalCollection":
        objs = tuple(replace(o, ch=tensor_line(o.ch, k),
                             beta_floor=None if o.beta_floor is None else o.beta_floor + k)
                     for o in self.objects)
        return replace(self, objects=objs)

    def dedup_key(self) -> tuple:
        return tuple(sorted((obj.ch.v_vector(), obj.shift) for obj in self.objects))

    def spans_lattice(self) -> bool:
        """Whether the four v-vectors span the rational lattice."""
        return linalg.det4([list(ch.v_vector()) for ch in self.characters()]) != 0

    def to_json(self) -> dict:
        return {
            "variety": self.variety.name,
            "provenance": self.provenance,
            "objects": [obj.to_json() for obj in self.objects],
        }


def canonical_collection(variety: FanoVariety) -> ExceptionalCollection:
    """The shipped strong collection (unshifted) for p3 or q3."""
    def o_name(k: int) -> str:
        return "O" if k == 0 else f"O({k})"

    if variety.name == "p3":
        objects = tuple(
            ExceptionalObject(line_bundle(variety, k), name=o_name(k))
            for k in (-2, -1, 0, 1))
    elif variety.name == "q3":
        spin_dual_tw = tensor_line(dual(spinor_character(variety)), -2)
        first = ExceptionalObject(spin_dual_tw, name="S*(-2)",
                                  beta_floor=Fraction(-3, 2))
        rest = tuple(ExceptionalObject(line_bundle(variety, k), name=o_name(k))
                     for k in (-1, 0, 1))
        objects = (first,) + rest
    else:
        raise UnsupportedVarietyError(
            f"no exceptional collection shipped for {variety.name!r}")
    return ExceptionalCollection(objects, variety, provenance="canonical")


def ext_shift(collection: ExceptionalCollection) -> ExceptionalCollection:
    """Reposition the members at shifts (3, 2, 1, 0); characters unchanged."""
    objs = tuple(replace(obj, shift=3 - i) for i, obj in enumerate(collection.objects))
    return replace(collection, objects=objs)


def _mutate(collection: ExceptionalCollection, i: int, left: bool) -> ExceptionalCollection:
    if not 0 <= i <= 2:
        raise IndexError("mutation index must be 0, 1 or 2")
    if collection.provenance not in ("canonical", "mutated"):
        raise MutationError("mutation is only certified on canonical/mutated collections")
    shifts = collection.shifts()
    if len(set(shifts)) != 1:
        raise MutationError("mutation needs a uniformly shifted collection")
    a, b = collection.objects[i], collection.objects[i + 1]
    chi = euler_pairing(a.ch, b.ch)
    if left:
        new = ExceptionalObject(a.ch.scale(chi) - b.ch, shift=a.shift,
                                name=f"L({a.name or '?'},{b.name or '?'})")
        pair = (new, a)
    else:
        new = ExceptionalObject(b.ch.scale(chi) - a.ch, shift=a.shift,
                                name=f"R({a.name or '?'},{b.name or '?'})")
        pair = (b, new)
    objs = collection.objects[:i] + pair + collection.objects[i + 2:]
    return replace(collection, objects=objs, provenance="mutated")


def left_mutation(collection: ExceptionalCollection, i: int) -> ExceptionalCollection:
    return _mutate(collection, i, left=True)


def right_mutation(collection: ExceptionalCollection, i: int) -> ExceptionalCollection:
    return _mutate(collection, i, left=False)


def apply_word(collection: ExceptionalCollection, word: Sequence[str]) -> ExceptionalCollection:
    """Apply a mutation word like ["L0", "R2"] left to right."""
    out = collection
    for step in word:
        step = step.strip().upper()
        if step not in MUTATION_NAMES:
            raise ValueError(f"unknown mutation {step!r}; expected one of {MUTATION_NAMES}")
        i = int(step[1])
        out = left_mutation(out, i) if step[0] == "L" else right_mutation(out, i)
    return out


def mu_ordering_warnings(collection: ExceptionalCollection) -> List[str]:
    """Slope-ordering violations mu(E_i) >= mu(E_{i+1}); warnings, not errors."""
    warnings = []
    slopes = [mu_slope(ch) for ch in collection.characters()]
    for i in range(3):
        if not slopes[i] < slopes[i + 1]:
            warnings.append(f"mu(E_{i}) = {slopes[i]} !< mu(E_{i+1}) = {slopes[i + 1]}")
    return warnings


@dataclass(frozen=True)
class DimensionVector:
    """Multiplicities [a0, a1, a2, a3] of the generators; entries >= 0."""

    entries: Tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.entries) != 4 or any(a < 0 for a in self.entries):
            raise ValueError("dimension vectors have four non-negative entries")

    @classmethod
    def of(cls, *entries: int) -> "DimensionVector":
        if len(entries) == 1 and isinstance(entries[0], (tuple, list)):
            entries = tuple(entries[0])
        return cls(tuple(int(a) for a in entries))

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __le__(self, other: "DimensionVector") -> bool:
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def __add__(self, other: "DimensionVector") -> "DimensionVector":
        return DimensionVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.entries) if a != 0)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.entries) + "]"


def generator_characters(collection: ExceptionalCollection) -> Tuple[ChernCharacter, ...]:
    """Signed generator characters (-1)^(3-i) * ch(E_i), i = 0..3.

    These are the characters of the generators placed in degrees -3..0,
    independently of the shifts currently stored on the collection.
    """
    return tuple(ch if (3 - i) % 2 == 0 else -ch
                 for i, ch in enumerate(collection.characters()))


def ch_from_dim(dim: DimensionVector, collection: ExceptionalCollection) -> ChernCharacter:
    """Character of a complex with generator multiplicities `dim`."""
    gens = generator_characters(collection)
    total = gens[0].scale(dim[0])
    for i in (1, 2, 3):
        total = total + gens[i].scale(dim[i])
    return total


def dimension_vector(ch: ChernCharacter, collection: ExceptionalCollection
                     ) -> Tuple[DimensionVector, int]:
    """Solve ch = sign * sum_i (-1)^(3-i) a_i ch(E_i) with a_i >= 0 integral.

    Tries the global sign +1 first, then -1; raises LatticeSolveError when
    neither yields a non-negative integer solution or the system is singular.
    """
    gens = generator_characters(collection)
    matrix = [[gens[j].coeffs()[row] for j in range(4)] for row in range(4)]
    for sign in (1, -1):
        target = [x * sign for x in ch.coeffs()]
        solution = linalg.solve(matrix, target)
        if solution is None:
            raise LatticeSolveError("generator characters are linearly dependent")
        if all(x.denominator == 1 for x in solution) and all(x >= 0 for x in solution):
            return DimensionVector(tuple(int(x) for x in solution)), sign
    raise LatticeSolveError(
        f"character {v_vector_strings(ch)} is not a non-negative combination "
        "of the shifted generators")


def dimension_box(bound: int) -> Iterator[DimensionVector]:
    """All dimension vectors with entries <= bound (including zero)."""
    for entries in itertools.product(range(bound + 1), repeat=4):
        yield DimensionVector(entries)


def gram_matrix(collection: ExceptionalCollection) -> List[List[Fraction]]:
    chars = collection.characters()
    return [[euler_pairing(a, b) for b in chars] for a in chars]


def describe(collection: ExceptionalCollection) -> str:
    parts = []
    for obj in collection.objects:
        label = obj.name or "(" + ",".join(format_rational(c) for c in obj.ch.coeffs()) + ")"
        parts.append(label + (f"[{obj.shift}]" if obj.shift else ""))
    return "{" + ", ".join(parts) + "}"
