"""Mutation-orbit search for collections generating a heart at a point.

A candidate quadruple passes at (beta, t, s) when

  1. every member, Ext-shifted to degrees (3, 2, 1, 0), fits in the double
     heart <A, A[1]> (exact mu/nu sign tests from `regions`), and
  2. some rotated closed upper half-plane contains all four Bridgeland
     charges (the half-plane condition).

Condition 2 comes in the sweep flavour -- testing lines at angles k*pi/N,
binary64 trig, faithful to hand experiments -- and an exact flavour that
works with rational cross products: the feasible rotation angles form an
intersection of half-open arcs whose left endpoints are the directions
opposite to the charges, so only those candidates (plus "just above zero")
need testing.  The boundary convention is that the half-plane at angle psi
contains the ray at angle psi + pi but not the one at psi.

The orbit is explored breadth-first over the six elementary mutations with
deduplication on the sorted (v-vector, shift) multiset.  Deep orbits carry
an honesty flag: numeric conditions are necessary, not sufficient, and the
tilt stability of deeply mutated classes is not certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exceptional import (ExceptionalCollection, MUTATION_NAMES, apply_word,
                          canonical_collection, ext_shift)
from .regions import in_double_heart
from .stability import StabilityPoint, bridgeland_Z
from .varieties import FanoVariety


def double_heart_conditions(collection: ExceptionalCollection, p: StabilityPoint) -> bool:
    """All four members (with their shifts) fit in <A, A[1]> at p."""
    if len(collection.objects) != 4:
        raise ValueError("need a quadruple")
    for obj in collection.objects:
        if obj.ch.is_zero():
            raise ValueError("collection has a zero character; slopes are undefined")
    return all(in_double_heart(obj, p) for obj in collection.objects)


def _charges(collection: ExceptionalCollection, p: StabilityPoint) -> List[Tuple[Fraction, Fraction]]:
    charges = []
    for ch in collection.effective_characters():
        tau, rho = bridgeland_Z(ch, p)
        if tau == 0 and rho == 0:
            raise ValueError("zero central charge among the members")
        charges.append((-tau, rho))  # (Re Z, Im Z)
    return charges


def halfplane_sweep(collection: ExceptionalCollection, p: StabilityPoint,
                    step_count: int = 100) -> List[int]:
    """Rotation steps k (angle k*pi/step_count) with all charges strictly above.

    Binary64 trigonometry; the discrete counterpart of `halfplane_exact`.
    """
    charges = [(float(re), float(im)) for re, im in _charges(collection, p)]
    feasible = []
    for k in range(step_count + 1):
        phi = math.pi * k / step_count
        ux, uy = math.cos(phi), math.sin(phi)
        if all(ux * im - uy * re > 0 for re, im in charges):
            feasible.append(k)
    return feasible


def _admits(charges: Sequence[Tuple[Fraction, Fraction]],
            u: Tuple[Fraction, Fraction]) -> bool:
    """All charges have direction in (angle(u), angle(u) + pi]."""
    ux, uy = u
    for re, im in charges:
        cross = ux * im - uy * re
        if cross > 0:
            continue
        if cross == 0 and ux * re + uy * im < 0:
            continue
        return False
    return True


def halfplane_exact(collection: ExceptionalCollection, p: StabilityPoint
                    ) -> Tuple[bool, List[float]]:
    """Exact half-plane condition, plus feasible candidate angles (phi/pi).

    Feasible rotations form an intersection of half-open arcs; it meets the
    window (0, 1] iff one of the candidate directions works: "just above
    zero" (every charge strictly in the closed upper half-plane, boundary on
    the negative axis only) or the direction opposite one of the charges.
    The returned angles are float renderings for reporting only.
    """
    charges = _charges(collection, p)
    witnesses: List[float] = []
    feasible = False
    # psi -> 0+ : all charges must satisfy arg in (0, pi].
    if all(im > 0 or (im == 0 and re < 0) for re, im in charges):
        feasible = True
        witnesses.append(0.0)
    for re, im in charges:
        u = (-re, -im)
        # u must itself have angle in (0, pi]: upper half-plane, negative
        # real axis included, positive real axis excluded.
        if not (u[1] > 0 or (u[1] == 0 and u[0] < 0)):
            continue
        if _admits(charges, u):
            feasible = True
            witnesses.append(math.atan2(float(u[1]), float(u[0])) / math.pi)
    return feasible, sorted(set(witnesses))


def mutation_orbit(collection: ExceptionalCollection, depth: int
                   ) -> Dict[str, ExceptionalCollection]:
    """Breadth-first orbit of mutation words up to the given depth.

    Keys are comma-joined words ("" for the seed); collections are
    deduplicated on the sorted (v-vector, shift) multiset, keeping the
    lexicographically first word per level.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    orbit = {"": collection}
    seen = {collection.dedup_key()}
    frontier = [("", collection)]
    for _ in range(depth):
        next_frontier = []
        for word, current in frontier:
            for step in MUTATION_NAMES:
                mutated = apply_word(current, [step])
                key = mutated.dedup_key()
                if key in seen:
                    continue
                seen.add(key)
                new_word = f"{word},{step}" if word else step
                orbit[new_word] = mutated
                next_frontier.append((new_word, mutated))
        frontier = next_frontier
    return orbit


@dataclass(frozen=True)
class SearchReport:
    """Per-point outcome over one mutation orbit."""

    point: StabilityPoint
    explored: int
    passing: Tuple[Tuple[str, Tuple[float, ...]], ...]
    failing: int
    numeric_necessary_only: bool = False

    def to_json(self) -> dict:
        return {
            "point": {"beta": str(self.point.beta), "t": str(self.point.t),
                      "s": str(self.point.s)},
            "explored": self.explored,
            "passing": [{"word": word, "phi_over_pi": list(hits)}
                        for word, hits in self.passing],
            "failing": self.failing,
            "numeric_necessary_only": self.numeric_necessary_only,
        }


def run_search(variety: FanoVariety, points: Sequence[StabilityPoint],
               depth: int) -> List[SearchReport]:
    """Evaluate the whole orbit of the canonical collection at each point.

    A collection passes at a point when the double-heart conditions hold for
    its Ext shift and the exact half-plane condition is feasible.  Results
    deeper than two mutations are flagged: they are necessary-condition
    verdicts only.
    """
    orbit = mutation_orbit(canonical_collection(variety), depth)
    shifted = {word: ext_shift(coll) for word, coll in orbit.items()}
    reports = []
    for p in points:
        passing = []
        failing = 0
        for word in sorted(shifted):
            candidate = shifted[word]
            if double_heart_conditions(candidate, p):
                feasible, hits = halfplane_exact(candidate, p)
                if feasible:
                    passing.append((word, tuple(hits)))
                    continue
            failing += 1
        reports.append(SearchReport(p, len(shifted), tuple(passing), failing,
                                    numeric_necessary_only=depth > 2))
    return reports
