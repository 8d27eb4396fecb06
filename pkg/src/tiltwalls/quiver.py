"""Quiver moduli numerics: weight vectors, dimension counts, subspace closures.

A representation is theta-(semi)stable when theta pairs to zero with its
dimension vector and to <= 0 (< 0) with every proper subrepresentation; a
subspace with positive pairing is therefore a certified destabilizer.

For a two-vertex (Kronecker) representation T: V -> W given by matrices
T_0..T_{n-1}, the minimal subrepresentation containing a source subspace I
has target sum_l Image(T_l|_I); `closure` computes a reduced basis of it
exactly, which is what makes the destabilizer certificates exact.

The weight vector bridging to wall geometry is derived from a stability
point: theta_i = rho(v)*tau(e_i) - tau(v)*rho(e_i) against the generator
characters e_i, so that theta pairs to zero with the total dimension vector
and theta . sub > 0 exactly when the point lies inside the wall of the pair
(bigger Bridgeland slope for the subobject, when both classes are in the
heart with positive rho).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .exceptional import DimensionVector, ExceptionalCollection, ch_from_dim, generator_characters
from .stability import StabilityPoint, bridgeland_Z


@dataclass(frozen=True)
class Quiver:
    """A finite quiver; relations are carried as a count only."""

    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[int, int], ...]
    relation_count: int = 0

    def __post_init__(self):
        n = len(self.vertices)
        for source, target in self.arrows:
            if not (0 <= source < n and 0 <= target < n):
                raise ValueError("arrow endpoint out of range")


def kronecker(n: int) -> Quiver:
    """K_n: two vertices with n parallel arrows."""
    if n < 1:
        raise ValueError("need at least one arrow")
    return Quiver(("p", "q"), ((0, 1),) * n)


def beilinson(n: int) -> Quiver:
    """B_n: three vertices, n+1 arrows twice, commutation relations counted."""
    if n < 1:
        raise ValueError("need n >= 1")
    arrows = ((0, 1),) * (n + 1) + ((1, 2),) * (n + 1)
    return Quiver(("a", "b", "c"), arrows, relation_count=n * (n + 1) // 2)


def moduli_dimension(quiver: Quiver, dims: Sequence[int]) -> int:
    """dim = sum_arrows d_s*d_t - sum_vertices d_i^2 + 1 at a stable point."""
    if len(dims) != len(quiver.vertices):
        raise ValueError("dimension vector length does not match the quiver")
    total = sum(dims[s] * dims[t] for s, t in quiver.arrows)
    return total - sum(d * d for d in dims) + 1


def theta_from_point(collection: ExceptionalCollection, total: DimensionVector,
                     p: StabilityPoint) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Weight vector theta_i = rho(v)*tau(e_i) - tau(v)*rho(e_i).

    v is the character of `total`; by bilinearity theta . total = 0 and
    theta . sub = -f_{v, sub}(p), so positive pairing marks the inside of
    the corresponding wall.
    """
    v = ch_from_dim(total, collection)
    tau_v, rho_v = bridgeland_Z(v, p)
    if tau_v == 0 and rho_v == 0:
        raise ValueError("the total class has vanishing charge at this point")
    theta = []
    for gen in generator_characters(collection):
        tau_g, rho_g = bridgeland_Z(gen, p)
        theta.append(rho_v * tau_g - tau_v * rho_g)
    return tuple(theta)


def coprime_check(theta: Sequence[Fraction], dims: Sequence[int]) -> bool:
    """theta . d' != 0 for every 0 < d' < d componentwise (exhaustive box)."""
    if len(theta) != len(dims):
        raise ValueError("theta and dimension vector lengths differ")
    full = tuple(dims)
    for entries in itertools.product(*(range(d + 1) for d in dims)):
        if not any(entries) or entries == full:
            continue
        if sum(t * e for t, e in zip(theta, entries)) == 0:
            return False
    return True


@dataclass(frozen=True)
class KroneckerRep:
    """n matrices of shape (target_dim, source_dim) with rational entries."""

    matrices: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        if not self.matrices:
            raise ValueError("need at least one matrix")
        q, p = self.shape
        for m in self.matrices:
            if len(m) != q or any(len(row) != p for row in m):
                raise ValueError("all matrices must share one shape")

    @classmethod
    def of(cls, matrices: Sequence[Sequence[Sequence]]) -> "KroneckerRep":
        return cls(tuple(tuple(tuple(Fraction(x) for x in row) for row in m)
                         for m in matrices))

    @property
    def n(self) -> int:
        return len(self.matrices)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.matrices[0]), len(self.matrices[0][0]))

    @property
    def dims(self) -> Tuple[int, int]:
        q, p = self.shape
        return (p, q)

    def apply(self, l: int, vector: Sequence[Fraction]) -> List[Fraction]:
        return [sum(a * x for a, x in zip(row, vector)) for row in self.matrices[l]]

    def to_json(self) -> dict:
        return {"dims": list(self.dims),
                "matrices": [[[str(x) for x in row] for row in m]
                             for m in self.matrices]}

    @classmethod
    def from_json(cls, data: dict) -> "KroneckerRep":
        return cls.of(data["matrices"])


def random_rep(n: int, p_dim: int, q_dim: int, seed: int = 0) -> KroneckerRep:
    """Seeded random representation with small integer entries."""
    rng = random.Random(seed)
    matrices = [[[Fraction(rng.randint(-9, 9)) for _ in range(p_dim)]
                 for _ in range(q_dim)] for _ in range(n)]
    return KroneckerRep.of(matrices)


def closure(rep: KroneckerRep, source_basis: Sequence[Sequence[Fraction]]
            ) -> List[List[Fraction]]:
    """Reduced basis of sum_l Image(T_l restricted to span(source_basis)).

    Any subrepresentation whose source contains the span must contain this
    target; (span, closure) itself is a subrepresentation.
    """
    basis = [list(map(Fraction, v)) for v in source_basis]
    p_dim = rep.shape[1]
    if any(len(v) != p_dim for v in basis):
        raise ValueError("source vectors have the wrong length")
    if linalg.rank(basis) != len(basis):
        raise ValueError("source basis is linearly dependent")
    images = [rep.apply(l, v) for l in range(rep.n) for v in basis]
    return linalg.rref(images)


@dataclass(frozen=True)
class Destabilizer:
    """An exact witness: source basis, its closure, and the positive pairing."""

    source_basis: Tuple[Tuple[Fraction, ...], ...]
    target_basis: Tuple[Tuple[Fraction, ...], ...]
    pairing: Fraction
    trial: str

    def to_json(self) -> dict:
        return {
            "source_basis": [[str(x) for x in v] for v in self.source_basis],
            "target_basis": [[str(x) for x in v] for v in self.target_basis],
            "pairing": str(self.pairing),
            "trial": self.trial,
        }


def destabilizer_search(rep: KroneckerRep, theta: Sequence[Fraction],
                        budget: int = 200, seed: int = 0) -> Optional[Destabilizer]:
    """Look for a subspace I with theta . (dim I, dim closure(I)) > 0.

    Tries every coordinate subspace of the source, then `budget` seeded
    pseudo-random subspaces.  A found witness is exact (the closure is
    computed rationally); None is NOT a proof of stability, only that the
    semidecision found nothing.
    """
    q_dim, p_dim = rep.shape
    theta = [Fraction(x) for x in theta]
    if len(theta) != 2:
        raise ValueError("Kronecker search needs a two-component theta")
    if theta[0] * p_dim + theta[1] * q_dim != 0:
        raise ValueError("theta does not annihilate the dimension vector")

    def pairing_of(basis, label):
        target = closure(rep, basis)
        value = theta[0] * len(basis) + theta[1] * len(target)
        if value > 0:
            return Destabilizer(tuple(tuple(v) for v in basis),
                                tuple(tuple(v) for v in target), value, label)
        return None

    for size in range(1, p_dim + 1):
        for combo in itertools.combinations(range(p_dim), size):
            basis = [[Fraction(1 if i == idx else 0) for i in range(p_dim)]
                     for idx in combo]
            witness = pairing_of(basis, f"coordinate{list(combo)}")
            if witness is not None:
                return witness

    rng = random.Random(seed)
    for trial in range(budget):
        size = rng.randint(1, max(1, p_dim - 1)) if p_dim > 1 else 1
        candidate = [[Fraction(rng.randint(-5, 5)) for _ in range(p_dim)]
                     for _ in range(size)]
        if linalg.rank(candidate) != size:
            continue
        witness = pairing_of(candidate, f"random{trial}")
        if witness is not None:
            return witness
    return None
