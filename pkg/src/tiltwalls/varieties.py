"""Fano threefolds of Picard rank one and their Chern character lattice.

All arithmetic in this module is exact.  Characters live in the rational
Chow ring Q[1, H, L, P] of the threefold, where H is the ample generator,
L the class of a line and P the class of a point, subject to the relations

    H^2 = d*L,   H*L = P,   (hence H^3 = d*P)

with d = H^3 the degree of the variety.  A character is stored by its four
coefficients (c0, c1, c2, c3) against the basis (1, H, L, P).

The Euler pairing chi(A, B) is computed by Hirzebruch-Riemann-Roch as the
point-degree of ch(A)^dual * ch(B) * td(X).  Todd data is stored per variety:
td1 = index/2 and td3 = 1 are forced (the latter is chi(O_X) = 1), while td2
is pinned by the Hilbert polynomial of the variety.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[Fraction, int, str]


def frac(x: Rational) -> Fraction:
    """Coerce ints, `p/q` strings and decimal strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to coerce a binary float; pass a string or Fraction")
    return Fraction(x)


class VarietyMismatchError(ValueError):
    """Two characters living on different varieties were combined."""


class UnsupportedVarietyError(ValueError):
    """The requested construction is not available for this variety."""


@dataclass(frozen=True)
class FanoVariety:
    """A Picard-rank-1 Fano threefold, reduced to its numerical data.

    `degree` is H^3, `index` is the Fano index (so -K_X = index * H) and
    (td1, td2, td3) are the H-, L- and P-coefficients of the Todd class.
    """

    name: str
    degree: int
    index: int
    td1: Fraction
    td2: Fraction
    td3: Fraction

    def __post_init__(self):
        if self.degree <= 0 or self.index <= 0:
            raise ValueError("degree and index must be positive")
        if self.td1 != Fraction(self.index, 2):
            raise ValueError("td1 must equal index/2")
        if self.td3 != 1:
            raise ValueError("td3 must equal 1 (chi(O_X) = 1)")

    @classmethod
    def make(cls, name: str, degree: int, index: int, td2: Rational) -> "FanoVariety":
        return cls(name, degree, index, Fraction(index, 2), frac(td2), Fraction(1))


# Shipped registry.  td2 values are pinned by chi(O(1)) against the Hilbert
# polynomial of each variety: 4 on P3, 5 on the quadric, 7 on V5, 14 on V22.
P3 = FanoVariety.make("p3", 1, 4, Fraction(11, 6))
Q3 = FanoVariety.make("q3", 2, 3, Fraction(13, 6))
V5 = FanoVariety.make("v5", 5, 2, Fraction(8, 3))
V22 = FanoVariety.make("v22", 22, 1, Fraction(23, 6))

REGISTRY = {v.name: v for v in (P3, Q3, V5, V22)}


def get_variety(name: str, registry: dict | None = None) -> FanoVariety:
    key = name.strip().lower()
    table = REGISTRY if registry is None else registry
    if key not in table:
        raise UnsupportedVarietyError(f"unknown variety {name!r}; have {sorted(table)}")
    return table[key]


def parse_registry(text: str) -> dict:
    """Parse a plain-text variety registry.

    One variety per block, blocks separated by blank lines, lines of the
    form `key = value` with keys name, degree, index, todd2.  td1 and td3
    are derived.  Every entry is validated with chi(O, O) = 1.
    """
    table = {}
    for block in text.split("\n\n"):
        fields = {}
        for line in block.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad registry line: {line!r}")
            key, _, value = line.partition("=")
            fields[key.strip().lower()] = value.strip()
        if not fields:
            continue
        missing = {"name", "degree", "index", "todd2"} - set(fields)
        if missing:
            raise ValueError(f"registry block missing keys {sorted(missing)}")
        variety = FanoVariety.make(
            fields["name"].lower(), int(fields["degree"]), int(fields["index"]),
            frac(fields["todd2"]))
        ch_o = structure_sheaf(variety)
        if euler_pairing(ch_o, ch_o) != 1:
            raise ValueError(f"registry entry {variety.name!r} fails chi(O,O) = 1")
        chi_o1 = euler_pairing(ch_o, line_bundle(variety, 1))
        if chi_o1.denominator != 1:
            raise ValueError(
                f"registry entry {variety.name!r} has non-integral chi(O, O(1)) = {chi_o1}")
        table[variety.name] = variety
    return table


@dataclass(frozen=True)
class ChernCharacter:
    """A rational Chern character (c0, c1, c2, c3) on a fixed variety.

    Coefficients are against the basis (1, H, L, P); nothing is assumed
    integral, the lattice condition is checked by `is_lattice_point`.
    """

    c0: Fraction
    c1: Fraction
    c2: Fraction
    c3: Fraction
    variety: FanoVariety

    @classmethod
    def of(cls, variety: FanoVariety, c0: Rational, c1: Rational,
           c2: Rational, c3: Rational) -> "ChernCharacter":
        return cls(frac(c0), frac(c1), frac(c2), frac(c3), variety)

    def coeffs(self) -> tuple:
        return (self.c0, self.c1, self.c2, self.c3)

    def v_vector(self) -> tuple:
        """Lattice vector (ch0*H^3, ch1*H^2, ch2*H, ch3)."""
        d = self.variety.degree
        return (self.c0 * d, self.c1 * d, self.c2, self.c3)

    def is_zero(self) -> bool:
        return not any(self.coeffs())

    def is_lattice_point(self) -> bool:
        """Integrality pattern of genuine objects: (Z, Z, Z/2, Z/6) in v-coordinates."""
        v = self.v_vector()
        return (v[0].denominator == 1 and v[1].denominator == 1
                and (2 * v[2]).denominator == 1 and (6 * v[3]).denominator == 1)

    def _check_same(self, other: "ChernCharacter"):
        if self.variety != other.variety:
            raise VarietyMismatchError(
                f"characters live on {self.variety.name} and {other.variety.name}")

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        self._check_same(other)
        return replace(self, c0=self.c0 + other.c0, c1=self.c1 + other.c1,
                       c2=self.c2 + other.c2, c3=self.c3 + other.c3)

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return self + (-other)

    def __neg__(self) -> "ChernCharacter":
        return self.scale(-1)

    def scale(self, a: Rational) -> "ChernCharacter":
        a = frac(a)
        return replace(self, c0=a * self.c0, c1=a * self.c1,
                       c2=a * self.c2, c3=a * self.c3)

    def ring_mul(self, other: "ChernCharacter") -> "ChernCharacter":
        """Product in Q[1, H, L, P] with H^2 = d*L, H*L = P."""
        self._check_same(other)
        d = self.variety.degree
        a0, a1, a2, a3 = self.coeffs()
        b0, b1, b2, b3 = other.coeffs()
        return replace(
            self,
            c0=a0 * b0,
            c1=a0 * b1 + a1 * b0,
            c2=a0 * b2 + a2 * b0 + d * a1 * b1,
            c3=a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )


def line_bundle(variety: FanoVariety, k: Rational) -> ChernCharacter:
    """ch(O(k)) = exp(k*H) = (1, k, k^2 d/2, k^3 d/6); k may be rational."""
    k = frac(k)
    d = variety.degree
    return ChernCharacter.of(variety, 1, k, k * k * d / 2, k ** 3 * Fraction(d, 6))


def structure_sheaf(variety: FanoVariety) -> ChernCharacter:
    return line_bundle(variety, 0)


def spinor_character(variety: FanoVariety) -> ChernCharacter:
    """ch(S) for the rank-2 spinor bundle on the quadric threefold.

    Newton's identities on (rank, c1, c2, c3) = (2, -H, L, 0) give
    ch(S) = (2, -1, 0, 1/6); it satisfies S^* = S(1) and chi(S, S) = 1.
    """
    if variety.name != "q3":
        raise UnsupportedVarietyError("spinor bundle is only registered on q3")
    return ChernCharacter.of(variety, 2, -1, 0, Fraction(1, 6))


def todd_character(variety: FanoVariety) -> ChernCharacter:
    return ChernCharacter.of(variety, 1, variety.td1, variety.td2, variety.td3)


def twist(ch: ChernCharacter, beta: Rational) -> ChernCharacter:
    """The twisted character ch^beta = exp(-beta*H) * ch.

    Acts as a group: twist(twist(ch, b1), b2) = twist(ch, b1 + b2), and
    twist(line_bundle(k), k) kills all higher components.
    """
    beta = frac(beta)
    d = ch.variety.degree
    c0, c1, c2, c3 = ch.coeffs()
    return replace(
        ch,
        c1=c1 - beta * c0,
        c2=c2 - beta * d * c1 + beta * beta * d * c0 / 2,
        c3=c3 - beta * c2 + beta * beta * d * c1 / 2 - beta ** 3 * Fraction(d, 6) * c0,
    )


def tensor_line(ch: ChernCharacter, k: int) -> ChernCharacter:
    """Chern-level tensor with O(k): multiplication by exp(k*H)."""
    return twist(ch, -frac(k))


def dual(ch: ChernCharacter) -> ChernCharacter:
    """Derived dual at character level: ch_i picks up the sign (-1)^i."""
    return replace(ch, c1=-ch.c1, c3=-ch.c3)


def euler_pairing(a: ChernCharacter, b: ChernCharacter) -> Fraction:
    """chi(A, B) by Hirzebruch-Riemann-Roch.

    The point-degree of ch(A)^dual * ch(B) * td(X); integer-valued on
    lattice points of genuine objects.
    """
    a._check_same(b)
    x = dual(a).ring_mul(b)
    v = a.variety
    return x.c0 * v.td3 + x.c1 * v.td2 + x.c2 * v.td1 + x.c3


def mu_slope(ch: ChernCharacter):
    """Mumford slope c1*H^2 / (c0*H^3) = c1/c0; +infinity on torsion classes."""
    if ch.c0 == 0:
        return math.inf
    return ch.c1 / ch.c0


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def v_vector_strings(ch: ChernCharacter) -> list:
    return [format_rational(x) for x in ch.v_vector()]
