"""Tilt and Bridgeland stability functions, evaluated exactly.

Conventions.  A stability point is (beta, t, s) with t = alpha^2, so every
quantity here is a polynomial in (beta, t) with rational coefficients and
can be evaluated without floating point.  Writing ch^b for the twisted
character exp(-beta*H)*ch and d = H^3:

    tilt charge      Z^t = -(ch2^b*H - (t/2)*H^3*ch0) + i*(ch1^b*H^2)
    tilt slope       nu  = (ch2^b*H - (t/2)*H^3*ch0) / (ch1^b*H^2),
                           +infinity when the denominator vanishes
    Bridgeland       Z   = -ch3^b + (s + 1/6)*t*ch1^b*H^2
                           + i*(ch2^b*H - (t/2)*H^3*ch0)
    tau = -Re Z,  rho = Im Z,  lambda = tau/rho (+infinity when rho = 0)

The numerical wall of two classes E, F is the vanishing locus of

    f_{E,F} = tau(E)*rho(F) - tau(F)*rho(E),

a bivariate polynomial of degree <= 5 in beta and <= 2 in t.  Following the
usual orientation, f < 0 is the *inside* of the wall (lambda(E) < lambda(F)
when both rho are positive) and f > 0 the outside.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .varieties import ChernCharacter, Rational, VarietyMismatchError, format_rational, frac, twist

ZERO = Fraction(0)


@dataclass(frozen=True)
class StabilityPoint:
    """A point (beta, t = alpha^2, s) of the stability plane; t > 0, s > 0."""

    beta: Fraction
    t: Fraction
    s: Fraction = Fraction(1, 3)

    def __post_init__(self):
        if self.t <= 0:
            raise ValueError("t = alpha^2 must be positive")
        if self.s <= 0:
            raise ValueError("s must be positive")

    @classmethod
    def of(cls, beta: Rational, t: Rational, s: Rational = Fraction(1, 3)) -> "StabilityPoint":
        return cls(frac(beta), frac(t), frac(s))

    @property
    def alpha(self) -> float:
        return math.sqrt(self.t)


class Poly2:
    """Bivariate polynomial in (beta, t), sparse dict of Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[Tuple[int, int], Fraction] | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v != 0}

    @classmethod
    def constant(cls, a: Rational) -> "Poly2":
        return cls({(0, 0): frac(a)})

    @classmethod
    def monomial(cls, deg_beta: int, deg_t: int, a: Rational = 1) -> "Poly2":
        return cls({(deg_beta, deg_t): frac(a)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly2) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return Poly2(out)

    def __neg__(self) -> "Poly2":
        return Poly2({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other: "Poly2") -> "Poly2":
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                key = (i + k, j + l)
                out[key] = out.get(key, ZERO) + a * b
        return Poly2(out)

    def scale(self, a: Rational) -> "Poly2":
        a = frac(a)
        return Poly2({k: a * v for k, v in self.coeffs.items()})

    def evaluate(self, beta: Rational, t: Rational) -> Fraction:
        beta, t = frac(beta), frac(t)
        total = ZERO
        for (i, j), a in self.coeffs.items():
            total += a * beta ** i * t ** j
        return total

    def degrees(self) -> Tuple[int, int]:
        if not self.coeffs:
            return (0, 0)
        return (max(i for i, _ in self.coeffs), max(j for _, j in self.coeffs))

    def proportional_to(self, other: "Poly2") -> bool:
        """True when one polynomial is a rational multiple of the other."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.coeffs) != set(other.coeffs):
            return False
        key = next(iter(self.coeffs))
        ratio = self.coeffs[key] / other.coeffs[key]
        return all(v == ratio * other.coeffs[k] for k, v in self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return "Poly2(0)"
        terms = [f"{format_rational(v)}*b^{i}*t^{j}"
                 for (i, j), v in sorted(self.coeffs.items())]
        return "Poly2(" + " + ".join(terms) + ")"


def tau_poly(ch: ChernCharacter, s: Rational) -> Poly2:
    """tau = -Re Z as a polynomial in (beta, t)."""
    s = frac(s)
    d = ch.variety.degree
    c0, c1, c2, c3 = ch.coeffs()
    # ch3^b = c3 - b*c2 + b^2*d*c1/2 - b^3*d*c0/6 ; ch1^b*H^2 = d*(c1 - b*c0)
    return Poly2({
        (0, 0): c3,
        (1, 0): -c2,
        (2, 0): d * c1 / 2,
        (3, 0): -Fraction(d, 6) * c0,
        (0, 1): -(s + Fraction(1, 6)) * d * c1,
        (1, 1): (s + Fraction(1, 6)) * d * c0,
    })


def rho_poly(ch: ChernCharacter) -> Poly2:
    """rho = Im Z = ch2^b*H - (t/2)*H^3*ch0 as a polynomial in (beta, t)."""
    d = ch.variety.degree
    c0, c1, c2, _ = ch.coeffs()
    return Poly2({
        (0, 0): c2,
        (1, 0): -d * c1,
        (2, 0): d * c0 / 2,
        (0, 1): -Fraction(d, 2) * c0,
    })


def tilt_Z(ch: ChernCharacter, p: StabilityPoint) -> Tuple[Fraction, Fraction]:
    """The tilt charge as (re, im); re = -rho, im = ch1^b*H^2."""
    d = ch.variety.degree
    chb = twist(ch, p.beta)
    re = -(chb.c2 - p.t / 2 * d * chb.c0)
    im = d * chb.c1
    return (re, im)


def nu(ch: ChernCharacter, p: StabilityPoint):
    """Tilt slope; +infinity whenever the imaginary part vanishes."""
    re, im = tilt_Z(ch, p)
    if im == 0:
        return math.inf
    return -re / im


def bridgeland_Z(ch: ChernCharacter, p: StabilityPoint) -> Tuple[Fraction, Fraction]:
    """(tau, rho) of the Bridgeland charge at p."""
    d = ch.variety.degree
    chb = twist(ch, p.beta)
    tau = chb.c3 - (p.s + Fraction(1, 6)) * p.t * d * chb.c1
    rho = chb.c2 - p.t / 2 * d * chb.c0
    return (tau, rho)


def lambda_slope(ch: ChernCharacter, p: StabilityPoint):
    """Bridgeland slope tau/rho; +infinity when rho = 0."""
    tau, rho = bridgeland_Z(ch, p)
    if rho == 0:
        return math.inf
    return tau / rho


def curve_values(ch: ChernCharacter, p: StabilityPoint) -> Tuple[Fraction, Fraction]:
    """(gamma, theta) = (tau, rho); a zero marks the distinguished curve."""
    return bridgeland_Z(ch, p)


@dataclass(frozen=True)
class WallPolynomial:
    """The wall polynomial f_{E,F} with orientation labels.

    Degree <= 5 in beta and <= 2 in t; bilinear and antisymmetric in the
    two classes, identically zero exactly on proportional pairs.
    """

    poly: Poly2
    label_e: str
    label_f: str

    @property
    def identically_zero(self) -> bool:
        return self.poly.is_zero()

    def evaluate(self, p: StabilityPoint) -> Fraction:
        return self.poly.evaluate(p.beta, p.t)

    def to_json(self) -> dict:
        coeffs = [[i, j, v.numerator, v.denominator]
                  for (i, j), v in sorted(self.poly.coeffs.items())]
        return {
            "labels": {"E": self.label_e, "F": self.label_f},
            "coefficients": coeffs,
            "identically_zero": self.identically_zero,
        }

    @classmethod
    def from_json(cls, data: dict) -> "WallPolynomial":
        coeffs = {(int(i), int(j)): Fraction(int(num), int(den))
                  for i, j, num, den in data["coefficients"]}
        return cls(Poly2(coeffs), data["labels"]["E"], data["labels"]["F"])


def _label(ch: ChernCharacter) -> str:
    return "v=(" + ",".join(format_rational(x) for x in ch.v_vector()) + ")"


def wall_poly(ch_e: ChernCharacter, ch_f: ChernCharacter, s: Rational,
              label_e: str = "", label_f: str = "") -> WallPolynomial:
    """Symbolic expansion of f_{E,F,s} = tau(E)*rho(F) - tau(F)*rho(E)."""
    if ch_e.variety != ch_f.variety:
        raise VarietyMismatchError("wall polynomial needs both classes on one variety")
    poly = tau_poly(ch_e, s) * rho_poly(ch_f) - tau_poly(ch_f, s) * rho_poly(ch_e)
    return WallPolynomial(poly, label_e or _label(ch_e), label_f or _label(ch_f))


class Side(enum.Enum):
    INSIDE = -1
    ON = 0
    OUTSIDE = 1


def wall_side(ch_e: ChernCharacter, ch_f: ChernCharacter, p: StabilityPoint) -> Side:
    """Which side of the numerical wall of (E, F) the point p lies on."""
    tau_e, rho_e = bridgeland_Z(ch_e, p)
    tau_f, rho_f = bridgeland_Z(ch_f, p)
    value = tau_e * rho_f - tau_f * rho_e
    if value < 0:
        return Side.INSIDE
    if value > 0:
        return Side.OUTSIDE
    return Side.ON


def bogomolov_Q(ch: ChernCharacter, p: StabilityPoint) -> Fraction:
    """Tilt-quadratic form t*Delta + 4*(ch2^b*H)^2 - 6*H^3*(ch1^b*H^2)*ch3^b.

    Delta = (c1*H^2)^2 - 2*H^3*c0*(c2*H) is the usual discriminant; line
    bundles saturate Q = 0 at every point.
    """
    d = ch.variety.degree
    delta = (d * ch.c1) ** 2 - 2 * d * ch.c0 * ch.c2
    chb = twist(ch, p.beta)
    return p.t * delta + 4 * chb.c2 ** 2 - 6 * d * chb.c1 * chb.c3
