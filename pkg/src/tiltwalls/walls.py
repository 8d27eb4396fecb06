"""Wall enumeration and classification for dimension vectors.

Everything revolves around three-step complexes [0, a, b, c] built from the
last three generators of a shipped collection (which are the line bundles
O(-1), O, O(1) in both cases).  Candidate destabilizers are subvectors of
the dimension vector; the numerical wall of the pair is a bivariate rational
polynomial, obtained either bilinearly from the characters or, on consecutive
support, by the 3x3 determinant whose first row holds the pairwise generator
walls.

For the monad vectors [0, c, 2c+k, c] every subvector wall decomposes as

    f_{E,F} = -(det_A * d^2 / 3) * beta^3 + (f - h) * f_1,

with det_A = h*(2c+k) - c*g, d = H^3 and f_1 the wall against the generator
placed at degree -2.  The decomposition is verified symbolically per variety
and pins down the wall geometry: the middle canonical wall is the line
beta = 0, and all three canonical walls meet at the rational triple point
(beta, t) = (0, 1/3) when s = 1/3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .exceptional import (DimensionVector, ExceptionalCollection, ch_from_dim,
                          generator_characters)
from .regions import RegionWindow
from .stability import (Poly2, Side, StabilityPoint, WallPolynomial, bogomolov_Q,
                        bridgeland_Z, wall_poly, wall_side)
from .varieties import Rational, frac

WALL_ZERO = "zero"
WALL_CANONICAL = ("canonical-1", "canonical-2", "canonical-3")
WALL_OTHER = "other"

GENERATOR_DIMS = tuple(
    DimensionVector.of(*(1 if j == i else 0 for j in range(4))) for i in range(4))


class SupportShapeError(ValueError):
    """The dimension vectors do not have the support shape the rule needs."""


@dataclass(frozen=True)
class WallRecord:
    """One candidate wall: subvector, polynomial, classification, orientation."""

    sub: DimensionVector
    poly: WallPolynomial
    classification: str
    det_a: Optional[Fraction] = None
    orientation_sample: Optional[Tuple[StabilityPoint, Side]] = None

    def to_json(self) -> dict:
        entry = {
            "sub": list(self.sub),
            "classification": self.classification,
            "poly": self.poly.to_json(),
        }
        if self.det_a is not None:
            entry["det_a"] = str(self.det_a)
        if self.orientation_sample is not None:
            point, side = self.orientation_sample
            entry["orientation_sample"] = {
                "beta": str(point.beta), "t": str(point.t), "side": side.name.lower()}
        return entry


def subvectors(dim: DimensionVector) -> Iterator[DimensionVector]:
    """All 0 <= v <= dim componentwise, excluding 0 and dim itself.

    Count is prod(a_i + 1) - 2, in lexicographic order.
    """
    for entries in itertools.product(*(range(a + 1) for a in dim)):
        v = DimensionVector.of(*entries)
        if not v.is_zero() and v != dim:
            yield v


def two_step_determinant(a: int, b: int, c: int, d: int) -> int:
    """a*d - b*c for sub (c, d) of a two-step complex (a, b).

    Positive for every subvector means the strict determinant condition,
    non-negative the semi version.
    """
    return a * d - b * c


def truncation_dims(dim: DimensionVector, k: int) -> Tuple[DimensionVector, DimensionVector]:
    """Split into (top k slots, remaining low slots); the parts sum to dim."""
    if not 0 <= k <= 3:
        raise ValueError("truncation index must be within 0..3")
    cut = 4 - k
    upper = DimensionVector.of(*(a if i >= cut else 0 for i, a in enumerate(dim)))
    lower = DimensionVector.of(*(a if i < cut else 0 for i, a in enumerate(dim)))
    return upper, lower


def _support_window(dim_e: DimensionVector, dim_f: DimensionVector) -> int:
    support = sorted(set(dim_e.support()) | set(dim_f.support()))
    if not support:
        return 0
    lo, hi = support[0], support[-1]
    if hi - lo > 2:
        raise SupportShapeError("supports do not fit three consecutive indices")
    return max(0, hi - 2)


def determinant_wall(dim_e: DimensionVector, dim_f: DimensionVector,
                     collection: ExceptionalCollection, s: Rational) -> WallPolynomial:
    """Wall of two consecutive-support complexes via the 3x3 determinant.

    First row: pairwise walls of the three underlying sheaf characters in
    the order (top/mid, top/low, mid/low); rows two and three are the
    multiplicities.  Equals the bilinear wall of the effective characters.
    """
    p = _support_window(dim_e, dim_f)
    chars = collection.characters()
    low, mid, top = chars[p], chars[p + 1], chars[p + 2]
    s = frac(s)
    row = (wall_poly(top, mid, s).poly, wall_poly(top, low, s).poly,
           wall_poly(mid, low, s).poly)
    e = [Poly2.constant(dim_e[p + j]) for j in range(3)]
    f = [Poly2.constant(dim_f[p + j]) for j in range(3)]
    # Cofactor expansion along the first row of [[row], [e], [f]].
    det = (row[0] * (e[1] * f[2] - e[2] * f[1])
           - row[1] * (e[0] * f[2] - e[2] * f[0])
           + row[2] * (e[0] * f[1] - e[1] * f[0]))
    return WallPolynomial(det, f"dim{dim_e}", f"dim{dim_f}")


def classify_wall(poly: WallPolynomial, canonical: Sequence[WallPolynomial]) -> str:
    if poly.identically_zero:
        return WALL_ZERO
    for name, reference in zip(WALL_CANONICAL, canonical):
        if not reference.identically_zero and poly.poly.proportional_to(reference.poly):
            return name
    return WALL_OTHER


def _top_determinant(dim: DimensionVector, sub: DimensionVector) -> Fraction:
    """det_A = h*b - c'*g for E = [0, a, b, c'], F = [0, f, g, h]."""
    return Fraction(sub[3] * dim[2] - dim[3] * sub[2])


def canonical_walls(dim: DimensionVector, collection: ExceptionalCollection,
                    s: Rational) -> List[WallRecord]:
    """The three walls of dim against the generators at degrees -2, -1, 0."""
    if dim[0] != 0:
        raise SupportShapeError("canonical walls are defined for shape [0, a, b, c]")
    s = frac(s)
    ch_e = ch_from_dim(dim, collection)
    gens = generator_characters(collection)
    polys = [wall_poly(ch_e, gens[i], s, label_e=f"dim{dim}", label_f=f"E{i}[{3 - i}]")
             for i in (1, 2, 3)]
    records = []
    for idx, wall in enumerate(polys):
        sub = GENERATOR_DIMS[idx + 1]
        classification = WALL_ZERO if wall.identically_zero else WALL_CANONICAL[idx]
        records.append(WallRecord(sub, wall, classification,
                                  det_a=_top_determinant(dim, sub)))
    return records


def reduction_residual_ok(dim: DimensionVector, sub: DimensionVector,
                          collection: ExceptionalCollection, s: Rational) -> Tuple[bool, Fraction]:
    """Check f_{E,F} - (f-h)*f_1 == -(det_A*d^2/3)*beta^3 symbolically."""
    s = frac(s)
    d = collection.variety.degree
    ch_e = ch_from_dim(dim, collection)
    ch_f = ch_from_dim(sub, collection)
    gens = generator_characters(collection)
    f_ef = wall_poly(ch_e, ch_f, s).poly
    f_1 = wall_poly(ch_e, gens[1], s).poly
    det_a = _top_determinant(dim, sub)
    residual = f_ef - f_1.scale(sub[1] - sub[3])
    expected = Poly2.monomial(3, 0, -det_a * d * d / 3)
    return residual == expected, det_a


def wall_reduction_check(c_charge: int, k: int, sub: DimensionVector,
                         collection: ExceptionalCollection,
                         s: Rational = Fraction(1, 3)) -> Tuple[bool, Fraction]:
    """Verify the wall decomposition for E = [0, c, 2c+k, c] on P3 at s = 1/3.

    Returns (identity holds, det_A).  The beta^3 coefficient is det_A/3:
    the pairwise generator walls satisfy f_{O(1),O} - f_{O,O(-1)} = -beta^3/3
    exactly, which fixes the constant.
    """
    if collection.variety.name != "p3":
        raise SupportShapeError("the reduction identity is stated on p3; "
                                "instanton_report re-derives it per variety")
    if frac(s) != Fraction(1, 3):
        raise ValueError("the decomposition holds at s = 1/3 only")
    if c_charge < 1 or k < 0:
        raise ValueError("need charge >= 1 and k >= 0")
    dim = DimensionVector.of(0, c_charge, 2 * c_charge + k, c_charge)
    if not sub <= dim:
        raise ValueError(f"sub {sub} is not <= {dim}")
    return reduction_residual_ok(dim, sub, collection, s)


def _poly_to_sympy(poly: Poly2, b, t):
    import sympy

    return sum(sympy.Rational(v.numerator, v.denominator) * b ** i * t ** j
               for (i, j), v in poly.coeffs.items())


def triple_point(dim: DimensionVector, collection: ExceptionalCollection,
                 s: Rational) -> Optional[Tuple[Fraction, Fraction]]:
    """Rational common zero of the first two canonical walls, with the third
    vanishing there too; None when no such point exists with t > 0.

    For [0, c, 2c+k, c] at s = 1/3 the answer is (0, 1/3).
    """
    import sympy

    walls = canonical_walls(dim, collection, s)
    f1, f2, f3 = (record.poly.poly for record in walls)
    if f1.is_zero() or f2.is_zero():
        return None
    b, t = sympy.symbols("beta t", real=True)
    try:
        solutions = sympy.solve([_poly_to_sympy(f1, b, t), _poly_to_sympy(f2, b, t)],
                                [b, t], dict=True)
    except NotImplementedError:
        return None
    points = []
    for sol in solutions:
        if set(sol) != {b, t}:
            continue
        sb, st = sol[b], sol[t]
        if not (getattr(sb, "is_rational", False) and getattr(st, "is_rational", False)):
            continue
        beta = Fraction(int(sympy.nsimplify(sb).p), int(sympy.nsimplify(sb).q))
        tval = Fraction(int(sympy.nsimplify(st).p), int(sympy.nsimplify(st).q))
        if tval <= 0:
            continue
        if f3.evaluate(beta, tval) != 0:
            continue
        points.append((beta, tval))
    if not points:
        return None
    return min(points)


def _edge_sign_samples(poly: Poly2, window: RegionWindow, bisections: int = 12,
                       limit: int = 48) -> List[Tuple[Fraction, Fraction]]:
    """Rational points bracketing the zero set along grid edges, by bisection."""
    samples: List[Tuple[Fraction, Fraction]] = []
    corners = {}
    for i in range(window.n_beta + 1):
        for j in range(window.n_t + 1):
            corners[(i, j)] = poly.evaluate(*window.corner(i, j))

    def bisect(p0, p1, v0, v1):
        for _ in range(bisections):
            mid = ((p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2)
            vm = poly.evaluate(*mid)
            if vm == 0:
                return mid
            if (v0 < 0) != (vm < 0):
                p1, v1 = mid, vm
            else:
                p0, v0 = mid, vm
        return ((p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2)

    seen = set()
    for i in range(window.n_beta + 1):
        for j in range(window.n_t + 1):
            v0 = corners[(i, j)]
            if v0 == 0:
                point = window.corner(i, j)
                if point not in seen:
                    seen.add(point)
                    samples.append(point)
            else:
                for di, dj in ((1, 0), (0, 1)):
                    i2, j2 = i + di, j + dj
                    if i2 > window.n_beta or j2 > window.n_t:
                        continue
                    v1 = corners[(i2, j2)]
                    if v1 != 0 and (v0 < 0) != (v1 < 0):
                        samples.append(bisect(window.corner(i, j),
                                              window.corner(i2, j2), v0, v1))
            if len(samples) >= limit:
                return samples[:limit]
    return samples


DEFAULT_FILTERS = ("positivity", "bogomolov")


def candidate_walls(dim: DimensionVector, collection: ExceptionalCollection,
                    s: Rational, window: RegionWindow,
                    filters: Sequence[str] = DEFAULT_FILTERS) -> List[WallRecord]:
    """Subvector walls that cross the window and survive the numeric filters.

    A wall survives when some exactly-bracketed point on it, inside the
    window, has rho(sub) >= 0 (positivity) and Q(sub) >= 0 (the quadratic
    inequality) -- necessary conditions for the subvector to destabilize
    anything there.  Identically-zero walls are dropped.
    """
    s = frac(s)
    unknown = set(filters) - {"positivity", "bogomolov"}
    if unknown:
        raise ValueError(f"unknown filters {sorted(unknown)}")
    ch_e = ch_from_dim(dim, collection)
    canon = [record.poly for record in canonical_walls(dim, collection, s)]
    records = []
    for sub in subvectors(dim):
        ch_f = ch_from_dim(sub, collection)
        wall = wall_poly(ch_e, ch_f, s, label_e=f"dim{dim}", label_f=f"dim{sub}")
        if wall.identically_zero:
            continue
        classification = classify_wall(wall, canon)
        sample_found = None
        for beta, t in _edge_sign_samples(wall.poly, window):
            point = StabilityPoint(beta, t, s)
            if "positivity" in filters:
                _, rho = bridgeland_Z(ch_f, point)
                if rho < 0:
                    continue
            if "bogomolov" in filters and bogomolov_Q(ch_f, point) < 0:
                continue
            sample_found = (point, wall_side(ch_e, ch_f, point))
            break
        if sample_found is None:
            continue
        records.append(WallRecord(sub, wall, classification,
                                  det_a=_top_determinant(dim, sub),
                                  orientation_sample=sample_found))
    return records


def instanton_dim(charge: int) -> DimensionVector:
    """Monad multiplicities [0, c, 2c+2, c] of a charge-c instanton."""
    if charge < 1:
        raise ValueError("charge must be a positive integer")
    return DimensionVector.of(0, charge, 2 * charge + 2, charge)


def instanton_report(charge: int, collection: ExceptionalCollection,
                     s: Rational = Fraction(1, 3),
                     window: Optional[RegionWindow] = None) -> dict:
    """Structured wall analysis for the instanton dimension vector.

    Includes the three canonical wall polynomials, the triple point, the
    subvector census with determinant signs, the truncation vanishing-wall
    pairing, the symbolic wall-decomposition verdict and raster-ready curve
    polylines for the nonzero canonical walls.
    """
    from .regions import extract_curves

    s = frac(s)
    dim = instanton_dim(charge)
    if window is None:
        window = RegionWindow.of("-3/2", "3/2", "1/100", "3/2", 72, 48)
    ch_e = ch_from_dim(dim, collection)
    walls = canonical_walls(dim, collection, s)
    point = triple_point(dim, collection, s)

    census = []
    reduction_all_ok = True
    for sub in subvectors(dim):
        ok, det_a = reduction_residual_ok(dim, sub, collection, s)
        reduction_all_ok = reduction_all_ok and ok
        sub_wall = wall_poly(ch_e, ch_from_dim(sub, collection), s)
        census.append({
            "sub": list(sub),
            "det_a": str(det_a),
            "f_minus_h": sub[1] - sub[3],
            "classification": classify_wall(
                sub_wall, [record.poly for record in walls]),
            "identically_zero": sub_wall.identically_zero,
        })

    upper, lower = truncation_dims(dim, 2)
    upper_wall = wall_poly(ch_e, ch_from_dim(upper, collection), s)
    lower_wall = wall_poly(ch_e, ch_from_dim(lower, collection), s)
    vanishing_pair = (upper_wall.poly.proportional_to(lower_wall.poly)
                      or (upper_wall.identically_zero and lower_wall.identically_zero))

    curves = {}
    for record in walls:
        if not record.poly.identically_zero:
            curves[record.classification] = extract_curves(record.poly, window)

    return {
        "variety": collection.variety.name,
        "charge": charge,
        "dim": list(dim),
        "character_v": [str(x) for x in ch_e.v_vector()],
        "s": str(s),
        "canonical_walls": [record.to_json() for record in walls],
        "triple_point": None if point is None else [str(point[0]), str(point[1])],
        "subvector_count": len(census),
        "subvector_census": census,
        "truncation_split": {"upper": list(upper), "lower": list(lower),
                             "vanishing_wall_pair": vanishing_pair},
        "wall_decomposition_exact": reduction_all_ok,
        "window": {"beta": [str(window.beta_min), str(window.beta_max)],
                   "t": [str(window.t_min), str(window.t_max)],
                   "grid": [window.n_beta, window.n_t]},
        "curves": curves,
    }
