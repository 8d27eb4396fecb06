"""Pointwise heart-membership predicates, rasters and implicit curves.

The double tilt produces, at each point (beta, t), a heart A that contains a
mu-stable, tilt-stable sheaf class G shifted by a definite amount.  Writing
sigma_B = 0 when mu(G) > beta (G itself sits in the once-tilted heart B) and
sigma_B = 1 otherwise (G[1] does), the placement rule is

    G[sigma] in A  iff  sigma = sigma_B     and nu(G) > 0,
                    or  sigma = sigma_B + 1 and nu(G) <= 0.

All other shifts fail.  `in_double_heart` then tests G[shift] against
<A, A[1]>, and `quiver_region_code` runs the wall test that detects when an
Ext-shifted collection generates the heart: the point must lie inside (or
on) every numerical wall of some member against the other three.

Tilt stability of the tested classes is the caller's contract.  Line bundles
are tilt stable everywhere; the spinor class on the quadric is certified only
right of beta = -3/2, and its member carries that window as `beta_floor` --
queries at or left of the floor raise StabilityUnknownError rather than
guessing.

Rasters sample cell centers exactly; curve extraction is marching squares on
the exact sign field with binary64 interpolation for vertex placement only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .exceptional import DimensionVector, ExceptionalCollection, ExceptionalObject
from .stability import Poly2, Side, StabilityPoint, WallPolynomial, bridgeland_Z, nu, wall_side
from .varieties import ChernCharacter, Rational, frac, mu_slope

SHIFT_RANGE = (0, 1, 2, 3)


class StabilityUnknownError(ValueError):
    """The predicate was queried outside the window where it is certified."""


def placement(ch: ChernCharacter, shift: int, p: StabilityPoint) -> bool:
    """Whether the class of G[shift] lies in the heart at p (G mu-stable)."""
    if shift not in SHIFT_RANGE:
        raise ValueError(f"shift must be one of {SHIFT_RANGE}, got {shift}")
    sigma_b = 0 if mu_slope(ch) > p.beta else 1
    if shift == sigma_b:
        return nu(ch, p) > 0
    if shift == sigma_b + 1:
        return nu(ch, p) <= 0
    return False


def _check_floor(obj: ExceptionalObject, p: StabilityPoint):
    if obj.beta_floor is not None and p.beta <= obj.beta_floor:
        raise StabilityUnknownError(
            f"placement of {obj.name or 'member'} is only certified for "
            f"beta > {obj.beta_floor}")


def in_double_heart(obj: ExceptionalObject, p: StabilityPoint) -> bool:
    """Whether obj lies in <A, A[1]> at p: placement at shift or shift - 1."""
    _check_floor(obj, p)
    if placement(obj.ch, obj.shift, p):
        return True
    if obj.shift - 1 in SHIFT_RANGE:
        return placement(obj.ch, obj.shift - 1, p)
    return False


def quiver_region_code(collection: ExceptionalCollection, p: StabilityPoint) -> int:
    """Witness code for the heart-generation test of an Ext-shifted quadruple.

    Returns 1 + k for the smallest k whose member has every wall against the
    other members satisfied (inside or on), and 0 when the gate fails or no
    witness exists.  The gate is that all four members lie in <A, A[1]>.
    """
    for obj in collection.objects:
        if not in_double_heart(obj, p):
            return 0
    effective = collection.effective_characters()
    for k in range(4):
        if all(wall_side(effective[k], effective[i], p) != Side.OUTSIDE
               for i in range(4) if i != k):
            return k + 1
    return 0


def dim_vector_in_heart(dim: DimensionVector, collection: ExceptionalCollection,
                        p: StabilityPoint) -> bool:
    """Heart membership for a complex with the given generator multiplicities.

    Shape [0, a1, a2, a3]: each supported E_i must have E_i[3-i] in A.
    Shape [a0, a1, a2, 0]: each supported E_i must have E_i[2-i] in A.
    Mixed shape (both a0 and a3 nonzero) is not decidable here.
    """
    if dim[0] == 0:
        shift_of = lambda i: 3 - i
    elif dim[3] == 0:
        shift_of = lambda i: 2 - i
    else:
        raise ValueError("dimension vector must have a0 = 0 or a3 = 0")
    for i in dim.support():
        obj = collection.objects[i]
        _check_floor(obj, p)
        if not placement(obj.ch, shift_of(i), p):
            return False
    return True


@dataclass(frozen=True)
class RegionWindow:
    """A rectangle in the (beta, t) plane with a raster resolution."""

    beta_min: Fraction
    beta_max: Fraction
    t_min: Fraction
    t_max: Fraction
    n_beta: int = 100
    n_t: int = 100

    def __post_init__(self):
        if not self.beta_min < self.beta_max:
            raise ValueError("need beta_min < beta_max")
        if not 0 < self.t_min < self.t_max:
            raise ValueError("need 0 < t_min < t_max")
        if self.n_beta < 2 or self.n_t < 2:
            raise ValueError("resolution must be at least 2x2")

    @classmethod
    def of(cls, beta_min: Rational, beta_max: Rational, t_min: Rational,
           t_max: Rational, n_beta: int = 100, n_t: int = 100) -> "RegionWindow":
        return cls(frac(beta_min), frac(beta_max), frac(t_min), frac(t_max),
                   int(n_beta), int(n_t))

    def cell_center(self, i: int, j: int) -> Tuple[Fraction, Fraction]:
        """Center of cell (column i along beta, row j along t)."""
        beta = self.beta_min + (self.beta_max - self.beta_min) * Fraction(2 * i + 1, 2 * self.n_beta)
        t = self.t_min + (self.t_max - self.t_min) * Fraction(2 * j + 1, 2 * self.n_t)
        return beta, t

    def corner(self, i: int, j: int) -> Tuple[Fraction, Fraction]:
        beta = self.beta_min + (self.beta_max - self.beta_min) * Fraction(i, self.n_beta)
        t = self.t_min + (self.t_max - self.t_min) * Fraction(j, self.n_t)
        return beta, t


@dataclass(frozen=True)
class RegionRaster:
    """Cell-centered integer codes over a window, row-major in t then beta."""

    window: RegionWindow
    flags: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.flags) != self.window.n_t or any(
                len(row) != self.window.n_beta for row in self.flags):
            raise ValueError("flag grid does not match the window resolution")

    def to_csv(self) -> str:
        lines = ["beta,t,code,beta_frac,t_frac"]
        for j, row in enumerate(self.flags):
            for i, code in enumerate(row):
                beta, t = self.window.cell_center(i, j)
                lines.append(f"{float(beta)!r},{float(t)!r},{code},{beta},{t}")
        return "\n".join(lines) + "\n"


def rasterize(predicate: Callable[[StabilityPoint], int], window: RegionWindow,
              s: Rational = Fraction(1, 3)) -> RegionRaster:
    """Evaluate an integer predicate at every cell center, exactly."""
    s = frac(s)
    rows = []
    for j in range(window.n_t):
        row = []
        for i in range(window.n_beta):
            beta, t = window.cell_center(i, j)
            row.append(int(predicate(StabilityPoint(beta, t, s))))
        rows.append(tuple(row))
    return RegionRaster(window, tuple(rows))


# Segment table for marching squares.  Corner order within a cell is
# 0:(i,j) 1:(i+1,j) 2:(i+1,j+1) 3:(i,j+1); edges are corner index pairs.
_CELL_EDGES = {
    1: [((0, 1), (0, 3))], 2: [((0, 1), (1, 2))], 3: [((0, 3), (1, 2))],
    4: [((1, 2), (2, 3))], 6: [((0, 1), (2, 3))], 7: [((0, 3), (2, 3))],
    8: [((0, 3), (2, 3))], 9: [((0, 1), (2, 3))], 11: [((1, 2), (2, 3))],
    12: [((0, 3), (1, 2))], 13: [((0, 1), (1, 2))], 14: [((0, 1), (0, 3))],
}
_SADDLE = {
    5: ([((0, 1), (1, 2)), ((0, 3), (2, 3))], [((0, 1), (0, 3)), ((1, 2), (2, 3))]),
    10: ([((0, 1), (0, 3)), ((1, 2), (2, 3))], [((0, 1), (1, 2)), ((0, 3), (2, 3))]),
}


def extract_curves(wall: WallPolynomial, window: RegionWindow) -> List[List[Tuple[float, float]]]:
    """Zero-set polylines of a wall polynomial inside a window.

    The sign field is computed exactly at grid corners; vertex positions are
    then interpolated in binary64.  Refuses the identically-zero polynomial,
    whose zero set is the whole plane.
    """
    if wall.identically_zero:
        raise ValueError("identically-zero wall has no curve to extract")
    poly = wall.poly
    nb, nt = window.n_beta, window.n_t
    values = [[poly.evaluate(*window.corner(i, j)) for j in range(nt + 1)]
              for i in range(nb + 1)]

    def positive(i, j):
        return values[i][j] > 0

    def vertex(edge, cell_i, cell_j):
        (a, b) = edge
        corners = [(cell_i, cell_j), (cell_i + 1, cell_j),
                   (cell_i + 1, cell_j + 1), (cell_i, cell_j + 1)]
        (ia, ja), (ib, jb) = corners[a], corners[b]
        va, vb = values[ia][ja], values[ib][jb]
        if va == vb:
            t_par = 0.5
        else:
            t_par = float(va / (va - vb))
            t_par = min(max(t_par, 0.0), 1.0)
        ba, ta = window.corner(ia, ja)
        bb, tb = window.corner(ib, jb)
        point = (float(ba) + t_par * (float(bb) - float(ba)),
                 float(ta) + t_par * (float(tb) - float(ta)))
        key = tuple(sorted(((ia, ja), (ib, jb))))
        return key, point

    segments = []
    for i in range(nb):
        for j in range(nt):
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            index = sum(1 << k for k, (a, b) in enumerate(corners) if positive(a, b))
            if index in (0, 15):
                continue
            if index in _SADDLE:
                cb, ct = window.cell_center(i, j)
                center_positive = poly.evaluate(cb, ct) > 0
                edges = _SADDLE[index][0 if center_positive else 1]
            else:
                edges = _CELL_EDGES[index]
            for e1, e2 in edges:
                k1, p1 = vertex(e1, i, j)
                k2, p2 = vertex(e2, i, j)
                if k1 != k2:
                    segments.append((k1, p1, k2, p2))

    # Chain segments into polylines; endpoints are identified by grid edge.
    adjacency: dict = {}
    for idx, (k1, _, k2, _) in enumerate(segments):
        adjacency.setdefault(k1, []).append(idx)
        adjacency.setdefault(k2, []).append(idx)
    used = [False] * len(segments)
    polylines = []
    for start in range(len(segments)):
        if used[start]:
            continue
        used[start] = True
        k1, p1, k2, p2 = segments[start]
        chain_keys = [k1, k2]
        chain = [p1, p2]
        for end in (0, 1):
            while True:
                tail_key = chain_keys[-1] if end == 0 else chain_keys[0]
                next_idx = next((idx for idx in adjacency.get(tail_key, ())
                                 if not used[idx]), None)
                if next_idx is None:
                    break
                used[next_idx] = True
                nk1, np1, nk2, np2 = segments[next_idx]
                new_key, new_point = (nk2, np2) if nk1 == tail_key else (nk1, np1)
                if end == 0:
                    chain_keys.append(new_key)
                    chain.append(new_point)
                else:
                    chain_keys.insert(0, new_key)
                    chain.insert(0, new_point)
        polylines.append(chain)
    return polylines


def curves_to_svg(polylines: Sequence[Sequence[Tuple[float, float]]],
                  window: RegionWindow, stroke_colors: Optional[Sequence[str]] = None) -> str:
    """Render (beta, t) polylines as an SVG in (beta, alpha) coordinates.

    alpha = sqrt(t) with 12 significant digits; the y axis is flipped so
    alpha grows upward.  One path element per polyline, deterministic output.
    """
    alpha_min = math.sqrt(float(window.t_min))
    alpha_max = math.sqrt(float(window.t_max))
    width = float(window.beta_max) - float(window.beta_min)
    height = alpha_max - alpha_min

    def fmt(x: float) -> str:
        return f"{x:.12g}"

    def map_y(t_value: float) -> float:
        return alpha_max - math.sqrt(max(t_value, 0.0)) + alpha_min

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{fmt(float(window.beta_min))} {fmt(alpha_min)} {fmt(width)} {fmt(height)}">'
    ]
    for idx, line in enumerate(polylines):
        if len(line) < 2:
            continue
        color = "black"
        if stroke_colors:
            color = stroke_colors[idx % len(stroke_colors)]
        coords = " L ".join(f"{fmt(b)} {fmt(map_y(t))}" for b, t in line)
        parts.append(
            f'<path d="M {coords}" fill="none" stroke="{color}" '
            f'stroke-width="{fmt(height / 200)}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
