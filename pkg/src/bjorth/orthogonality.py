"""Birkhoff-James orthogonality and acute/obtuse angle classification.

A vector x is Birkhoff-James orthogonal to y when ||x + t*y|| >= ||x|| for
every real t.  The classical characterization says this holds exactly when
some norming functional of x annihilates y; likewise x is at an acute angle
to y (the inequality for t >= 0 only) exactly when some norming functional
is nonnegative on y, and strictly acute when all of them are positive.

Over the finite extreme-point representation of the norming set these
conditions become min/max tests on finitely many dual pairings, which is how
``classify_angle`` decides.  An independent cross-check is provided by direct
golden-section minimization of the convex map t -> ||x + t*y||.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroDirection, ZeroVector
from .spaces import TAU_TIE, DayJames, InfSum, LInf, Lp, NormedSpace

# Default decision margin, relative to the norm of the right argument.
MARGIN = 1e-9

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class AngleTag(enum.Enum):
    STRICTLY_ACUTE = "strictly-acute"
    ORTHOGONAL = "orthogonal"
    STRICTLY_OBTUSE = "strictly-obtuse"
    DEGENERATE_LEFT = "degenerate"


@dataclass(frozen=True)
class AngleRelation:
    """Classification of the pair (x, y) plus its witness bounds.

    min_bound and max_bound are the extremes of f(y) over the norming
    functionals of x; they equal the left and right derivatives of
    t -> ||x + t*y|| at t = 0.  scale is ||y||, the unit in which the
    decision margin is applied.
    """

    tag: AngleTag
    min_bound: float
    max_bound: float
    scale: float

    @property
    def is_orthogonal(self) -> bool:
        return self.tag is AngleTag.ORTHOGONAL

    @property
    def is_acute(self) -> bool:
        """x at an acute angle to y: orthogonal or strictly acute."""
        return self.tag in (AngleTag.ORTHOGONAL, AngleTag.STRICTLY_ACUTE)

    @property
    def is_obtuse(self) -> bool:
        return self.tag in (AngleTag.ORTHOGONAL, AngleTag.STRICTLY_OBTUSE)

    def orthogonality_distance(self) -> float:
        """Normalized distance of the witness bounds from straddling zero.

        Zero when the pair is classified orthogonal; used to exclude
        samples too close to the decision boundary to adjudicate.
        """
        if self.scale == 0.0 or self.tag is AngleTag.DEGENERATE_LEFT:
            return math.inf
        if self.min_bound <= 0.0 <= self.max_bound:
            return 0.0
        return min(abs(self.min_bound), abs(self.max_bound)) / self.scale

    def acute_distance(self) -> float:
        """Normalized distance from the acute/non-acute boundary."""
        if self.scale == 0.0 or self.tag is AngleTag.DEGENERATE_LEFT:
            return math.inf
        return abs(self.max_bound) / self.scale


def directional_bounds(space: NormedSpace, x, y) -> tuple[float, float]:
    """(min, max) of f(y) over the extreme norming functionals of x.

    These equal the one-sided derivatives of t -> ||x + t*y|| at 0 from
    the left and from the right.
    """
    xa = space.check_vector(x)
    ya = space.check_vector(y)
    if space.is_zero(xa):
        raise ZeroVector("directional bounds need x != 0")
    vals = [float(np.dot(f, ya)) for f in space.support_set(xa)]
    return min(vals), max(vals)


def classify_angle(space: NormedSpace, x, y, margin: float = MARGIN) -> AngleRelation:
    """Three-way angle classification with a tolerance band around zero.

    Strictly acute iff every norming functional of x is positive on y
    (beyond the margin); strictly obtuse iff every one is negative;
    orthogonal iff the bounds straddle the margin band.  x = 0 yields the
    degenerate tag.
    """
    xa = space.check_vector(x)
    ya = space.check_vector(y)
    if space.is_zero(xa):
        return AngleRelation(AngleTag.DEGENERATE_LEFT, 0.0, 0.0, 0.0)
    mn, mx = directional_bounds(space, xa, ya)
    scale = space.norm(ya)
    thr = margin * scale
    if mn > thr:
        tag = AngleTag.STRICTLY_ACUTE
    elif mx < -thr:
        tag = AngleTag.STRICTLY_OBTUSE
    else:
        tag = AngleTag.ORTHOGONAL
    return AngleRelation(tag, mn, mx, scale)


def is_bj_orthogonal(space: NormedSpace, x, y, margin: float = MARGIN) -> bool:
    """Birkhoff-James orthogonality via the norming-functional test.

    The zero vector is orthogonal to everything (and everything to it).
    """
    rel = classify_angle(space, x, y, margin)
    return rel.tag in (AngleTag.ORTHOGONAL, AngleTag.DEGENERATE_LEFT)


def is_mutually_orthogonal(space: NormedSpace, x, y, margin: float = MARGIN) -> bool:
    """Mutual Birkhoff-James orthogonality: both directions at once."""
    return is_bj_orthogonal(space, x, y, margin) and is_bj_orthogonal(space, y, x, margin)


def golden_section_min(phi, lo: float, hi: float, tol: float = 1e-10,
                       max_iter: int = 200) -> tuple[float, float]:
    """Minimize a convex function on [lo, hi] by golden-section search.

    Returns the best evaluated point and value; the bracket is shrunk to
    width tol (one new evaluation per iteration, capped at max_iter).
    """
    a, b = float(lo), float(hi)
    best_x, best_f = a, phi(a)
    fb_end = phi(b)
    if fb_end < best_f:
        best_x, best_f = b, fb_end
    h = b - a
    if h <= tol:
        return best_x, best_f
    c = b - _INV_PHI * h
    d = a + _INV_PHI * h
    fc, fd = phi(c), phi(d)
    for pt, val in ((c, fc), (d, fd)):
        if val < best_f:
            best_x, best_f = pt, val
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INV_PHI * h
            fc = phi(c)
            if fc < best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = phi(d)
            if fd < best_f:
                best_x, best_f = d, fd
    mid = 0.5 * (a + b)
    fm = phi(mid)
    if fm < best_f:
        best_x, best_f = mid, fm
    return best_x, best_f


def oracle_min_over_line(space: NormedSpace, x, y,
                         tol: float = 1e-10) -> tuple[float, float]:
    """Directly minimize t -> ||x + t*y|| over t.

    Any minimizer lies in [-L, L] with L = 2||x||/||y||, since beyond that
    the reverse triangle inequality forces the value above ||x||.  Returns
    (argmin, min) with the argmin resolved to absolute tolerance tol.
    """
    xa = space.check_vector(x)
    ya = space.check_vector(y)
    if space.is_zero(ya):
        raise ZeroDirection("line minimization needs y != 0")
    nx = space.norm(xa)
    ny = space.norm(ya)
    lam = 2.0 * nx / ny
    if lam == 0.0:
        return 0.0, 0.0
    phi = lambda t: space._norm(xa + t * ya)
    return golden_section_min(phi, -lam, lam, tol=tol)


def is_bj_orthogonal_oracle(space: NormedSpace, x, y, margin: float = MARGIN) -> bool:
    """Independent orthogonality check by direct line minimization."""
    xa = space.check_vector(x)
    ya = space.check_vector(y)
    if space.is_zero(xa) or space.is_zero(ya):
        return True
    _, val = oracle_min_over_line(space, xa, ya)
    return val >= space.norm(xa) * (1.0 - margin)


def one_sided_acute_oracle(space: NormedSpace, x, y, margin: float = MARGIN) -> bool:
    """Independent acute-angle check: minimize over t >= 0 only."""
    xa = space.check_vector(x)
    ya = space.check_vector(y)
    if space.is_zero(xa):
        raise ZeroVector("acute-angle oracle needs x != 0")
    if space.is_zero(ya):
        return True
    nx = space.norm(xa)
    lam = 2.0 * nx / space.norm(ya)
    phi = lambda t: space._norm(xa + t * ya)
    _, val = golden_section_min(phi, 0.0, lam)
    return val >= nx * (1.0 - margin)


def oracle_exclusion_band(margin: float = MARGIN) -> float:
    """Boundary exclusion band for comparisons against the line oracles.

    The minimization oracles resolve an orthogonality violation of
    normalized size d only through a value deficit of order d^2, so
    agreement tests must stand clear of the boundary by much more than the
    margin itself.  The floor 1e-3 leaves two orders of headroom over
    sqrt(2 * margin) at the default margin.
    """
    return max(10.0 * margin, 1e-3)


def orthogonal_direction(space: NormedSpace, x, rng: np.random.Generator) -> np.ndarray:
    """Construct y with x exactly orthogonal to y (up to rounding).

    Smooth planes: the Euclidean perp of the unique norming functional.
    Higher-dimensional p-norm spaces: a random vector projected onto the
    functional's kernel.  Max norms: a random vector with every tied max
    coordinate zeroed.  Max-sums: the partner inside one norm-attaining
    part, zero elsewhere, so the choice is immune to part ties.
    """
    xa = space.check_vector(x)
    if space.is_zero(xa):
        raise ZeroVector("orthogonal partner needs x != 0")
    if isinstance(space, InfSum):
        pieces = space.split(xa)
        norms = [part.norm(piece) for part, piece in zip(space.parts, pieces)]
        k = int(np.argmax(norms))
        out = np.zeros(space.dim)
        off = space._offsets
        out[off[k] : off[k + 1]] = orthogonal_direction(space.parts[k], pieces[k], rng)
        return out
    if isinstance(space, LInf):
        m = float(np.max(np.abs(xa)))
        y = rng.standard_normal(space.dim)
        y[np.abs(xa) >= (1.0 - 10.0 * TAU_TIE) * m] = 0.0
        return y
    if isinstance(space, (Lp, DayJames)) and space.dim == 2:
        f = space.support_set(xa)[0]
        # f0*f1 - f1*f0 vanishes exactly in floating point.
        return np.array([-f[1], f[0]])
    f = space.support_set(xa)[0]
    v = rng.standard_normal(space.dim)
    return v - (float(np.dot(f, v)) / float(np.dot(f, xa))) * xa
