"""Orthogonality-preserving maps between the Euclidean plane and Radon planes.

In a smooth Radon plane every direction has a unique Birkhoff-James
orthogonal direction, and the pairing is symmetric.  Writing y(t) for the
unit vector of the plane at polar angle t, there is a continuous increasing
bijection eta from [0, pi/2] onto [pi/2, pi] with eta(0) = pi/2,
eta(pi/2) = pi, and y(t) orthogonal to y(eta(t)).  The plane map T sends the
Euclidean unit vector at angle t to y(t) on the first quadrant and to
y(eta(t - pi/2)) on the second; extending oddly to the full circle and then
homogeneously to the whole plane produces a norm-preserving homogeneous
bicontinuous bijection that preserves Birkhoff-James orthogonality in both
directions, even though the spaces need not be isometric.

Componentwise combination lifts such maps to l-infinity direct sums, which
yields preserver pairs in every ambient dimension.

``verify_preserver`` certifies a constructed map by seeded sampling:
orthogonality and acute-angle agreement between source pairs and their
images, norm preservation, homogeneity, and an empirical continuity modulus.
"""

from __future__ import annotations

import csv
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyParts,
    GridTooCoarse,
    MonotonicityViolation,
    NoBracket,
    NonConvergence,
    NotRadonPlane,
    NotSmooth,
)
from .orthogonality import MARGIN, classify_angle, orthogonal_direction
from .sampling import random_nonzero
from .serialize import fmt_float
from .spaces import DayJames, InfSum, Lp, NormedSpace, unit_vector_at_angle

HALF_PI = 0.5 * math.pi

# Bisection stops once the angle bracket is this narrow; well below every
# verification tolerance while leaving slack over double-precision ulps.
ANGLE_RESOLUTION = 1e-14

# Brackets taken from tabulated neighbors are widened by this pad.
BRACKET_PAD = 1e-9

EUCLIDEAN_PLANE = Lp(dim=2, p=2.0)


def _is_radon_target(plane: NormedSpace) -> bool:
    if isinstance(plane, DayJames):
        return plane.radon_candidate
    return isinstance(plane, Lp) and plane.dim == 2 and plane.p == 2.0


def _bisect_decreasing(g, lo: float, hi: float) -> float:
    """Root of a continuous g with g(lo) >= 0 >= g(hi)."""
    a, b = lo, hi
    for _ in range(64):
        if b - a <= ANGLE_RESOLUTION:
            break
        m = 0.5 * (a + b)
        if g(m) >= 0.0:
            a = m
        else:
            b = m
    return 0.5 * (a + b)


def _bisect_increasing(g, lo: float, hi: float) -> float:
    """Root of a continuous g with g(lo) <= 0 <= g(hi)."""
    a, b = lo, hi
    for _ in range(64):
        if b - a <= ANGLE_RESOLUTION:
            break
        m = 0.5 * (a + b)
        if g(m) <= 0.0:
            a = m
        else:
            b = m
    return 0.5 * (a + b)


def solve_eta(plane: NormedSpace, theta: float, tol: float = 1e-12) -> float:
    """Angle in [pi/2, pi] whose unit vector is orthogonal to y(theta).

    Bisects g(t) = f(y(t)) over [pi/2, pi], where f is the unique norming
    functional at y(theta); g starts nonnegative and ends nonpositive for
    every first-quadrant direction of a smooth plane.  The endpoints 0 and
    pi/2 map to pi/2 and pi exactly.
    """
    if not _is_radon_target(plane):
        raise NotRadonPlane(f"not a supported smooth Radon plane: {plane!r}")
    if not -1e-12 <= theta <= HALF_PI + 1e-12:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    if theta <= 0.0:
        return HALF_PI
    if theta >= HALF_PI:
        return math.pi
    fs = plane.support_set(unit_vector_at_angle(plane, theta))
    if len(fs) != 1:
        raise NotSmooth(f"support set at angle {theta} has {len(fs)} extremes")
    fa, fb = float(fs[0][0]), float(fs[0][1])
    fnorm = math.hypot(fa, fb)

    def g(t: float) -> float:
        return fa * math.cos(t) + fb * math.sin(t)

    glo, ghi = g(HALF_PI), g(math.pi)
    if glo < -tol * fnorm or ghi > tol * fnorm:
        raise NoBracket(
            f"f(y(t)) does not change sign on [pi/2, pi] at theta={theta}"
        )
    if glo <= 0.0:
        return HALF_PI
    if ghi >= 0.0:
        return math.pi
    root = _bisect_decreasing(g, HALF_PI, math.pi)
    resid = abs(g(root)) / plane._norm2(math.cos(root), math.sin(root))
    if resid > max(tol, 1e-10) * fnorm:
        raise NonConvergence(f"orthogonality residual {resid} at theta={theta}")
    return root


@dataclass(frozen=True, eq=False)
class EtaTable:
    """Tabulated orthogonal-direction pairing of a smooth Radon plane.

    grid holds increasing angles spanning [0, pi/2]; values holds the
    paired angles in [pi/2, pi]; residuals holds |f_{y(grid)}(y(value))| at
    each node.  Strict monotonicity of the values is a consequence of the
    pairing being a continuous bijection with pinned endpoints and is
    enforced here rather than assumed.
    """

    grid: np.ndarray
    values: np.ndarray
    residuals: np.ndarray
    plane: NormedSpace

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        residuals = np.asarray(self.residuals, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "residuals", residuals)
        if grid.shape != values.shape or grid.shape != residuals.shape:
            raise ValueError("grid, values and residuals must have equal length")
        if len(grid) < 2:
            raise ValueError("table needs at least two nodes")
        if abs(grid[0]) > 1e-10 or abs(grid[-1] - HALF_PI) > 1e-10:
            raise ValueError("grid must span [0, pi/2]")
        if abs(values[0] - HALF_PI) > 1e-10 or abs(values[-1] - math.pi) > 1e-10:
            raise ValueError("pairing endpoints must be pi/2 and pi")
        if np.any(np.diff(grid) <= 0.0):
            raise MonotonicityViolation("grid angles are not strictly increasing")
        if np.any(np.diff(values) <= 0.0):
            raise MonotonicityViolation("paired angles are not strictly increasing")

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["theta", "eta", "residual"])
            for t, e, r in zip(self.grid, self.values, self.residuals):
                writer.writerow([fmt_float(t), fmt_float(e), fmt_float(r)])

    @classmethod
    def from_csv(cls, path, plane: NormedSpace) -> "EtaTable":
        rows = []
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if header[:3] != ["theta", "eta", "residual"]:
                raise ValueError(f"unexpected header {header!r}")
            for row in reader:
                rows.append((float(row[0]), float(row[1]), float(row[2])))
        arr = np.array(rows)
        return cls(grid=arr[:, 0], values=arr[:, 1], residuals=arr[:, 2], plane=plane)


class PreserverMap(ABC):
    """A norm-preserving homogeneous bijection with computable inverse."""

    @property
    @abstractmethod
    def source(self) -> NormedSpace: ...

    @property
    @abstractmethod
    def target(self) -> NormedSpace: ...

    @abstractmethod
    def apply(self, v) -> np.ndarray: ...

    @abstractmethod
    def apply_inverse(self, w) -> np.ndarray: ...


@dataclass(frozen=True, eq=False)
class IdentityMap(PreserverMap):
    """The identity on a space; the trivial preserver."""

    space: NormedSpace

    @property
    def source(self) -> NormedSpace:
        return self.space

    @property
    def target(self) -> NormedSpace:
        return self.space

    def apply(self, v) -> np.ndarray:
        return self.space.check_vector(v).copy()

    def apply_inverse(self, w) -> np.ndarray:
        return self.space.check_vector(w).copy()


@dataclass(frozen=True, eq=False)
class RadonPlaneMap(PreserverMap):
    """The plane preserver from the Euclidean plane onto a smooth Radon plane.

    Unit circle action: angle t maps to y(t) for t in [0, pi/2] and to
    y(eta(t - pi/2)) for t in [pi/2, pi]; the lower half circle is the odd
    reflection, applied by sign canonicalization so that
    apply(-v) == -apply(v) holds exactly.  Off-grid pairing angles are
    re-solved by a fresh bisection bracketed between neighboring table
    nodes; tabulated values seed the bracket but are never interpolated
    into the result.
    """

    eta: EtaTable

    @property
    def source(self) -> NormedSpace:
        return EUCLIDEAN_PLANE

    @property
    def target(self) -> NormedSpace:
        return self.eta.plane

    def _unit(self, t: float) -> tuple[float, float]:
        c, s = math.cos(t), math.sin(t)
        n = self.eta.plane._norm2(c, s)
        return c / n, s / n

    def _eta_at(self, s: float) -> float:
        """Pairing angle for s in [0, pi/2], re-solved inside the table cell.

        When the table is inconsistent with the solved root (no sign change
        over the local bracket), the nearer bracket end is returned; a
        corrupted table thereby surfaces as verification disagreements
        instead of a crash.
        """
        grid, values = self.eta.grid, self.eta.values
        if s <= grid[0]:
            return float(values[0])
        if s >= grid[-1]:
            return float(values[-1])
        i = int(np.searchsorted(grid, s))
        i = min(max(i, 1), len(grid) - 1)
        va, vb = float(values[i - 1]), float(values[i])
        lo = max(min(va, vb) - BRACKET_PAD, HALF_PI)
        hi = min(max(va, vb) + BRACKET_PAD, math.pi)
        plane = self.eta.plane
        fa, fb = plane._grad2(math.cos(s), math.sin(s))

        def g(t: float) -> float:
            return fa * math.cos(t) + fb * math.sin(t)

        if g(lo) < 0.0:
            return lo
        if g(hi) > 0.0:
            return hi
        return _bisect_decreasing(g, lo, hi)

    def _apply_upper(self, a: float, b: float) -> np.ndarray:
        # b >= 0, not both zero: polar angle lies in [0, pi].
        r = math.hypot(a, b)
        t = math.atan2(b, a)
        if t <= HALF_PI:
            u0, u1 = self._unit(t)
        else:
            u0, u1 = self._unit(self._eta_at(t - HALF_PI))
        return np.array([r * u0, r * u1])

    def apply(self, v) -> np.ndarray:
        arr = self.source.check_vector(v)
        if self.source.is_zero(arr):
            return np.zeros(2)
        a, b = float(arr[0]), float(arr[1])
        if b > 0.0 or (b == 0.0 and a > 0.0):
            return self._apply_upper(a, b)
        return -self._apply_upper(-a, -b)

    def _eta_inverse(self, psi: float) -> float:
        """Solve eta(t) = psi for psi in [pi/2, pi] by monotone bisection.

        h(t) = f_{y(t)}(y(psi)) runs from nonpositive at t = 0 to
        nonnegative at t = pi/2, with the single root at the preimage; the
        table brackets the root, the full interval is the fallback.
        """
        grid, values = self.eta.grid, self.eta.values
        if psi <= values[0]:
            return float(grid[0])
        if psi >= values[-1]:
            return float(grid[-1])
        plane = self.eta.plane
        w0, w1 = self._unit(psi)

        def h(t: float) -> float:
            fa, fb = plane._grad2(math.cos(t), math.sin(t))
            return fa * w0 + fb * w1

        j = int(np.searchsorted(values, psi))
        j = min(max(j, 1), len(values) - 1)
        lo = max(float(grid[j - 1]) - BRACKET_PAD, 0.0)
        hi = min(float(grid[j]) + BRACKET_PAD, HALF_PI)
        if not (h(lo) <= 0.0 <= h(hi)):
            lo, hi = 0.0, HALF_PI
            if not (h(lo) <= 0.0 <= h(hi)):
                raise NonConvergence(f"no pairing preimage bracket at psi={psi}")
        return _bisect_increasing(h, lo, hi)

    def _inverse_upper(self, a: float, b: float) -> np.ndarray:
        r = self.eta.plane._norm2(a, b)
        psi = math.atan2(b, a)
        if psi <= HALF_PI:
            t = psi
        else:
            t = HALF_PI + self._eta_inverse(psi)
        return np.array([r * math.cos(t), r * math.sin(t)])

    def apply_inverse(self, w) -> np.ndarray:
        arr = self.target.check_vector(w)
        if self.target.is_zero(arr):
            return np.zeros(2)
        a, b = float(arr[0]), float(arr[1])
        if b > 0.0 or (b == 0.0 and a > 0.0):
            return self._inverse_upper(a, b)
        return -self._inverse_upper(-a, -b)


@dataclass(frozen=True, eq=False)
class SumMap(PreserverMap):
    """Componentwise combination of preservers between max-sums."""

    parts: tuple[PreserverMap, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if len(parts) < 2:
            raise EmptyParts(f"need at least 2 parts, got {len(parts)}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "_source", InfSum(tuple(p.source for p in parts)))
        object.__setattr__(self, "_target", InfSum(tuple(p.target for p in parts)))

    @property
    def source(self) -> NormedSpace:
        return self._source

    @property
    def target(self) -> NormedSpace:
        return self._target

    def apply(self, v) -> np.ndarray:
        arr = self._source.check_vector(v)
        pieces = self._source.split(arr)
        return np.concatenate([p.apply(piece) for p, piece in zip(self.parts, pieces)])

    def apply_inverse(self, w) -> np.ndarray:
        arr = self._target.check_vector(w)
        pieces = self._target.split(arr)
        return np.concatenate(
            [p.apply_inverse(piece) for p, piece in zip(self.parts, pieces)]
        )


def build_preserver(plane: NormedSpace, grid_size: int = 1024) -> RadonPlaneMap:
    """Tabulate the pairing on grid_size+1 uniform nodes and wrap it as a map."""
    if grid_size < 64:
        raise GridTooCoarse(f"grid_size must be >= 64, got {grid_size}")
    if not _is_radon_target(plane):
        raise NotRadonPlane(f"not a supported smooth Radon plane: {plane!r}")
    grid = np.linspace(0.0, HALF_PI, grid_size + 1)
    values = np.empty_like(grid)
    residuals = np.empty_like(grid)
    for i, theta in enumerate(grid):
        e = solve_eta(plane, float(theta))
        values[i] = e
        f = plane._grad2(math.cos(theta), math.sin(theta))
        num = f[0] * math.cos(e) + f[1] * math.sin(e)
        residuals[i] = abs(num) / plane._norm2(math.cos(e), math.sin(e))
    table = EtaTable(grid=grid, values=values, residuals=residuals, plane=plane)
    return RadonPlaneMap(eta=table)


def compose_inf_sum(parts) -> SumMap:
    """Componentwise map between the max-sums of the part sources/targets."""
    parts = tuple(parts)
    if len(parts) < 2:
        raise EmptyParts(f"need at least 2 parts, got {len(parts)}")
    return SumMap(parts=parts)


def apply_preserver(pmap: PreserverMap, v) -> np.ndarray:
    """Image of v under the map (module-level alias for pmap.apply)."""
    return pmap.apply(v)


def apply_inverse(pmap: PreserverMap, w) -> np.ndarray:
    """Preimage of w under the map (module-level alias for pmap.apply_inverse)."""
    return pmap.apply_inverse(w)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a seeded preserver verification sweep."""

    samples: int
    boundary_excluded: int
    orth_disagreements: int
    acute_disagreements: int
    max_norm_error: float
    max_homog_error: float
    continuity_modulus: float
    seed: int
    passed: bool

    @property
    def disagreements(self) -> int:
        return self.orth_disagreements + self.acute_disagreements

    def to_dict(self) -> dict:
        from . import __version__

        return {
            "samples": self.samples,
            "disagreements": self.disagreements,
            "boundary_excluded": self.boundary_excluded,
            "max_norm_error": self.max_norm_error,
            "max_homog_error": self.max_homog_error,
            "continuity_modulus": self.continuity_modulus,
            "seed": self.seed,
            "pass": self.passed,
            "orthogonality_disagreements": self.orth_disagreements,
            "acute_disagreements": self.acute_disagreements,
            "tool_version": __version__,
        }


def _pair_agreement(src: NormedSpace, tgt: NormedSpace, x, y, tx, ty,
                    margin: float, band: float) -> tuple[int, int, int]:
    """Compare source and image classifications of one pair.

    Returns (excluded, orth_disagreements, acute_disagreements).  A pair is
    excluded from the orthogonality comparison when either side is
    non-orthogonal but within the band of the decision boundary; pairs
    classified orthogonal are always kept (they are the informative ones).
    The acute comparison is excluded when either side's right derivative
    sits within the band of zero.
    """
    rel_s = classify_angle(src, x, y, margin)
    rel_t = classify_angle(tgt, tx, ty, margin)
    excluded = 0

    orth_skip = (
        (not rel_s.is_orthogonal and rel_s.orthogonality_distance() <= band)
        or (not rel_t.is_orthogonal and rel_t.orthogonality_distance() <= band)
    )
    orth_dis = 0
    if orth_skip:
        excluded += 1
    elif rel_s.is_orthogonal != rel_t.is_orthogonal:
        orth_dis = 1

    acute_skip = rel_s.acute_distance() <= band or rel_t.acute_distance() <= band
    acute_dis = 0
    if acute_skip:
        excluded += 1
    elif rel_s.is_acute != rel_t.is_acute:
        acute_dis = 1

    return excluded, orth_dis, acute_dis


def verify_preserver(pmap: PreserverMap, n_samples: int, margin: float = MARGIN,
                     seed: int = 0, boundary_band: float | None = None,
                     norm_tol: float = 1e-9, homog_tol: float = 1e-12) -> VerificationReport:
    """Certify a map on seeded random pairs from its source space.

    Each sample draws a random pair (x, y) plus a constructed pair
    (x, y_perp) with exact source orthogonality; random pairs are never
    orthogonal, so the constructed ones are what make the orthogonality
    comparison informative in both directions.  Homogeneity is probed on
    every fifth sample and the continuity modulus on every tenth.  Each
    sample uses an independent child generator keyed by (seed, index), so
    the sweep can be partitioned across workers without changing results.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    band = 10.0 * margin if boundary_band is None else boundary_band
    src, tgt = pmap.source, pmap.target

    excluded = orth_dis = acute_dis = 0
    max_norm_err = 0.0
    max_homog_err = 0.0
    continuity = 0.0

    for i in range(n_samples):
        rng = np.random.default_rng([seed, i])
        x = random_nonzero(src, rng)
        y = random_nonzero(src, rng)
        tx = pmap.apply(x)
        ty = pmap.apply(y)

        nx = src.norm(x)
        max_norm_err = max(max_norm_err, abs(tgt.norm(tx) - nx) / nx)

        e, od, ad = _pair_agreement(src, tgt, x, y, tx, ty, margin, band)
        excluded += e
        orth_dis += od
        acute_dis += ad

        yp = orthogonal_direction(src, x, rng)
        typ = pmap.apply(yp)
        e, od, ad = _pair_agreement(src, tgt, x, yp, tx, typ, margin, band)
        excluded += e
        orth_dis += od
        acute_dis += ad

        if i % 5 == 0:
            c = float(rng.choice([-1.0, 1.0])) * math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
            err = tgt.norm(pmap.apply(c * x) - c * tx) / (abs(c) * nx)
            max_homog_err = max(max_homog_err, err)

        if i % 10 == 0:
            d = rng.standard_normal(src.dim)
            d *= 1e-6 * nx / np.linalg.norm(d)
            u = x + d
            num = tgt.norm(pmap.apply(u) - tx)
            den = src.norm(d)
            if den > 0.0:
                continuity = max(continuity, num / den)

    passed = (
        orth_dis == 0
        and acute_dis == 0
        and max_norm_err <= norm_tol
        and max_homog_err <= homog_tol
    )
    return VerificationReport(
        samples=n_samples,
        boundary_excluded=excluded,
        orth_disagreements=orth_dis,
        acute_disagreements=acute_dis,
        max_norm_error=float(max_norm_err),
        max_homog_error=float(max_homog_err),
        continuity_modulus=float(continuity),
        seed=seed,
        passed=bool(passed),
    )
