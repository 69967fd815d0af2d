"""Geometric certification: Radon symmetry, smoothness, section search,
max-sum acute-angle structure, and orthogonality graphs.

Everything here is sampling-based evidence against independent oracles: the
Radon defect reverses solved orthogonal pairs through direct line
minimization, the smoothness probe compares one-sided difference quotients,
the Euclidean-section search falsifies the parallelogram identity on random
coefficient draws, and the max-sum acute check plays the part-norm
trichotomy against a half-line minimization oracle on the sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSection, NotAPlane, NotSmooth
from .orthogonality import (
    MARGIN,
    classify_angle,
    is_mutually_orthogonal,
    one_sided_acute_oracle,
    oracle_exclusion_band,
    oracle_min_over_line,
)
from .preserver import _bisect_decreasing
from .sampling import random_nonzero, random_unit
from .spaces import InfSum, LInf, NormedSpace, unit_vector_at_angle


@dataclass(frozen=True, eq=False)
class RadonScan:
    """Result of a symmetry scan: rows are (theta, theta_star,
    forward_residual, reverse_deficit)."""

    defect: float
    witness: tuple[float, float] | None
    rows: list[tuple[float, float, float, float]]


def radon_defect(plane: NormedSpace, grid: int = 720,
                 margin: float = 1e-8) -> RadonScan:
    """Measure how far Birkhoff-James orthogonality is from symmetric.

    For each grid direction theta, the forward orthogonal partner
    theta_star is solved by bisection over (theta, theta + pi); the
    reverse deficit is how far min_t ||y(theta_star) + t y(theta)|| falls
    below one.  The defect is the maximal reverse deficit; a witness pair
    (first maximal in grid order) is reported when it exceeds the margin.
    """
    if plane.dim != 2:
        raise NotAPlane(f"expected a plane, got dimension {plane.dim}")
    if grid < 16:
        raise ValueError(f"grid must be >= 16, got {grid}")
    rows = []
    best = (-1.0, None)
    for theta in np.linspace(0.0, math.pi, grid, endpoint=False):
        theta = float(theta)
        y = unit_vector_at_angle(plane, theta)
        fs = plane.support_set(y)
        if len(fs) != 1:
            raise NotSmooth(f"support set at angle {theta} has {len(fs)} extremes")
        fa, fb = float(fs[0][0]), float(fs[0][1])

        def g(t: float) -> float:
            return fa * math.cos(t) + fb * math.sin(t)

        # g(theta) = ||x(theta)|| > 0 and g(theta + pi) < 0: always bracketed.
        theta_star = _bisect_decreasing(g, theta, theta + math.pi)
        y_star = unit_vector_at_angle(plane, theta_star)
        forward = abs(fa * y_star[0] + fb * y_star[1])
        _, val = oracle_min_over_line(plane, y_star, y)
        deficit = max(0.0, plane.norm(y_star) - val)
        rows.append((theta, theta_star, forward, deficit))
        if deficit > best[0]:
            best = (deficit, (theta, theta_star))
    defect = max(0.0, best[0])
    witness = best[1] if defect > margin else None
    return RadonScan(defect=defect, witness=witness, rows=rows)


@dataclass(frozen=True)
class SmoothnessProbe:
    smooth: bool
    worst_gap: float


def _tie_probes(space: NormedSpace) -> list[tuple[np.ndarray, list[np.ndarray]]]:
    """Deterministic probe points at norm-attainment ties, with the
    difference directions along which a kink would show."""
    probes = []
    if isinstance(space, LInf):
        x = np.ones(space.dim)
        dirs = []
        if space.dim >= 2:
            d = np.zeros(space.dim)
            d[0], d[1] = 1.0, -1.0
            dirs.append(d / math.sqrt(2.0))
        probes.append((x, dirs))
    elif isinstance(space, InfSum):
        units = [np.ones(p.dim) / p.norm(np.ones(p.dim)) for p in space.parts]
        x = np.concatenate(units)
        off = space._offsets
        d = np.zeros(space.dim)
        d[off[0] : off[1]] = units[0] / math.sqrt(2.0)
        d[off[1] : off[2]] = -units[1] / math.sqrt(2.0)
        probes.append((x, [d]))
    else:
        x = np.ones(space.dim)
        probes.append((x / space.norm(x), []))
    return probes


def smoothness_probe(space: NormedSpace, samples: int = 200, seed: int = 0,
                     step: float = 1e-6, gap_tol: float = 1e-4) -> SmoothnessProbe:
    """Empirical smoothness check.

    Compares left and right difference quotients of the norm along random
    directions at random unit vectors and at deterministic tie probes, and
    requires a singleton support set at every probe including the axes.
    Axis neighborhoods enter only through the singleton test: one-sided
    quotients converge like step^(min(p,q)-1) there, too slowly at the
    default step to compare against the gap tolerance, so random probes
    keep their smallest coordinate away from zero.
    """
    rng = np.random.default_rng(seed)
    worst_gap = 0.0
    singletons = True

    def gap_at(x: np.ndarray, d: np.ndarray) -> float:
        n0 = space.norm(x)
        right = (space.norm(x + step * d) - n0) / step
        left = (n0 - space.norm(x - step * d)) / step
        return right - left

    def random_dir() -> np.ndarray:
        d = rng.standard_normal(space.dim)
        return d / np.linalg.norm(d)

    for i in range(space.dim):
        e = np.zeros(space.dim)
        e[i] = 1.0
        for x in (e, -e):
            singletons = singletons and len(space.support_set(x)) == 1

    for x, dirs in _tie_probes(space):
        singletons = singletons and len(space.support_set(x)) == 1
        for d in dirs:
            worst_gap = max(worst_gap, gap_at(x, d))
        for _ in range(2):
            worst_gap = max(worst_gap, gap_at(x, random_dir()))

    for _ in range(samples):
        x = random_unit(space, rng)
        while np.min(np.abs(x)) < 1e-2 * np.max(np.abs(x)):
            x = random_unit(space, rng)
        for _ in range(2):
            worst_gap = max(worst_gap, gap_at(x, random_dir()))
        singletons = singletons and len(space.support_set(x)) == 1

    return SmoothnessProbe(smooth=bool(worst_gap <= gap_tol and singletons),
                           worst_gap=float(worst_gap))


def parallelogram_defect(space: NormedSpace, u, v) -> float:
    """||u+v||^2 + ||u-v||^2 - 2||u||^2 - 2||v||^2; zero in inner-product
    spaces and on their isometric sections."""
    ua = space.check_vector(u)
    va = space.check_vector(v)
    return (
        space.norm(ua + va) ** 2
        + space.norm(ua - va) ** 2
        - 2.0 * space.norm(ua) ** 2
        - 2.0 * space.norm(va) ** 2
    )


@dataclass(frozen=True, eq=False)
class SectionCandidate:
    """A 2-D subspace given by two numerically independent basis vectors."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        v = np.asarray(self.v, dtype=float)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        uu, vv, uv = float(u @ u), float(v @ v), float(u @ v)
        if uu == 0.0 or vv == 0.0:
            raise DegenerateSection("zero basis vector")
        # Gram determinant of the Euclidean-normalized basis = sin^2(angle).
        if 1.0 - uv * uv / (uu * vv) <= 1e-6:
            raise DegenerateSection("basis vectors are numerically dependent")


def section_candidates(space: NormedSpace, count: int, seed: int = 0) -> list[SectionCandidate]:
    """All coordinate-aligned 2-D sections plus seeded random ones, up to count."""
    dim = space.dim
    out = []
    for i in range(dim):
        for j in range(i + 1, dim):
            u = np.zeros(dim)
            v = np.zeros(dim)
            u[i], v[j] = 1.0, 1.0
            out.append(SectionCandidate(u, v))
    rng = np.random.default_rng(seed)
    while len(out) < count:
        try:
            out.append(SectionCandidate(rng.standard_normal(dim), rng.standard_normal(dim)))
        except DegenerateSection:
            continue
    return out


def euclidean_section_search(space: NormedSpace, candidates, pair_samples: int = 64,
                             tol: float = 1e-6, seed: int = 0) -> list[SectionCandidate]:
    """Flag candidate sections on which the parallelogram identity survives
    every sampled coefficient quadruple.

    A candidate stays flagged only while |defect| <= tol * scale^2 for all
    draws, so flags can only shrink as pair_samples grows (draws are
    prefix-stable per candidate).  Flagged sections are Euclidean up to the
    sampling evidence; this falsification search is not a proof.
    """
    if not candidates:
        raise ValueError("candidate list must be nonempty")
    flagged = []
    for idx, cand in enumerate(candidates):
        rng = np.random.default_rng([seed, idx])
        ok = True
        for _ in range(pair_samples):
            a, b, c, d = rng.standard_normal(4)
            w1 = a * cand.u + b * cand.v
            w2 = c * cand.u + d * cand.v
            scale2 = space.norm(w1) ** 2 + space.norm(w2) ** 2
            if scale2 == 0.0:
                continue
            if abs(parallelogram_defect(space, w1, w2)) > tol * scale2:
                ok = False
                break
        if ok:
            flagged.append(cand)
    return flagged


@dataclass(frozen=True)
class SumAcuteReport:
    """Outcome of the max-sum acute-angle equivalence sweep."""

    samples: int
    evaluated: int
    disagreements: int
    boundary_excluded: int
    tie_excluded: int
    tie_samples: int
    seed: int

    @property
    def excluded_fraction(self) -> float:
        return (self.boundary_excluded + self.tie_excluded) / self.samples

    @property
    def passed(self) -> bool:
        return self.disagreements == 0

    def to_dict(self) -> dict:
        from . import __version__

        return {
            "samples": self.samples,
            "evaluated": self.evaluated,
            "disagreements": self.disagreements,
            "boundary_excluded": self.boundary_excluded,
            "tie_excluded": self.tie_excluded,
            "tie_samples": self.tie_samples,
            "excluded_fraction": self.excluded_fraction,
            "seed": self.seed,
            "pass": self.passed,
            "tool_version": __version__,
        }


def _exact_tie(space_x: NormedSpace, space_y: NormedSpace, z1: np.ndarray,
               rng: np.random.Generator) -> np.ndarray | None:
    """Rescale one part of z1 so both part norms are float-equal.

    Max-norm parts admit exact ties: scaling a vector whose largest
    coordinate is exactly +-1 multiplies the norm exactly.  Returns None
    when neither part is a max norm.
    """
    dx = space_x.dim
    x1, y1 = z1[:dx], z1[dx:]
    if isinstance(space_y, LInf):
        target = space_x.norm(x1)
        if target == 0.0:
            return None
        u = rng.uniform(-1.0, 1.0, space_y.dim)
        j = int(rng.integers(space_y.dim))
        u[j] = 1.0 if rng.random() < 0.5 else -1.0
        y1 = target * u
        if space_y.norm(y1) != target:
            return None
        return np.concatenate([x1, y1])
    if isinstance(space_x, LInf):
        flipped = _exact_tie(space_y, space_x, np.concatenate([y1, x1]), rng)
        if flipped is None:
            return None
        return np.concatenate([flipped[space_y.dim:], flipped[:space_y.dim]])
    return None


def sum_acute_equivalence_check(space_x: NormedSpace, space_y: NormedSpace,
                                n_samples: int = 10000, margin: float = MARGIN,
                                seed: int = 0, boundary_band: float | None = None,
                                tie_band: float = 1e-4,
                                tie_every: int = 8) -> SumAcuteReport:
    """Play the part-norm trichotomy against the half-line oracle on the sum.

    On X (+) Y with the max norm, (x1, y1) is at an acute angle to
    (x2, y2) exactly when the dominant part is (with both sub-conditions
    OR-ed at a tie).  Every tie_every-th sample is rebuilt as an exact tie
    when a max-norm part allows it, since random draws never tie.  Pairs
    whose deciding part relation sits within the oracle exclusion band, or
    whose part norms differ by less than tie_band without being equal, are
    excluded rather than adjudicated.
    """
    band = oracle_exclusion_band(margin) if boundary_band is None else boundary_band
    sum_space = InfSum((space_x, space_y))
    dx = space_x.dim

    evaluated = disagreements = boundary_excluded = tie_excluded = tie_samples = 0
    for i in range(n_samples):
        rng = np.random.default_rng([seed, i])
        z1 = random_nonzero(sum_space, rng)
        z2 = rng.standard_normal(sum_space.dim)
        if i % tie_every == 0:
            tied = _exact_tie(space_x, space_y, z1, rng)
            if tied is not None:
                z1 = tied
                tie_samples += 1
        x1, y1 = z1[:dx], z1[dx:]
        x2, y2 = z2[:dx], z2[dx:]
        nx, ny = space_x.norm(x1), space_y.norm(y1)

        if nx == ny:
            need_x, need_y = True, True
        elif abs(nx - ny) <= tie_band * max(nx, ny):
            tie_excluded += 1
            continue
        elif nx > ny:
            need_x, need_y = True, False
        else:
            need_x, need_y = False, True

        rel_x = classify_angle(space_x, x1, x2, margin) if need_x else None
        rel_y = classify_angle(space_y, y1, y2, margin) if need_y else None
        if (rel_x is not None and rel_x.acute_distance() <= band) or (
            rel_y is not None and rel_y.acute_distance() <= band
        ):
            boundary_excluded += 1
            continue

        if need_x and need_y:
            predicted = rel_x.is_acute or rel_y.is_acute
        elif need_x:
            predicted = rel_x.is_acute
        else:
            predicted = rel_y.is_acute

        actual = one_sided_acute_oracle(sum_space, z1, z2, margin)
        evaluated += 1
        if predicted != actual:
            disagreements += 1

    return SumAcuteReport(
        samples=n_samples,
        evaluated=evaluated,
        disagreements=disagreements,
        boundary_excluded=boundary_excluded,
        tie_excluded=tie_excluded,
        tie_samples=tie_samples,
        seed=seed,
    )


@dataclass(frozen=True, eq=False)
class Orthograph:
    """Sampled orthogonality graph: directions modulo sign, edges at mutual
    Birkhoff-James orthogonality."""

    vectors: list[np.ndarray]
    adjacency: np.ndarray

    def edge_list(self) -> list[tuple[int, int]]:
        n = len(self.vectors)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.adjacency[i, j]]

    def write_edges(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for i, j in self.edge_list():
                fh.write(f"{i} {j}\n")


def sample_orthograph(space: NormedSpace, directions, margin: float = MARGIN) -> Orthograph:
    """Adjacency of mutual orthogonality over sampled directions.

    directions may be an integer (uniform angles over [0, pi) of a plane),
    a sequence of angles (plane only), or a sequence of vectors (any
    space).  The matrix is symmetric by construction of mutuality.
    """
    if isinstance(directions, (int, np.integer)):
        if space.dim != 2:
            raise NotAPlane("angle sampling needs a two-dimensional space")
        vectors = [unit_vector_at_angle(space, float(t))
                   for t in np.linspace(0.0, math.pi, int(directions), endpoint=False)]
    else:
        items = list(directions)
        if items and np.isscalar(items[0]):
            if space.dim != 2:
                raise NotAPlane("angle sampling needs a two-dimensional space")
            vectors = [unit_vector_at_angle(space, float(t)) for t in items]
        else:
            vectors = [space.check_vector(v) for v in items]
    n = len(vectors)
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if is_mutually_orthogonal(space, vectors[i], vectors[j], margin):
                adj[i, j] = adj[j, i] = True
    return Orthograph(vectors=vectors, adjacency=adj)
