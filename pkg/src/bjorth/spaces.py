"""Finite-dimensional real normed spaces with computable support functionals.

Four families are supported: the p-norm spaces ``Lp`` with 1 < p < inf, the
max norm ``LInf``, the two-exponent Day-James plane ``DayJames``, and finite
max-sums (l-infinity direct sums) ``InfSum`` of any of these.  Each family
exposes its norm and a finite extreme-point representation of the set of
norming functionals

    nu(x) = { f in the dual unit ball : f(x) = ||x|| },

which is a singleton for smooth points (Lp and DayJames away from zero), the
sign-pattern vertex set for the max norm, and the union of embedded part
support sets for max-sums.  All downstream orthogonality tests reduce to
evaluating linear functionals on these extreme points.

Vectors are plain float arrays of the space's ambient dimension; vectors of a
max-sum are the concatenations of the part vectors.
"""

from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadDimension,
    DimensionMismatch,
    EmptySum,
    InvalidExponent,
    NotAPlane,
    ParseError,
    ZeroVector,
)

# Zero-vector test, relative to coordinate magnitude.
TAU_ZERO = 1e-12
# Certification tolerance for support functionals (norming and feasibility).
TAU_SUP = 1e-9
# Norm-attainment tie tolerance for max norms and max-sums.
TAU_TIE = 1e-9


def _check_exponent(p: float) -> float:
    p = float(p)
    if not math.isfinite(p) or p <= 1.0:
        raise InvalidExponent(f"exponent must be finite and > 1, got {p}")
    return p


def _check_dim(dim: int) -> int:
    if int(dim) != dim or int(dim) < 1:
        raise BadDimension(f"dimension must be a positive integer, got {dim}")
    return int(dim)


def _sign(t: float) -> float:
    if t > 0.0:
        return 1.0
    if t < 0.0:
        return -1.0
    return 0.0


def _pnorm2(a: float, b: float, r: float) -> float:
    """Scalar p-norm of a 2-vector, max-scaled for stability.

    Scaling keeps axis vectors exact: ||(c, 0)|| == c for every c > 0.
    """
    aa, bb = abs(a), abs(b)
    m = aa if aa >= bb else bb
    if m == 0.0:
        return 0.0
    return m * (math.pow(aa / m, r) + math.pow(bb / m, r)) ** (1.0 / r)


def _pgrad2(a: float, b: float, r: float) -> tuple[float, float]:
    """Gradient of the scalar 2-vector p-norm at (a, b) != 0.

    This is the unique norming functional of the p-norm at (a, b): it has
    dual norm one and pairs with (a, b) to the norm value.
    """
    aa, bb = abs(a), abs(b)
    m = aa if aa >= bb else bb
    ta, tb = aa / m, bb / m
    s = (math.pow(ta, r) + math.pow(tb, r)) ** (1.0 / r)
    d = math.pow(s, r - 1.0)
    return (
        _sign(a) * math.pow(ta, r - 1.0) / d,
        _sign(b) * math.pow(tb, r - 1.0) / d,
    )


class NormedSpace(ABC):
    """Common interface: a norm and extreme points of the norming set.

    Subclasses expose ``dim`` (field or property), ``_norm`` on a checked
    array, and ``_support`` on a checked nonzero array.
    """

    dim: int

    def check_vector(self, v) -> np.ndarray:
        arr = np.asarray(v, dtype=float)
        if arr.shape != (self.dim,):
            raise DimensionMismatch(
                f"expected a vector of length {self.dim}, got shape {arr.shape}"
            )
        return arr

    def norm(self, v) -> float:
        return self._norm(self.check_vector(v))

    def is_zero(self, v) -> bool:
        arr = self.check_vector(v)
        scale = float(np.max(np.abs(arr)))
        return self._norm(arr) <= TAU_ZERO * max(1.0, scale)

    def support_set(self, x) -> list[np.ndarray]:
        """Extreme points of nu(x); raises ZeroVector at the origin."""
        arr = self.check_vector(x)
        if self.is_zero(arr):
            raise ZeroVector("support set is undefined at the zero vector")
        return self._support(arr)

    @abstractmethod
    def _norm(self, arr: np.ndarray) -> float: ...

    @abstractmethod
    def _support(self, arr: np.ndarray) -> list[np.ndarray]: ...


@dataclass(frozen=True)
class Lp(NormedSpace):
    """R^dim with the p-norm, 1 < p < inf (smooth; p = inf is LInf)."""

    dim: int
    p: float

    def __post_init__(self):
        object.__setattr__(self, "dim", _check_dim(self.dim))
        object.__setattr__(self, "p", _check_exponent(self.p))

    def _norm(self, arr):
        if self.dim == 2:
            return _pnorm2(arr[0], arr[1], self.p)
        a = np.abs(arr)
        m = float(a.max())
        if m == 0.0:
            return 0.0
        return m * float(np.sum((a / m) ** self.p)) ** (1.0 / self.p)

    def _support(self, arr):
        # Unique norming functional: sign(x_i) |x_i|^(p-1) / ||x||^(p-1).
        if self.dim == 2:
            return [np.array(_pgrad2(arr[0], arr[1], self.p))]
        a = np.abs(arr)
        m = float(a.max())
        t = a / m
        s = float(np.sum(t**self.p)) ** (1.0 / self.p)
        f = np.sign(arr) * t ** (self.p - 1.0) / s ** (self.p - 1.0)
        return [f]

    # Scalar fast paths used by the plane constructions.
    def _norm2(self, a: float, b: float) -> float:
        return _pnorm2(a, b, self.p)

    def _grad2(self, a: float, b: float) -> tuple[float, float]:
        return _pgrad2(a, b, self.p)


@dataclass(frozen=True)
class LInf(NormedSpace):
    """R^dim with the max norm (not smooth at coordinate ties)."""

    dim: int

    def __post_init__(self):
        object.__setattr__(self, "dim", _check_dim(self.dim))

    def _norm(self, arr):
        return float(np.max(np.abs(arr)))

    def _support(self, arr):
        # One vertex sign(x_i) e_i per coordinate attaining the max,
        # within the tie tolerance.
        m = float(np.max(np.abs(arr)))
        out = []
        for i, c in enumerate(arr):
            if abs(c) >= (1.0 - TAU_TIE) * m:
                f = np.zeros(self.dim)
                f[i] = 1.0 if c > 0 else -1.0
                out.append(f)
        return out


@dataclass(frozen=True)
class DayJames(NormedSpace):
    """The Day-James plane: p-norm where a*b >= 0, q-norm where a*b <= 0.

    Smooth for p, q > 1 (both quadrant gradients coincide on the axes).
    The plane is a Radon plane exactly when 1/p + 1/q = 1, recorded by the
    derived ``radon_candidate`` flag.
    """

    p: float
    q: float

    def __post_init__(self):
        object.__setattr__(self, "p", _check_exponent(self.p))
        object.__setattr__(self, "q", _check_exponent(self.q))

    @property
    def dim(self) -> int:
        return 2

    @property
    def radon_candidate(self) -> bool:
        return abs(1.0 / self.p + 1.0 / self.q - 1.0) <= 1e-12

    def _exponent_at(self, a: float, b: float) -> float:
        # Exact sign test; on the axes both formulas agree so the choice
        # is observationally irrelevant.
        return self.p if a * b >= 0.0 else self.q

    def _norm(self, arr):
        return self._norm2(arr[0], arr[1])

    def _support(self, arr):
        a, b = float(arr[0]), float(arr[1])
        if a == 0.0 or b == 0.0:
            fp = _pgrad2(a, b, self.p)
            fq = _pgrad2(a, b, self.q)
            gap = max(abs(fp[0] - fq[0]), abs(fp[1] - fq[1]))
            assert gap <= TAU_SUP, f"quadrant gradients disagree on axis: {gap}"
            return [np.array(fp)]
        return [np.array(_pgrad2(a, b, self._exponent_at(a, b)))]

    def _norm2(self, a: float, b: float) -> float:
        return _pnorm2(a, b, self._exponent_at(a, b))

    def _grad2(self, a: float, b: float) -> tuple[float, float]:
        return _pgrad2(a, b, self._exponent_at(a, b))


@dataclass(frozen=True)
class InfSum(NormedSpace):
    """Finite l-infinity direct sum: ||(x_1, ..., x_k)|| = max_i ||x_i||."""

    parts: tuple[NormedSpace, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if len(parts) < 2:
            raise EmptySum(f"a max-sum needs at least 2 parts, got {len(parts)}")
        for part in parts:
            if not isinstance(part, NormedSpace):
                raise TypeError(f"sum part is not a NormedSpace: {part!r}")
        object.__setattr__(self, "parts", parts)
        offsets = [0]
        for part in parts:
            offsets.append(offsets[-1] + part.dim)
        object.__setattr__(self, "_offsets", tuple(offsets))

    @property
    def dim(self) -> int:
        return self._offsets[-1]

    def split(self, arr: np.ndarray) -> list[np.ndarray]:
        """Views of the part restrictions of a checked vector."""
        off = self._offsets
        return [arr[off[k] : off[k + 1]] for k in range(len(self.parts))]

    def _norm(self, arr):
        off = self._offsets
        return max(
            part._norm(arr[off[k] : off[k + 1]])
            for k, part in enumerate(self.parts)
        )

    def _support(self, arr):
        # Embed the extreme functionals of every norm-attaining part
        # (within the tie tolerance) at zero elsewhere.
        off = self._offsets
        pieces = self.split(arr)
        norms = [part._norm(piece) for part, piece in zip(self.parts, pieces)]
        total = max(norms)
        out = []
        for k, part in enumerate(self.parts):
            if norms[k] >= (1.0 - TAU_TIE) * total:
                for f in part._support(pieces[k]):
                    g = np.zeros(self.dim)
                    g[off[k] : off[k + 1]] = f
                    out.append(g)
        return out


def validate_space(descriptor) -> NormedSpace:
    """Build a checked space from a raw JSON-style description.

    Accepts an already-built NormedSpace unchanged.  Descriptions are
    dicts: {"type": "lp", "dim": 2, "p": 3.0}, {"type": "linf", "dim": 4},
    {"type": "day_james", "p": 3.0, "q": 1.5}, or
    {"type": "inf_sum", "parts": [...]} recursively.
    """
    if isinstance(descriptor, NormedSpace):
        return descriptor
    if not isinstance(descriptor, dict):
        raise ParseError(f"space description must be a dict, got {type(descriptor).__name__}")
    kind = descriptor.get("type")
    if kind == "lp":
        return Lp(dim=_as_int(descriptor, "dim"), p=_as_float(descriptor, "p"))
    if kind == "linf":
        return LInf(dim=_as_int(descriptor, "dim"))
    if kind == "day_james":
        return DayJames(p=_as_float(descriptor, "p"), q=_as_float(descriptor, "q"))
    if kind == "inf_sum":
        parts = descriptor.get("parts")
        if not isinstance(parts, (list, tuple)):
            raise ParseError("inf_sum requires a list of parts")
        return InfSum(tuple(validate_space(p) for p in parts))
    raise ParseError(f"unknown space type: {kind!r}")


def _as_int(d: dict, key: str) -> int:
    if key not in d:
        raise ParseError(f"missing field {key!r}")
    v = d[key]
    if isinstance(v, bool) or (isinstance(v, float) and int(v) != v):
        raise BadDimension(f"field {key!r} must be an integer, got {v!r}")
    return int(v)


def _as_float(d: dict, key: str) -> float:
    if key not in d:
        raise ParseError(f"missing field {key!r}")
    try:
        return float(d[key])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field {key!r} must be a number, got {d[key]!r}") from exc


def space_to_dict(space: NormedSpace) -> dict:
    """JSON-ready description; inverse of validate_space."""
    if isinstance(space, Lp):
        return {"type": "lp", "dim": space.dim, "p": space.p}
    if isinstance(space, LInf):
        return {"type": "linf", "dim": space.dim}
    if isinstance(space, DayJames):
        return {"type": "day_james", "p": space.p, "q": space.q}
    if isinstance(space, InfSum):
        return {"type": "inf_sum", "parts": [space_to_dict(p) for p in space.parts]}
    raise TypeError(f"unknown space: {space!r}")


def _fmt_number(x: float) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def format_space(space: NormedSpace) -> str:
    """Compact string form: lp:2:3, linf:4, dayjames:3:1.5, sum(a,b)."""
    if isinstance(space, Lp):
        return f"lp:{space.dim}:{_fmt_number(space.p)}"
    if isinstance(space, LInf):
        return f"linf:{space.dim}"
    if isinstance(space, DayJames):
        return f"dayjames:{_fmt_number(space.p)}:{_fmt_number(space.q)}"
    if isinstance(space, InfSum):
        return "sum(" + ",".join(format_space(p) for p in space.parts) + ")"
    raise TypeError(f"unknown space: {space!r}")


def parse_space(text: str) -> NormedSpace:
    """Parse the compact string form; inverse of format_space."""
    s = text.strip()
    if not s:
        raise ParseError("empty space descriptor")
    if s.startswith("sum("):
        if not s.endswith(")"):
            raise ParseError(f"unbalanced parentheses at position {len(s)}: {text!r}")
        inner = s[4:-1]
        pieces, depth, start = [], 0, 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth < 0:
                    raise ParseError(f"unbalanced parentheses at position {i + 4}: {text!r}")
            elif ch == "," and depth == 0:
                pieces.append(inner[start:i])
                start = i + 1
        if depth != 0:
            raise ParseError(f"unbalanced parentheses in {text!r}")
        pieces.append(inner[start:])
        return InfSum(tuple(parse_space(p) for p in pieces))
    fields = s.split(":")
    head = fields[0]
    try:
        if head == "lp" and len(fields) == 3:
            return Lp(dim=_parse_int(fields[1], text), p=_parse_float(fields[2], text))
        if head == "linf" and len(fields) == 2:
            return LInf(dim=_parse_int(fields[1], text))
        if head == "dayjames" and len(fields) == 3:
            return DayJames(p=_parse_float(fields[1], text), q=_parse_float(fields[2], text))
    except (BadDimension, InvalidExponent):
        raise
    raise ParseError(f"cannot parse space descriptor {text!r} (at position 0)")


def _parse_int(token: str, context: str) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise ParseError(f"expected an integer, got {token!r} in {context!r}") from exc


def _parse_float(token: str, context: str) -> float:
    try:
        return float(token)
    except ValueError as exc:
        raise ParseError(f"expected a number, got {token!r} in {context!r}") from exc


def load_space_file(path) -> NormedSpace:
    """Read a JSON space description from a file."""
    with open(path, "r", encoding="utf-8") as fh:
        return validate_space(json.load(fh))


def norm(space: NormedSpace, v) -> float:
    """The norm of v in the given space."""
    return space.norm(v)


def support_set(space: NormedSpace, x) -> list[np.ndarray]:
    """Extreme points of the set of norming functionals of x."""
    return space.support_set(x)


def functional_apply(f, v) -> float:
    """Dual pairing: coordinate dot product of a functional with a vector."""
    fa = np.asarray(f, dtype=float)
    va = np.asarray(v, dtype=float)
    if fa.shape != va.shape:
        raise DimensionMismatch(f"functional shape {fa.shape} vs vector shape {va.shape}")
    return float(np.dot(fa, va))


def unit_vector_at_angle(plane: NormedSpace, theta: float) -> np.ndarray:
    """(cos t, sin t) rescaled to norm one in a two-dimensional space."""
    if plane.dim != 2:
        raise NotAPlane(f"expected a plane, got dimension {plane.dim}")
    c, s = math.cos(theta), math.sin(theta)
    n = plane._norm(np.array([c, s]))
    return np.array([c / n, s / n])
