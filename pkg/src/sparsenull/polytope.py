"""Exact lattice (and rational) polytopes in dimension n <= 6.

A polytope is stored both as its vertex list and as its facet list.  Facets
are half-spaces ``<normal, x> >= offset`` with primitive integer inward
normals.  Polytopes that are not full-dimensional additionally carry the
equations of their affine hull, each stored as a pair of opposite
half-spaces.

The face selected by a weight ``w`` is ``argmin_{x in P} <x, w>``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ContractViolation, DegenerateInput, HypothesisViolation, UnsupportedDimension
from .exact_linalg import RationalMatrix, _bareiss, _integer_rows, determinant, nullspace, solve_exact

MAX_DIM = 6


def _norm(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _point(p) -> tuple:
    return tuple(_norm(c) for c in p)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    vec = [Fraction(v) for v in vec]
    scale = math.lcm(1, *(v.denominator for v in vec))
    ints = [int(v * scale) for v in vec]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(i // g for i in ints)


@dataclass(frozen=True, order=True)
class HalfSpace:
    """``<normal, x> >= offset`` with a primitive integer inward normal."""

    normal: tuple
    offset: object

    def value(self, x) -> Fraction:
        return _dot(self.normal, x) - self.offset

    def holds(self, x) -> bool:
        return self.value(x) >= 0

    def tight(self, x) -> bool:
        return self.value(x) == 0


def _affine_rank(points: Sequence[tuple]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, p0)] for p in points[1:]]
    m = _integer_rows(diffs)
    return len(_bareiss(m, len(p0)))


def _cross(vectors: Sequence[Sequence[Fraction]], k: int) -> list[Fraction]:
    """Vector orthogonal to the k-1 given vectors in k-space (cofactor expansion)."""
    out = []
    for col in range(k):
        minor = [[v[j] for j in range(k) if j != col] for v in vectors]
        scale = math.lcm(1, *(Fraction(x).denominator for r in minor for x in r))
        det = determinant([[int(Fraction(x) * scale) for x in r] for r in minor])
        out.append(Fraction((-1) ** col * det, scale ** len(minor)) if minor else Fraction(1))
    return out


def _facets_2d(pts: list[tuple]) -> list[tuple[tuple, Fraction]]:
    """Monotone chain; returns (inward normal, offset) per edge of a 2-d hull."""
    pts = sorted(set(pts))

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    ring = lower[:-1] + upper[:-1]
    out = []
    for a, b in zip(ring, ring[1:] + ring[:1]):
        # counter-clockwise ring: interior lies to the left of a->b
        normal = _primitive((-(b[1] - a[1]), b[0] - a[0]))
        out.append((normal, _dot(normal, a)))
    return out


def _facets_sweep(pts: list[tuple], k: int) -> list[tuple[tuple, Fraction]]:
    """Facets of a full-dimensional hull in k-space by sweeping k-subsets."""
    found = {}
    for combo in itertools.combinations(range(len(pts)), k):
        base = pts[combo[0]]
        vecs = [[Fraction(a) - Fraction(b) for a, b in zip(pts[i], base)] for i in combo[1:]]
        normal = _cross(vecs, k)
        if not any(normal):
            continue
        normal = _primitive(normal)
        offset = _dot(normal, base)
        vals = [_dot(normal, p) - offset for p in pts]
        if all(v >= 0 for v in vals):
            found[(normal, offset)] = None
        elif all(v <= 0 for v in vals):
            found[(tuple(-c for c in normal), -offset)] = None
    return list(found)


class LatticePolytope:
    """Convex hull of finitely many rational points, with exact V- and H-data.

    Build instances with :func:`hull` (or the helpers :func:`simplex`,
    :func:`cube`); the constructor trusts its arguments.
    """

    def __init__(self, dim: int, vertices, facets, equations=()):
        self.dim = dim
        self.vertices = tuple(vertices)
        self.facets = tuple(facets)
        self.equations = tuple(equations)

    # -- basic queries -------------------------------------------------
    @property
    def inequalities(self) -> tuple:
        return self.facets + self.equations

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @cached_property
    def affine_dim(self) -> int:
        return _affine_rank(self.vertices)

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(c, int) for v in self.vertices for c in v)

    def contains(self, x) -> bool:
        if len(x) != self.dim:
            raise ContractViolation(f"point of length {len(x)} in a {self.dim}-dimensional polytope")
        return all(h.holds(x) for h in self.inequalities)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        verts = ", ".join("(" + ",".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"LatticePolytope(dim={self.dim}, vertices=[{verts}])"

    def min_weight(self, w) -> Fraction:
        """``min_{x in P} <x, w>``."""
        return min(_dot(v, w) for v in self.vertices)

    def tight_facets(self, x) -> tuple[int, ...]:
        return tuple(i for i, h in enumerate(self.facets) if h.tight(x))

    def bounding_box(self) -> list[tuple[int, int]]:
        return [
            (math.floor(min(v[i] for v in self.vertices)), math.ceil(max(v[i] for v in self.vertices)))
            for i in range(self.dim)
        ]

    # -- serialisation -------------------------------------------------
    def to_json(self) -> dict:
        from .exact_linalg import format_rational

        return {
            "dim": self.dim,
            "vertices": [
                [c if isinstance(c, int) else format_rational(c) for c in v] for v in self.vertices
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LatticePolytope":
        from .exact_linalg import parse_rational

        try:
            dim = data["dim"]
            verts = data["vertices"]
        except (KeyError, TypeError) as exc:
            raise ContractViolation(f"polytope JSON needs 'dim' and 'vertices': {exc}") from exc
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise ContractViolation(f"bad polytope dim {dim!r}")
        pts = []
        for v in verts:
            if len(v) != dim:
                raise ContractViolation(f"vertex {v} does not have dim {dim}")
            pts.append(tuple(parse_rational(c) for c in v))
        return hull(pts, dim=dim)


def hull(points: Iterable[Sequence], dim: int | None = None) -> LatticePolytope:
    """Convex hull of a nonempty finite point set (n <= 6)."""
    pts = [_point(p) for p in points]
    if not pts:
        raise ContractViolation("hull of an empty point set")
    n = len(pts[0]) if dim is None else dim
    if any(len(p) != n for p in pts):
        raise ContractViolation("points of unequal dimension")
    if n > MAX_DIM:
        raise UnsupportedDimension(f"dimension {n} > {MAX_DIM}")
    pts = sorted(set(pts))
    p0 = pts[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, p0)] for p in pts[1:]]

    equations = []
    for c in nullspace(diffs, n) if n else []:
        c = _primitive(c)
        d = _dot(c, p0)
        equations.append(HalfSpace(c, _norm(d)))
        equations.append(HalfSpace(tuple(-x for x in c), _norm(-d)))

    if diffs:
        coords = _bareiss(_integer_rows(diffs), n)
    else:
        coords = []
    k = len(coords)
    if k == 0:
        return LatticePolytope(n, [p0], [], equations)

    proj = [tuple(p[i] for i in coords) for p in pts]
    raw = _facets_2d(proj) if k == 2 else _facets_sweep(proj, k)
    facets = []
    for normal, offset in raw:
        full = [0] * n
        for i, c in zip(coords, normal):
            full[i] = c
        facets.append(HalfSpace(tuple(full), _norm(offset)))
    facets.sort()

    vertices = []
    for p in pts:
        tight = [h.normal for h in facets if h.tight(p)]
        if len(tight) >= k and _affine_rank([tuple(0 for _ in range(n))] + tight) == k:
            vertices.append(p)
    poly = LatticePolytope(n, vertices, facets, sorted(equations))
    _cross_check(poly, k)
    return poly


def _cross_check(P: LatticePolytope, k: int) -> None:
    for h in P.inequalities:
        if not all(h.holds(v) for v in P.vertices):
            raise AssertionError(f"vertex outside facet {h}")
    for h in P.facets:
        if _affine_rank([v for v in P.vertices if h.tight(v)]) != k - 1:
            raise AssertionError(f"facet {h} is not tight on a ridge of vertices")


# -- constructors ------------------------------------------------------

def simplex(n: int, d: int = 1) -> LatticePolytope:
    """``d * Sigma^n``: hull of the origin and ``d e_i``."""
    verts = [tuple(0 for _ in range(n))]
    for i in range(n):
        verts.append(tuple(d if j == i else 0 for j in range(n)))
    return hull(verts, dim=n)


def cube(n: int, side: int = 1) -> LatticePolytope:
    return hull(itertools.product((0, side), repeat=n), dim=n)


def point(p: Sequence[int]) -> LatticePolytope:
    return hull([p])


# -- operations --------------------------------------------------------

def lattice_points(P: LatticePolytope) -> list[tuple[int, ...]]:
    box = [range(lo, hi + 1) for lo, hi in P.bounding_box()]
    return [p for p in itertools.product(*box) if P.contains(p)]


def dilate(P: LatticePolytope, k: int) -> LatticePolytope:
    if k < 0:
        raise ContractViolation("dilation factor must be nonnegative")
    if k == 0:
        return point(tuple(0 for _ in range(P.dim)))
    return hull([tuple(k * c for c in v) for v in P.vertices], dim=P.dim)


def _check_dims(P: LatticePolytope, Q: LatticePolytope) -> None:
    if P.dim != Q.dim:
        raise ContractViolation(f"dimension mismatch: {P.dim} vs {Q.dim}")


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    _check_dims(P, Q)
    return hull(
        [tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices], dim=P.dim
    )


def minkowski_diff(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope | None:
    """Erosion ``{x : x + Q in P}``; ``None`` when empty.  May have rational vertices."""
    _check_dims(P, Q)
    n = P.dim
    shifted = [HalfSpace(h.normal, h.offset - Q.min_weight(h.normal)) for h in P.inequalities]
    if n == 0:
        return P if all(h.offset <= 0 for h in shifted) else None
    candidates = set()
    for combo in itertools.combinations(shifted, n):
        A = RationalMatrix.from_rows([h.normal for h in combo], n)
        if determinant([h.normal for h in combo]) == 0:
            continue
        x = solve_exact(A, [h.offset for h in combo])
        if all(h.holds(x) for h in shifted):
            candidates.add(_point(x))
    if not candidates:
        return None
    return hull(candidates, dim=n)


def is_summand(Q: LatticePolytope, P: LatticePolytope) -> bool:
    """Whether ``P = Q + S`` for some polytope ``S``."""
    _check_dims(P, Q)
    S = minkowski_diff(P, Q)
    return S is not None and minkowski_sum(Q, S) == P


def _require_full(P: LatticePolytope, what: str) -> None:
    if not P.is_full_dimensional:
        raise DegenerateInput(f"{what} needs a full-dimensional polytope (affine dim {P.affine_dim} < {P.dim})")


def non_smooth_vertices(P: LatticePolytope) -> list[tuple[tuple, str]]:
    """Vertices where the Delzant condition fails, with a short reason each."""
    _require_full(P, "smoothness test")
    bad = []
    for v in P.vertices:
        normals = [P.facets[i].normal for i in P.tight_facets(v)]
        if len(normals) != P.dim:
            bad.append((v, f"{len(normals)} facets meet at the vertex, expected {P.dim}"))
            continue
        det = determinant(normals)
        if abs(det) != 1:
            bad.append((v, f"facet normals have determinant {det}"))
    return bad


def is_smooth(P: LatticePolytope) -> bool:
    return not non_smooth_vertices(P)


@dataclass(frozen=True)
class Face:
    polytope: LatticePolytope = field(repr=False, compare=False)
    tight_facets: tuple
    vertices: tuple
    dim: int

    @property
    def points(self) -> list[tuple]:
        return [self.polytope.vertices[i] for i in self.vertices]

    @property
    def normals(self) -> list[tuple]:
        return [self.polytope.facets[i].normal for i in self.tight_facets]

    def weight(self) -> tuple[int, ...]:
        """Sum of tight-facet normals: a relative-interior point of the normal cone."""
        w = [0] * self.polytope.dim
        for nrm in self.normals:
            for i, c in enumerate(nrm):
                w[i] += c
        return tuple(w)


def faces(P: LatticePolytope) -> list[Face]:
    """All nonempty faces including ``P``, sorted by tight-facet index set."""
    _require_full(P, "face enumeration")
    nv = len(P.vertices)
    on_facet = [frozenset(i for i in range(nv) if h.tight(P.vertices[i])) for h in P.facets]
    top = frozenset(range(nv))
    seen = {top: ()}
    todo = [top]
    while todo:
        verts = todo.pop()
        for fi, fverts in enumerate(on_facet):
            sub = verts & fverts
            if not sub or sub == verts or sub in seen:
                continue
            seen[sub] = tuple(i for i, fv in enumerate(on_facet) if sub <= fv)
            todo.append(sub)
    out = [
        Face(P, tight, tuple(sorted(verts)), _affine_rank([P.vertices[i] for i in sorted(verts)]))
        for verts, tight in seen.items()
    ]
    out.sort(key=lambda f: (f.tight_facets, f.vertices))
    return out


def face_at_infinity(face: Face) -> bool:
    """A face lies at infinity iff some normal-cone generator has a negative coordinate."""
    return any(c < 0 for nrm in face.normals for c in nrm)


def classify_faces_at_infinity(P: LatticePolytope) -> dict[str, list[Face]]:
    _require_full(P, "face classification")
    origin = tuple(0 for _ in range(P.dim))
    if not P.contains(origin):
        raise HypothesisViolation("polytope does not contain the origin", witness=list(origin))
    out = {"affine": [], "infinity": []}
    for f in faces(P):
        out["infinity" if face_at_infinity(f) else "affine"].append(f)
    return out


def min_integer_dilation(P: LatticePolytope, S: Iterable[Sequence]) -> int | None:
    """Smallest integer ``e >= 1`` with ``S`` inside ``eP``, or ``None``."""
    lo = Fraction(1)
    hi = None
    for s in S:
        if len(s) != P.dim:
            raise ContractViolation("point dimension differs from polytope dimension")
        for h in P.inequalities:
            a = _dot(h.normal, s)
            b = Fraction(h.offset)
            # need a >= e * b
            if b == 0:
                if a < 0:
                    return None
            elif b < 0:
                lo = max(lo, Fraction(a) / b)
            else:
                bound = Fraction(a) / b
                hi = bound if hi is None else min(hi, bound)
    e = math.ceil(lo)
    if hi is not None and e > hi:
        return None
    return e
