"""Toric "no common zeros (at infinity)" checks via facial systems.

Every face of ``P`` corresponds to a torus orbit of the toric variety of
``P``.  The sections given by ``F`` vanish simultaneously somewhere on that
orbit iff the face's facial system has a common zero in the torus.  Faces
whose normal cone leaves the first orthant are the orbits at infinity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import ContractViolation, HypothesisViolation
from .groebner import has_common_zero_torus
from .polytope import Face, LatticePolytope, _require_full, face_at_infinity, faces, lattice_points
from .sparsepoly import SparsePolynomial, facial_system

PROBE_COEFFS = [c for c in range(-9, 10) if c]


@dataclass(frozen=True)
class InfinityVerdict:
    ok: bool
    witness_face: Face | None = None
    witness_system: list | None = None

    def __post_init__(self):
        if not self.ok and (self.witness_face is None or self.witness_system is None):
            raise ValueError("a negative verdict needs a witness face and system")

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        out = {"ok": self.ok}
        if not self.ok:
            out["witness_face"] = {
                "vertices": [list(v) for v in self.witness_face.points],
                "dim": self.witness_face.dim,
                "weight": list(self.witness_face.weight()),
            }
            out["witness_system"] = [p.to_str(names) for p in self.witness_system]
        return out


def _check_supports(F: Sequence[SparsePolynomial], polys: Sequence[LatticePolytope]) -> None:
    for j, (f, P) in enumerate(zip(F, polys)):
        if f.dim != P.dim:
            raise ContractViolation(f"generator {j + 1} has dimension {f.dim}, polytope has {P.dim}")
        for e in f.support():
            if not P.contains(e):
                raise HypothesisViolation(
                    f"support of generator {j + 1} is not contained in the polytope",
                    witness={"generator": j + 1, "exponent": list(e)},
                )


def _sweep(F, face_list, polytopes=None) -> InfinityVerdict:
    for face in face_list:
        system = facial_system(F, face, polytopes)
        if has_common_zero_torus(system):
            return InfinityVerdict(False, face, system)
    return InfinityVerdict(True)


def no_zeros_at_infinity(F: Sequence[SparsePolynomial], P: LatticePolytope) -> InfinityVerdict:
    """No common zero on any torus orbit at infinity of the toric variety of ``P``."""
    _require_full(P, "infinity check")
    origin = (0,) * P.dim
    if not P.contains(origin):
        raise HypothesisViolation("polytope does not contain the origin", witness=list(origin))
    _check_supports(F, [P] * len(F))
    return _sweep(F, [f for f in faces(P) if face_at_infinity(f)])


def no_zeros_anywhere(
    F: Sequence[SparsePolynomial],
    P: LatticePolytope,
    polytopes: Sequence[LatticePolytope] | None = None,
) -> InfinityVerdict:
    """No common zero on any torus orbit of the toric variety of ``P``.

    With ``polytopes`` given, ``F_j`` is read as a section for ``polytopes[j]``
    and ``P`` should be their Minkowski sum (any polytope with a finer
    normal fan works).
    """
    _require_full(P, "zero check")
    if polytopes is not None and len(polytopes) != len(F):
        raise ContractViolation("one polytope per generator required")
    _check_supports(F, polytopes if polytopes is not None else [P] * len(F))
    return _sweep(F, faces(P), polytopes)


def genericity_probe(P: LatticePolytope, count: int, seed) -> list[SparsePolynomial]:
    """``count`` polynomials supported on every lattice point of ``P`` with
    random nonzero integer coefficients in [-9, 9]."""
    _require_full(P, "genericity probe")
    rng = random.Random(seed)
    pts = lattice_points(P)
    return [
        SparsePolynomial(P.dim, {e: rng.choice(PROBE_COEFFS) for e in pts}) for _ in range(count)
    ]
