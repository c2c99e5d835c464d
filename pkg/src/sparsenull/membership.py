"""Certificates ``sum_j F_j G_j = Phi^nu`` with supports inside a bound polytope.

The search is linear algebra over the monomials of the bound: one unknown
per pair ``(j, beta)`` with ``beta + supp F_j`` inside the bound, one
equation per lattice point of the bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ContractViolation, DegenerateInput, HypothesisViolation
from .exact_linalg import RationalMatrix, solve_exact
from .polytope import LatticePolytope, dilate, lattice_points, minkowski_diff
from .sparsepoly import SparsePolynomial, newton_polytope

THEOREM_TAGS = ("macaulay", "noether", "briancon_skoda", "tuitman", "custom")


@dataclass
class Certificate:
    cofactors: list
    power: int
    bound: LatticePolytope
    theorem_tag: str = "custom"
    matrix_shape: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.theorem_tag not in THEOREM_TAGS:
            raise ContractViolation(f"unknown theorem tag {self.theorem_tag!r}")

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem_tag,
            "power": self.power,
            "bound": self.bound.to_json(),
            "cofactors": [g.to_json() for g in self.cofactors],
        }

    @classmethod
    def from_json(cls, data) -> "Certificate":
        try:
            tag = data["theorem"]
            power = data["power"]
            bound = LatticePolytope.from_json(data["bound"])
            cofactors = [SparsePolynomial.from_json(g) for g in data["cofactors"]]
        except (KeyError, TypeError) as exc:
            raise ContractViolation(f"malformed certificate: {exc}") from exc
        if not isinstance(power, int) or isinstance(power, bool) or power < 0:
            raise ContractViolation(f"bad certificate power {power!r}")
        return cls(cofactors, power, bound, tag)


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str = ""
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, **self.detail}


def _fmt(e) -> str:
    return "(" + ",".join(str(a) for a in e) + ")"


def verify_certificate(cert: Certificate, F: Sequence[SparsePolynomial], phi: SparsePolynomial) -> Verification:
    """Recompute the identity and the product supports from scratch."""
    if len(cert.cofactors) != len(F):
        return Verification(False, f"{len(cert.cofactors)} cofactors for {len(F)} generators")
    dims = {phi.dim, cert.bound.dim, *(f.dim for f in F), *(g.dim for g in cert.cofactors)}
    if len(dims) != 1:
        return Verification(False, f"dimension mismatch {sorted(dims)}")
    total = SparsePolynomial(phi.dim)
    for j, (f, g) in enumerate(zip(F, cert.cofactors), start=1):
        prod = f * g
        for e in prod.support():
            if not cert.bound.contains(e):
                return Verification(
                    False,
                    f"support of F_{j}*G_{j} leaves the bound at exponent {_fmt(e)}",
                    {"generator": j, "exponent": list(e)},
                )
        total = total + prod
    diff = total - phi ** cert.power
    if diff:
        e = diff.support()[0]
        return Verification(
            False,
            f"identity mismatch at exponent {_fmt(e)}",
            {"exponent": list(e), "difference": str(diff.coeff(e))},
        )
    return Verification(True, "ok")


def allowed_exponents(Fj: SparsePolynomial, bound: LatticePolytope) -> list[tuple[int, ...]]:
    """Nonnegative lattice points ``beta`` with ``beta + supp Fj`` inside ``bound``."""
    if Fj.is_zero():
        raise DegenerateInput("allowed exponents of the zero generator")
    room = minkowski_diff(bound, newton_polytope(Fj))
    if room is None:
        return []
    return [b for b in lattice_points(room) if all(c >= 0 for c in b)]


def solve_membership(
    F: Sequence[SparsePolynomial],
    phi: SparsePolynomial,
    nu: int,
    bound: LatticePolytope,
    theorem_tag: str = "custom",
) -> Certificate | None:
    """Certificate for ``phi**nu`` with each ``G_j`` term-wise inside the bound, or ``None``.

    ``None`` only means no certificate of this support shape exists.
    """
    if not F:
        raise ContractViolation("no generators")
    if nu < 0:
        raise ContractViolation("power must be nonnegative")
    n = bound.dim
    if any(f.dim != n for f in F) or phi.dim != n:
        raise ContractViolation("generators, target and bound must share a dimension")
    target = phi ** nu
    for e in target.support():
        if not bound.contains(e):
            raise HypothesisViolation(
                f"target support leaves the bound at exponent {_fmt(e)}", witness=list(e)
            )

    rows = lattice_points(bound)
    row_of = {p: i for i, p in enumerate(rows)}
    columns = []
    for j, f in enumerate(F):
        if f:
            columns.extend((j, beta) for beta in allowed_exponents(f, bound))

    entries = [[Fraction(0)] * len(columns) for _ in rows]
    for col, (j, beta) in enumerate(columns):
        for e, c in F[j].items():
            entries[row_of[tuple(a + b for a, b in zip(e, beta))]][col] = c
    A = RationalMatrix.from_rows(entries, len(columns))
    rhs = [target.coeff(p) for p in rows]
    x = solve_exact(A, rhs)
    if x is None:
        return None

    parts: list[dict] = [{} for _ in F]
    for (j, beta), v in zip(columns, x):
        if v:
            parts[j][beta] = v
    cert = Certificate(
        [SparsePolynomial(n, p) for p in parts], nu, bound, theorem_tag, (len(rows), len(columns))
    )
    check = verify_certificate(cert, F, phi)
    if not check:
        raise AssertionError(f"solver produced an invalid certificate: {check.reason}")
    return cert


def default_cmax(n: int, e: int) -> int:
    """Search ceiling for escalation; not a mathematical bound."""
    return max(n + 1, e) + 8


def escalate_solve(
    F: Sequence[SparsePolynomial],
    phi: SparsePolynomial,
    nu: int,
    P: LatticePolytope,
    c_start: int,
    c_max: int,
    theorem_tag: str = "custom",
) -> tuple[Certificate, int] | None:
    """Try bounds ``cP`` for ``c = c_start .. c_max``; first success wins."""
    if c_start < 1 or c_start > c_max:
        raise ContractViolation(f"need 1 <= c_start <= c_max, got {c_start}, {c_max}")
    target_support = (phi ** nu).support()
    for c in range(c_start, c_max + 1):
        bound = dilate(P, c)
        if c > c_start and not all(bound.contains(e) for e in target_support):
            continue
        cert = solve_membership(F, phi, nu, bound, theorem_tag)
        if cert is not None:
            return cert, c
    return None
