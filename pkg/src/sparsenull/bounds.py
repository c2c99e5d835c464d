"""Support bounds and hypothesis reports for the sparse division theorems.

Each ``plan_*`` function checks the hypotheses of one theorem and, when they
all hold, returns the bound polytope and power that theorem guarantees.
``classical_reference`` gives the dense-degree numbers for comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Sequence

from .errors import ContractViolation, DegenerateInput, HypothesisUnverifiable, HypothesisViolation
from .groebner import buchberger, has_common_zero_affine, normal_form
from .infinity import InfinityVerdict, no_zeros_anywhere, no_zeros_at_infinity
from .membership import default_cmax
from .polytope import (
    LatticePolytope,
    dilate,
    is_summand,
    min_integer_dilation,
    minkowski_sum,
    non_smooth_vertices,
)
from .sparsepoly import SparsePolynomial, newton_polytope


@dataclass
class Hypothesis:
    name: str
    passed: bool | None  # None: not evaluated because a prerequisite failed
    witness: Any = None

    def to_json(self, names=None) -> dict:
        w = self.witness
        if isinstance(w, InfinityVerdict):
            w = w.to_json(names)
        return {"name": self.name, "pass": self.passed, "witness": w}


@dataclass
class TheoremPlan:
    theorem_tag: str
    hypotheses: list = field(default_factory=list)
    bound: LatticePolytope | None = None
    power: int | None = None
    e: int | None = None
    escalation: tuple | None = None
    base: LatticePolytope | None = None

    @property
    def ok(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    def failed(self) -> list[Hypothesis]:
        return [h for h in self.hypotheses if not h.passed]

    def hypothesis(self, name: str) -> Hypothesis:
        for h in self.hypotheses:
            if h.name == name:
                return h
        raise KeyError(name)

    def to_json(self, names=None) -> dict:
        out = {
            "theorem": self.theorem_tag,
            "bound": self.bound.to_json() if self.bound is not None else None,
            "power": self.power,
            "e": self.e,
            "hypotheses": [h.to_json(names) for h in self.hypotheses],
        }
        if self.escalation is not None:
            out["escalation"] = {"c_start": self.escalation[0], "c_max": self.escalation[1]}
        return out


def _validate(F: Sequence[SparsePolynomial], phi: SparsePolynomial) -> int:
    if not F:
        raise ContractViolation("no generators")
    dims = {f.dim for f in F} | {phi.dim}
    if len(dims) != 1:
        raise ContractViolation(f"mixed dimensions {sorted(dims)}")
    if all(f.is_zero() for f in F):
        raise DegenerateInput("all generators are zero")
    if phi.is_zero():
        raise DegenerateInput("target polynomial is zero")
    return dims.pop()


def _dilation_for(P: LatticePolytope, phi: SparsePolynomial) -> int:
    e = min_integer_dilation(P, phi.support())
    if e is None:
        raise HypothesisViolation(
            "support of the target lies in no integer dilation of the polytope",
            witness=[list(a) for a in phi.support()],
        )
    return e


def _origin(P: LatticePolytope) -> Hypothesis:
    origin = (0,) * P.dim
    return Hypothesis("contains_origin", P.contains(origin), None if P.contains(origin) else list(origin))


def _supports(F, P: LatticePolytope, name="supports_in_polytope") -> Hypothesis:
    for j, f in enumerate(F, start=1):
        for a in f.support():
            if not P.contains(a):
                return Hypothesis(name, False, {"generator": j, "exponent": list(a)})
    return Hypothesis(name, True)


def _verdict(name: str, verdict: InfinityVerdict) -> Hypothesis:
    return Hypothesis(name, verdict.ok, None if verdict.ok else verdict)


def _skipped(name: str, why: str) -> Hypothesis:
    return Hypothesis(name, None, {"skipped": why})


def plan_macaulay(F: Sequence[SparsePolynomial], phi: SparsePolynomial) -> TheoremPlan:
    """Bound ``max(n+1, e) * NP(F)`` with power 1."""
    n = _validate(F, phi)
    NP = newton_polytope(F)
    e = _dilation_for(NP, phi)
    plan = TheoremPlan("macaulay", e=e, base=NP)
    if NP.is_full_dimensional:
        hyp = _verdict("no_common_zeros_even_at_infinity", no_zeros_anywhere(F, NP))
    else:
        hyp = _skipped("no_common_zeros_even_at_infinity", "Newton polytope is not full-dimensional")
    plan.hypotheses.append(hyp)
    if plan.ok:
        plan.bound = dilate(NP, max(n + 1, e))
        plan.power = 1
    return plan


def plan_noether(F: Sequence[SparsePolynomial], phi: SparsePolynomial, P: LatticePolytope) -> TheoremPlan:
    """Escalation plan ``c P`` for ``c >= max(e, 1)`` with power 1."""
    n = _validate(F, phi)
    if P.dim != n:
        raise ContractViolation(f"polytope dimension {P.dim} differs from {n}")
    hyps = []
    if not P.is_full_dimensional:
        hyps.append(Hypothesis("smooth", False, {"reason": "polytope is not full-dimensional"}))
    else:
        bad = non_smooth_vertices(P)
        hyps.append(
            Hypothesis("smooth", not bad, {"vertex": list(bad[0][0]), "reason": bad[0][1]} if bad else None)
        )
    hyps.append(_origin(P))
    hyps.append(_supports(F, P))
    missing = [i + 1 for i in range(n) if not P.contains(tuple(int(j == i) for j in range(n)))]
    hyps.append(Hypothesis("contains_coordinates", not missing, {"missing": missing} if missing else None))
    if P.is_full_dimensional and hyps[1].passed and hyps[2].passed:
        hyps.append(_verdict("no_zeros_at_infinity", no_zeros_at_infinity(F, P)))
    else:
        hyps.append(_skipped("no_zeros_at_infinity", "needs a full-dimensional polytope containing the origin and the supports"))
    rem = normal_form(phi, buchberger(F))
    hyps.append(Hypothesis("phi_in_ideal", rem.is_zero(), None if rem.is_zero() else {"normal_form": str(rem)}))

    e = _dilation_for(P, phi)
    plan = TheoremPlan("noether", hyps, e=e, base=P)
    if plan.ok:
        c_start = max(e, 1)
        plan.escalation = (c_start, default_cmax(n, e))
        plan.bound = dilate(P, c_start)
        plan.power = 1
    return plan


def plan_briancon_skoda(
    F: Sequence[SparsePolynomial],
    phi: SparsePolynomial,
    P: LatticePolytope,
    integral_closure_asserted: bool = False,
) -> TheoremPlan:
    """Bound ``max(n+1, n e) * P`` with power ``n``."""
    n = _validate(F, phi)
    if P.dim != n:
        raise ContractViolation(f"polytope dimension {P.dim} differs from {n}")
    hyps = [_origin(P), _supports(F, P)]
    if P.is_full_dimensional and hyps[0].passed and hyps[1].passed:
        hyps.append(_verdict("no_zeros_at_infinity", no_zeros_at_infinity(F, P)))
    else:
        hyps.append(_skipped("no_zeros_at_infinity", "needs a full-dimensional polytope containing the origin and the supports"))
    if not has_common_zero_affine(F):
        hyps.append(Hypothesis("integral_closure", True, {"source": "derived: no common affine zeros"}))
    elif integral_closure_asserted:
        hyps.append(Hypothesis("integral_closure", True, {"source": "asserted"}))
    else:
        raise HypothesisUnverifiable(
            "the generators have common affine zeros, so integral-closure membership of the target "
            "cannot be derived; assert it explicitly"
        )
    e = _dilation_for(P, phi)
    plan = TheoremPlan("briancon_skoda", hyps, e=e, base=P)
    if plan.ok:
        plan.bound = dilate(P, max(n + 1, n * e))
        plan.power = n
    return plan


def plan_tuitman(
    F: Sequence[SparsePolynomial],
    polytopes: Sequence[LatticePolytope],
    P: LatticePolytope,
    phi: SparsePolynomial,
) -> TheoremPlan:
    """Bound ``P`` itself with power 1, given per-generator polytopes."""
    n = _validate(F, phi)
    m = len(F)
    if len(polytopes) != m:
        raise ContractViolation(f"{len(polytopes)} polytopes for {m} generators")
    if any(Q.dim != n for Q in polytopes) or P.dim != n:
        raise ContractViolation("polytope dimensions differ from the polynomial dimension")

    hyps = []
    bad = None
    for j, (f, Pj) in enumerate(zip(F, polytopes), start=1):
        for a in f.support():
            if not Pj.contains(a):
                bad = {"generator": j, "exponent": list(a)}
                break
        if bad:
            break
    if bad is None:
        for a in phi.support():
            if not P.contains(a):
                bad = {"target": True, "exponent": list(a)}
                break
    hyps.append(Hypothesis("supports_in_polytopes", bad is None, bad))

    total = reduce(minkowski_sum, polytopes)
    if bad is not None:
        hyps.append(_skipped("no_common_zeros", "supports are not inside their polytopes"))
    elif not total.is_full_dimensional:
        hyps.append(_skipped("no_common_zeros", "sum of the generator polytopes is not full-dimensional"))
    else:
        hyps.append(_verdict("no_common_zeros", no_zeros_anywhere(F, total, polytopes)))

    failed_J = None
    for q in range(1, min(m, n + 1) + 1):
        for J in itertools.combinations(range(m), q):
            if not is_summand(reduce(minkowski_sum, [polytopes[j] for j in J]), P):
                failed_J = [j + 1 for j in J]
                break
        if failed_J:
            break
    hyps.append(Hypothesis("summand_condition", failed_J is None, {"subset": failed_J} if failed_J else None))

    plan = TheoremPlan("tuitman", hyps, e=1, base=P)
    if plan.ok:
        plan.bound = P
        plan.power = 1
    return plan


def classical_reference(d: int, n: int, m: int, deg_phi: int) -> dict:
    """Dense-degree reference numbers for ``deg F_j <= d``."""
    if min(d, n, m) < 1 or deg_phi < 0:
        raise ContractViolation("d, n, m must be positive and deg_phi nonnegative")
    kollar_factor = d ** min(m, n)
    sombra = d == 2 and m >= n + 1
    factor = 2 ** (n + 1) if sombra else kollar_factor
    return {
        "d": d,
        "n": n,
        "m": m,
        "deg_phi": deg_phi,
        "kollar_nu": kollar_factor,
        "kollar_factor": kollar_factor,
        "kollar_degree": (1 + deg_phi) * kollar_factor,
        "sombra_applies": sombra,
        "sombra_factor": 2 ** (n + 1) if sombra else None,
        "effective_degree": (1 + deg_phi) * factor,
        "macaulay_degree": (n + 1) * d - n,
        "briancon_skoda_nu": min(m, n),
        "noether_degree": deg_phi,
    }
