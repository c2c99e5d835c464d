"""Buchberger's algorithm as an independent oracle.

Used to validate theorem hypotheses (membership, affine and torus common
zeros, radical membership) and to cross-check certificates.  Deliberately
plain: graded reverse lexicographic order, normal pair selection, the two
Buchberger criteria, and content removal after each reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ContractViolation, DegenerateInput
from .sparsepoly import SparsePolynomial


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lexicographic order after permuting variables.

    ``perm[i]`` is the variable placed at position ``i``; the last position
    is the smallest variable.
    """

    perm: tuple = ()

    def key(self, e: tuple):
        if self.perm:
            e = tuple(e[i] for i in self.perm)
        return (sum(e), tuple(-x for x in reversed(e)))


@dataclass
class GroebnerBasis:
    generators: list
    order: MonomialOrder = field(default_factory=MonomialOrder)
    dim: int = 0

    def is_unit_ideal(self) -> bool:
        return any(g.total_degree() == 0 for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _primitive(p: dict) -> dict:
    """Clear denominators and remove integer content."""
    if not p:
        return p
    den = math.lcm(*(c.denominator for c in p.values()))
    nums = [int(c * den) for c in p.values()]
    g = math.gcd(*nums)
    return {e: Fraction(int(c * den) // g) for e, c in p.items()}


class _Ring:
    def __init__(self, order: MonomialOrder):
        self.key = order.key

    def lm(self, p: dict) -> tuple:
        return max(p, key=self.key)

    def reduce(self, f: dict, G: list[dict], lms: list[tuple]) -> dict:
        p = dict(f)
        rem = {}
        key = self.key
        while p:
            lt = max(p, key=key)
            c = p[lt]
            for g, lg in zip(G, lms):
                if _divides(lg, lt):
                    q = c / g[lg]
                    shift = tuple(a - b for a, b in zip(lt, lg))
                    for e, gc in g.items():
                        m = tuple(a + b for a, b in zip(e, shift))
                        v = p.get(m, 0) - q * gc
                        if v:
                            p[m] = v
                        else:
                            p.pop(m, None)
                    break
            else:
                rem[lt] = c
                del p[lt]
        return rem

    def spoly(self, f: dict, g: dict, lf: tuple, lg: tuple) -> dict:
        L = _lcm(lf, lg)
        sf = tuple(a - b for a, b in zip(L, lf))
        sg = tuple(a - b for a, b in zip(L, lg))
        out = {}
        for e, c in f.items():
            m = tuple(a + b for a, b in zip(e, sf))
            out[m] = out.get(m, 0) + c / f[lf]
        for e, c in g.items():
            m = tuple(a + b for a, b in zip(e, sg))
            v = out.get(m, 0) - c / g[lg]
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return {e: c for e, c in out.items() if c}


def _check_gens(gens: Sequence[SparsePolynomial]) -> int:
    if not gens:
        raise DegenerateInput("no generators")
    dims = {g.dim for g in gens}
    if len(dims) != 1:
        raise ContractViolation(f"generators of mixed dimension {sorted(dims)}")
    if all(g.is_zero() for g in gens):
        raise DegenerateInput("all generators are zero")
    return dims.pop()


def buchberger(
    gens: Sequence[SparsePolynomial],
    order: MonomialOrder | None = None,
    stop_at_unit: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    With ``stop_at_unit`` the computation returns ``{1}`` as soon as a
    nonzero constant shows up.
    """
    dim = _check_gens(gens)
    order = order or MonomialOrder()
    ring = _Ring(order)
    key = order.key
    G: list[dict] = []
    lms: list[tuple] = []
    for g in gens:
        if g:
            G.append(_primitive(dict(g.items())))
            lms.append(ring.lm(G[-1]))
    one = {(0,) * dim: Fraction(1)}
    if any(sum(l) == 0 for l in lms):
        return GroebnerBasis([SparsePolynomial(dim, one)], order, dim)

    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        li, lj = lms[i], lms[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        L = _lcm(li, lj)
        if any(
            k not in (i, j)
            and _divides(lms[k], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        h = ring.reduce(ring.spoly(G[i], G[j], li, lj), G, lms)
        if not h:
            continue
        h = _primitive(h)
        lh = ring.lm(h)
        if sum(lh) == 0:
            if stop_at_unit:
                return GroebnerBasis([SparsePolynomial(dim, one)], order, dim)
            G, lms = [one], [(0,) * dim]
            break
        new = len(G)
        G.append(h)
        lms.append(lh)
        pairs.update((k, new) for k in range(new))

    return GroebnerBasis(_reduce_basis(ring, G, lms, dim), order, dim)


def _reduce_basis(ring: _Ring, G: list[dict], lms: list[tuple], dim: int) -> list[SparsePolynomial]:
    keep = []
    for i, li in enumerate(lms):
        dominated = False
        for j, lj in enumerate(lms):
            if i == j:
                continue
            if _divides(lj, li) and (lj != li or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    B = [G[i] for i in keep]
    Bl = [lms[i] for i in keep]
    out = []
    for idx in range(len(B)):
        others = [B[k] for k in range(len(B)) if k != idx]
        others_l = [Bl[k] for k in range(len(B)) if k != idx]
        lead = Bl[idx]
        tail = {e: c for e, c in B[idx].items() if e != lead}
        r = ring.reduce(tail, others, others_l)
        lc = B[idx][lead]
        poly = {e: c / lc for e, c in r.items()}
        poly[lead] = Fraction(1)
        out.append((lead, SparsePolynomial(dim, poly)))
    out.sort(key=lambda t: ring.key(t[0]), reverse=True)
    return [p for _, p in out]


def normal_form(F: SparsePolynomial, GB: GroebnerBasis) -> SparsePolynomial:
    if GB.generators and F.dim != GB.generators[0].dim:
        raise ContractViolation(f"dimension mismatch: {F.dim} vs {GB.generators[0].dim}")
    ring = _Ring(GB.order)
    G = [dict(g.items()) for g in GB.generators]
    lms = [ring.lm(g) for g in G]
    return SparsePolynomial(F.dim, ring.reduce(dict(F.items()), G, lms))


def is_groebner(GB: GroebnerBasis) -> bool:
    """Post-hoc check that every S-polynomial reduces to zero."""
    ring = _Ring(GB.order)
    G = [dict(g.items()) for g in GB.generators]
    lms = [ring.lm(g) for g in G]
    for j in range(len(G)):
        for i in range(j):
            if ring.reduce(ring.spoly(G[i], G[j], lms[i], lms[j]), G, lms):
                return False
    return True


def ideal_member(F: SparsePolynomial, gens: Sequence[SparsePolynomial]) -> bool:
    _check_gens(gens)
    if F.dim != gens[0].dim:
        raise ContractViolation(f"dimension mismatch: {F.dim} vs {gens[0].dim}")
    if F.is_zero():
        return True
    return normal_form(F, buchberger(gens)).is_zero()


def _contains_one(gens: Sequence[SparsePolynomial]) -> bool:
    return buchberger(gens, stop_at_unit=True).is_unit_ideal()


def has_common_zero_affine(gens: Sequence[SparsePolynomial]) -> bool:
    """Common zero in affine space over the algebraic closure (weak Nullstellensatz)."""
    _check_gens(gens)
    return not _contains_one(gens)


def _lift(p: SparsePolynomial) -> SparsePolynomial:
    return SparsePolynomial._raw(p.dim + 1, {e + (0,): c for e, c in p.items()})


def _rabinowitsch(gens: Sequence[SparsePolynomial], g: SparsePolynomial) -> list[SparsePolynomial]:
    """``gens`` plus ``1 - t*g`` in one extra (last, smallest) variable ``t``."""
    n = g.dim
    t = SparsePolynomial.variable(n + 1, n)
    return [_lift(p) for p in gens] + [SparsePolynomial.constant(n + 1, 1) - t * _lift(g)]


def has_common_zero_torus(gens: Sequence[SparsePolynomial]) -> bool:
    """Common zero with every coordinate nonzero.  Zero generators are ignored;
    an all-zero (or empty) system vanishes on the whole torus."""
    live = [g for g in gens if g]
    if not live:
        return True
    dims = {g.dim for g in gens}
    if len(dims) != 1:
        raise ContractViolation(f"generators of mixed dimension {sorted(dims)}")
    n = live[0].dim
    prod = SparsePolynomial.monomial((1,) * n)
    return not _contains_one(_rabinowitsch(live, prod))


def radical_member(F: SparsePolynomial, gens: Sequence[SparsePolynomial]) -> bool:
    """Whether ``F`` vanishes on the common zero set of ``gens``."""
    _check_gens(gens)
    if F.dim != gens[0].dim:
        raise ContractViolation(f"dimension mismatch: {F.dim} vs {gens[0].dim}")
    if F.is_zero():
        return True
    return _contains_one(_rabinowitsch([g for g in gens if g], F))
