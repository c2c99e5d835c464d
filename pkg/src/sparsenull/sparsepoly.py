"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ContractViolation, DegenerateInput, HypothesisViolation
from .exact_linalg import format_rational, parse_rational
from .polytope import Face, LatticePolytope, hull


class SparsePolynomial:
    """Finite map ``exponent -> nonzero Fraction`` in ``dim`` variables.

    Instances are immutable; arithmetic returns new polynomials.
    """

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping | Iterable = ()):
        self.dim = dim
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim:
                raise ContractViolation(f"exponent {exp} has length {len(exp)}, expected {dim}")
            if any(e < 0 for e in exp):
                raise ContractViolation(f"negative exponent {exp}")
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(c)
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "SparsePolynomial":
        p = cls.__new__(cls)
        p.dim = dim
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, dim: int, c=1) -> "SparsePolynomial":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def variable(cls, dim: int, i: int) -> "SparsePolynomial":
        return cls(dim, {tuple(int(j == i) for j in range(dim)): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "SparsePolynomial":
        return cls(len(exp), {tuple(exp): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePolynomial.constant(self.dim, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            if other.dim != self.dim:
                raise ContractViolation(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePolynomial.constant(self.dim, other)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePolynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePolynomial._raw(self.dim, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ContractViolation("power must be a nonnegative integer")
        result = SparsePolynomial.constant(self.dim, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "SparsePolynomial":
        c = Fraction(c)
        if not c:
            return SparsePolynomial(self.dim)
        return SparsePolynomial._raw(self.dim, {e: v * c for e, v in self._terms.items()})

    def shift(self, beta: Sequence[int]) -> "SparsePolynomial":
        """Multiply by the monomial ``z^beta``."""
        return SparsePolynomial._raw(
            self.dim, {tuple(a + b for a, b in zip(e, beta)): c for e, c in self._terms.items()}
        )

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def evaluate(self, x: Sequence) -> Fraction:
        if len(x) != self.dim:
            raise ContractViolation(f"point of length {len(x)} for {self.dim} variables")
        x = [Fraction(v) for v in x]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for xi, ei in zip(x, e):
                if ei:
                    term *= xi ** ei
            total += term
        return total

    # -- JSON -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [{"coeff": format_rational(c), "exp": list(e)} for e, c in sorted(self._terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SparsePolynomial":
        try:
            dim = data["dim"]
            raw = data["terms"]
        except (KeyError, TypeError) as exc:
            raise ContractViolation(f"polynomial JSON needs 'dim' and 'terms': {exc}") from exc
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise ContractViolation(f"bad polynomial dim {dim!r}")
        terms = []
        for t in raw:
            try:
                exp, coeff = t["exp"], t["coeff"]
            except (KeyError, TypeError) as exc:
                raise ContractViolation(f"term needs 'coeff' and 'exp': {t!r}") from exc
            if not all(isinstance(a, int) and not isinstance(a, bool) for a in exp):
                raise ContractViolation(f"exponent must be integers: {exp!r}")
            terms.append((tuple(exp), parse_rational(coeff)))
        return cls(dim, terms)

    # -- text -----------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"z{i + 1}" for i in range(self.dim)]
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0]))):
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"SparsePolynomial({self.dim}, {self.to_str()!r})"


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(\*\*|[-+*^()]))")


def parse_infix(text: str, names: Sequence[str]) -> SparsePolynomial:
    """Parse e.g. ``"z1^2*z2 - 3/2*z1 + 1"`` over the given variable names.

    Grammar: sums of products of numbers, variables and parenthesised
    expressions, each optionally raised to a nonnegative integer power.
    """
    dim = len(names)
    index = {n: i for i, n in enumerate(names)}
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ContractViolation(f"cannot parse {text!r} at column {pos + 1}")
        num, name, op = m.groups()
        tokens.append(("num", num) if num else ("name", name) if name else ("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        sign = 1
        if peek() in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        acc = term().scale(sign)
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = factor()
        while peek() == ("op", "*"):
            take()
            acc = acc * factor()
        return acc

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or "/" in val:
                raise ContractViolation(f"exponent must be a nonnegative integer in {text!r}")
            base = base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return SparsePolynomial.constant(dim, parse_rational(val))
        if kind == "name":
            if val not in index:
                raise ContractViolation(f"unknown variable {val!r} in {text!r}")
            return SparsePolynomial.variable(dim, index[val])
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ContractViolation(f"unbalanced parentheses in {text!r}")
            return inner
        if (kind, val) == ("op", "-"):
            return -factor()
        raise ContractViolation(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if peek()[0] != "end":
        raise ContractViolation(f"trailing input in {text!r}")
    return result


def _same_dim(polys: Sequence[SparsePolynomial]) -> int:
    dims = {p.dim for p in polys}
    if len(dims) != 1:
        raise ContractViolation(f"polynomials of mixed dimension {sorted(dims)}")
    return dims.pop()


def support(F: SparsePolynomial) -> list[tuple[int, ...]]:
    return F.support()


def newton_polytope(*polys: SparsePolynomial) -> LatticePolytope:
    if len(polys) == 1 and not isinstance(polys[0], SparsePolynomial):
        polys = tuple(polys[0])
    if not polys:
        raise DegenerateInput("Newton polytope of no polynomials")
    dim = _same_dim(polys)
    pts = {e for p in polys for e in p.support()}
    if not pts:
        raise DegenerateInput("Newton polytope of zero polynomials")
    return hull(pts, dim=dim)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def facial_form(F: SparsePolynomial, w: Sequence[int]) -> SparsePolynomial:
    """Terms of ``F`` whose exponent minimises ``<alpha, w>``."""
    if F.is_zero():
        raise DegenerateInput("facial form of the zero polynomial")
    if len(w) != F.dim:
        raise ContractViolation("weight dimension differs from polynomial dimension")
    level = min(_dot(e, w) for e in F._terms)
    return SparsePolynomial._raw(F.dim, {e: c for e, c in F._terms.items() if _dot(e, w) == level})


def restrict_to_level(F: SparsePolynomial, w: Sequence[int], level) -> SparsePolynomial:
    """Terms of ``F`` with ``<alpha, w> == level``."""
    return SparsePolynomial._raw(F.dim, {e: c for e, c in F._terms.items() if _dot(e, w) == level})


def facial_system(
    F: Sequence[SparsePolynomial],
    face: Face,
    polytopes: Sequence[LatticePolytope] | None = None,
) -> list[SparsePolynomial]:
    """Restrict each ``F_j`` to the face's supporting level.

    ``face`` is a face of some polytope ``P``; ``w`` is the sum of its tight
    facet normals.  Each ``F_j`` keeps the terms at level
    ``min_{x in P_j} <x, w>``, where ``P_j`` is ``polytopes[j]`` when given
    and ``P`` otherwise.
    """
    P = face.polytope
    own = list(polytopes) if polytopes is not None else [P] * len(F)
    if len(own) != len(F):
        raise ContractViolation("one polytope per generator required")
    w = face.weight()
    out = []
    for j, (f, Pj) in enumerate(zip(F, own)):
        for e in f.support():
            if not Pj.contains(e):
                raise HypothesisViolation(
                    f"support of generator {j + 1} is not contained in its polytope",
                    witness={"generator": j + 1, "exponent": list(e)},
                )
        out.append(restrict_to_level(f, w, Pj.min_weight(w)))
    return out


def evaluate(F: SparsePolynomial, x: Sequence) -> Fraction:
    return F.evaluate(x)
