"""Loading of system files.

A system file is JSON::

    {
      "variables": ["z1", "z2"],
      "generators": [<polynomial>, ...],
      "target": <polynomial>,                  # optional for some commands
      "polytopes": {"P": <polytope>, ...},     # optional
      "generator_polytopes": ["P1", "P2"]      # optional, one name per generator
    }

Polynomials are ``{"dim": n, "terms": [{"coeff": "p/q", "exp": [...]}]}``,
or infix strings such as ``"z1^2*z2 - 1"`` when infix parsing is enabled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ContractViolation, SparseNullError
from .polytope import LatticePolytope
from .sparsepoly import SparsePolynomial, parse_infix


class SystemFileError(SparseNullError):
    """Malformed input file; the message names the line or the field."""


@dataclass
class SystemFile:
    variables: list
    generators: list
    target: SparsePolynomial | None = None
    polytopes: dict = field(default_factory=dict)
    generator_polytopes: list | None = None

    @property
    def dim(self) -> int:
        return len(self.variables)


def read_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SystemFileError(f"{path}: cannot read file: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemFileError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _poly(raw, where: str, names: list, infix: bool) -> SparsePolynomial:
    try:
        if isinstance(raw, str):
            if not infix:
                raise ContractViolation("infix string given; pass --parse-infix or use polynomial JSON")
            return parse_infix(raw, names)
        p = SparsePolynomial.from_json(raw)
    except ContractViolation as exc:
        raise SystemFileError(f"field {where}: {exc}") from exc
    if p.dim != len(names):
        raise SystemFileError(f"field {where}: dim {p.dim} but {len(names)} variables")
    return p


def parse_system(data, source: str = "<input>", infix: bool = False) -> SystemFile:
    if not isinstance(data, dict):
        raise SystemFileError(f"{source}: top level must be a JSON object")
    names = data.get("variables")
    if not isinstance(names, list) or not all(isinstance(v, str) and v for v in names):
        raise SystemFileError(f"{source}: field variables: expected a list of names")
    if len(set(names)) != len(names):
        dup = sorted({v for v in names if names.count(v) > 1})
        raise SystemFileError(f"{source}: field variables: duplicate names {dup}")
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise SystemFileError(f"{source}: field generators: expected a nonempty list")
    generators = [_poly(g, f"generators[{i}]", names, infix) for i, g in enumerate(gens)]
    target = None
    if data.get("target") is not None:
        target = _poly(data["target"], "target", names, infix)
    polytopes = {}
    raw_polys = data.get("polytopes", {}) or {}
    if not isinstance(raw_polys, dict):
        raise SystemFileError(f"{source}: field polytopes: expected an object of named polytopes")
    for name, raw in raw_polys.items():
        try:
            P = LatticePolytope.from_json(raw)
        except SparseNullError as exc:
            raise SystemFileError(f"{source}: field polytopes.{name}: {exc}") from exc
        if P.dim != len(names):
            raise SystemFileError(f"{source}: field polytopes.{name}: dim {P.dim} but {len(names)} variables")
        polytopes[name] = P
    gp = data.get("generator_polytopes")
    if gp is not None:
        if not isinstance(gp, list) or len(gp) != len(generators):
            raise SystemFileError(f"{source}: field generator_polytopes: need one name per generator")
        for i, name in enumerate(gp):
            if name not in polytopes:
                raise SystemFileError(f"{source}: field generator_polytopes[{i}]: unknown polytope {name!r}")
    return SystemFile(list(names), generators, target, polytopes, gp)


def load_system(path, infix: bool = False) -> SystemFile:
    return parse_system(read_json(path), str(path), infix)


def system_to_json(system: SystemFile) -> dict:
    out = {
        "variables": system.variables,
        "generators": [g.to_json() for g in system.generators],
        "target": system.target.to_json() if system.target is not None else None,
    }
    if system.polytopes:
        out["polytopes"] = {k: P.to_json() for k, P in system.polytopes.items()}
    if system.generator_polytopes:
        out["generator_polytopes"] = system.generator_polytopes
    return out
