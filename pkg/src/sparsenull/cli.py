"""Command-line interface.

Exit codes: 0 success / true, 1 parse or usage error, 2 hypothesis failure
or unverifiable hypothesis, 3 negative mathematical verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import bounds
from .errors import (
    ContractViolation,
    DegenerateInput,
    HypothesisUnverifiable,
    HypothesisViolation,
    SparseNullError,
)
from .groebner import has_common_zero_affine, has_common_zero_torus, ideal_member, radical_member
from .infinity import genericity_probe, no_zeros_anywhere, no_zeros_at_infinity
from .membership import Certificate, default_cmax, escalate_solve, solve_membership, verify_certificate
from .polytope import (
    LatticePolytope,
    dilate,
    hull,
    is_summand,
    lattice_points,
    min_integer_dilation,
    minkowski_diff,
    minkowski_sum,
    non_smooth_vertices,
    simplex,
)
from .sparsepoly import SparsePolynomial, newton_polytope
from .systemfile import SystemFile, SystemFileError, load_system, read_json, system_to_json

EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_NEGATIVE = 0, 1, 2, 3

THEOREMS = ("macaulay", "noether", "briancon-skoda", "tuitman", "custom")


class UsageError(SparseNullError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write(path, obj) -> None:
    if path:
        Path(path).write_text(_dump(obj))


def _verts(P: LatticePolytope) -> str:
    return "[" + ", ".join("(" + ",".join(str(c) for c in v) + ")" for v in P.vertices) + "]"


def _polytope(system: SystemFile, name: str | None, required: bool = False) -> LatticePolytope:
    if name is None:
        if required:
            raise UsageError("--polytope NAME is required for this command")
        return newton_polytope(system.generators)
    if name not in system.polytopes:
        raise UsageError(f"no polytope named {name!r} in the system file (have {sorted(system.polytopes)})")
    return system.polytopes[name]


def _target(system: SystemFile) -> SparsePolynomial:
    if system.target is None:
        raise UsageError("the system file has no target polynomial")
    return system.target


def _print_hypotheses(plan, names) -> None:
    for h in plan.hypotheses:
        mark = {True: "pass", False: "FAIL", None: "skip"}[h.passed]
        line = f"  [{mark}] {h.name}"
        if h.witness is not None:
            w = h.to_json(names)["witness"]
            line += f"  witness: {json.dumps(w)}"
        print(line)


# -- subcommands -------------------------------------------------------

def cmd_check(args) -> int:
    system = load_system(args.input, args.parse_infix)
    P = _polytope(system, args.polytope)
    if args.mode == "infinity":
        verdict = no_zeros_at_infinity(system.generators, P)
    else:
        verdict = no_zeros_anywhere(system.generators, P)
    out = verdict.to_json(system.variables)
    print(f"mode: {args.mode}")
    print(f"polytope: {_verts(P)}")
    print(f"ok: {str(verdict.ok).lower()}")
    if not verdict.ok:
        print(f"witness face (dim {out['witness_face']['dim']}): {out['witness_face']['vertices']}")
        print(f"facial system: {out['witness_system']}")
    _write(args.out, out)
    return EXIT_OK if verdict.ok else EXIT_NEGATIVE


def _plan(system: SystemFile, args):
    F, phi = system.generators, _target(system)
    theorem = args.theorem
    if theorem == "macaulay":
        return bounds.plan_macaulay(F, phi)
    if theorem == "noether":
        return bounds.plan_noether(F, phi, _polytope(system, args.polytope, required=True))
    if theorem == "briancon-skoda":
        return bounds.plan_briancon_skoda(
            F, phi, _polytope(system, args.polytope, required=True), args.assert_integral_closure
        )
    if theorem == "tuitman":
        if not system.generator_polytopes:
            raise UsageError("tuitman needs 'generator_polytopes' in the system file")
        Pjs = [system.polytopes[name] for name in system.generator_polytopes]
        return bounds.plan_tuitman(F, Pjs, _polytope(system, args.polytope, required=True), phi)
    raise AssertionError(theorem)


def cmd_solve(args) -> int:
    system = load_system(args.input, args.parse_infix)
    F, phi = system.generators, _target(system)
    n = system.dim
    start = time.perf_counter()
    tag = args.theorem.replace("-", "_")
    c_used = None

    if args.theorem == "custom":
        P = _polytope(system, args.polytope, required=True)
        e = min_integer_dilation(P, (phi ** args.power).support())
        if e is None:
            raise HypothesisViolation("target support lies in no integer dilation of the polytope")
        e = max(e, args.e_override or 0)
        c_max = args.cmax or default_cmax(n, e)
        print("theorem: custom (no hypothesis checks)")
        print(f"polytope: {_verts(P)}")
        print(f"e: {e}  power: {args.power}  search: c = {e}..{c_max}")
        found = escalate_solve(F, phi, args.power, P, e, c_max, tag)
        if found is None:
            print(f"result: no certificate with support in cP for c <= {c_max}")
            return EXIT_NEGATIVE
        cert, c_used = found
    else:
        plan = _plan(system, args)
        print(f"theorem: {args.theorem}")
        _print_hypotheses(plan, system.variables)
        if not plan.ok:
            print("result: hypotheses failed; no bound is licensed")
            return EXIT_HYPOTHESIS
        e = plan.e
        if args.e_override is not None:
            if args.theorem == "tuitman":
                raise UsageError("--e-override does not apply to tuitman (the bound is the given polytope)")
            if args.e_override < plan.e:
                raise UsageError(f"--e-override {args.e_override} is below the computed e = {plan.e}")
            e = args.e_override
        if args.theorem == "noether":
            c_start = max(e, 1)
            c_max = args.cmax or plan.escalation[1]
            if c_max < c_start:
                raise UsageError(f"--cmax {c_max} is below the starting dilation {c_start}")
            print(f"e: {e}  power: 1  search: c = {c_start}..{c_max} times {_verts(plan.base)}")
            found = escalate_solve(F, phi, 1, plan.base, c_start, c_max, tag)
            if found is None:
                print(f"result: no certificate found for c <= {c_max}")
                return EXIT_NEGATIVE
            cert, c_used = found
        else:
            bound, power = plan.bound, plan.power
            if e != plan.e:
                factor = max(n + 1, e) if args.theorem == "macaulay" else max(n + 1, n * e)
                bound = dilate(plan.base, factor)
            print(f"e: {e}  power: {power}")
            cert = solve_membership(F, phi, power, bound, tag)
            if cert is None:
                print(f"result: no certificate with support in {_verts(bound)}")
                return EXIT_NEGATIVE

    elapsed = time.perf_counter() - start
    print(f"bound: {_verts(cert.bound)}")
    if c_used is not None:
        print(f"c: {c_used}")
    print(f"power: {cert.power}")
    print(f"matrix: {cert.matrix_shape[0]} x {cert.matrix_shape[1]}")
    for j, g in enumerate(cert.cofactors, start=1):
        print(f"G_{j} = {g.to_str(system.variables)}")
    print(f"verified: {str(bool(verify_certificate(cert, F, phi))).lower()}")
    print(f"time: {elapsed:.3f}s")
    _write(args.out, cert.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    system = load_system(args.system, args.parse_infix)
    try:
        cert = Certificate.from_json(read_json(args.cert))
    except ContractViolation as exc:
        raise SystemFileError(f"{args.cert}: {exc}") from exc
    result = verify_certificate(cert, system.generators, _target(system))
    print("ok" if result else f"FAILED: {result.reason}")
    _write(args.out, result.to_json())
    return EXIT_OK if result else EXIT_NEGATIVE


def compare_table(system: SystemFile) -> dict:
    F = system.generators
    phi = system.target if system.target is not None else SparsePolynomial.constant(system.dim, 1)
    n, m = system.dim, len(F)
    d = max(f.total_degree() for f in F)
    deg_phi = max(phi.total_degree(), 0)
    ref = bounds.classical_reference(max(d, 1), n, m, deg_phi)
    NP = newton_polytope(F)
    e_sparse = min_integer_dilation(NP, phi.support())
    dense = simplex(n, max(d, 1))
    e_dense = min_integer_dilation(dense, phi.support())
    row = {"reference": ref, "n": n, "m": m, "d": d, "deg_phi": deg_phi, "newton_polytope": NP.to_json()}
    dense_bound = dilate(dense, max(n + 1, e_dense))
    row["dense_bound"] = {"factor": max(n + 1, e_dense), "degree": max(n + 1, e_dense) * max(d, 1),
                          "lattice_points": len(lattice_points(dense_bound))}
    if e_sparse is None:
        row["sparse_bound"] = None
        row["ratio"] = None
    else:
        sparse_bound = dilate(NP, max(n + 1, e_sparse))
        count = len(lattice_points(sparse_bound))
        row["sparse_bound"] = {"factor": max(n + 1, e_sparse), "polytope": sparse_bound.to_json(),
                               "lattice_points": count}
        ratio = Fraction(count, row["dense_bound"]["lattice_points"])
        row["ratio"] = str(ratio)
    return row


def cmd_compare(args) -> int:
    system = load_system(args.input, args.parse_infix)
    row = compare_table(system)
    ref = row["reference"]
    lines = [
        ("variables n", row["n"]),
        ("generators m", row["m"]),
        ("dense degree d", row["d"]),
        ("deg target", row["deg_phi"]),
        ("Macaulay degree (n+1)d-n", ref["macaulay_degree"]),
        ("Kollar nu bound d^min(m,n)", ref["kollar_nu"]),
        ("Kollar degree (1+deg)d^min(m,n)", ref["kollar_degree"]),
        ("Sombra factor 2^(n+1)", ref["sombra_factor"] if ref["sombra_applies"] else "n/a"),
        ("Briancon-Skoda nu min(m,n)", ref["briancon_skoda_nu"]),
        ("Noether degree deg target", ref["noether_degree"]),
        ("dense bound", f"{row['dense_bound']['factor']}*{row['d']}*Sigma^{row['n']} "
                        f"(degree {row['dense_bound']['degree']})"),
        ("dense lattice points", row["dense_bound"]["lattice_points"]),
    ]
    if row["sparse_bound"] is None:
        lines.append(("sparse bound", "target outside every dilation of NP"))
    else:
        sb = row["sparse_bound"]
        lines += [
            ("sparse bound", f"{sb['factor']}*NP = {sb['polytope']['vertices']}"),
            ("sparse lattice points", sb["lattice_points"]),
            ("ratio sparse/dense", f"{row['ratio']} = {float(Fraction(row['ratio'])):.4f}"),
        ]
    width = max(len(k) for k, _ in lines)
    for k, v in lines:
        print(f"{k.ljust(width)}  {v}")
    _write(args.out, row)
    return EXIT_OK


def cmd_oracle(args) -> int:
    system = load_system(args.input, args.parse_infix)
    F = system.generators
    if args.query == "member":
        answer = ideal_member(_target(system), F)
    elif args.query == "radical":
        answer = radical_member(_target(system), F)
    elif args.query == "torus":
        answer = has_common_zero_torus(F)
    else:
        answer = has_common_zero_affine(F)
    print(f"{args.query}: {str(answer).lower()}")
    _write(args.out, {"query": args.query, "answer": answer})
    return EXIT_OK if answer else EXIT_NEGATIVE


def _load_polytope(path) -> LatticePolytope:
    data = read_json(path)
    try:
        if isinstance(data, dict) and "points" in data:
            return hull(data["points"], dim=data.get("dim"))
        return LatticePolytope.from_json(data)
    except ContractViolation as exc:
        raise SystemFileError(f"{path}: {exc}") from exc


def cmd_polytope(args) -> int:
    op = args.op
    polys = [_load_polytope(p) for p in args.files]
    need = {"hull": 1, "points": 1, "smooth": 1, "sum": 2, "diff": 2, "summand": 2}[op]
    if len(polys) != need:
        raise UsageError(f"polytope {op} takes {need} file(s)")
    if op in ("hull", "sum", "diff"):
        if op == "hull":
            R = polys[0]
        elif op == "sum":
            R = minkowski_sum(*polys)
        else:
            R = minkowski_diff(*polys)
            if R is None:
                print("empty")
                _write(args.out, None)
                return EXIT_NEGATIVE
        print(f"vertices: {_verts(R)}")
        for h in R.inequalities:
            print(f"  <{h.normal}, x> >= {h.offset}")
        _write(args.out, R.to_json())
        return EXIT_OK
    if op == "points":
        pts = lattice_points(polys[0])
        print(f"{len(pts)} lattice points")
        for p in pts:
            print("  " + " ".join(str(c) for c in p))
        _write(args.out, [list(p) for p in pts])
        return EXIT_OK
    if op == "smooth":
        bad = non_smooth_vertices(polys[0])
        print(f"smooth: {str(not bad).lower()}")
        for v, why in bad:
            print(f"  vertex {v}: {why}")
        _write(args.out, {"smooth": not bad, "bad_vertices": [[list(v), why] for v, why in bad]})
        return EXIT_OK if not bad else EXIT_NEGATIVE
    answer = is_summand(polys[0], polys[1])
    print(f"summand: {str(answer).lower()}")
    _write(args.out, {"summand": answer})
    return EXIT_OK if answer else EXIT_NEGATIVE


def cmd_probe(args) -> int:
    P = _load_polytope(args.polytope_file)
    F = genericity_probe(P, args.count, args.seed)
    names = [f"z{i + 1}" for i in range(P.dim)]
    for j, f in enumerate(F, start=1):
        print(f"F_{j} = {f.to_str(names)}")
    code = EXIT_OK
    if F and args.count >= P.dim + 1:
        v = no_zeros_anywhere(F, P)
        print(f"no zeros anywhere: {str(v.ok).lower()}")
        code = EXIT_OK if v.ok else EXIT_NEGATIVE
    elif F and P.contains((0,) * P.dim):
        v = no_zeros_at_infinity(F, P)
        print(f"no zeros at infinity: {str(v.ok).lower()}")
        code = EXIT_OK if v.ok else EXIT_NEGATIVE
    system = SystemFile(names, F, SparsePolynomial.constant(P.dim, 1), {"P": P})
    _write(args.out, system_to_json(system))
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparsenull", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--parse-infix", action="store_true", help="accept infix polynomial strings")
    common.add_argument("--out", help="write the JSON artifact to this path")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="no-common-zeros checks")
    p.add_argument("input")
    p.add_argument("--mode", choices=("infinity", "anywhere"), default="anywhere")
    p.add_argument("--polytope", help="named polytope (default: Newton polytope)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[common], help="plan a theorem and search for a certificate")
    p.add_argument("input")
    p.add_argument("--theorem", choices=THEOREMS, default="macaulay")
    p.add_argument("--polytope")
    p.add_argument("--e-override", type=int)
    p.add_argument("--cmax", type=int)
    p.add_argument("--power", type=int, default=1, help="target power (custom theorem only)")
    p.add_argument("--assert-integral-closure", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="verify a certificate against a system")
    p.add_argument("system")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", parents=[common], help="sparse vs classical bounds")
    p.add_argument("input")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("oracle", parents=[common], help="Groebner-basis oracle queries")
    p.add_argument("input")
    p.add_argument("--query", choices=("member", "radical", "torus", "affine"), required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("polytope", parents=[common], help="polytope operations on JSON files")
    p.add_argument("op", choices=("hull", "sum", "diff", "summand", "smooth", "points"))
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("probe", parents=[common], help="random dense systems on a polytope")
    p.add_argument("polytope_file")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SystemFileError, UsageError, ContractViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HypothesisUnverifiable as exc:
        print(f"hypothesis unverifiable: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except HypothesisViolation as exc:
        msg = f"hypothesis violated: {exc}"
        if exc.witness is not None:
            msg += f" (witness: {json.dumps(exc.witness)})"
        print(msg, file=sys.stderr)
        return EXIT_HYPOTHESIS
    except DegenerateInput as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
