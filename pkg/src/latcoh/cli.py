"""Command-line front end: problem files in, deterministic JSON documents out.

The problem file is JSON with every integer written as a decimal string,
so no consumer ever needs machine-width integers.  Free generators come
before torsion generators in all coordinate vectors.  Output documents are
byte-deterministic: keys sorted, two-space indent, one trailing newline,
all integers rendered back as decimal strings.

Exit codes: 0 success, 2 malformed input (with a field diagnostic),
3 congruence system incompatible or unliftable, 4 closure cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence

from .complexes import (
    chain_complex,
    cochain_complex,
    h1_witness,
    homology,
    is_boundary,
    is_cycle,
)
from .crt import (
    CrtOutcome,
    ResidueSystem,
    certificate_cocycle_element,
    compatible,
    crt_solve,
    equalizer_check,
    verify_certificate,
)
from .derived import ext, tor
from .groups import (
    AmbientGroup,
    GroupElement,
    PresentedGroup,
    Subgroup,
    subgroup_from_generators,
)
from .intmatrix import IntMatrix
from .lattice import CapExceeded, closure, is_distributive
from .patterns import (
    FLAVORS,
    PatternAssignment,
    euler_consistency,
    gluing_check,
    pattern_cohomology,
)
from . import oracle as oracle_mod

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_UNSOLVED = 3
EXIT_CAP = 4


class ProblemError(Exception):
    """Malformed problem file; the message names the offending field."""


def _s(value: int) -> str:
    return str(int(value))


def _vec(coords: Sequence[int]) -> list:
    return [_s(v) for v in coords]


def _basis_columns(matrix: IntMatrix) -> list:
    return [_vec(col) for col in matrix.columns()]


def _factors(dec) -> list:
    return [_s(d) for d in dec.invariant_factors]


def _parse_int(value, where: str) -> int:
    if isinstance(value, bool):
        raise ProblemError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        text = value.strip()
        sign = text[1:] if text[:1] in "+-" else text
        if sign.isdigit():
            return int(text)
    raise ProblemError(f"{where}: expected a decimal integer string, got {value!r}")


def _parse_vector(value, length: int, where: str) -> list:
    if not isinstance(value, list):
        raise ProblemError(f"{where}: expected a coordinate list")
    if len(value) != length:
        raise ProblemError(
            f"{where}: expected {length} coordinates, got {len(value)}"
        )
    return [_parse_int(v, f"{where}[{i}]") for i, v in enumerate(value)]


class Problem:
    """Parsed problem file: ambient group, named subgroups, families, residues."""

    def __init__(self, ambient: AmbientGroup, subgroups: Dict[str, Subgroup],
                 families: Dict[str, List[str]], residues: Dict[str, GroupElement]):
        self.ambient = ambient
        self.subgroups = subgroups
        self.families = families
        self.residues = residues

    def family(self, name: Optional[str]) -> tuple:
        """(family name, member names) chosen deterministically."""
        if name is not None:
            if name not in self.families:
                raise ProblemError(f"families.{name}: no such family")
            return name, self.families[name]
        if len(self.families) == 1:
            only = next(iter(self.families))
            return only, self.families[only]
        if "main" in self.families:
            return "main", self.families["main"]
        if not self.families:
            names = sorted(self.subgroups)
            if not names:
                raise ProblemError("subgroups: at least one subgroup is required")
            return "(all)", names
        raise ProblemError(
            "families: several families present; pick one with --family"
        )

    def members(self, names: Sequence[str]) -> list:
        return [self.subgroups[n] for n in names]


def parse_problem(path: str) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ProblemError(f"cannot read problem file: {exc}")
    except json.JSONDecodeError as exc:
        raise ProblemError(f"line {exc.lineno}: invalid JSON: {exc.msg}")
    if not isinstance(doc, dict):
        raise ProblemError("top level: expected an object")
    known = {"ambient", "subgroups", "families", "residues"}
    for key in doc:
        if key not in known:
            raise ProblemError(f"{key}: unknown top-level field")

    amb = doc.get("ambient")
    if not isinstance(amb, dict):
        raise ProblemError("ambient: required object with free_rank and torsion")
    rank = _parse_int(amb.get("free_rank", 0), "ambient.free_rank")
    if rank < 0:
        raise ProblemError("ambient.free_rank: must be nonnegative")
    torsion_raw = amb.get("torsion", [])
    if not isinstance(torsion_raw, list):
        raise ProblemError("ambient.torsion: expected a list")
    torsion = [
        _parse_int(v, f"ambient.torsion[{i}]") for i, v in enumerate(torsion_raw)
    ]
    for i, d in enumerate(torsion):
        if d < 2:
            raise ProblemError(f"ambient.torsion[{i}]: orders must be at least 2")
        if i and d % torsion[i - 1]:
            raise ProblemError(
                f"ambient.torsion[{i}]: {torsion[i-1]} does not divide {d}"
            )
    ambient = AmbientGroup(rank, tuple(torsion))
    n = ambient.ngens

    subgroups: Dict[str, Subgroup] = {}
    subs_raw = doc.get("subgroups", {})
    if not isinstance(subs_raw, dict):
        raise ProblemError("subgroups: expected an object of named generator lists")
    for name, gens in subs_raw.items():
        if not isinstance(gens, list):
            raise ProblemError(f"subgroups.{name}: expected a list of vectors")
        vecs = [
            _parse_vector(v, n, f"subgroups.{name}[{i}]") for i, v in enumerate(gens)
        ]
        subgroups[name] = subgroup_from_generators(ambient, vecs)

    families: Dict[str, List[str]] = {}
    fam_raw = doc.get("families", {})
    if not isinstance(fam_raw, dict):
        raise ProblemError("families: expected an object of name lists")
    for fname, names in fam_raw.items():
        if not isinstance(names, list) or not names:
            raise ProblemError(f"families.{fname}: expected a non-empty name list")
        for i, member in enumerate(names):
            if member not in subgroups:
                raise ProblemError(
                    f"families.{fname}[{i}]: unknown subgroup {member!r}"
                )
        families[fname] = list(names)

    residues: Dict[str, GroupElement] = {}
    res_raw = doc.get("residues", {})
    if not isinstance(res_raw, dict):
        raise ProblemError("residues: expected an object of named vectors")
    for name, vec in res_raw.items():
        if name not in subgroups:
            raise ProblemError(f"residues.{name}: unknown subgroup {name!r}")
        residues[name] = ambient.element(_parse_vector(vec, n, f"residues.{name}"))

    return Problem(ambient, subgroups, families, residues)


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _homology_payload(cx, result) -> dict:
    degrees = {}
    reps = {}
    labels = {}
    for q in cx.degrees():
        degrees[_s(q)] = _factors(result.by_degree[q])
        labels[_s(q)] = [list(map(_s, lab)) for lab in cx.terms[q].labels]
        entries = []
        for element, order in result.representatives[q]:
            values = cx.terms[q].component_elements(element)
            entries.append(
                {"order": _s(order), "values": [_vec(v.coords) for v in values]}
            )
        reps[_s(q)] = entries
    return {"degrees": degrees, "labels": labels, "representatives": reps}


def _cmd_homology(problem: Problem, args) -> int:
    fname, names = problem.family(args.family)
    family = problem.members(names)
    build = chain_complex if args.side == "chain" else cochain_complex
    cx = build(family, augment=args.augment)
    result = homology(cx)
    doc = {
        "command": "homology" if args.side == "chain" else "cohomology",
        "family": fname,
        "augmented": bool(args.augment),
        "status": "ok",
    }
    doc.update(_homology_payload(cx, result))
    _emit(doc)
    return EXIT_OK


def _cmd_closure(problem: Problem, args) -> int:
    fname, names = problem.family(args.family)
    family = problem.members(names)
    try:
        lat = closure(family, cap=args.cap)
    except CapExceeded as exc:
        _emit(
            {
                "command": "closure",
                "family": fname,
                "status": "cap_exceeded",
                "cap": _s(exc.cap),
            }
        )
        return EXIT_CAP
    doc = {
        "command": "closure",
        "family": fname,
        "status": "ok",
        "size": _s(len(lat)),
        "seed_indices": [_s(i) for i in lat.seed_indices],
        "members": [_basis_columns(m.basis) for m in lat.members],
    }
    _emit(doc)
    return EXIT_OK


def _cmd_distributive(problem: Problem, args) -> int:
    fname, names = problem.family(args.family)
    family = problem.members(names)
    try:
        lat = closure(family, cap=args.cap)
    except CapExceeded as exc:
        _emit(
            {
                "command": "distributive",
                "family": fname,
                "status": "cap_exceeded",
                "cap": _s(exc.cap),
            }
        )
        return EXIT_CAP
    report = is_distributive(lat)
    doc = {
        "command": "distributive",
        "family": fname,
        "status": "ok",
        "distributive": report.distributive,
        "members": [_basis_columns(m.basis) for m in lat.members],
    }
    if not report.distributive:
        doc["witness_triple"] = [_s(i) for i in report.witness_triple]
        doc["witness_element"] = _vec(report.witness_element.coords)
        doc["lhs_basis"] = _basis_columns(report.lhs_basis)
        doc["rhs_basis"] = _basis_columns(report.rhs_basis)
    _emit(doc)
    return EXIT_OK


def _cmd_h1_witness(problem: Problem, args) -> int:
    fname, names = problem.family(args.family)
    if len(names) != 3:
        raise ProblemError(
            f"families.{fname}: h1-witness needs exactly 3 members, got {len(names)}"
        )
    family = problem.members(names)
    cx = cochain_complex(family)
    result = homology(cx)
    witness = h1_witness(*family)
    doc = {
        "command": "h1-witness",
        "family": fname,
        "status": "ok",
        "h1": _factors(result.by_degree[1]),
        "pairs": [["0", "1"], ["0", "2"], ["1", "2"]],
        "witness": [_vec(v.coords) for v in witness] if witness else None,
    }
    _emit(doc)
    return EXIT_OK


def _system_from_problem(problem: Problem, names: Sequence[str], fname: str) -> ResidueSystem:
    residues = []
    for name in names:
        if name not in problem.residues:
            raise ProblemError(f"residues.{name}: required for crt over {fname}")
        residues.append(problem.residues[name])
    return ResidueSystem(problem.members(names), residues)


def _cmd_crt(problem: Problem, args) -> int:
    fname, names = problem.family(args.family)
    system = _system_from_problem(problem, names, fname)
    outcome = crt_solve(system)
    doc = {
        "command": "crt",
        "family": fname,
        "status": outcome.status,
    }
    if outcome.status == "solved":
        doc["solution"] = _vec(outcome.solution.coords)
        doc["solution_class"] = _vec(outcome.solution_class.coords)
        doc["intersection_basis"] = _basis_columns(outcome.intersection.basis)
    elif outcome.status == "incompatible":
        doc["incompatible_pair"] = [_s(v) for v in outcome.incompatibility]
    else:
        doc["certificate"] = [_vec(v.coords) for v in outcome.certificate]
        doc["intersection_basis"] = _basis_columns(outcome.intersection.basis)
    _emit(doc)
    return EXIT_OK if outcome.status == "solved" else EXIT_UNSOLVED


def _cmd_equalizer(problem: Problem, args) -> int:
    fname, names = problem.family(args.family)
    family = problem.members(names)
    holds, counterexample = equalizer_check(family)
    doc = {
        "command": "equalizer",
        "family": fname,
        "status": "ok",
        "equalizer": holds,
    }
    if counterexample is not None:
        doc["counterexample_residues"] = [
            _vec(a.coords) for a in counterexample.representatives
        ]
    _emit(doc)
    return EXIT_OK


def _cmd_pattern(problem: Problem, args) -> int:
    fname, names = problem.family(args.family)
    family = problem.members(names)
    pattern = PatternAssignment(args.flavor, problem.ambient, family=family)
    result = pattern_cohomology(pattern)
    doc = {
        "command": "pattern",
        "family": fname,
        "flavor": args.flavor,
        "status": "ok",
        "degrees": {_s(q): _factors(d) for q, d in result.by_degree.items()},
    }
    if args.flavor == "ideal":
        try:
            lat = closure(family, cap=args.cap)
        except CapExceeded as exc:
            _emit(
                {
                    "command": "pattern",
                    "family": fname,
                    "flavor": args.flavor,
                    "status": "cap_exceeded",
                    "cap": _s(exc.cap),
                }
            )
            return EXIT_CAP
        report = gluing_check(pattern, lat)
        doc["gluing"] = {
            "holds": report.holds,
            "h0_matches_union_value": report.h0_matches_union_value,
            "condition_intersect": report.condition_intersect,
            "condition_union": report.condition_union,
            "equalizer": report.equalizer,
        }
        if report.counterexample is not None:
            doc["gluing"]["counterexample_residues"] = [
                _vec(a.coords) for a in report.counterexample.representatives
            ]
    if problem.ambient.order() is not None:
        doc["euler_consistency"] = euler_consistency(problem.ambient, family)
    _emit(doc)
    return EXIT_OK


def _module_group(spec: str) -> PresentedGroup:
    parts = [p.strip() for p in spec.split(",") if p.strip()]
    if not parts:
        raise ProblemError("--module: expected a comma-separated factor list")
    orders = [_parse_int(p, "--module") for p in parts]
    cols = []
    n = len(orders)
    for i, d in enumerate(orders):
        if d < 0 or d == 1:
            raise ProblemError("--module: factors must be 0 (free) or at least 2")
        if d:
            col = [0] * n
            col[i] = d
            cols.append(col)
    return PresentedGroup(n, IntMatrix.from_columns(cols, rows=n))


def _cmd_derived(problem: Problem, args) -> int:
    fname, names = problem.family(args.family)
    family = problem.members(names)
    module = _module_group(args.module)
    through = args.degrees if args.degrees is not None else len(family) - 1
    fn = ext if args.which == "ext" else tor
    try:
        table = fn(family, module, through)
    except ValueError as exc:
        raise ProblemError(f"ambient: {exc}")
    doc = {
        "command": args.which,
        "family": fname,
        "module": args.module,
        "status": "ok",
        "degrees": {_s(q): _factors(d) for q, d in table.items()},
    }
    _emit(doc)
    return EXIT_OK


def _replay_homology(problem: Problem, result: dict) -> dict:
    if problem.ambient.order() is None:
        raise ProblemError("ambient: oracle replay needs a finite ambient group")
    fname = result.get("family")
    names = problem.families.get(fname) if fname in problem.families else None
    if names is None:
        _, names = problem.family(None)
    family = problem.members(names)
    build = chain_complex if result.get("command") == "homology" else cochain_complex
    cx = build(family, augment=bool(result.get("augmented")))
    brute = oracle_mod.brute_homology(cx)
    expected = {
        _s(q): _factors(dec) for q, dec in brute.items()
    }
    return {"verified": expected == result.get("degrees"), "recomputed": expected}


def _replay_distributive(problem: Problem, result: dict) -> dict:
    members = [
        subgroup_from_generators(
            problem.ambient, [[int(x) for x in col] for col in basis]
        )
        for basis in result.get("members", [])
    ]
    claim = result.get("distributive")
    finite = problem.ambient.order() is not None
    if claim is False:
        tri = [int(v) for v in result["witness_triple"]]
        element = problem.ambient.element([int(v) for v in result["witness_element"]])
        a, b, c = (members[i] for i in tri)
        if finite:
            ok = oracle_mod.verify_separating_element(a, b, c, element)
        else:
            from .groups import sub_intersect, sub_sum

            lhs = sub_intersect(a, sub_sum(b, c))
            rhs = sub_sum(sub_intersect(a, b), sub_intersect(a, c))
            ok = lhs.contains(element) and not rhs.contains(element)
        return {"verified": ok}
    if finite:
        verdict, _ = oracle_mod.brute_distributive(members)
    else:
        verdict = is_distributive(closure(members)).distributive
    return {"verified": verdict is True}


def _replay_h1(problem: Problem, result: dict) -> dict:
    fname = result.get("family")
    names = problem.families.get(fname) if fname in problem.families else None
    if names is None:
        _, names = problem.family(None)
    family = problem.members(names)
    witness = result.get("witness")
    if witness is None:
        return {"verified": h1_witness(*family) is None}
    values = [problem.ambient.element([int(x) for x in v]) for v in witness]
    small = problem.ambient.order() is not None and problem.ambient.order() <= 4096
    if small:
        ok = oracle_mod.verify_cocycle_witness(family, values)
    else:
        cx, element = certificate_cocycle_element(family, values)
        ok = is_cycle(cx, 1, element) and not is_boundary(cx, 1, element)
    return {"verified": ok}


def _replay_crt(problem: Problem, result: dict) -> dict:
    fname = result.get("family")
    names = problem.families.get(fname) if fname in problem.families else None
    if names is None:
        _, names = problem.family(None)
    system = _system_from_problem(problem, names, fname or "(all)")
    status = result.get("status")
    finite = problem.ambient.order() is not None
    if status == "solved":
        a = problem.ambient.element([int(x) for x in result["solution"]])
        ok = all(
            m.contains(a - r)
            for m, r in zip(system.moduli, system.representatives)
        )
        if finite and problem.ambient.order() <= 4096:
            ok = ok and (a.coords in oracle_mod.brute_crt_solutions(system))
        return {"verified": ok}
    if status == "incompatible":
        ok_flag, pair = compatible(system)
        return {
            "verified": (not ok_flag)
            and [_s(v) for v in pair] == result.get("incompatible_pair")
        }
    values = [problem.ambient.element([int(x) for x in v]) for v in result["certificate"]]
    ok = verify_certificate(system.moduli, values)
    if finite and problem.ambient.order() <= 4096:
        ok = ok and not oracle_mod.brute_crt_solutions(system)
    return {"verified": ok}


def _replay_equalizer(problem: Problem, result: dict) -> dict:
    fname = result.get("family")
    names = problem.families.get(fname) if fname in problem.families else None
    if names is None:
        _, names = problem.family(None)
    family = problem.members(names)
    if result.get("equalizer") is True:
        holds, _ = equalizer_check(family)
        return {"verified": holds is True}
    residues = [
        problem.ambient.element([int(x) for x in v])
        for v in result["counterexample_residues"]
    ]
    system = ResidueSystem(family, residues)
    ok_flag, _ = compatible(system)
    outcome = crt_solve(system)
    ok = ok_flag and outcome.status == "no_solution"
    if problem.ambient.order() is not None and problem.ambient.order() <= 4096:
        ok = ok and not oracle_mod.brute_crt_solutions(system)
    return {"verified": ok}


def _cmd_oracle(problem: Problem, args) -> int:
    if args.check is None:
        if problem.ambient.order() is None:
            raise ProblemError("ambient: oracle recomputation needs a finite group")
        fname, names = problem.family(args.family)
        family = problem.members(names)
        payload = {}
        for side, build in (("chain", chain_complex), ("cochain", cochain_complex)):
            cx = build(family)
            brute = oracle_mod.brute_homology(cx)
            exact = homology(cx)
            payload[side] = {
                "brute": {_s(q): _factors(d) for q, d in brute.items()},
                "matches_exact": all(
                    brute[q] == exact.by_degree[q] for q in cx.degrees()
                ),
            }
        _emit(
            {
                "command": "oracle",
                "family": fname,
                "status": "ok",
                "homology": payload,
            }
        )
        return EXIT_OK
    try:
        with open(args.check, "r", encoding="utf-8") as fh:
            result = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemError(f"--check: cannot read result document: {exc}")
    command = result.get("command")
    replays = {
        "homology": _replay_homology,
        "cohomology": _replay_homology,
        "distributive": _replay_distributive,
        "h1-witness": _replay_h1,
        "crt": _replay_crt,
        "equalizer": _replay_equalizer,
    }
    if command not in replays:
        raise ProblemError(f"--check: no oracle replay for command {command!r}")
    detail = replays[command](problem, result)
    _emit(
        {
            "command": "oracle",
            "checked": command,
            "status": "ok",
            **detail,
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latcoh",
        description="Exact homological computations on families of subgroups",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("problem", help="path to the JSON problem file")
        p.add_argument("--family", default=None, help="named family to use")
        p.add_argument(
            "--threads",
            type=int,
            default=1,
            help="parallelism cap (accepted for compatibility; single-threaded)",
        )

    p = sub.add_parser("homology", help="chain-side homology of a family")
    common(p)
    p.add_argument("--augment", action="store_true", help="include the degree -1 sum term")

    p = sub.add_parser("cohomology", help="cochain-side cohomology of a family")
    common(p)
    p.add_argument("--augment", action="store_true", help="include the degree -1 intersection term")

    p = sub.add_parser("closure", help="close a family under sum and intersection")
    common(p)
    p.add_argument("--cap", type=int, default=512, help="member cap (default 512)")

    p = sub.add_parser("distributive", help="decide distributivity of the closure")
    common(p)
    p.add_argument("--cap", type=int, default=512)

    p = sub.add_parser("h1-witness", help="nontrivial degree-1 cocycle of a triple")
    common(p)

    p = sub.add_parser("crt", help="solve the residue system of a family")
    common(p)

    p = sub.add_parser("equalizer", help="check that compatible systems always lift")
    common(p)

    p = sub.add_parser("pattern", help="pattern cohomology of the covering")
    common(p)
    p.add_argument("--flavor", choices=list(FLAVORS), default="ideal")
    p.add_argument("--cap", type=int, default=512)

    for which in ("ext", "tor"):
        p = sub.add_parser(which, help=f"{which} of the family sum against a module")
        common(p)
        p.add_argument(
            "--module",
            required=True,
            help="module as comma-separated invariant factors, 0 meaning a free factor",
        )
        p.add_argument(
            "--degrees",
            type=int,
            default=None,
            help="highest degree to compute (default: family size - 1)",
        )

    p = sub.add_parser("oracle", help="brute-force recomputation and replay")
    common(p)
    p.add_argument(
        "--check",
        default=None,
        help="result document to re-verify instead of recomputing homology",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "homology": _cmd_homology,
        "cohomology": _cmd_homology,
        "closure": _cmd_closure,
        "distributive": _cmd_distributive,
        "h1-witness": _cmd_h1_witness,
        "crt": _cmd_crt,
        "equalizer": _cmd_equalizer,
        "pattern": _cmd_pattern,
        "ext": _cmd_derived,
        "tor": _cmd_derived,
        "oracle": _cmd_oracle,
    }
    if args.cmd in ("homology", "cohomology"):
        args.side = "chain" if args.cmd == "homology" else "cochain"
    if args.cmd in ("ext", "tor"):
        args.which = args.cmd
    try:
        problem = parse_problem(args.problem)
        return handlers[args.cmd](problem, args)
    except ProblemError as exc:
        _emit({"command": args.cmd, "status": "error", "diagnostic": str(exc)})
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
