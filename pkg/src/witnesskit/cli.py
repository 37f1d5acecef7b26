"""Command line front end: JSON in, JSON out, seeded determinism.

Every subcommand reads its inputs from JSON files (or inline JSON for small
values), resolves the seed as flag > WITNESSKIT_SEED environment variable >
0, and prints one JSON document.  Domain failures print
``{"error": {"kind": ..., "detail": ...}}`` and exit 1; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .cycles import (
    DegreeVector,
    builtin_basis,
    class_from_degrees,
    is_duality_basis,
    pairing_degree,
)
from .errors import DimensionMismatch, Inconclusive, ParseError, WitnessKitError
from .grassmann import (
    SchubertIndex,
    flag_from_dict,
    flag_to_dict,
    line_from_dict,
    line_to_dict,
    lines_on_quadric_witness,
    lines_on_two_quadrics,
    quadric_from_dict,
    random_flag,
    schubert_dual,
    schubert_membership,
    schubert_poset,
    schubert_sample,
    schubert_witness_from_dict,
    schubert_witness_move,
    schubert_witness_to_dict,
)
from .polysys import system_from_dict
from .seeding import spawn_seed, subsystem_rng
from .solver import TrackerSettings, solve_total_degree
from .witness import (
    LinearSlice,
    product_witness,
    random_slice,
    witness_compute,
    witness_from_dict,
    witness_membership,
    witness_move,
    witness_sample,
    witness_to_dict,
)

_SETTINGS_FLAGS = ("initial_step", "min_step", "corrector_tol", "max_steps")


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc


def _inline_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"inline JSON: {exc}") from exc


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _complex_point(data) -> np.ndarray:
    try:
        return np.array([complex(e[0], e[1]) for e in data], dtype=np.complex128)
    except (TypeError, IndexError, ValueError) as exc:
        raise ParseError(f"point must be a list of [re, im] pairs: {exc}") from exc


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("WITNESSKIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParseError(f"WITNESSKIT_SEED must be an integer, got {env!r}") from exc
    return 0


def _settings(args) -> TrackerSettings | None:
    overrides = {
        name: getattr(args, name)
        for name in _SETTINGS_FLAGS
        if getattr(args, name, None) is not None
    }
    if not overrides:
        return None
    base = TrackerSettings()
    return TrackerSettings(
        initial_step=overrides.get("initial_step", base.initial_step),
        min_step=overrides.get("min_step", base.min_step),
        corrector_tol=overrides.get("corrector_tol", base.corrector_tol),
        newton_max_iters=base.newton_max_iters,
        max_steps=overrides.get("max_steps", base.max_steps),
    )


def _maybe_finite(value: float) -> float | None:
    return float(value) if np.isfinite(value) else None


# -- subcommand handlers ---------------------------------------------------------


def _cmd_solve(args) -> dict:
    system = system_from_dict(_load_json(args.system))
    seed = _resolve_seed(args)
    result = solve_total_degree(system, seed, _settings(args))
    return {
        "solutions": [
            {
                "point": [_pair(z) for z in sol.point],
                "alpha": _maybe_finite(sol.certificate.alpha),
                "certified": sol.certificate.certified,
                "multiplicity": sol.multiplicity,
            }
            for sol in result.solutions
        ],
        "summary": {
            "paths": result.summary.paths,
            "success": result.summary.success,
            "diverged": result.summary.diverged,
            "singular": result.summary.singular,
            "step_limit": result.summary.step_limit,
            "seed": result.summary.seed,
        },
    }


def _cmd_witness_compute(args) -> dict:
    system = system_from_dict(_load_json(args.system))
    ws = witness_compute(system, args.dim, _resolve_seed(args), _settings(args))
    return witness_to_dict(ws)


def _cmd_witness_move(args) -> dict:
    ws = witness_from_dict(_load_json(args.witness))
    seed = _resolve_seed(args)
    if args.slice is not None:
        forms = np.array(
            [[complex(e[0], e[1]) for e in row] for row in _load_json(args.slice)],
            dtype=np.complex128,
        )
        target = LinearSlice(forms)
    else:
        target = random_slice(
            ws.system.num_vars, ws.dim, subsystem_rng(seed, "cli.slice")
        )
    moved = witness_move(ws, target, seed, _settings(args))
    return witness_to_dict(moved)


def _cmd_witness_sample(args) -> dict:
    ws = witness_from_dict(_load_json(args.witness))
    point = witness_sample(ws, _resolve_seed(args), _settings(args))
    return {"point": [_pair(z) for z in point]}


def _cmd_witness_member(args) -> dict:
    ws = witness_from_dict(_load_json(args.witness))
    point = _complex_point(_inline_json(args.point))
    member = witness_membership(
        ws, point, _resolve_seed(args), args.match_tol, _settings(args)
    )
    return {"member": bool(member)}


def _cmd_product_witness(args) -> dict:
    system = system_from_dict(_load_json(args.system))
    try:
        m, n = (int(v) for v in args.blocks.split(","))
    except ValueError as exc:
        raise ParseError("--blocks expects two comma-separated integers") from exc
    sets = product_witness(system, (m, n), args.dim, _resolve_seed(args), _settings(args))
    keys = sorted(sets)
    return {
        "bidegrees": {f"{a},{b}": sets[(a, b)].degree for a, b in keys},
        "witness_sets": {f"{a},{b}": witness_to_dict(sets[(a, b)]) for a, b in keys},
    }


def _basis_for(args):
    return builtin_basis(args.space, m=getattr(args, "m", None), n=getattr(args, "n", None))


def _cmd_class_recover(args) -> dict:
    basis, matrices = _basis_for(args)
    try:
        degrees = tuple(int(v) for v in args.degrees.split(","))
    except ValueError as exc:
        raise ParseError("--degrees expects comma-separated integers") from exc
    if args.grade not in matrices:
        raise DimensionMismatch(f"grade {args.grade} not available for {args.space}")
    cls = class_from_degrees(
        matrices[args.grade], DegreeVector(grade=args.grade, degrees=degrees)
    )
    return {
        "coeffs": [[str(c.numerator), str(c.denominator)] for c in cls.coeffs],
        "labels": [lbl.name for lbl in basis.grades[args.grade]],
    }


def _cmd_class_pair(args) -> dict:
    _, matrices = _basis_for(args)
    if args.grade not in matrices:
        raise DimensionMismatch(f"grade {args.grade} not available for {args.space}")
    matrix = matrices[args.grade]
    if not (0 <= args.row < matrix.num_rows and 0 <= args.col < matrix.num_cols):
        raise DimensionMismatch("row/col out of range for the pairing matrix")
    return {"degree": pairing_degree(matrix, args.row, args.col)}


def _cmd_class_duality(args) -> dict:
    _, matrices = _basis_for(args)
    grades = {str(k): is_duality_basis(matrices[k]) for k in sorted(matrices)}
    return {"grades": grades, "all": all(grades.values())}


def _cmd_grassmann_poset(args) -> dict:
    poset = schubert_poset()
    return {
        "elements": [repr(e)[1:] for e in poset.elements],
        "ranks": {repr(e)[1:]: e.rank for e in poset.elements},
        "rank_counts": list(poset.rank_counts()),
        "covers": [[repr(a)[1:], repr(b)[1:]] for a, b in poset.covers()],
    }


def _parse_index(text: str) -> SchubertIndex:
    text = text.strip()
    if len(text) == 2 and text.isdigit():
        return SchubertIndex(int(text[0]), int(text[1]))
    try:
        i, j = (int(v) for v in text.split(","))
        return SchubertIndex(i, j)
    except ValueError as exc:
        raise ParseError(f"index must look like '13' or '1,3', got {text!r}") from exc


def _cmd_grassmann_dual(args) -> dict:
    idx = _parse_index(args.index)
    dual = schubert_dual(idx)
    return {
        "index": f"{idx.i}{idx.j}",
        "dual": f"{dual.i}{dual.j}",
        "rank": idx.rank,
        "dual_rank": dual.rank,
    }


def _cmd_grassmann_witness(args) -> dict:
    quadric = quadric_from_dict(_load_json(args.quadric))
    seed = _resolve_seed(args)
    if args.flag is not None:
        flag = flag_from_dict(_load_json(args.flag))
    else:
        flag = random_flag(subsystem_rng(seed, "cli.flag"))
    ws = lines_on_quadric_witness(quadric, flag, seed, _settings(args))
    return schubert_witness_to_dict(ws)


def _cmd_grassmann_move(args) -> dict:
    ws = schubert_witness_from_dict(_load_json(args.witness))
    flag = flag_from_dict(_load_json(args.flag))
    moved = schubert_witness_move(ws, flag, _resolve_seed(args), _settings(args))
    return schubert_witness_to_dict(moved)


def _cmd_grassmann_sample(args) -> dict:
    ws = schubert_witness_from_dict(_load_json(args.witness))
    line = schubert_sample(ws, _resolve_seed(args), _settings(args))
    return {"line": line_to_dict(line)}


def _cmd_grassmann_member(args) -> dict:
    ws = schubert_witness_from_dict(_load_json(args.witness))
    line = line_from_dict(_load_json(args.line))
    member = schubert_membership(
        ws, line, _resolve_seed(args), args.match_tol, _settings(args)
    )
    return {"member": bool(member)}


def _cmd_grassmann_quartic(args) -> dict:
    first = quadric_from_dict(_load_json(args.q1))
    second = quadric_from_dict(_load_json(args.q2))
    lines = lines_on_two_quadrics(first, second, _resolve_seed(args), _settings(args))
    return {"count": len(lines), "lines": [line_to_dict(l) for l in lines]}


# -- parser assembly -------------------------------------------------------------


def _add_common(sub) -> None:
    sub.add_argument("--seed", type=int, default=None, help="RNG seed (default: WITNESSKIT_SEED or 0)")
    sub.add_argument("--output", default=None, help="write the JSON payload to this path instead of stdout")


def _add_tracker_flags(sub) -> None:
    sub.add_argument("--initial-step", dest="initial_step", type=float, default=None, help="initial step size (default 0.1)")
    sub.add_argument("--min-step", dest="min_step", type=float, default=None, help="smallest step before giving up (default 1e-11)")
    sub.add_argument("--corrector-tol", dest="corrector_tol", type=float, default=None, help="Newton corrector tolerance (default 1e-9)")
    sub.add_argument("--max-steps", dest="max_steps", type=int, default=None, help="step budget per path (default 20000)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="witnesskit",
        description="Homotopy continuation, witness sets, and Schubert calculus on lines in P^4.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    sub = top.add_parser("solve", help="solve a square polynomial system by total-degree homotopy")
    sub.add_argument("--system", required=True, help="system JSON path")
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_solve)

    wit = top.add_parser("witness", help="classical witness sets").add_subparsers(
        dest="subcommand", required=True
    )
    sub = wit.add_parser("compute", help="compute a witness set for a k-dimensional variety")
    sub.add_argument("--system", required=True)
    sub.add_argument("--dim", type=int, required=True, help="dimension k of the component")
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_witness_compute)

    sub = wit.add_parser("move", help="move a witness set onto a new slice")
    sub.add_argument("--witness", required=True, help="witness-set JSON path")
    sub.add_argument("--slice", default=None, help="target slice JSON path (default: random)")
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_witness_move)

    sub = wit.add_parser("sample", help="sample a fresh point of the variety")
    sub.add_argument("--witness", required=True)
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_witness_sample)

    sub = wit.add_parser("member", help="test whether a point lies on the variety")
    sub.add_argument("--witness", required=True)
    sub.add_argument("--point", required=True, help='inline JSON like "[[1,0],[2,0]]"')
    sub.add_argument("--match-tol", dest="match_tol", type=float, default=1e-6)
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_witness_member)

    sub = top.add_parser("product-witness", help="bidegree witness sets on a product of affine spaces")
    sub.add_argument("--system", required=True)
    sub.add_argument("--blocks", required=True, help="comma-separated block sizes, e.g. 1,1")
    sub.add_argument("--dim", type=int, required=True)
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_product_witness)

    cls = top.add_parser("class", help="exact cycle-class algebra").add_subparsers(
        dest="subcommand", required=True
    )
    sub = cls.add_parser("recover", help="recover a class from intersection degrees")
    sub.add_argument("--space", required=True, help="pn | product | blowup-p2 | g14")
    sub.add_argument("--grade", type=int, required=True)
    sub.add_argument("--degrees", required=True, help="comma-separated integers")
    sub.add_argument("--m", type=int, default=None)
    sub.add_argument("--n", type=int, default=None)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_class_recover)

    sub = cls.add_parser("pair", help="one entry of a pairing matrix")
    sub.add_argument("--space", required=True)
    sub.add_argument("--grade", type=int, required=True)
    sub.add_argument("--row", type=int, required=True)
    sub.add_argument("--col", type=int, required=True)
    sub.add_argument("--m", type=int, default=None)
    sub.add_argument("--n", type=int, default=None)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_class_pair)

    sub = cls.add_parser("duality", help="check which pairing matrices are permutation matrices")
    sub.add_argument("--space", required=True)
    sub.add_argument("--m", type=int, default=None)
    sub.add_argument("--n", type=int, default=None)
    _add_common(sub)
    sub.set_defaults(handler=_cmd_class_duality)

    gr = top.add_parser("grassmann", help="lines in P^4 and Schubert witness sets").add_subparsers(
        dest="subcommand", required=True
    )
    sub = gr.add_parser("poset", help="the ten Schubert indices with ranks and covers")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_grassmann_poset)

    sub = gr.add_parser("dual", help="complementary-dimension partner of an index")
    sub.add_argument("--index", required=True, help="e.g. 13 or 1,3")
    _add_common(sub)
    sub.set_defaults(handler=_cmd_grassmann_dual)

    sub = gr.add_parser("witness", help="the four witness lines on a smooth quadric")
    sub.add_argument("--quadric", required=True, help="quadric JSON path")
    sub.add_argument("--flag", default=None, help="flag JSON path (default: random)")
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_grassmann_witness)

    sub = gr.add_parser("move", help="move Schubert witness lines to a new flag")
    sub.add_argument("--witness", required=True)
    sub.add_argument("--flag", required=True)
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_grassmann_move)

    sub = gr.add_parser("sample", help="sample a fresh line of the family")
    sub.add_argument("--witness", required=True)
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_grassmann_sample)

    sub = gr.add_parser("member", help="test whether a line belongs to the family")
    sub.add_argument("--witness", required=True)
    sub.add_argument("--line", required=True, help="line JSON path")
    sub.add_argument("--match-tol", dest="match_tol", type=float, default=1e-6)
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_grassmann_member)

    sub = gr.add_parser("quartic-lines", help="the 16 lines on an intersection of two quadrics")
    sub.add_argument("--q1", required=True)
    sub.add_argument("--q2", required=True)
    _add_common(sub)
    _add_tracker_flags(sub)
    sub.set_defaults(handler=_cmd_grassmann_quartic)

    return parser


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    output = getattr(args, "output", None)
    try:
        payload = args.handler(args)
    except Inconclusive as exc:
        _emit({"error": {"kind": exc.kind, "detail": str(exc)}}, output)
        return 1
    except WitnessKitError as exc:
        _emit({"error": {"kind": exc.kind, "detail": str(exc)}}, output)
        return 1
    except OSError as exc:
        _emit({"error": {"kind": "io", "detail": str(exc)}}, output)
        return 1
    _emit(payload, output)
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
