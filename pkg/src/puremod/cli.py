"""Command-line entry point: ``puremod <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .config import KINDS, get_config, override
from .endo import ALIASES, ENDO_PREDICATES, POWER_PREDICATES, endo_predicate, power_predicate
from .errors import PuremodError
from .homs import indecomposable_decomposition, minimal_generators
from .modules import (FiniteModule, _gen_index, build_module, lattice_covers, lattice_dot, socle,
                      submodule_generated, submodules, summands)
from .properties import MODULE_PREDICATES, module_predicate, uniform_dimension
from .purity import is_pure, is_pure_essential, is_pure_uniform
from .rings import RING_PREDICATES, build_ring, ring_predicate
from .structure import condition_predicate, is_essential, is_extending, is_pure_extending
from .verdict import Verdict

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2

CONDITION_NAMES = {"c2": "C2", "c3": "C3", "d2": "D2_paper", "pure_split": "pure_split"}
SUBMODULE_PROPERTIES = ("pure", "pure_essential", "essential", "summand")
MODULE_LEVEL = ("extending", "pure_extending", "pure_uniform")
PROPERTIES = (MODULE_LEVEL + tuple(CONDITION_NAMES) + MODULE_PREDICATES + ENDO_PREDICATES
              + tuple(ALIASES) + SUBMODULE_PROPERTIES)


class UsageError(PuremodError):
    """Bad combination of command-line options."""


def _load_json(value: str | None, path: str | None, what: str):
    if value is not None and path is not None:
        raise UsageError(f"give --{what} or --{what}-file, not both")
    if path is not None:
        with open(path) as fh:
            return json.load(fh)
    if value is None:
        return None
    if os.path.isfile(value):
        with open(value) as fh:
            return json.load(fh)
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what} is neither a file nor valid JSON: {exc}") from None


def _ring_and_module(args, need_module: bool = True):
    ring_spec = _load_json(args.ring, args.ring_file, "ring")
    if ring_spec is None:
        raise UsageError("--ring is required")
    R = build_ring(ring_spec)
    module_spec = _load_json(args.module, args.module_file, "module")
    if module_spec is None:
        if need_module:
            raise UsageError("--module is required")
        return ring_spec, R, None, None
    return ring_spec, R, module_spec, build_module(R, module_spec)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "text":
        sys.stdout.write(text)
    else:
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")


def _header(command: str) -> dict:
    return {"command": command, "tool_version": __version__, "config_hash": get_config().digest()}


def _verdict_text(label: str, v: Verdict) -> str:
    rows = [f"{label}: {'true' if v.result else 'false'}"]
    if v.witness:
        rows.append("witness: " + json.dumps(v.witness, ensure_ascii=False))
    rows += [f"note: {n}" for n in v.notes]
    return "\n".join(rows) + "\n"


def _decide(M: FiniteModule, prop: str, kind: str, power: int | None, submodule) -> Verdict:
    if power is not None:
        name = CONDITION_NAMES.get(prop, prop)
        if name not in POWER_PREDICATES:
            raise UsageError(f"--power applies only to {', '.join(POWER_PREDICATES)}")
        return power_predicate(M, power, name)
    if prop in SUBMODULE_PROPERTIES:
        if submodule is None:
            raise UsageError(f"--property {prop} needs --submodule")
        N = submodule_generated(M, [_gen_index(M, g) for g in submodule])
        if prop == "pure":
            return is_pure(kind, N)
        if prop == "pure_essential":
            return is_pure_essential(kind, N)
        if prop == "essential":
            return is_essential(N)
        return Verdict(N.members in {D.members for D in summands(M)})
    if submodule is not None:
        raise UsageError(f"--submodule does not apply to --property {prop}")
    if prop == "extending":
        return is_extending(M)
    if prop == "pure_extending":
        return is_pure_extending(kind, M)
    if prop == "pure_uniform":
        return is_pure_uniform(kind, M)
    if prop in CONDITION_NAMES:
        return condition_predicate(M, CONDITION_NAMES[prop], kind)
    if prop in MODULE_PREDICATES:
        return module_predicate(M, prop)
    return endo_predicate(M, prop)


def cmd_check(args) -> int:
    ring_spec, R, module_spec, M = _ring_and_module(args, need_module=args.property not in RING_PREDICATES)
    if M is None:
        v = ring_predicate(R, args.property)
    else:
        if args.property not in PROPERTIES:
            raise UsageError(f"unknown property {args.property!r}")
        submodule = _load_json(args.submodule, None, "submodule")
        v = _decide(M, args.property, args.purity, args.power, submodule)
    payload = _header("check")
    payload.update({"ring": ring_spec, "module": module_spec, "property": args.property,
                    "purity": args.purity, "power": args.power, "verdict": v.to_json()})
    _emit(args, payload, _verdict_text(args.property, v))
    return EXIT_TRUE if v.result else EXIT_FALSE


def cmd_lattice(args) -> int:
    _, R, _, M = _ring_and_module(args)
    subs = submodules(M)
    if args.dot:
        dot = lattice_dot(M)
        if args.dot == "-":
            sys.stdout.write(dot)
            return EXIT_TRUE
        with open(args.dot, "w") as fh:
            fh.write(dot)
    payload = _header("lattice")
    payload.update({
        "module_order": M.order,
        "submodules": [{"id": k, "size": s.size, "elements": s.elements().tolist()}
                       for k, s in enumerate(subs)],
        "covers": [list(e) for e in lattice_covers(M)],
    })
    text = f"{len(subs)} submodules of a module of order {M.order}\n"
    text += "".join(f"  S{k}(|{s.size}|) {' '.join(s.describe())}\n" for k, s in enumerate(subs))
    _emit(args, payload, text)
    return EXIT_TRUE


def cmd_describe(args) -> int:
    ring_spec, R, module_spec, M = _ring_and_module(args, need_module=False)
    payload = _header("describe")
    payload["ring"] = {"spec": ring_spec, "order": R.order, "codec": R.codec,
                       "elements": [R.fmt(i) for i in range(R.order)] if R.order <= 64 else None,
                       "commutative": R.is_commutative()}
    lines = [f"ring of order {R.order}, {'commutative' if R.is_commutative() else 'noncommutative'}"]
    if M is not None:
        gens = minimal_generators(M)
        parts = indecomposable_decomposition(M)
        payload["module"] = {
            "spec": module_spec, "order": M.order,
            "elements": [M.fmt(m) for m in range(M.order)] if M.order <= 64 else None,
            "minimal_generators": [M.fmt(g) for g in gens],
            "socle_order": socle(M).size,
            "uniform_dimension": uniform_dimension(M),
            "indecomposable_parts": [P.size for P in parts],
        }
        lines.append(f"module of order {M.order}, {len(gens)} generator(s), socle of order "
                     f"{socle(M).size}, uniform dimension {uniform_dimension(M)}")
        lines.append("indecomposable parts of orders " + ", ".join(str(P.size) for P in parts))
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_TRUE


def _report_out(args, report) -> int:
    if args.format == "text":
        sys.stdout.write(report.render_text())
    else:
        sys.stdout.write(report.dumps())
    return EXIT_TRUE if report.clean else EXIT_FALSE


def cmd_verify(args) -> int:
    from .verify import verify_paper
    return _report_out(args, verify_paper())


def cmd_audit(args) -> int:
    from .suites import audit_propositions
    return _report_out(args, audit_propositions())


def cmd_suite(args) -> int:
    from .suites import run_suite
    return _report_out(args, run_suite(args.id, kind=args.purity))


def cmd_search(args) -> int:
    from .suites import counterexample_search
    result = counterexample_search(args.property, args.max_ring, args.max_module)
    payload = _header("search")
    payload.update(result)
    text = f"{result['property']}: {result['status']} after {result['checked']} checks\n"
    if "witness" in result:
        text += "witness: " + json.dumps(result["witness"], ensure_ascii=False) + "\n"
    _emit(args, payload, text)
    return EXIT_FALSE if result["status"] == "witness" else EXIT_TRUE


def _add_spec_args(p: argparse.ArgumentParser, module: bool = True) -> None:
    p.add_argument("--ring", help="ring spec as inline JSON or a path to a JSON file")
    p.add_argument("--ring-file", help="path to a ring spec JSON file")
    if module:
        p.add_argument("--module", help="module spec as inline JSON or a path to a JSON file")
        p.add_argument("--module-file", help="path to a module spec JSON file")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None,
                        help="output format (default json)")
    limits = argparse.ArgumentParser(add_help=False)
    limits.add_argument("--max-module-order", type=int, default=None,
                        help="override the module size limit")

    parser = argparse.ArgumentParser(prog="puremod", description="Decide purity and extending "
                                     "properties of small finite modules.")
    parser.add_argument("--version", action="version", version=f"puremod {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common, limits], help="decide one property")
    _add_spec_args(p)
    p.add_argument("--property", required=True, help="property name")
    p.add_argument("--purity", choices=KINDS, default=None, help="purity kind (default ideal)")
    p.add_argument("--power", type=int, default=None, help="evaluate on M^k")
    p.add_argument("--submodule", help="generators of a submodule, as a JSON list")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lattice", parents=[common, limits], help="list the submodule lattice")
    _add_spec_args(p)
    p.add_argument("--dot", help="write the Hasse diagram in DOT format to this path ('-' for stdout)")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("describe", parents=[common, limits], help="summarise a ring and module")
    _add_spec_args(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("verify-paper", parents=[common, limits], help="run the fixed verification checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", parents=[common, limits], help="compute the contested-claim facts")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("suite", parents=[common, limits], help="run one claim suite over the corpus")
    p.add_argument("--id", required=True, help="suite id")
    p.add_argument("--purity", choices=KINDS, default=None, help="restrict to one purity kind")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("search", parents=[common], help="bounded counterexample search")
    p.add_argument("--property", required=True)
    p.add_argument("--max-ring", type=int, default=16)
    p.add_argument("--max-module", type=int, default=64)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_ERROR
    cfg = get_config()
    args.format = args.format or cfg.output_format
    if args.command == "check" and args.purity is None:
        args.purity = cfg.purity
    changes = {}
    if getattr(args, "max_module_order", None):
        changes["max_module_order"] = args.max_module_order
    try:
        with override(**changes):
            return args.func(args)
    except (PuremodError, ValueError, OSError) as exc:
        print(f"puremod: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
