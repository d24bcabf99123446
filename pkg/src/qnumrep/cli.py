"""Command-line front end.

Every command is a thin adapter over the library: it parses arguments,
calls one or two library functions and serializes the result.  Exit codes:
0 on success, 2 when an argument violates a precondition, 1 on any other
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from qnumrep import arith, axioms, matrices, phys, resources
from qnumrep.digits import DigitString, Radix, decode_number, encode_number, oracle_add, oracle_mul
from qnumrep.errors import ArithmeticModelError, DigitRangeError

COMMANDS = (
    "encode", "succ", "add", "mul", "matrix", "map",
    "hamiltonian", "axioms", "resources", "enumerate-maps",
)


def _check(name: str, ok: bool, detail=None) -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _indices(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise DigitRangeError(f"malformed index list {text!r}") from None


def _maps(args, radix: Radix) -> phys.MapPair:
    labels = phys.LabelSets.default(radix)
    g = _indices(args.g) if args.g else tuple(range(radix.L))
    d = _indices(args.d) if args.d else tuple(range(radix.k))
    return phys.MapPair(labels, g, d)


def cmd_encode(args, radix):
    if (args.n is None) == (args.digits is None):
        raise DigitRangeError("encode needs exactly one of --n or --digits")
    s = encode_number(args.n, radix) if args.n is not None else DigitString.parse(args.digits, radix)
    value = decode_number(s)
    return {"digits": str(s), "value": value}, [], str(s) if args.n is not None else str(value)


def cmd_succ(args, radix):
    s = DigitString.parse(args.digits, radix)
    out = arith.successor_power(args.j, s, args.power)
    expected = (decode_number(s) + args.power * radix.weight(args.j)) % radix.modulus
    checks = [_check("oracle_agreement", decode_number(out) == expected, {"expected": expected})]
    return {"input": str(s), "j": args.j, "power": args.power, "output": str(out),
            "value": decode_number(out)}, checks, str(out)


def cmd_add(args, radix):
    pair = arith.PairState(DigitString.parse(args.left, radix), DigitString.parse(args.right, radix))
    out = arith.add_apply(pair)
    expected = oracle_add(decode_number(pair.left), decode_number(pair.right), radix)
    checks = [
        _check("left_preserved", out.left == pair.left),
        _check("oracle_agreement", decode_number(out.right) == expected, {"expected": expected}),
    ]
    return {"left": str(out.left), "right": str(pair.right), "output": str(out.right),
            "value": decode_number(out.right)}, checks, str(out.right)


def cmd_mul(args, radix):
    s = DigitString.parse(args.left, radix)
    w = DigitString.parse(args.right, radix)
    target = DigitString.parse(args.target, radix) if args.target else DigitString.zero(radix)
    out = arith.times_apply(s, w, target)
    expected = oracle_add(decode_number(target), oracle_mul(decode_number(s), decode_number(w), radix), radix)
    checks = [_check("oracle_agreement", decode_number(out) == expected, {"expected": expected})]
    return {"left": str(s), "right": str(w), "target": str(target), "output": str(out),
            "value": decode_number(out), "successor_applications": arith.times_cost(s, w)}, checks, str(out)


def cmd_matrix(args, radix):
    op_name = args.op
    if op_name == "shift":
        op = matrices.shift_matrix(args.j, radix)
    elif op_name == "projector":
        op = matrices.projector_matrix(args.m, args.j, radix)
    elif op_name == "successor":
        op = matrices.successor_matrix_literal(args.j, radix)
    elif op_name == "add":
        op = matrices.add_matrix(radix)
    else:
        raise DigitRangeError(f"unknown operator {op_name!r}")
    checks = []
    if op_name != "projector":
        unitary = matrices.check_unitary(op)
        checks.append(_check("unitary", unitary.ok, {"residual": unitary.residual}))
    if op_name == "successor":
        carry = matrices.successor_matrix(args.j, radix)
        checks.append(_check("matches_carry_chain", op.permutation == carry.permutation))
    if args.haar:
        residuals = matrices.conjugation_invariance(radix, seed=args.seed, count=args.haar)
        worst = max(residuals)
        checks.append(_check("haar_conjugation_power_identities", worst <= 1e-9,
                             {"count": args.haar, "max_residual": worst}))
    dump = op.to_json()
    text = json.dumps(dump["permutation"]) if "permutation" in dump else _format_matrix(op.entries)
    return {"operator": op_name, "matrix": dump}, checks, text


def _format_matrix(entries: np.ndarray) -> str:
    rows = np.asarray(entries)
    if np.iscomplexobj(rows):
        return "\n".join(" ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row) for row in rows)
    return "\n".join(" ".join(str(int(x)) for x in row) for row in rows)


def cmd_map(args, radix):
    maps = _maps(args, radix)
    if (args.digits is None) == (args.assignment is None):
        raise DigitRangeError("map needs exactly one of --digits or --assignment")
    if args.digits is not None:
        s = DigitString.parse(args.digits, radix)
        t = phys.wgd_apply(maps, s)
    else:
        pairs = dict(item.split("=", 1) for item in args.assignment.split(",") if "=" in item)
        t = phys.PhysState.from_assignment(maps.labels, pairs)
        s = phys.wgd_inverse_apply(maps, t)
    back = phys.wgd_inverse_apply(maps, t)
    checks = [_check("round_trip", back == s)]
    result = {"maps": maps.to_json(), "digits": str(s), "state": t.to_json(),
              "number": phys.number_of_state(maps, t), "path_length": phys.path_length(maps)}
    text = " ".join(f"{a}={b}" for a, b in t.assignment.items()) + f"  number={result['number']}"
    return result, checks, text


def cmd_hamiltonian(args, radix):
    if args.g or args.d:
        maps = _maps(args, radix)
        op = phys.conjugated_successor_matrix(maps, args.j)
    else:
        op = matrices.successor_matrix(args.j, radix)
    gen = matrices.extract_hamiltonian(op, args.t)
    herm = gen.hermiticity_residual()
    roundtrip = matrices.roundtrip_residual(gen, op)
    checks = [
        _check("hermitian", herm <= matrices.HERMITIAN_TOLERANCE, {"residual": herm}),
        _check("round_trip", roundtrip <= 1e-9, {"frobenius_residual": roundtrip}),
    ]
    return {"j": args.j, "t": args.t, "generator": gen.to_json()}, checks, _format_matrix(gen.entries)


def cmd_axioms(args, radix):
    report = axioms.axiom_suite(radix, mode=args.mode, seed=args.seed, samples=args.samples)
    checks = [c.to_json() for c in report.checks]
    text = "\n".join(f"{c.name:30s} {c.status}  ({c.cases} cases)" for c in report.checks)
    return {"mode": report.mode, "elements": report.elements, "samples_seed": report.seed,
            "passed": report.passed}, checks, text


def cmd_resources(args, radix):
    rows = resources.efficiency_report(radix, seed=args.seed)
    checks = [_check("strategies_agree", all(r.agrees is not False for r in rows))]
    return {"unit": resources.UNIT, "threshold": resources.polynomial_bound(radix),
            "rows": [r.to_json() for r in rows]}, checks, resources.format_table(rows, radix)


def cmd_enumerate_maps(args, radix):
    labels = phys.LabelSets.default(radix)
    count = 0
    listed = []
    for maps in phys.enumerate_maps(labels):
        count += 1
        if not args.count_only:
            listed.append(maps.to_json())
    checks = [_check("count_is_L!k!", count == phys.count_maps(labels), {"expected": phys.count_maps(labels)})]
    if args.count_only:
        return {"count": count}, checks, str(count)
    text = "\n".join(f"g={','.join(map(str, m['g']))} d={','.join(map(str, m['d']))}" for m in listed)
    return {"count": count, "maps": listed}, checks, text


HANDLERS = {
    "encode": cmd_encode,
    "succ": cmd_succ,
    "add": cmd_add,
    "mul": cmd_mul,
    "matrix": cmd_matrix,
    "map": cmd_map,
    "hamiltonian": cmd_hamiltonian,
    "axioms": cmd_axioms,
    "resources": cmd_resources,
    "enumerate-maps": cmd_enumerate_maps,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=2, help="digit alphabet size (default 2)")
    common.add_argument("--L", type=int, default=3, help="number of components (default 3)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="qnumrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common], help="integer <-> digit string")
    p.add_argument("--n", type=int)
    p.add_argument("--digits")

    p = sub.add_parser("succ", parents=[common], help="apply V_j (power times)")
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--digits", required=True)
    p.add_argument("--power", type=int, default=1)

    p = sub.add_parser("add", parents=[common], help="|s>|w> -> |s>|s+w>")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = sub.add_parser("mul", parents=[common], help="|target> -> |target + s*w>")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--target")

    p = sub.add_parser("matrix", parents=[common], help="dense operator dump")
    p.add_argument("--op", choices=("shift", "projector", "successor", "add"), default="successor")
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--haar", type=int, default=0, metavar="COUNT",
                   help="also check power identities under COUNT seeded Haar conjugations")

    p = sub.add_parser("map", parents=[common], help="W_{g,d} relabeling")
    p.add_argument("--g", help="component -> site indices, e.g. 1,0")
    p.add_argument("--d", help="digit -> state indices, e.g. 0,1")
    p.add_argument("--digits")
    p.add_argument("--assignment", help="site=state pairs, e.g. a1=b0,a2=b1")

    p = sub.add_parser("hamiltonian", parents=[common], help="H with exp(-iHt) = V_j")
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--g")
    p.add_argument("--d")

    p = sub.add_parser("axioms", parents=[common], help="ring axiom suite")
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    p.add_argument("--samples", type=int, default=axioms.DEFAULT_SAMPLES)

    sub.add_parser("resources", parents=[common], help="direct vs iterated successor cost")

    p = sub.add_parser("enumerate-maps", parents=[common], help="all L!k! map pairs")
    p.add_argument("--count-only", action="store_true")
    return parser


def run(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        radix = Radix(args.k, args.L)
        result, checks, text = HANDLERS[args.command](args, radix)
    except ArithmeticModelError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.format == "json":
        envelope = {"command": args.command, "k": args.k, "L": args.L, "seed": args.seed,
                    "result": result, "checks": checks}
        print(json.dumps(envelope, indent=2, sort_keys=True), file=stdout)
    else:
        print(text, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
