"""Command-line front end.

Subcommands: decompose, qaoa, route, verify, report.  Outputs are JSON files
written atomically; reruns with identical inputs are byte-identical.  Exit
codes: 0 success, 1 domain error (JSON diagnostics on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import qaoa, routing, weyl
from .decompose import count_gates, decompose_gellmann, decompose_weyl
from .errors import TritcircError
from .gates import (
    Circuit,
    circuit_from_dict,
    circuit_to_dict,
    dump_json,
    load_json,
)
from .sim import circuit_unitary, diagonal_exponential, phase_distance

DEFAULT_SEED = 12345
DEFAULT_TOLERANCE = 1e-9


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _parse_float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _generator_from_args(args) -> dict:
    if args.generator:
        return load_json(args.generator)
    if args.gellmann:
        return {
            "type": "gellmann",
            "indices": _parse_int_list(args.gellmann),
            "theta": args.theta,
        }
    if args.weyl_s:
        return {
            "type": "weyl",
            "s": _parse_int_list(args.weyl_s),
            "c": {"re": args.weyl_c_re, "im": args.weyl_c_im},
            "theta": args.theta,
        }
    raise TritcircError("provide --generator, --gellmann, or --weyl-s")


def _compile_generator(gen: dict) -> Circuit:
    theta = float(gen["theta"])
    if gen["type"] == "gellmann":
        return decompose_gellmann(weyl.GellMannString(tuple(gen["indices"])), theta)
    if gen["type"] == "weyl":
        c = complex(gen["c"]["re"], gen["c"].get("im", 0.0))
        return decompose_weyl(weyl.WeylZString(c, tuple(gen["s"])), theta)
    raise TritcircError(f"unknown generator type {gen.get('type')!r}")


def _exact_generator_unitary(gen: dict) -> np.ndarray:
    theta = float(gen["theta"])
    if gen["type"] == "gellmann":
        diag = np.ones(1)
        for i in gen["indices"]:
            diag = np.kron(diag, np.real(np.diag(weyl.gellmann_matrix(int(i)))))
        return diagonal_exponential(diag, theta)
    if gen["type"] == "weyl":
        c = complex(gen["c"]["re"], gen["c"].get("im", 0.0))
        w = weyl.WeylZString(c, tuple(gen["s"]))
        return diagonal_exponential(weyl.weyl_string_diagonal(w), theta / 2.0)
    raise TritcircError(f"unknown generator type {gen.get('type')!r}")


def _cmd_decompose(args) -> int:
    gen = _generator_from_args(args)
    circuit = _compile_generator(gen)
    if args.out:
        dump_json(circuit_to_dict(circuit), args.out)
    counts = count_gates(circuit)
    summary = {
        "cx_count": counts.cx_count,
        "rotation_count": counts.rotation_count,
        "single_qutrit_count": counts.single_qutrit_count,
        "depth": counts.depth,
        "num_qutrits": circuit.num_qutrits,
        "num_gates": len(circuit),
    }
    print(json.dumps(summary, sort_keys=True))
    return 0


def _cmd_verify(args) -> int:
    circuit = circuit_from_dict(load_json(args.circuit))
    gen = load_json(args.generator)
    exact = _exact_generator_unitary(gen)
    dist = phase_distance(circuit_unitary(circuit), exact)
    payload = {"phase_distance": dist, "tolerance": args.tolerance,
               "ok": dist <= args.tolerance}
    print(json.dumps(payload, sort_keys=True))
    return 0 if payload["ok"] else 1


def _cmd_qaoa(args) -> int:
    graph = load_json(args.graph)
    problem = qaoa.ColoringProblem(
        int(graph["nodes"]),
        tuple(tuple(e) for e in graph["edges"]),
        args.k,
    )
    spec = qaoa.QaoaLayerSpec(
        tuple(_parse_float_list(args.gammas)), tuple(_parse_float_list(args.betas))
    )
    circuit = qaoa.build_qaoa_circuit(problem, spec)
    if args.out:
        dump_json(circuit_to_dict(circuit), args.out)
    counts = count_gates(circuit)
    print(json.dumps({
        "num_qutrits": circuit.num_qutrits,
        "num_gates": len(circuit),
        "cx_count": counts.cx_count,
        "depth": counts.depth,
        "layers": spec.layers,
    }, sort_keys=True))
    return 0


def _cmd_route(args) -> int:
    pmap = routing.parity_map_from_dict(load_json(args.parity))
    topology = routing.topology_from_dict(load_json(args.topology))
    result = routing.steiner_gauss_synthesize(pmap, topology)
    implementing = result.implementing_circuit
    if args.out:
        dump_json(circuit_to_dict(implementing), args.out)
        dump_json(
            {"row_ops": [routing.row_op_to_dict(op) for op in result.row_ops]},
            args.log or args.out + ".rowops.json",
        )
    n = pmap.n
    ok = 0
    for q in range(n):
        unit = [1 if i == q else 0 for i in range(n)]
        if routing.apply_circuit_to_trits(implementing, unit) == pmap.apply(unit):
            ok += 1
    rng = np.random.default_rng(args.seed)
    sample_ok = 0
    for _ in range(args.samples):
        x = tuple(int(t) for t in rng.integers(0, 3, size=n))
        if routing.apply_circuit_to_trits(implementing, x) == pmap.apply(x):
            sample_ok += 1
    counts = count_gates(implementing)
    print(f"OK {ok}/{n} basis vectors, {sample_ok}/{args.samples} random samples; "
          f"cx_count {counts.cx_count}")
    if ok != n or sample_ok != args.samples:
        raise TritcircError("synthesized circuit does not reproduce the parity map")
    return 0


def _cmd_report(args) -> int:
    rows = qaoa.resource_report(_parse_int_list(args.k), args.degree)
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        print(qaoa.format_report(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tritcirc", description="Qutrit circuit compilation toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="compile a string exponential to gates")
    p.add_argument("--generator", help="generator JSON file")
    p.add_argument("--gellmann", help="comma-separated indices, e.g. 3,3,8")
    p.add_argument("--weyl-s", help="comma-separated exponents, e.g. 2,1,2")
    p.add_argument("--weyl-c-re", type=float, default=1.0)
    p.add_argument("--weyl-c-im", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--out", help="circuit JSON output path")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="compare a circuit against its generator")
    p.add_argument("--circuit", required=True)
    p.add_argument("--generator", required=True)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("qaoa", help="build a ternary k-coloring QAOA circuit")
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gammas", required=True)
    p.add_argument("--betas", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_qaoa)

    p = sub.add_parser("route", help="synthesize a parity map on a topology")
    p.add_argument("--parity", required=True)
    p.add_argument("--topology", required=True)
    p.add_argument("--out")
    p.add_argument("--log", help="row-operation log path")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("report", help="per-edge coloring-circuit resources")
    p.add_argument("--k", default="3,9,27")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TritcircError, OSError, KeyError, ValueError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
