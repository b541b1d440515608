"""Command-line front door.

Subcommands: classify, move, grundy, enumerate, verify, discover, circuits,
reduce, serve.  Exit codes: 0 success, 1 usage/validation (and any failed
verification), 2 budget exceeded, 3 internal invariant violation.

All ``--json`` output is compact, key-sorted JSON so answers are byte
stable; the solve/classify payloads are shared with the HTTP service.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import oracles, simplicial
from .errors import (
    BudgetExceededError,
    NoCaseMatchedError,
    SetNimError,
    UnsupportedGameError,
)
from .games import apply_move, builtin_game, check_position, is_legal_move
from .grundy import DEFAULT_BUDGET, GrundyEngine, p_table, p_positions, verify_oracle
from .invariance import discover_invariants
from .oracles import SolveResult, oracle_for, solve
from .reduction import TraceBuilder, lift_move, render_trace


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip() != "")
    except ValueError:
        raise SetNimError(f"cannot parse {what} {text!r} as comma-separated integers")


def dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def solve_payload(result: SolveResult) -> dict:
    res = result.resulting_position
    return {
        "game": result.game_id,
        "position": list(result.position),
        "outcome": result.outcome.value,
        "move": list(result.move) if result.move is not None else None,
        "resulting_position": list(res) if res is not None else None,
        "method": result.method,
    }


def classify_payload(result: SolveResult) -> dict:
    return {
        "game": result.game_id,
        "position": list(result.position),
        "outcome": result.outcome.value,
        "method": "closed_form" if oracle_for(result.game_id) else "brute_force",
    }


def _emit(args, payload: dict, human: list[str]) -> None:
    if args.json:
        print(dump_json(payload))
    else:
        for line in human:
            print(line)


def _cmd_classify(args) -> int:
    result = solve(args.game, _parse_ints(args.pos, "--pos"), budget=args.budget)
    payload = classify_payload(result)
    _emit(args, payload, [f"outcome {payload['outcome']}", f"method {payload['method']}"])
    return 0


def _cmd_move(args) -> int:
    result = solve(args.game, _parse_ints(args.pos, "--pos"), budget=args.budget)
    payload = solve_payload(result)
    human = [f"outcome {payload['outcome']}", f"method {payload['method']}"]
    if result.move is None:
        human.append("move none (any move loses to perfect play)")
    else:
        human.append("move " + ",".join(map(str, result.move)))
        human.append("result " + ",".join(map(str, result.resulting_position)))
    if args.explain:
        lines = (
            render_trace(result.trace, result.position)
            if result.trace is not None
            else ["no reduction trace for this method"]
        )
        payload = dict(payload, explanation=lines)
        human += ["explanation:"] + ["  " + ln for ln in lines]
    _emit(args, payload, human)
    return 0


def _cmd_grundy(args) -> int:
    spec = builtin_game(args.game)
    pos = check_position(spec, _parse_ints(args.pos, "--pos"))
    value = GrundyEngine(spec, budget=args.budget).grundy(pos)
    payload = {"game": spec.id, "position": list(pos), "grundy": value}
    _emit(args, payload, [f"grundy {value}"])
    return 0


def _cmd_enumerate(args) -> int:
    spec = builtin_game(args.game)
    found = sorted(p_positions(spec, args.bound))
    payload = {
        "game": spec.id,
        "bound": args.bound,
        "count": len(found),
        "p_positions": [list(p) for p in found],
    }
    human = [f"{len(found)} P positions in [0,{args.bound}]^{spec.n}"]
    human += [",".join(map(str, p)) for p in found]
    _emit(args, payload, human)
    return 0


def _cmd_verify(args) -> int:
    spec = builtin_game(args.game)
    oracle = oracle_for(spec.id)
    if oracle is None:
        raise UnsupportedGameError(f"{spec.id} has no oracle to verify")
    if args.bound is None and not args.samples:
        raise SetNimError("verify needs --bound and/or --samples")
    payload: dict = {"game": spec.id}
    human: list[str] = []
    ok = True
    if args.bound is not None:
        report = verify_oracle(
            spec,
            oracle.membership,
            oracle.move,
            args.bound,
            membership_batch=oracle.membership_batch,
            threads=args.threads,
        )
        payload.update(report.to_payload())
        human.append(report.summary())
        ok = ok and report.ok
    if args.samples:
        rng = random.Random(args.seed)
        bad = []
        for _ in range(args.samples):
            pos = tuple(rng.randint(0, args.height) for _ in range(spec.n))
            mv = oracle.move(pos)
            if mv is None:
                if not oracle.membership(pos):
                    bad.append(pos)
                continue
            legal, _ = is_legal_move(spec, pos, mv)
            if oracle.membership(pos) or not legal or not oracle.membership(apply_move(pos, mv)):
                bad.append(pos)
        payload["samples"] = args.samples
        payload["sample_height"] = args.height
        payload["sample_violations"] = [list(p) for p in bad[:20]]
        human.append(f"{len(bad)} violations in {args.samples} random positions up to {args.height}")
        ok = ok and not bad
    payload["ok"] = ok
    _emit(args, payload, human)
    return 0 if ok else 1


def _cmd_discover(args) -> int:
    if args.bound is None:
        raise SetNimError("discover needs --bound")
    spec = builtin_game(args.game)
    oracle = oracle_for(spec.id)
    if oracle is not None:
        membership, batch = oracle.membership, oracle.membership_batch
    else:
        table = p_table(spec, args.bound)
        membership, batch = (lambda pos: bool(table[pos])), None
    all_vecs, generators = discover_invariants(
        membership, spec.n, args.bound, membership_batch=batch
    )
    payload = {
        "game": spec.id,
        "bound": args.bound,
        "all": [list(iv.z) for iv in all_vecs],
        "generators": [list(iv.z) for iv in generators],
        "verified_bound": args.bound,
    }
    human = [f"{len(all_vecs)} invariant vectors up to bound {args.bound} (certificate, not proof)"]
    human += ["  all: " + " ".join("".join(map(str, iv.z)) for iv in all_vecs)]
    human += ["  generators: " + " ".join("".join(map(str, iv.z)) for iv in generators)]
    _emit(args, payload, human)
    return 0


def _cmd_circuits(args) -> int:
    spec = builtin_game(args.game)
    circ = simplicial.circuits(spec)
    annotated, pointed = simplicial.points_of(circ, spec.n)
    payload = {
        "game": spec.id,
        "circuits": [list(c.vertices) for c in annotated],
        "points": [list(c.points) for c in annotated],
        "pointed": pointed,
        "p_family": simplicial.family_formula(annotated, spec.n) if pointed else None,
    }
    human = [f"{len(circ)} circuits; complex is {'pointed' if pointed else 'not pointed'}"]
    for c in annotated:
        human.append(f"  {list(c.vertices)} points {list(c.points)}")
    if pointed:
        human.append("P family: (" + ", ".join(payload["p_family"]) + ")")
    _emit(args, payload, human)
    return 0


def _cmd_reduce(args) -> int:
    spec = builtin_game(args.game)
    pos = check_position(spec, _parse_ints(args.pos, "--pos"))
    if args.invariants is not None or (args.zero is None and args.merge is None):
        vectors = None
        if args.invariants:
            vectors = [_parse_ints(v, "--invariants") for v in args.invariants.split(";")]
        reduced, coeffs, iterates, label = oracles.reduce_position(spec.id, pos, vectors)
        payload = {
            "game": spec.id,
            "position": list(pos),
            "schedule": [list(v) for v in (vectors or oracle_for(spec.id).invariants)],
            "coefficients": list(coeffs),
            "iterates": [list(p) for p in iterates],
            "reduced": list(reduced),
            "case": label,
        }
        human = [f"reduced {','.join(map(str, reduced))}"]
        human.append("coefficients " + ",".join(map(str, coeffs)))
        if label is not None:
            human.append(f"case {label}")
        _emit(args, payload, human)
        return 0
    builder = TraceBuilder(spec, pos)
    if args.zero is not None:
        builder.remove_zeros(_parse_ints(args.zero, "--zero"))
    if args.merge is not None:
        builder.merge(_parse_ints(args.merge, "--merge"))
    trace = builder.finish()
    reduced_pos = builder.position
    result = solve(builder.spec, reduced_pos, budget=args.budget)
    payload = {
        "game": spec.id,
        "position": list(pos),
        "reduced_game": [list(s) for s in builder.spec.move_sets],
        "reduced_position": list(reduced_pos),
        "outcome": result.outcome.value,
        "reduced_move": list(result.move) if result.move else None,
        "move": None,
        "resulting_position": None,
    }
    human = [
        "reduced position " + ",".join(map(str, reduced_pos)),
        f"outcome {result.outcome.value}",
    ]
    if result.move is not None:
        lifted = lift_move(trace, result.move, pos)
        payload["move"] = list(lifted)
        payload["resulting_position"] = list(apply_move(pos, lifted))
        human.append("reduced move " + ",".join(map(str, result.move)))
        human.append("lifted move " + ",".join(map(str, lifted)))
    if args.explain:
        payload["explanation"] = render_trace(trace, pos)
    _emit(args, payload, human)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--game", help="game id, e.g. cn:7,3 | pn:5,3 | h | nim:3 | file:path")
    common.add_argument("--pos", help="position as comma-separated stack heights")
    common.add_argument("--bound", type=int, default=None, help="box height cap")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="work cap for brute force")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--explain", action="store_true", help="include the reduction trace")
    common.add_argument("--threads", type=int, default=1, help="parallel workers for sweeps")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for sampling")
    parser = argparse.ArgumentParser(prog="setnim", description="SetNim solver workbench")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, extra in (
        ("classify", _cmd_classify, ()),
        ("move", _cmd_move, ()),
        ("grundy", _cmd_grundy, ()),
        ("enumerate", _cmd_enumerate, ()),
        ("verify", _cmd_verify, ("samples",)),
        ("discover", _cmd_discover, ()),
        ("circuits", _cmd_circuits, ()),
        ("reduce", _cmd_reduce, ("reduce",)),
        ("serve", _cmd_serve, ("serve",)),
    ):
        p = sub.add_parser(name, parents=[common])
        p.set_defaults(fn=fn)
        if "samples" in extra:
            p.add_argument("--samples", type=int, default=0, help="random positions to sample")
            p.add_argument("--height", type=int, default=10**6, help="max sampled stack height")
        if "reduce" in extra:
            p.add_argument("--invariants", help="semicolon-separated zero-one vectors, in order")
            p.add_argument("--zero", help="stacks to drop (must be empty)")
            p.add_argument("--merge", help="stack class to merge")
        if "serve" in extra:
            p.add_argument("--port", type=int, default=8716)
            p.add_argument("--host", default="127.0.0.1")
    return parser


_NEEDS_GAME = {"classify", "move", "grundy", "enumerate", "verify", "discover", "circuits", "reduce"}
_NEEDS_POS = {"classify", "move", "grundy", "reduce"}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        if args.command in _NEEDS_GAME and not args.game:
            raise SetNimError(f"{args.command} needs --game")
        if args.command in _NEEDS_POS and not args.pos:
            raise SetNimError(f"{args.command} needs --pos")
        if args.command == "enumerate" and args.bound is None:
            raise SetNimError("enumerate needs --bound")
        return args.fn(args)
    except BudgetExceededError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except NoCaseMatchedError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 3
    except SetNimError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
