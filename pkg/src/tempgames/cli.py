"""Command-line front end: ``tempgames solve|expand|reduce|oracle|verify``."""

import argparse
import json
import sys

from . import reductions
from .arena import (
    Explore,
    GenReach,
    Reach,
    StaticArena,
    WitnessPath,
    solve_generalized_reachability,
    solve_reachability,
    solve_static_explorability,
)
from .errors import ArenaError, OnePlayerOnly, ParseError, ResourceLimit, TempGamesError
from .gamefile import GameSpec, emit_game_file, parse_game_file, parse_witness, spec_for
from .qbf import normalize_qbf, parse_qdimacs, qbf_brute_force
from .symbolic import SymbolicTemporalGraph, from_explicit, solve_symbolic, to_explicit, with_waiting
from .temporal import BOTTOM, TemporalGraph, enumerate_explorations, expand, lift_objective, solve_temporal
from .verify import check_witness

EXIT_OK, EXIT_USAGE, EXIT_LIMIT, EXIT_INVALID = 0, 2, 3, 4


class VerificationFailed(TempGamesError):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def load(path):
    return parse_game_file(_read(path))


def effective_game(spec, waiting=False):
    """The game value with waiting applied (natively for explicit graphs)."""
    game = spec.game
    if not (waiting or spec.waiting):
        return game
    if isinstance(game, TemporalGraph):
        return game.with_waiting(True)
    if isinstance(game, SymbolicTemporalGraph):
        return with_waiting(game)
    return game


def pick_method(game, objective, method="auto"):
    if isinstance(game, StaticArena):
        return "static" if method == "auto" else method
    if method != "auto":
        return method
    if isinstance(game, SymbolicTemporalGraph):
        return "product"
    if game.is_one_player and isinstance(objective, Explore):
        return "search"
    return "expand"


def _solve_static(arena, start, obj, want_witness):
    if isinstance(obj, Reach):
        return solve_reachability(arena, start, obj.targets)
    if isinstance(obj, GenReach):
        return solve_generalized_reachability(arena, start, obj.target_sets)
    out = solve_static_explorability(arena, start)
    if want_witness and out.player1_wins and arena.is_one_player:
        # a linearization is not a play; rebuild one from singleton targets
        walk = solve_generalized_reachability(arena, start, [[v] for v in arena.vertices])
        return type(out)(out.winner, walk.certificate, out.states_explored, out.method)
    return out


def solve_spec(spec, method="auto", waiting=False, want_witness=False):
    game = effective_game(spec, waiting)
    chosen = pick_method(game, spec.objective, method)
    if isinstance(game, StaticArena):
        if chosen != "static":
            raise ArenaError(f"method {chosen!r} does not apply to static games")
        return _solve_static(game, spec.start, spec.objective, want_witness)
    if chosen == "search":
        if isinstance(game, SymbolicTemporalGraph):
            raise ArenaError("search needs an explicit temporal graph")
        if not isinstance(spec.objective, Explore):
            raise ArenaError("search only decides explorability")
        if not game.is_one_player:
            raise OnePlayerOnly("search needs a one-player graph")
        return enumerate_explorations(game, spec.start)
    if chosen == "expand":
        if isinstance(game, SymbolicTemporalGraph):
            game = to_explicit(game)
        return solve_temporal(game, spec.start, spec.objective)
    if chosen == "product":
        if isinstance(game, TemporalGraph):
            game = from_explicit(game)
        return solve_symbolic(game, spec.start, spec.objective)
    raise ArenaError(f"unknown method {chosen!r}")


def _state_name(state, taken):
    if state is BOTTOM:
        name = "_bottom"
        while name in taken:
            name += "_"
        return name
    v, t = state
    return f"{v}@{t}"


def expansion_spec(spec):
    """Static game file equivalent to a temporal one."""
    game = effective_game(spec)
    if isinstance(game, StaticArena):
        raise ArenaError("the game is already static")
    if isinstance(game, SymbolicTemporalGraph):
        game = to_explicit(game)
    exp = expand(game)
    arena = exp.arena
    names = set()
    rename = {}
    for s in arena.vertices:
        rename[s] = _state_name(s, names)
        names.add(rename[s])
    lifted = lift_objective(spec.objective, game)
    if isinstance(lifted, Reach):
        obj = Reach(rename[s] for s in lifted.targets)
    else:
        obj = GenReach([rename[s] for s in ts] for ts in lifted.target_sets)
    static = StaticArena(
        [rename[s] for s in arena.vertices],
        [(rename[a], rename[b]) for a, b in arena.edge_list()],
        {rename[s]: p for s, p in arena.owner.items()},
    )
    return GameSpec("static", static, rename[(spec.start, 0)], obj)


def _rename_static(arena):
    names = {v: str(v) for v in arena.vertices}
    if len(set(names.values())) != len(names) or any(" " in n or "#" in n for n in names.values()):
        raise ArenaError("reduced vertex names collide in the file format")
    return StaticArena(
        [names[v] for v in arena.vertices],
        [(names[a], names[b]) for a, b in arena.edge_list()],
        {names[v]: p for v, p in arena.owner.items()},
    )


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args):
    spec = load(args.file)
    out = solve_spec(spec, args.method, args.waiting, args.witness or args.json)
    witness = out.certificate if isinstance(out.certificate, WitnessPath) else None
    if args.json:
        print(json.dumps({
            "winner": int(out.winner),
            "method": out.method,
            "states_explored": int(out.states_explored),
            "witness": [[str(v), t] for v, t in witness.steps] if witness else None,
        }))
    else:
        print(f"result winner={int(out.winner)}")
        if args.witness and witness is not None:
            print(f"witness {witness}")
    return EXIT_OK


def cmd_expand(args):
    _write(args.output, emit_game_file(expansion_spec(load(args.file))))
    return EXIT_OK


def cmd_reduce(args):
    if args.reduction == "reach2explore":
        spec = load(args.file)
        if not isinstance(spec.game, StaticArena):
            raise ArenaError("reach2explore needs a static game")
        arena, start = reductions.reach_to_explore(spec.game, args.src, args.dst)
        out = spec_for(_rename_static(arena), str(start), Explore())
    else:
        phi = normalize_qbf(parse_qdimacs(_read(args.file)))
        if args.reduction == "qbf2temporal":
            graph, start = reductions.qbf_to_temporal_explorability(phi)
            out = spec_for(graph, start, Explore())
        else:
            graph, start, target = reductions.qbf_to_symbolic_reachability(phi)
            out = spec_for(graph, start, Reach([target]))
    _write(args.output, emit_game_file(out))
    return EXIT_OK


def cmd_oracle(args):
    phi = parse_qdimacs(_read(args.file))
    print("true" if qbf_brute_force(phi) else "false")
    return EXIT_OK


def cmd_verify(args):
    spec = load(args.file)
    steps = parse_witness(_read(args.witness))
    if check_witness(effective_game(spec, args.waiting), spec.start, spec.objective, steps):
        print("valid")
        return EXIT_OK
    raise VerificationFailed("witness rejected")


def build_parser():
    p = argparse.ArgumentParser(prog="tempgames", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide the winner of a game file")
    s.add_argument("file")
    s.add_argument("--method", choices=["auto", "expand", "search", "product"], default="auto")
    s.add_argument("--waiting", action="store_true", help="allow idling at any vertex")
    s.add_argument("--witness", action="store_true", help="print a winning play when there is one")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("expand", help="write the static expansion of a temporal game")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("reduce", help="generate reduction gadgets")
    red = s.add_subparsers(dest="reduction", required=True)
    r = red.add_parser("reach2explore")
    r.add_argument("file")
    r.add_argument("--from", dest="src", required=True)
    r.add_argument("--to", dest="dst", required=True)
    r.add_argument("-o", "--output", required=True)
    for name in ("qbf2temporal", "qbf2symbolic"):
        r = red.add_parser(name)
        r.add_argument("file")
        r.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("oracle", help="brute-force oracles")
    orc = s.add_subparsers(dest="oracle", required=True)
    r = orc.add_parser("qbf")
    r.add_argument("file")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify", help="replay a witness against a game file")
    s.add_argument("file")
    s.add_argument("--witness", required=True)
    s.add_argument("--waiting", action="store_true", help="allow idling at any vertex")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, ArenaError, TempGamesError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
