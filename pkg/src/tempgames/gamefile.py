"""Line-oriented game files and the availability expression grammar.

Example::

    kind temporal-explicit
    vertex s owner=1
    vertex t owner=2
    edge s t avail=[0,3] | {7}
    start s
    objective reach t
    option waiting=off

Availability expressions::

    or   := and ('|' and)*
    and  := atom ('&' atom)*
    atom := '!' atom | '(' or ')' | prim
    prim := '[' INT ',' INT ']' | 'ap(' INT ',' INT ')' | 'bit(' INT ')=' (0|1)
          | '{' INT (',' INT)* '}' | 'always' | 'never'
"""

import re
from dataclasses import dataclass
from typing import Optional, Union

from .arena import Explore, GenReach, Player, Reach, StaticArena, check_objective
from .errors import ArenaError, KindMismatch, ParseError
from .symbolic import (
    ALWAYS,
    NEVER,
    Always,
    And,
    ArithProg,
    AvailFormula,
    BitEq,
    Interval,
    Never,
    Not,
    Or,
    SymbolicTemporalGraph,
)
from .temporal import TemporalGraph, TimeSet

KINDS = ("static", "temporal-explicit", "temporal-symbolic")

_TOKEN = re.compile(r"\s*(ap\(|bit\(|\)=|always\b|never\b|\d+|[\[\],(){}!|&])")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _ExprParser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = expected or "a token"
            raise ParseError(f"expected {want!r} in availability {self.text!r}, got {tok!r}")
        self.pos += 1
        return tok

    def integer(self):
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected an integer in availability {self.text!r}, got {tok!r}")
        return int(tok)

    def parse(self):
        f = self.disjunction()
        if self.peek() is not None:
            raise ParseError(f"trailing {self.peek()!r} in availability {self.text!r}")
        return f

    def disjunction(self):
        parts = [self.conjunction()]
        while self.peek() == "|":
            self.take()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(parts)

    def conjunction(self):
        parts = [self.atom()]
        while self.peek() == "&":
            self.take()
            parts.append(self.atom())
        return parts[0] if len(parts) == 1 else And(parts)

    def atom(self):
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.atom())
        if tok == "(":
            self.take()
            f = self.disjunction()
            self.take(")")
            return f
        return self.primitive()

    def primitive(self):
        tok = self.take()
        try:
            if tok == "[":
                lo = self.integer()
                self.take(",")
                hi = self.integer()
                self.take("]")
                return Interval(lo, hi)
            if tok == "ap(":
                base = self.integer()
                self.take(",")
                period = self.integer()
                self.take(")")
                return ArithProg(base, period)
            if tok == "bit(":
                k = self.integer()
                self.take(")=")
                return BitEq(k, self.integer())
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"{exc} in availability {self.text!r}") from None
        if tok == "{":
            points = [self.integer()]
            while self.peek() == ",":
                self.take()
                points.append(self.integer())
            self.take("}")
            spans = [Interval(lo, hi) for lo, hi in TimeSet.points(points).intervals]
            return spans[0] if len(spans) == 1 else Or(spans)
        if tok == "always":
            return ALWAYS
        if tok == "never":
            return NEVER
        raise ParseError(f"unexpected {tok!r} in availability {self.text!r}")


def parse_avail(text):
    """Parse an availability expression into an :class:`AvailFormula`."""
    return _ExprParser(text).parse()


def formula_to_timeset(f):
    """Finite interval union denoted by ``f``; raises for symbolic constructs."""
    if isinstance(f, Interval):
        return TimeSet([(f.lo, f.hi)])
    if isinstance(f, Never):
        return TimeSet()
    if isinstance(f, Or):
        out = TimeSet()
        for p in f.parts:
            out = out | formula_to_timeset(p)
        return out
    raise KindMismatch(f"{format_avail(f)!r} is not an explicit interval union")


def _format(f, level):
    # level 0: inside '|', 1: inside '&', 2: operand of '!'
    if isinstance(f, Interval):
        return f"{{{f.lo}}}" if f.lo == f.hi else f"[{f.lo},{f.hi}]"
    if isinstance(f, ArithProg):
        return f"ap({f.base},{f.period})"
    if isinstance(f, BitEq):
        return f"bit({f.k})={f.value}"
    if isinstance(f, Always):
        return "always"
    if isinstance(f, Never):
        return "never"
    if isinstance(f, Not):
        return "!" + _format(f.child, 2)
    if isinstance(f, (And, Or)):
        if not f.parts:
            return "always" if isinstance(f, And) else "never"
        if len(f.parts) == 1:
            return _format(f.parts[0], level)
        own = 1 if isinstance(f, And) else 0
        sep = " & " if own else " | "
        text = sep.join(_format(p, own) for p in f.parts)
        return f"({text})" if level > own else text
    raise TypeError(f"not an availability formula: {f!r}")


def format_avail(f):
    if isinstance(f, TimeSet):
        return format_timeset(f)
    return _format(f, 0)


def format_timeset(ts):
    if not ts:
        return "never"
    return " | ".join(f"{{{lo}}}" if lo == hi else f"[{lo},{hi}]" for lo, hi in ts.intervals)


# ---------------------------------------------------------------------------
# game files


@dataclass(eq=False)
class GameSpec:
    kind: str
    game: Union[StaticArena, TemporalGraph, SymbolicTemporalGraph]
    start: object
    objective: object
    waiting: bool = False

    def __eq__(self, other):
        return (
            isinstance(other, GameSpec)
            and (self.kind, self.start, self.objective, self.waiting)
            == (other.kind, other.start, other.objective, other.waiting)
            and self.game == other.game
        )


def _strip(line):
    return line.split("#", 1)[0].strip()


def parse_game_file(text):
    """Parse a game file into a :class:`GameSpec`."""
    kind = None
    vertices, owner, edges = [], {}, []
    start = objective = None
    waiting = False
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "kind":
            if kind is not None:
                raise ParseError("more than one kind line", lineno)
            if rest not in KINDS:
                raise ParseError(f"unknown kind {rest!r}", lineno)
            kind = rest
            continue
        if kind is None:
            raise ParseError("the first directive must be 'kind'", lineno)
        if word == "vertex":
            parts = rest.split()
            if not parts or len(parts) > 2:
                raise ParseError("expected 'vertex NAME [owner=1|2]'", lineno)
            name = parts[0]
            who = 1
            if len(parts) == 2:
                if parts[1] not in ("owner=1", "owner=2"):
                    raise ParseError(f"bad owner {parts[1]!r}", lineno)
                who = int(parts[1][-1])
            if name in owner:
                raise ParseError(f"vertex {name!r} declared twice", lineno)
            vertices.append(name)
            owner[name] = Player(who)
        elif word == "edge":
            parts = rest.split(None, 2)
            if len(parts) < 2:
                raise ParseError("expected 'edge SRC DST [avail=EXPR]'", lineno)
            src, dst = parts[0], parts[1]
            expr = None
            if len(parts) == 3:
                if not parts[2].startswith("avail="):
                    raise ParseError(f"expected avail=EXPR, got {parts[2]!r}", lineno)
                expr = parts[2][len("avail="):]
            edges.append((lineno, src, dst, _edge_avail(kind, expr, lineno)))
        elif word == "start":
            if start is not None:
                raise ParseError("more than one start line", lineno)
            if len(rest.split()) != 1:
                raise ParseError("expected 'start NAME'", lineno)
            start = rest
            lines["start"] = lineno
        elif word == "objective":
            if objective is not None:
                raise ParseError("more than one objective line", lineno)
            objective = _parse_objective(rest, lineno)
            lines["objective"] = lineno
        elif word == "option":
            if rest not in ("waiting=on", "waiting=off"):
                raise ParseError(f"unknown option {rest!r}", lineno)
            if kind == "static" and rest == "waiting=on":
                raise ParseError("waiting is meaningless for static games", lineno)
            waiting = rest == "waiting=on"
        else:
            raise ParseError(f"unknown directive {word!r}", lineno)
    if kind is None:
        raise ParseError("missing kind line")
    if start is None:
        raise ParseError("missing start line")
    if objective is None:
        raise ParseError("missing objective line")
    declared = set(vertices)
    for lineno, src, dst, _ in edges:
        for x in (src, dst):
            if x not in declared:
                raise ParseError(f"edge endpoint {x!r} is not a declared vertex", lineno)
    if start not in declared:
        raise ParseError(f"start {start!r} is not a declared vertex", lines["start"])
    try:
        check_objective(objective, vertices)
    except ArenaError as exc:
        raise ParseError(str(exc), lines["objective"]) from None
    if kind == "static":
        game = StaticArena(vertices, [(s, d) for _, s, d, _ in edges], owner)
    elif kind == "temporal-explicit":
        game = TemporalGraph(vertices, [((s, d), a) for _, s, d, a in edges], owner, waiting)
    else:
        game = SymbolicTemporalGraph(vertices, [((s, d), a) for _, s, d, a in edges], owner)
    return GameSpec(kind, game, start, objective, waiting)


def _edge_avail(kind, expr, lineno):
    if expr is None:
        if kind != "static":
            raise ParseError("temporal edges need avail=EXPR", lineno)
        return ALWAYS
    try:
        f = parse_avail(expr)
    except ParseError as exc:
        raise type(exc)(str(exc), lineno) from None
    if kind == "static":
        if f != ALWAYS:
            raise KindMismatch("static edges are always available", lineno)
        return f
    if kind == "temporal-explicit":
        try:
            return formula_to_timeset(f)
        except KindMismatch as exc:
            raise KindMismatch(str(exc), lineno) from None
    return f


def _parse_objective(rest, lineno):
    word, _, args = rest.partition(" ")
    names = args.split()
    if word == "reach":
        if not names:
            raise ParseError("reach needs at least one vertex", lineno)
        return Reach(names)
    if word == "explore":
        if names:
            raise ParseError("explore takes no arguments", lineno)
        return Explore()
    if word == "genreach":
        text = args.replace("{", " { ").replace("}", " } ").split()
        sets, current = [], None
        for tok in text:
            if tok == "{":
                if current is not None:
                    raise ParseError("nested '{' in genreach", lineno)
                current = []
            elif tok == "}":
                if current is None:
                    raise ParseError("unbalanced '}' in genreach", lineno)
                sets.append(current)
                current = None
            elif current is None:
                raise ParseError(f"vertex {tok!r} outside braces", lineno)
            else:
                current.append(tok)
        if current is not None or not sets:
            raise ParseError("genreach needs balanced '{ ... }' groups", lineno)
        return GenReach(sets)
    raise ParseError(f"unknown objective {word!r}", lineno)


def _sorted_names(vertex_set, order):
    return sorted(vertex_set, key=order.__getitem__)


def format_objective(obj, order):
    if isinstance(obj, Reach):
        return "objective reach " + " ".join(map(str, _sorted_names(obj.targets, order)))
    if isinstance(obj, GenReach):
        groups = ["{ " + " ".join(map(str, _sorted_names(s, order))) + " }" for s in obj.target_sets]
        return "objective genreach " + " ".join(groups)
    return "objective explore"


def emit_game_file(spec):
    """Canonical text of a :class:`GameSpec`."""
    game = spec.game
    out = [f"kind {spec.kind}"]
    for v in game.vertices:
        out.append(f"vertex {v} owner={int(game.owner[v])}")
    if isinstance(game, StaticArena):
        out.extend(f"edge {u} {v}" for u, v in game.edge_list())
    else:
        for (u, v), a in game.avail.items():
            out.append(f"edge {u} {v} avail={format_avail(a)}")
    out.append(f"start {spec.start}")
    out.append(format_objective(spec.objective, game.index))
    if spec.kind != "static":
        out.append(f"option waiting={'on' if spec.waiting else 'off'}")
    return "\n".join(out) + "\n"


def parse_witness(text):
    """Read ``v@t`` tokens, optionally after a ``witness`` keyword."""
    steps = []
    for raw in text.splitlines():
        line = _strip(raw)
        if not line or line.startswith("result"):
            continue
        tokens = line.split()
        if tokens[0] == "witness":
            tokens = tokens[1:]
        for tok in tokens:
            name, sep, t = tok.rpartition("@")
            if not sep or not t.isdigit():
                raise ParseError(f"bad witness step {tok!r}")
            steps.append((name, int(t)))
    return steps


def spec_for(game, start, objective, waiting=None, kind: Optional[str] = None):
    """Wrap a game value in a :class:`GameSpec`, inferring the kind."""
    if kind is None:
        if isinstance(game, StaticArena):
            kind = "static"
        elif isinstance(game, TemporalGraph):
            kind = "temporal-explicit"
        else:
            kind = "temporal-symbolic"
    if waiting is None:
        waiting = bool(getattr(game, "waiting", False))
    return GameSpec(kind, game, start, objective, waiting)


__all__ = [
    "AvailFormula",
    "GameSpec",
    "emit_game_file",
    "format_avail",
    "parse_avail",
    "parse_game_file",
    "parse_witness",
    "spec_for",
]
