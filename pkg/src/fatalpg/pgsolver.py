"""Reading and writing the PGSolver text format.

::

    parity <max-id>;
    <id> <color> <owner> <succ>,<succ>,... ["<name>"];

The header and ``start <id>;`` lines are optional, ``--`` comments run to
the end of the line.  Sparse ids are compacted to ``0..n-1``; the
original ids are kept on the game and used again when writing.
"""

from __future__ import annotations

import re
from typing import IO

from .game import MAX_COLOR, Game


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<num>\d+)
  | (?P<word>[A-Za-z_]\w*)
  | (?P<str>"[^"\n]*")
  | (?P<comma>,)
  | (?P<semi>;)
""", re.VERBOSE)


def _tokens(text: str):
    line, line_start, pos = 1, 0, 0
    size = len(text)
    while pos < size:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            yield kind, m.group(), line, pos - line_start + 1
        pos = m.end()
    yield "eof", "", line, pos - line_start + 1


def parse_pgsolver(source: str | IO[str]) -> Game:
    text = source if isinstance(source, str) else source.read()
    toks = list(_tokens(text))
    i = 0

    def expect(kind, what):
        nonlocal i
        k, val, ln, col = toks[i]
        if k != kind:
            shown = val if val else "end of input"
            raise ParseError(f"expected {what}, found {shown!r}", ln, col)
        i += 1
        return val, ln, col

    header = None
    nodes: dict[int, tuple[int, int, list[int], str | None, int, int]] = {}
    while toks[i][0] != "eof":
        kind, val, ln, col = toks[i]
        if kind == "word":
            i += 1
            if val == "parity":
                if header is not None or nodes:
                    raise ParseError("header must come first", ln, col)
                header = int(expect("num", "maximal node id")[0])
            elif val == "start":
                expect("num", "start node id")
            else:
                raise ParseError(f"unknown keyword {val!r}", ln, col)
            expect("semi", "';'")
            continue
        ident, ln, col = expect("num", "node id")
        ident = int(ident)
        if ident in nodes:
            raise ParseError(f"node {ident} defined twice", ln, col)
        color_text, cl, cc = expect("num", "color")
        color = int(color_text)
        if color > MAX_COLOR:
            raise ParseError(f"color {color} exceeds {MAX_COLOR}", cl, cc)
        owner_text, ol, oc = expect("num", "owner")
        if owner_text not in ("0", "1"):
            raise ParseError(f"owner must be 0 or 1, found {owner_text}", ol, oc)
        succs: list[int] = []
        if toks[i][0] == "num":
            succs.append(int(expect("num", "successor")[0]))
            while toks[i][0] == "comma":
                i += 1
                succs.append(int(expect("num", "successor")[0]))
        name = None
        if toks[i][0] == "str":
            name = toks[i][1][1:-1]
            i += 1
        expect("semi", "';'")
        if not succs:
            raise ParseError(f"node {ident} has an empty successor list", ln, col)
        nodes[ident] = (color, int(owner_text), succs, name, ln, col)

    if header is not None and nodes and max(nodes) > header:
        big = max(nodes)
        raise ParseError(f"node {big} exceeds header maximum {header}", *nodes[big][4:])
    ext = sorted(nodes)
    index = {e: k for k, e in enumerate(ext)}
    owner, color, successors, names = [], [], [], []
    for e in ext:
        c, o, succs, name, ln, col = nodes[e]
        row = set()
        for s in succs:
            if s not in index:
                raise ParseError(f"node {e} has undefined successor {s}", ln, col)
            row.add(index[s])
        owner.append(o)
        color.append(c)
        successors.append(sorted(row))
        names.append(name)
    has_names = any(nm is not None for nm in names)
    compact = ext == list(range(len(ext)))
    return Game(owner, color, successors,
                names=names if has_names else None,
                ids=None if compact else ext)


def serialize_pgsolver(g: Game) -> str:
    n = g.node_count
    out = []
    if n:
        out.append(f"parity {max(g.external_id(v) for v in range(n))};")
    for v in range(n):
        succ = ",".join(str(g.external_id(w)) for w in g.successors(v))
        line = f"{g.external_id(v)} {int(g.color[v])} {int(g.owner[v])} {succ}"
        if g.names is not None and g.names[v] is not None:
            if '"' in g.names[v] or "\n" in g.names[v]:
                raise ValueError(f"name of node {v} cannot be written: {g.names[v]!r}")
            line += f' "{g.names[v]}"'
        out.append(line + ";")
    return "\n".join(out) + "\n"


def read_game(path) -> Game:
    with open(path, encoding="utf-8") as fh:
        return parse_pgsolver(fh)


def write_game(g: Game, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_pgsolver(g))
