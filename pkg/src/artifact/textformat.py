"""Plain-text algebra definitions.

Grammar (``#`` starts a comment, blank lines are ignored)::

    [vertices]   vertex ids separated by whitespace
    [arrows]     one arrow per line: id source target
    [f]          disjoint cycles, e.g. (a1 a2 a3) (b3 b2 b1); 1-cycles for fixed points
    [m]          lines "rep value"  (g-orbit representative, default 1)
    [c]          lines "rep value"  (g-orbit representative, default 1)
    [t]          lines "rep t0 t1"  (f-orbit representative, default 0 0)
    [Z]          one word per line, arrows separated by whitespace

Only [vertices], [arrows] and [f] are required.
"""

from __future__ import annotations

import re

from .combinatorics import build_quiver
from .errors import InputError, ParseError
from .gwsa import GWSAData

__all__ = ["parse", "serialize", "load"]

_SECTIONS = ("vertices", "arrows", "f", "m", "c", "t", "Z")
_ID = re.compile(r"^[A-Za-z0-9_']+$")


def _ident(tok: str, line: int, col: int) -> str:
    if not _ID.match(tok):
        raise ParseError(f"bad identifier {tok!r}", line, col)
    return tok


def _int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line, col) from None


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    for m in re.finditer(r"\S+", text):
        out.append((m.group(), m.start() + 1))
    return out


def _parse_cycles(text: str, line: int) -> list[list[str]]:
    cycles = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "(":
            raise ParseError("expected '(' to open a cycle", line, pos + 1)
        end = text.find(")", pos)
        if end < 0:
            raise ParseError("unclosed cycle", line, pos + 1)
        inner = text[pos + 1 : end]
        if "(" in inner:
            raise ParseError("nested '(' in cycle", line, pos + 1 + inner.index("("))
        toks = [_ident(t, line, pos + 1 + c) for t, c in _tokens(inner)]
        if not toks:
            raise ParseError("empty cycle", line, pos + 1)
        cycles.append(toks)
        pos = end + 1
    return cycles


def parse(text: str) -> GWSAData:
    """Parse a definition; errors carry line and column numbers."""
    section = None
    seen: dict[str, int] = {}
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    cycles: list[list[str]] = []
    m: dict[str, int] = {}
    c: dict[str, int] = {}
    t: dict[str, tuple[int, int]] = {}
    Z: list[tuple[str, ...]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        stripped = body.strip()
        if stripped.startswith("["):
            mm = re.fullmatch(r"\[\s*([A-Za-z]+)\s*\]", stripped)
            if not mm or mm.group(1) not in _SECTIONS:
                raise ParseError(f"unknown section header {stripped}", lineno, body.index("[") + 1)
            section = mm.group(1)
            if section in seen:
                raise ParseError(f"section [{section}] repeated", lineno, 1)
            seen[section] = lineno
            continue
        if section is None:
            raise ParseError("content before the first section header", lineno, 1)
        toks = _tokens(body)
        if section == "vertices":
            vertices.extend(_ident(tk, lineno, col) for tk, col in toks)
        elif section == "arrows":
            if len(toks) != 3:
                raise ParseError("an arrow line needs: id source target", lineno, toks[0][1])
            a, s, tg = (_ident(tk, lineno, col) for tk, col in toks)
            arrows.append((a, s, tg))
        elif section == "f":
            cycles.extend(_parse_cycles(body, lineno))
        elif section in ("m", "c"):
            if len(toks) != 2:
                raise ParseError(f"a [{section}] line needs: representative value", lineno, toks[0][1])
            key = _ident(toks[0][0], lineno, toks[0][1])
            target = m if section == "m" else c
            if key in target:
                raise ParseError(f"{key} given twice in [{section}]", lineno, toks[0][1])
            target[key] = _int(toks[1][0], lineno, toks[1][1])
        elif section == "t":
            if len(toks) != 3:
                raise ParseError("a [t] line needs: representative t0 t1", lineno, toks[0][1])
            key = _ident(toks[0][0], lineno, toks[0][1])
            if key in t:
                raise ParseError(f"{key} given twice in [t]", lineno, toks[0][1])
            t[key] = (_int(toks[1][0], lineno, toks[1][1]), _int(toks[2][0], lineno, toks[2][1]))
        elif section == "Z":
            Z.append(tuple(_ident(tk, lineno, col) for tk, col in toks))

    for req in ("vertices", "arrows", "f"):
        if req not in seen:
            raise ParseError(f"missing section [{req}]")
    try:
        q = build_quiver(vertices, arrows, cycles)
    except InputError as exc:
        raise type(exc)(f"line {seen['f']}: {exc}") from None
    for key, line in [(k, seen["m"]) for k in m] + [(k, seen["c"]) for k in c]:
        if key not in q.src or q.g_rep(key) != key:
            raise ParseError(f"{key} is not a g-orbit representative (least arrow of its g-orbit)", line)
    for key in t:
        if key not in q.src or q.f_rep(key) != key:
            raise ParseError(f"{key} is not an f-orbit representative (least arrow of its f-orbit)", seen["t"])
    return GWSAData(q, m, c, t, tuple(Z))


def serialize(data: GWSAData) -> str:
    q = data.quiver
    lines = ["[vertices]", " ".join(q.vertices), "", "[arrows]"]
    lines += [f"{a} {q.src[a]} {q.tgt[a]}" for a in q.arrows]
    lines += ["", "[f]", " ".join("(" + " ".join(cyc) + ")" for cyc in q.f_cycles())]
    if data.m:
        lines += ["", "[m]"] + [f"{k} {data.m[k]}" for k in sorted(data.m)]
    if data.c:
        lines += ["", "[c]"] + [f"{k} {data.c[k]}" for k in sorted(data.c)]
    if data.t:
        lines += ["", "[t]"] + [f"{k} {data.t[k][0]} {data.t[k][1]}" for k in sorted(data.t)]
    if data.Z:
        lines += ["", "[Z]"] + [" ".join(w) for w in data.Z]
    return "\n".join(lines) + "\n"


def load(path: str) -> GWSAData:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse(text)
