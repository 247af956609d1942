"""The `latticeknot v1` file format.

Two bodies are accepted under the common header line: one vertex per
line as three signed integers in true coordinates (the first vertex is
not repeated at the end), or a single move line over the alphabet
X x Y y Z z (uppercase steps +1, lowercase -1) starting at the origin.
`#` starts a comment anywhere.  Parsing always validates; error
messages cite line numbers.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Optional, Union

from .lattice import LatticeKnot

HEADER = "latticeknot v1"

_MOVE_STEPS = {
    "X": (1, 0, 0),
    "x": (-1, 0, 0),
    "Y": (0, 1, 0),
    "y": (0, -1, 0),
    "Z": (0, 0, 1),
    "z": (0, 0, -1),
}
_MOVE_OF_STEP = {v: k for k, v in _MOVE_STEPS.items()}
_VERTEX_RE = re.compile(r"^([+-]?\d+)\s+([+-]?\d+)\s+([+-]?\d+)$")


class KnotFileError(ValueError):
    """Syntax or closure error in a knot file; carries the line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


def _significant_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def parse_knot(text: str) -> LatticeKnot:
    """Parse either file form and return a validated knot.

    Raises KnotFileError on syntax problems or a move string that does
    not close, InvalidKnotError when the described polygon violates the
    knot invariants.
    """
    lines = _significant_lines(text)
    if not lines:
        raise KnotFileError("empty file; expected header " + repr(HEADER))
    head_no, head = lines[0]
    if head != HEADER:
        raise KnotFileError(f"expected header {HEADER!r}, found {head!r}", head_no)
    body = lines[1:]
    if not body:
        raise KnotFileError("no vertices or move line after the header", head_no)
    if body[0][1].startswith("moves:"):
        if len(body) > 1:
            raise KnotFileError("content after the move line", body[1][0])
        return knot_from_moves(body[0][1][len("moves:"):].strip(), line=body[0][0])
    vertices = []
    for no, line in body:
        m = _VERTEX_RE.match(line)
        if not m:
            raise KnotFileError(
                f"expected three signed integers separated by spaces, found {line!r}", no
            )
        vertices.append(tuple(int(g) for g in m.groups()))
    return LatticeKnot.from_true(vertices)


def knot_from_moves(moves: str, line: Optional[int] = None) -> LatticeKnot:
    """Build a knot from a move string anchored at the origin."""
    if not moves:
        raise KnotFileError("empty move string", line)
    bad = [c for c in moves if c not in _MOVE_STEPS]
    if bad:
        raise KnotFileError(
            f"move characters must be among XxYyZz, found {bad[0]!r}", line
        )
    pos = (0, 0, 0)
    vertices = [pos]
    for c in moves[:-1]:
        s = _MOVE_STEPS[c]
        pos = (pos[0] + s[0], pos[1] + s[1], pos[2] + s[2])
        vertices.append(pos)
    s = _MOVE_STEPS[moves[-1]]
    final = (pos[0] + s[0], pos[1] + s[1], pos[2] + s[2])
    if final != (0, 0, 0):
        raise KnotFileError(
            f"move string does not close: ends at {final}, not the origin", line
        )
    return LatticeKnot.from_true(vertices)


def move_string(knot: LatticeKnot) -> str:
    """Move encoding of the knot's edge sequence (translation is lost)."""
    out = []
    for e in knot.edges:
        step = tuple((e.end[k] - e.start[k]) // 2 for k in range(3))
        out.append(_MOVE_OF_STEP[step])
    return "".join(out)


def serialize_vertices(knot: LatticeKnot) -> str:
    lines = [HEADER]
    lines += ["%d %d %d" % v for v in knot.true_vertices()]
    return "\n".join(lines) + "\n"


def serialize_moves(knot: LatticeKnot) -> str:
    """Move-form serialization; a knot not anchored at the origin parses
    back as its origin translate."""
    return f"{HEADER}\nmoves: {move_string(knot)}\n"


def load_knot(path: Union[str, Path]) -> LatticeKnot:
    return parse_knot(Path(path).read_text(encoding="utf-8"))


def save_knot(knot: LatticeKnot, path: Union[str, Path], form: str = "vertices") -> None:
    Path(path).write_text(serialize(knot, form), encoding="utf-8")


def serialize(knot: LatticeKnot, form: str = "vertices") -> str:
    if form == "vertices":
        return serialize_vertices(knot)
    if form == "moves":
        return serialize_moves(knot)
    raise ValueError(f"unknown knot file form {form!r}")
