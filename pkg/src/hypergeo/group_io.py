"""
Text formats: quaternion literals, group files, cycle files and vertex maps.

Group file:

    kind amalgam            # or hnn
    field H
    n 2
    matrix axis             # role: axis | gamma1 | gamma2
    1 0 0
    0 1.1276259652063807 0.5210953054937474
    0 0.5210953054937474 1.1276259652063807
    end

Entries are quaternion literals: a real number, `w,x,y,z`, or an algebraic
form such as `-0.5+0.25i-k`.
"""

import logging
import re
from pathlib import Path
from typing import Dict, Iterator, List, Tuple, Union

from .algebra import Quaternion, quat
from .errors import HypergeoError, InputFormatError
from .groups import GroupData
from .hermitian import BallPoint, Isometry, qarray
from .invariants import TriangulatedCycle
from .models import INFINITY, boundary_to_ball

logger = logging.getLogger(__name__)

ROLES = ("axis", "gamma1", "gamma2")
FIELDS = ("R", "C", "H")

_TERM = re.compile(r"([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?([ijk]?)")


def parse_quaternion(text: str) -> Quaternion:
    """
    Parse `1.5`, `0,1,0,0`, `i`, `-0.3+0.2j-k` or `1e-3i`. Every term after
    the first needs an explicit sign.

    Raises:
        InputFormatError: unparseable literal
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise InputFormatError("Empty quaternion literal")
    if "," in s:
        parts = s.split(",")
        if len(parts) != 4:
            raise InputFormatError(f"Quaternion '{text}' needs 4 comma-separated components")
        try:
            return quat(*(float(p) for p in parts))
        except ValueError as e:
            raise InputFormatError(f"Bad quaternion component in '{text}': {e}") from e
    comps = {"": 0.0, "i": 0.0, "j": 0.0, "k": 0.0}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or not (m.group(2) or m.group(3)) or (pos > 0 and not m.group(1)):
            raise InputFormatError(f"Cannot parse quaternion literal '{text}' at position {pos}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        value = float(m.group(2)) if m.group(2) else 1.0
        comps[m.group(3)] += sign * value
        pos = m.end()
    return quat(comps[""], comps["i"], comps["j"], comps["k"])


def format_entry(q: Quaternion) -> str:
    """Lossless `w,x,y,z` literal (a bare real when the imaginary part is zero)."""
    if q.x == 0.0 and q.y == 0.0 and q.z == 0.0:
        return repr(float(q.w))
    return ",".join(repr(float(c)) for c in (q.w, q.x, q.y, q.z))


def _clean_lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


# ---------------------------------------------------------------------------
# Group files
# ---------------------------------------------------------------------------

def parse_group_text(text: str) -> GroupData:
    """
    Raises:
        InputFormatError: syntax errors (with line numbers)
        GroupDataError: well-formed data that fails the group checks
    """
    header: Dict[str, str] = {}
    blocks: List[Tuple[str, List[List[Quaternion]], int]] = []
    current = None
    for lineno, tokens in _clean_lines(text):
        key = tokens[0].lower()
        if current is not None:
            if key == "end":
                blocks.append(current)
                current = None
                continue
            try:
                current[1].append([parse_quaternion(t) for t in tokens])
            except InputFormatError as e:
                raise InputFormatError(f"line {lineno}: {e}") from e
            continue
        if key in ("kind", "field", "n"):
            if len(tokens) != 2:
                raise InputFormatError(f"line {lineno}: '{key}' takes one value")
            header[key] = tokens[1]
        elif key == "matrix":
            if len(tokens) != 2 or tokens[1].lower() not in ROLES:
                raise InputFormatError(f"line {lineno}: expected 'matrix <{'|'.join(ROLES)}>'")
            current = (tokens[1].lower(), [], lineno)
        else:
            raise InputFormatError(f"line {lineno}: unknown directive '{tokens[0]}'")
    if current is not None:
        raise InputFormatError(f"line {current[2]}: matrix block is missing 'end'")
    for key in ("kind", "n"):
        if key not in header:
            raise InputFormatError(f"Group file has no '{key}' line")
    try:
        n = int(header["n"])
    except ValueError as e:
        raise InputFormatError(f"Bad dimension '{header['n']}'") from e
    field_name = header.get("field", "H").upper()
    if field_name not in FIELDS:
        raise InputFormatError(f"Unsupported field '{field_name}' (expected one of {FIELDS})")

    roles: Dict[str, List[Isometry]] = {r: [] for r in ROLES}
    for role, rows, lineno in blocks:
        if len(rows) != n + 1 or any(len(r) != n + 1 for r in rows):
            raise InputFormatError(f"line {lineno}: matrix {role} must be {n + 1}x{n + 1}")
        roles[role].append(Isometry(qarray(rows)))
    if len(roles["axis"]) != 1:
        raise InputFormatError(f"Group file needs exactly one axis matrix, got {len(roles['axis'])}")
    G = GroupData(header["kind"].lower(), roles["axis"][0], tuple(roles["gamma1"]),
                  tuple(roles["gamma2"]), field_name)
    logger.debug(f"Parsed {G.kind} group: {len(G.gamma1)} + {len(G.gamma2)} generators, n = {n}")
    return G


def read_group_file(path: Union[str, Path]) -> GroupData:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputFormatError(f"Cannot read group file {path}: {e}") from e
    return parse_group_text(text)


def group_to_text(G: GroupData) -> str:
    lines = [f"kind {G.kind}", f"field {G.field_name}", f"n {G.n}"]
    for role, mats in (("axis", [G.axis]), ("gamma1", G.gamma1), ("gamma2", G.gamma2)):
        for g in mats:
            lines.append(f"matrix {role}")
            lines.extend(" ".join(format_entry(q) for q in row) for row in g.matrix)
            lines.append("end")
    return "\n".join(lines) + "\n"


def write_group_file(G: GroupData, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(group_to_text(G))
    return path


# ---------------------------------------------------------------------------
# Points, cycles and vertex maps
# ---------------------------------------------------------------------------

def parse_point(tokens: List[str], n: int = 2) -> BallPoint:
    """
    Ball coordinates `c1 ... cn`, `carnot z1 ... z_{n-1} | t` or `inf`.

    Raises:
        InputFormatError: wrong arity or bad literal
    """
    if not tokens:
        raise InputFormatError("Empty point")
    try:
        if tokens[0].lower() == "inf":
            return boundary_to_ball(INFINITY, n=n)
        if tokens[0].lower() == "carnot":
            rest = tokens[1:]
            if "|" not in rest:
                raise InputFormatError("Carnot point needs 'z ... | t'")
            bar = rest.index("|")
            z = [parse_quaternion(t) for t in rest[:bar]]
            t_tokens = rest[bar + 1:]
            if len(z) != n - 1 or len(t_tokens) != 1:
                raise InputFormatError(f"Carnot point needs {n - 1} z-entries and one t")
            return boundary_to_ball(qarray(z), parse_quaternion(t_tokens[0]), n=n)
        coords = [parse_quaternion(t) for t in tokens]
        if len(coords) != n:
            raise InputFormatError(f"Expected {n} ball coordinates, got {len(coords)}")
        return BallPoint(qarray(coords))
    except InputFormatError:
        raise
    except HypergeoError as e:
        raise InputFormatError(f"Invalid point {' '.join(tokens)}: {e}") from e


def parse_cycle_text(text: str) -> TriangulatedCycle:
    items = []
    for lineno, tokens in _clean_lines(text):
        if len(tokens) != 4:
            raise InputFormatError(f"line {lineno}: expected 'mult a b c'")
        try:
            mult = int(tokens[0])
        except ValueError as e:
            raise InputFormatError(f"line {lineno}: bad multiplicity '{tokens[0]}'") from e
        items.append((mult, tokens[1:]))
    if not items:
        raise InputFormatError("Cycle file has no triangles")
    return TriangulatedCycle.of(items)


def parse_vertex_map_text(text: str, n: int = 2) -> Dict[str, BallPoint]:
    out: Dict[str, BallPoint] = {}
    for lineno, tokens in _clean_lines(text):
        if len(tokens) < 2:
            raise InputFormatError(f"line {lineno}: expected 'label coordinates...'")
        try:
            point = parse_point(tokens[1:], n)
        except InputFormatError as e:
            raise InputFormatError(f"line {lineno}: {e}") from e
        if not point.is_boundary:
            raise InputFormatError(f"line {lineno}: vertex {tokens[0]} is not a boundary point")
        out[tokens[0]] = point
    return out


def read_cycle_file(path: Union[str, Path]) -> TriangulatedCycle:
    try:
        return parse_cycle_text(Path(path).read_text())
    except OSError as e:
        raise InputFormatError(f"Cannot read cycle file {path}: {e}") from e


def read_vertex_map(path: Union[str, Path], n: int = 2) -> Dict[str, BallPoint]:
    try:
        return parse_vertex_map_text(Path(path).read_text(), n)
    except OSError as e:
        raise InputFormatError(f"Cannot read vertex map {path}: {e}") from e

