"""Labelled parallelogram polyominoes.

Cells are ``(column, row)`` pairs, 0-based from the bottom-left corner.  A
vertical red step ``(x, y) -> (x, y+1)`` owns the cell ``(x, y)`` and a
horizontal green step ``(x, y) -> (x+1, y)`` owns the cell ``(x, y)``; the
corner cell ``(0, 0)`` is owned by both and carries the black label.
Every column therefore has one green (or black) label and every row one
red (or black) label.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence

from .trees import RootedTieredTree

__all__ = [
    "LabelledPolyomino",
    "LabelPartition",
    "path_points",
    "path_pairs",
    "enumerate_lpp",
    "area",
    "bounce_path",
    "bounce_labels",
    "zeta",
    "zeta_inverse",
    "label_partitions",
]

GREEN, BLACK, RED = "green", "black", "red"
_TIER = {GREEN: 1, BLACK: 2, RED: 3}


def path_points(steps: str) -> list[tuple[int, int]]:
    x = y = 0
    pts = [(0, 0)]
    for s in steps:
        if s == "N":
            y += 1
        elif s == "E":
            x += 1
        else:
            raise ValueError(f"bad step {s!r}")
        pts.append((x, y))
    return pts


def _red_cells(red: str) -> list[tuple[int, int]]:
    pts = path_points(red)
    return [pts[i] for i, s in enumerate(red) if s == "N"]


def _green_cells(green: str) -> list[tuple[int, int]]:
    pts = path_points(green)
    return [pts[i] for i, s in enumerate(green) if s == "E"]


def _strictly_above(red: str, green: str) -> bool:
    """Red path above green everywhere except the shared endpoints."""
    if red[:1] != "N" or green[:1] != "E":
        return False
    r, g = path_points(red), path_points(green)
    # compare after the same number of steps: red must have more north steps
    for k in range(1, len(red)):
        if r[k][1] - g[k][1] <= 0:
            return False
    return True


@dataclass(frozen=True)
class LabelledPolyomino:
    m: int
    n: int
    red: str
    green: str
    labels: tuple  # sorted tuple of ((col, row), value)

    def __post_init__(self):
        for path in (self.red, self.green):
            if path.count("E") != self.m or path.count("N") != self.n:
                raise ValueError(f"path {path!r} does not end at ({self.m}, {self.n})")
        if self.m + self.n > 2 and not _strictly_above(self.red, self.green):
            raise ValueError("red path must stay strictly above the green path")
        expected = set(self.red_cells) | set(self.green_cells)
        given = dict(self.labels)
        if set(given) != expected:
            raise ValueError("labels must sit exactly on the red vertical and green horizontal step cells")
        object.__setattr__(self, "labels", tuple(sorted(given.items())))
        for problem in self._label_problems():
            raise ValueError(problem)

    @classmethod
    def build(cls, m: int, n: int, red: str, green: str, labels: dict) -> LabelledPolyomino:
        return cls(m, n, red, green, tuple(sorted(labels.items())))

    @cached_property
    def red_cells(self) -> list[tuple[int, int]]:
        return _red_cells(self.red)

    @cached_property
    def green_cells(self) -> list[tuple[int, int]]:
        return _green_cells(self.green)

    @cached_property
    def label_map(self) -> dict:
        return dict(self.labels)

    def colour(self, cell: tuple[int, int]) -> str:
        if cell == (0, 0):
            return BLACK
        return RED if cell in set(self.red_cells) else GREEN

    @cached_property
    def column_label(self) -> list[int]:
        return [self.label_map[c] for c in self.green_cells]

    @cached_property
    def row_label(self) -> list[int]:
        return [self.label_map[c] for c in self.red_cells]

    @property
    def black(self) -> int:
        return self.label_map[(0, 0)]

    def _label_problems(self) -> list[str]:
        lm = dict(self.labels)
        out = []
        for x in range(self.m):
            col = [lm[c] for c in sorted(lm) if c[0] == x]
            if any(a >= b for a, b in zip(col, col[1:])):
                out.append(f"column {x} labels are not strictly increasing upward")
        for y in range(self.n):
            row = [lm[c] for c in sorted(lm, key=lambda c: c[0]) if c[1] == y]
            if any(a <= b for a, b in zip(row, row[1:])):
                out.append(f"row {y} labels are not strictly decreasing rightward")
        return out

    def inside(self, cell: tuple[int, int]) -> bool:
        x, y = cell
        return 0 <= x < self.m and 0 <= y < self.n and y >= self.green_cells[x][1] and x >= self.red_cells[y][0]

    def is_standard(self) -> bool:
        return sorted(v for _, v in self.labels) == list(range(1, self.m + self.n))

    def partition(self) -> LabelPartition:
        greens = frozenset(self.label_map[c] for c in self.green_cells if c != (0, 0))
        reds = frozenset(self.label_map[c] for c in self.red_cells if c != (0, 0))
        return LabelPartition(greens, self.black, reds)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "red": self.red,
            "green": self.green,
            "labels": [{"cell": list(c), "value": v, "colour": self.colour(c)} for c, v in self.labels],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> LabelledPolyomino:
        labels = {tuple(item["cell"]): item["value"] for item in data["labels"]}
        return cls.build(data["m"], data["n"], data["red"], data["green"], labels)


@dataclass(frozen=True)
class LabelPartition:
    greens: frozenset
    black: int
    reds: frozenset

    def colour_of(self, label: int) -> str:
        if label == self.black:
            return BLACK
        return GREEN if label in self.greens else RED

    @property
    def size(self) -> int:
        return len(self.greens) + len(self.reds) + 1


def label_partitions(m: int, n: int) -> Iterator[LabelPartition]:
    """Ordered set partitions of [m+n-1] into (m-1 greens, 1 black, n-1 reds)."""
    N = m + n - 1
    everything = range(1, N + 1)
    for greens in combinations(everything, m - 1):
        rest = [x for x in everything if x not in greens]
        for black in rest:
            reds = frozenset(x for x in rest if x != black)
            yield LabelPartition(frozenset(greens), black, reds)


# ---------------------------------------------------------------------------
# enumeration


def _lattice_paths(m: int, n: int, first: str) -> Iterator[str]:
    rest_e, rest_n = m - (first == "E"), n - (first == "N")
    if rest_e < 0 or rest_n < 0:
        return
    for pos in combinations(range(rest_e + rest_n), rest_n):
        chosen = set(pos)
        yield first + "".join("N" if i in chosen else "E" for i in range(rest_e + rest_n))


def path_pairs(m: int, n: int) -> Iterator[tuple[str, str]]:
    """All (red, green) pairs forming an m x n parallelogram polyomino."""
    if m == 1 and n == 1:
        yield ("NE", "EN")
        return
    for red in _lattice_paths(m, n, "N"):
        for green in _lattice_paths(m, n, "E"):
            if _strictly_above(red, green):
                yield red, green


def _cell_relations(red: str, green: str) -> tuple[list, list]:
    """Labelled cells and pairs (a, b) forcing label(a) < label(b)."""
    cells = sorted(set(_red_cells(red)) | set(_green_cells(green)))
    less = []
    for a, b in combinations(cells, 2):
        if a[0] == b[0]:
            lo, hi = (a, b) if a[1] < b[1] else (b, a)
            less.append((lo, hi))
        elif a[1] == b[1]:
            left, right = (a, b) if a[0] < b[0] else (b, a)
            less.append((right, left))
    return cells, less


def _labellings(cells: list, less: list, content: Sequence[int]) -> Iterator[dict]:
    """Assignments with the given label multiplicities (content[j-1] copies of j)."""
    below = {c: [a for a, b in less if b == c] for c in cells}
    above = {c: [b for a, b in less if a == c] for c in cells}
    counts = list(content)
    assign: dict = {}

    def rec(i: int):
        if i == len(cells):
            yield dict(assign)
            return
        cell = cells[i]
        lo = max((assign[a] for a in below[cell] if a in assign), default=0)
        hi = min((assign[b] for b in above[cell] if b in assign), default=len(counts) + 1)
        for value in range(lo + 1, hi):
            if counts[value - 1]:
                counts[value - 1] -= 1
                assign[cell] = value
                yield from rec(i + 1)
                del assign[cell]
                counts[value - 1] += 1

    yield from rec(0)


def enumerate_lpp(m: int, n: int, standard: bool = True, content: Sequence[int] | None = None) -> Iterator[LabelledPolyomino]:
    """Labelled m x n polyominoes; standard labels 1..m+n-1 unless ``content`` is given."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if content is None:
        if not standard:
            raise ValueError("non-standard enumeration needs a content vector")
        content = (1,) * (m + n - 1)
    if sum(content) != m + n - 1:
        raise ValueError("content must have size m + n - 1")
    for red, green in path_pairs(m, n):
        cells, less = _cell_relations(red, green)
        for labels in _labellings(cells, less, content):
            yield LabelledPolyomino.build(m, n, red, green, labels)


# ---------------------------------------------------------------------------
# statistics


def area(P: LabelledPolyomino) -> int:
    """Unlabelled inside cells whose row label exceeds their column label."""
    lm = P.label_map
    count = 0
    for x in range(P.m):
        for y in range(P.n):
            cell = (x, y)
            if cell in lm or not P.inside(cell):
                continue
            if P.row_label[y] > P.column_label[x]:
                count += 1
    return count


def bounce_path(P: LabelledPolyomino) -> list[tuple[int, int]]:
    """Points of the bounce path from (0, 1) to (m, n)."""
    g_pts = path_points(P.green)
    r_pts = path_points(P.red)
    green_vertical_ends = {g_pts[i + 1] for i, s in enumerate(P.green) if s == "N"}
    red_horizontal_ends = {r_pts[i + 1] for i, s in enumerate(P.red) if s == "E"}
    x, y = 0, 1
    pts = [(x, y)]
    heading = "E"
    while (x, y) != (P.m, P.n):
        if heading == "E":
            x += 1
            if (x, y) in green_vertical_ends:
                heading = "N"
        else:
            y += 1
            if (x, y) in red_horizontal_ends:
                heading = "E"
        pts.append((x, y))
    return pts


def bounce_labels(P: LabelledPolyomino) -> list[int]:
    """Column labels on horizontal steps and row labels on vertical steps, in path order."""
    pts = bounce_path(P)
    out = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        out.append(P.column_label[x0] if y0 == y1 else P.row_label[y0])
    return out


# ---------------------------------------------------------------------------
# the bijection with (m, 1, n)-tiered trees


def zeta(P: LabelledPolyomino) -> RootedTieredTree:
    """Tree on black (tier 2, root), green (tier 1) and red (tier 3) labels joined along rows and columns."""
    vertices = [(0, 0)]
    vertices += [c for c in P.green_cells if c != (0, 0)]
    vertices += [c for c in P.red_cells if c != (0, 0)]
    index = {c: i for i, c in enumerate(vertices)}
    levels = [_TIER[P.colour(c)] for c in vertices]
    labels = [P.label_map[c] for c in vertices]
    edges = []
    for x, gcell in enumerate(P.green_cells):
        for rcell in P.red_cells:
            if rcell[0] == x and rcell != gcell:
                edges.append((index[gcell], index[rcell]))
    for y, rcell in enumerate(P.red_cells):
        for gcell in P.green_cells:
            if gcell[1] == y and gcell != rcell:
                edges.append((index[rcell], index[gcell]))
    return RootedTieredTree.from_edges(0, levels, labels, edges)


def zeta_inverse(T: RootedTieredTree) -> LabelledPolyomino:
    """Place labels breadth-first from the tier-2 root, reds stacked upward, greens rightward."""
    levels = set(T.levels)
    if T.levels[T.root] != 2 or not levels <= {1, 2, 3} or T.levels.count(2) != 1:
        raise ValueError("expected a tree with tiers 1, 2, 3 rooted at its single tier-2 vertex")
    cell = {T.root: (0, 0)}
    next_col, next_row = 1, 1
    queue = deque([T.root])
    while queue:
        v = queue.popleft()
        x, y = cell[v]
        kids = T.children[v]
        reds = sorted((c for c in kids if T.levels[c] == 3), key=lambda c: T.labels[c])
        greens = sorted((c for c in kids if T.levels[c] == 1), key=lambda c: -T.labels[c])
        if T.levels[v] in (1, 2):
            for c in reds:
                cell[c] = (x, next_row)
                next_row += 1
        if T.levels[v] in (2, 3):
            for c in greens:
                cell[c] = (next_col, y)
                next_col += 1
        if T.levels[v] == 1 and greens or T.levels[v] == 3 and reds:
            raise ValueError("children on the same side of the middle tier as their parent")
        queue.extend(reds + greens)
    m, n = next_col, next_row
    col_of_row = {y: x for v, (x, y) in cell.items() if T.levels[v] in (2, 3)}
    row_of_col = {x: y for v, (x, y) in cell.items() if T.levels[v] in (1, 2)}
    red, x = "", 0
    for y in range(n):
        red += "E" * (col_of_row[y] - x) + "N"
        x = col_of_row[y]
    red += "E" * (m - x)
    green, y = "", 0
    for x in range(m):
        green += "N" * (row_of_col[x] - y) + "E"
        y = row_of_col[x]
    green += "N" * (n - y)
    labels = {cell[v]: T.labels[v] for v in cell}
    return LabelledPolyomino.build(m, n, red, green, labels)
