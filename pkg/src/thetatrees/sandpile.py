"""Abelian sandpiles on sink-rooted graphs and the polyomino encoding."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator

from .graphs import Graph
from .polyomino import (
    BLACK,
    GREEN,
    RED,
    LabelledPolyomino,
    LabelPartition,
    zeta_inverse,
)
from .qt import QTPoly
from .trees import RootedTieredTree

__all__ = [
    "SandpileGraph",
    "SandpileConfig",
    "NotRecurrentError",
    "topple",
    "stabilize",
    "is_recurrent",
    "is_recurrent_burning",
    "level",
    "recurrent_configs",
    "level_enumerator",
    "g_pi",
    "pi_graph",
    "canonical_toppling",
    "sandpile_encode",
    "sandpile_decode",
]


class NotRecurrentError(ValueError):
    pass


@dataclass(frozen=True)
class SandpileGraph:
    graph: Graph
    sink: int
    colours: tuple | None = None  # per vertex, only for graphs built from a label partition

    def __post_init__(self):
        if self.sink not in self.graph.vertices:
            raise ValueError(f"sink {self.sink} is not a vertex")
        if not self.graph.is_connected():
            raise ValueError("sandpile graphs must be connected")

    @property
    def vertices(self) -> range:
        return self.graph.vertices

    @cached_property
    def adjacency(self) -> tuple:
        # index 0 unused so vertex v sits at position v
        return ((),) + tuple(tuple(sorted(self.graph.neighbours(v))) for v in self.graph.vertices)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def edge_count(self) -> int:
        return len(self.graph.edges)

    def colour(self, v: int) -> str:
        if self.colours is None:
            raise ValueError("graph carries no colouring")
        return self.colours[v - 1]


@dataclass(frozen=True)
class SandpileConfig:
    grains: tuple  # grains[v-1] for vertex v

    def __post_init__(self):
        object.__setattr__(self, "grains", tuple(self.grains))
        if any(g < 0 for g in self.grains):
            raise ValueError("grain counts must be nonnegative")

    def __getitem__(self, v: int) -> int:
        return self.grains[v - 1]

    @property
    def total(self) -> int:
        return sum(self.grains)


def topple(G: SandpileGraph, c: SandpileConfig, v: int, force: bool = False) -> SandpileConfig:
    deg = G.degree(v)
    if c[v] < deg and not force:
        raise ValueError(f"vertex {v} is stable and cannot topple")
    g = list(c.grains)
    g[v - 1] -= deg
    for w in G.adjacency[v]:
        g[w - 1] += 1
    return SandpileConfig(g)


def _stabilize(G: SandpileGraph, g: list, order: list | None = None) -> None:
    """In-place stabilization away from the sink; appends toppled vertices to ``order``."""
    adj = G.adjacency
    deg = [len(a) for a in adj]
    stack = [v for v in G.vertices if v != G.sink and g[v - 1] >= deg[v]]
    while stack:
        v = stack.pop()
        if g[v - 1] < deg[v]:
            continue
        g[v - 1] -= deg[v]
        if order is not None:
            order.append(v)
        for w in adj[v]:
            g[w - 1] += 1
            if w != G.sink and g[w - 1] >= deg[w]:
                stack.append(w)
        if g[v - 1] >= deg[v]:
            stack.append(v)


def stabilize(G: SandpileGraph, c: SandpileConfig) -> SandpileConfig:
    g = list(c.grains)
    _stabilize(G, g)
    return SandpileConfig(g)


def is_recurrent(G: SandpileGraph, c: SandpileConfig) -> bool:
    """c(s) = deg(s), and toppling the sink then stabilizing gives c back."""
    if c[G.sink] != G.degree(G.sink):
        return False
    if any(c[v] >= G.degree(v) for v in G.vertices if v != G.sink):
        return False
    g = list(c.grains)
    g[G.sink - 1] -= G.degree(G.sink)
    for w in G.adjacency[G.sink]:
        g[w - 1] += 1
    _stabilize(G, g)
    return tuple(g) == c.grains


def is_recurrent_burning(G: SandpileGraph, c: SandpileConfig) -> bool:
    """Dhar's burning test, used as an independent check."""
    if c[G.sink] != G.degree(G.sink):
        return False
    if any(c[v] >= G.degree(v) for v in G.vertices if v != G.sink):
        return False
    burnt = {G.sink}
    changed = True
    while changed:
        changed = False
        for v in G.vertices:
            if v in burnt:
                continue
            if c[v] >= sum(1 for w in G.adjacency[v] if w not in burnt):
                burnt.add(v)
                changed = True
    return len(burnt) == G.graph.n


def level(G: SandpileGraph, c: SandpileConfig) -> int:
    return c.total - G.edge_count


def recurrent_configs(G: SandpileGraph) -> Iterator[SandpileConfig]:
    ranges = [range(G.degree(G.sink), G.degree(G.sink) + 1) if v == G.sink else range(G.degree(v)) for v in G.vertices]
    for grains in product(*ranges):
        c = SandpileConfig(grains)
        if is_recurrent(G, c):
            yield c


def level_enumerator(G: SandpileGraph) -> QTPoly:
    out: dict = {}
    for c in recurrent_configs(G):
        key = (level(G, c), 0)
        out[key] = out.get(key, 0) + 1
    return QTPoly(out)


# ---------------------------------------------------------------------------
# graphs from label partitions


def pi_graph(pi: LabelPartition) -> Graph:
    """Edges i < j with i green or black and j red, or i green and j black."""
    N = pi.size
    edges = []
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            ci, cj = pi.colour_of(i), pi.colour_of(j)
            if (ci in (GREEN, BLACK) and cj == RED) or (ci == GREEN and cj == BLACK):
                edges.append((i, j))
    return Graph(N, frozenset(edges))


def g_pi(pi: LabelPartition) -> SandpileGraph:
    """The graph of ``pi`` with the black label as sink; raises if it is disconnected."""
    colours = tuple(pi.colour_of(v) for v in range(1, pi.size + 1))
    return SandpileGraph(pi_graph(pi), pi.black, colours)


def _toppling_run(G: SandpileGraph, c: SandpileConfig) -> tuple[list, dict]:
    """Canonical order plus, for each toppled vertex, the vertices it made unstable."""
    if G.colours is None:
        raise ValueError("canonical toppling needs a green/black/red coloured graph")
    if not is_recurrent(G, c):
        raise NotRecurrentError("configuration is not recurrent")
    g = list(c.grains)
    toppled: set = set()
    queued: set = set()
    order: list = []
    woke: dict = {}
    greens: list = []
    reds: list = []

    def fire(v: int) -> None:
        g[v - 1] -= G.degree(v)
        for w in G.adjacency[v]:
            g[w - 1] += 1
        toppled.add(v)
        order.append(v)
        fresh = [
            w for w in G.vertices
            if w not in toppled and w not in queued and w != G.sink and g[w - 1] >= G.degree(w)
        ]
        queued.update(fresh)
        woke[v] = fresh
        greens.extend(sorted((w for w in fresh if G.colour(w) == GREEN), reverse=True))
        reds.extend(sorted(w for w in fresh if G.colour(w) == RED))

    fire(G.sink)
    while greens or reds:
        while greens:
            fire(greens.pop(0))
        while reds:
            fire(reds.pop(0))
    if len(order) != G.graph.n or tuple(g) != c.grains:
        raise NotRecurrentError("list procedure did not topple every vertex once")
    return order, woke


def canonical_toppling(G: SandpileGraph, c: SandpileConfig) -> list[int]:
    return _toppling_run(G, c)[0]


def _white(col_label: int, row_label: int) -> bool:
    return col_label < row_label


def sandpile_encode(P: LabelledPolyomino) -> tuple[SandpileGraph, SandpileConfig]:
    """Grains from white squares: above a green, right of a red, right of or above the black."""
    if not P.is_standard():
        raise ValueError("encoding needs a standard labelling")
    G = g_pi(P.partition())
    cols, rows = P.column_label, P.row_label
    grains = [0] * (P.m + P.n - 1)
    for x in range(1, P.m):
        y0 = P.green_cells[x][1]
        grains[cols[x] - 1] = sum(_white(cols[x], rows[y]) for y in range(y0 + 1, P.n))
    for y in range(1, P.n):
        x0 = P.red_cells[y][0]
        grains[rows[y] - 1] = sum(_white(cols[x], rows[y]) for x in range(x0 + 1, P.m))
    b = P.black
    grains[b - 1] = sum(_white(cols[x], b) for x in range(1, P.m)) + sum(_white(b, rows[y]) for y in range(1, P.n))
    return G, SandpileConfig(grains)


def sandpile_decode(G: SandpileGraph, c: SandpileConfig) -> LabelledPolyomino:
    """Rebuild the polyomino from who-wakes-whom in the canonical toppling."""
    order, woke = _toppling_run(G, c)
    tier = {GREEN: 1, BLACK: 2, RED: 3}
    index = {v: i for i, v in enumerate(order)}
    parents = [None] * len(order)
    for v, fresh in woke.items():
        for w in fresh:
            parents[index[w]] = index[v]
    T = RootedTieredTree(
        root=0,
        levels=tuple(tier[G.colour(v)] for v in order),
        labels=tuple(order),
        parents=tuple(parents),
    )
    return zeta_inverse(T)

