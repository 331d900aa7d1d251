"""Simple labelled graphs, spanning trees, Tutte activities and inversion graphs.

Vertices are ``1..n``.  A labelling defaults to the vertex names, so a graph
built from a permutation's inversions by value is already standardly
labelled.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

import flint

from .qt import QTPoly

__all__ = [
    "Graph",
    "EdgeOrder",
    "spanning_trees",
    "activity",
    "active_edges",
    "tutte",
    "tutte_at_one",
    "render_tutte",
    "root_tree",
    "kappa_inversions",
    "kappa_distribution",
    "inversion_graph",
    "inversion_graph_by_value",
    "default_root",
    "r_poly",
    "alpha_shuffles",
    "word_standardise",
    "parse_word",
]

Edge = tuple[int, int]
_XY = flint.fmpz_mpoly_ctx.get(("x", "y"), "deglex")


def _edge(a: int, b: int) -> Edge:
    if a == b:
        raise ValueError(f"loop at vertex {a}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset
    labels: tuple | None = None
    root: int | None = None
    _adj: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        edges = frozenset(_edge(a, b) for a, b in self.edges)
        for a, b in edges:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge {(a, b)} outside vertices 1..{self.n}")
        object.__setattr__(self, "edges", edges)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.n:
                raise ValueError("need one label per vertex")
            object.__setattr__(self, "labels", labels)
        if self.root is not None and not 1 <= self.root <= self.n:
            raise ValueError(f"root {self.root} is not a vertex")
        adj = {v: set() for v in range(1, self.n + 1)}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", adj)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def label(self, v: int) -> int:
        return self.labels[v - 1] if self.labels is not None else v

    def neighbours(self, v: int) -> set:
        return self._adj[v]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._adj[a]

    def components(self) -> list[list[int]]:
        seen, out = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices: Sequence[int]) -> tuple[Graph, dict]:
        """Subgraph on ``vertices`` renumbered 1..k (labels carried); also returns old->new map."""
        index = {v: i for i, v in enumerate(sorted(vertices), start=1)}
        edges = [(index[a], index[b]) for a, b in self.edges if a in index and b in index]
        labels = tuple(self.label(v) for v in sorted(vertices))
        return Graph(len(index), frozenset(edges), labels), index

    def with_root(self, root: int | None) -> Graph:
        return Graph(self.n, self.edges, self.labels, root)

    def to_json(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        if self.root is not None:
            out["root"] = self.root
        return out

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        return cls(data["n"], frozenset(tuple(e) for e in data["edges"]), data.get("labels"), data.get("root"))


class EdgeOrder:
    """Strict total order on edges given by a sort key."""

    def __init__(self, key: Callable[[Edge], object], name: str = "custom"):
        self.key = key
        self.name = name

    @classmethod
    def lex(cls) -> EdgeOrder:
        return cls(lambda e: e, "lex")

    @classmethod
    def by_labels(cls, G: Graph) -> EdgeOrder:
        """Lexicographic by the (sorted) labels of the endpoints, ties by vertex names."""

        def key(e: Edge):
            a, b = sorted((G.label(e[0]), G.label(e[1])))
            return (a, b, e)

        return cls(key, "labels")

    @classmethod
    def from_sequence(cls, edges: Iterable[Edge]) -> EdgeOrder:
        rank = {_edge(*e): i for i, e in enumerate(edges)}
        return cls(lambda e: rank[e], "sequence")


def spanning_trees(G: Graph) -> Iterator[frozenset]:
    """Every spanning tree of ``G`` once, as a frozenset of edges."""
    if G.n == 0:
        return
    if not G.is_connected():
        return
    edges = sorted(G.edges)
    m = len(edges)

    def connectable(start: int, comp: list[int], ncomp: int) -> bool:
        parent = {c: c for c in set(comp[1:])}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        left = ncomp
        for a, b in edges[start:]:
            ra, rb = find(comp[a]), find(comp[b])
            if ra != rb:
                parent[ra] = rb
                left -= 1
                if left == 1:
                    return True
        return left == 1

    def rec(i: int, comp: list[int], chosen: list[Edge], ncomp: int):
        if ncomp == 1:
            yield frozenset(chosen)
            return
        if m - i < ncomp - 1:
            return
        a, b = edges[i]
        ca, cb = comp[a], comp[b]
        if ca != cb:
            merged = [ca if c == cb else c for c in comp]
            chosen.append(edges[i])
            yield from rec(i + 1, merged, chosen, ncomp - 1)
            chosen.pop()
        if connectable(i + 1, comp, ncomp):
            yield from rec(i + 1, comp, chosen, ncomp)

    yield from rec(0, list(range(G.n + 1)), [], G.n)


def _tree_adjacency(n: int, tree: Iterable[Edge]) -> dict[int, set]:
    adj = {v: set() for v in range(1, n + 1)}
    for a, b in tree:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _side(adj: dict, start: int, cut: Edge) -> set:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if {x, y} == set(cut) or y in seen:
                continue
            seen.add(y)
            stack.append(y)
    return seen


def _tree_path(adj: dict, a: int, b: int) -> list[Edge]:
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = []
    while prev[b] is not None:
        path.append(_edge(b, prev[b]))
        b = prev[b]
    return path


def active_edges(G: Graph, tree: frozenset, order: EdgeOrder | None = None) -> tuple[list[Edge], list[Edge]]:
    """Internally and externally active edges of the spanning tree ``tree``."""
    order = order or EdgeOrder.lex()
    adj = _tree_adjacency(G.n, tree)
    internal = []
    for e in tree:
        side = _side(adj, e[0], e)
        crossing = [f for f in G.edges if (f[0] in side) != (f[1] in side)]
        if min(crossing, key=order.key) == e:
            internal.append(e)
    external = []
    for e in G.edges - tree:
        circuit = _tree_path(adj, e[0], e[1]) + [e]
        if min(circuit, key=order.key) == e:
            external.append(e)
    return sorted(internal), sorted(external)


def activity(G: Graph, tree: frozenset, order: EdgeOrder | None = None) -> tuple[int, int]:
    internal, external = active_edges(G, tree, order)
    return len(internal), len(external)


def tutte(G: Graph, order: EdgeOrder | None = None) -> flint.fmpz_mpoly:
    """Tutte polynomial in ``x, y`` as an activity sum; product over components."""
    total = _XY.from_dict({(0, 0): 1})
    for comp in G.components():
        sub, _ = G.induced(comp)
        counts = Counter(activity(sub, T, order) for T in spanning_trees(sub))
        total = total * _XY.from_dict(dict(counts))
    return total


def render_tutte(poly: flint.fmpz_mpoly) -> str:
    return str(poly).replace(" ", "").replace("+", " + ").replace("-", " - ").lstrip(" ")


def tutte_at_one(G: Graph, order: EdgeOrder | None = None) -> QTPoly:
    """T_G(1, q) as a polynomial in q (product over components)."""
    out = QTPoly(1)
    for comp in G.components():
        sub, _ = G.induced(comp)
        counts: Counter = Counter()
        for T in spanning_trees(sub):
            counts[(activity(sub, T, order)[1], 0)] += 1
        out = out * QTPoly(dict(counts))
    return out


def root_tree(n: int, tree: Iterable[Edge], root: int) -> dict[int, int | None]:
    """Parent map of a spanning tree (or forest component) rooted at ``root``."""
    adj = _tree_adjacency(n, tree)
    parent = {root: None}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return parent


def kappa_inversions(G: Graph, tree: frozenset, root: int | None = None) -> int:
    """Inversions (i, j) of the rooted tree with i not the root and {p(i), j} an edge of G."""
    root = root if root is not None else G.root
    if root is None:
        raise ValueError("a root is required")
    parent = root_tree(G.n, tree, root)
    if len(parent) != G.n:
        raise ValueError("tree does not span the graph")
    count = 0
    for j in parent:
        anc = parent[j]
        while anc is not None:
            i = anc
            if i != root and G.label(j) < G.label(i) and G.has_edge(parent[i], j):
                count += 1
            anc = parent[i]
    return count


def kappa_distribution(G: Graph, root: int | None = None) -> QTPoly:
    """sum over spanning trees of q^{kappa-inversions}.

    For disconnected graphs each component is handled separately; the
    component containing ``root`` uses it and the others use their largest
    vertex.
    """
    root = root if root is not None else G.root
    out = QTPoly(1)
    for comp in G.components():
        sub, index = G.induced(comp)
        r = index[root] if root in index else sub.n
        counts: Counter = Counter()
        for T in spanning_trees(sub):
            counts[(kappa_inversions(sub, T, r), 0)] += 1
        out = out * QTPoly(dict(counts))
    return out


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if "," in text:
        return tuple(int(x) for x in text.split(",") if x.strip())
    return tuple(int(c) for c in text)


def inversion_graph(u: Sequence[int]) -> Graph:
    """Vertices are positions 1..n, vertex i labelled u_i, edges at inversions i < j, u_i > u_j."""
    u = tuple(u)
    edges = [(i + 1, j + 1) for i, j in combinations(range(len(u)), 2) if u[i] > u[j]]
    return Graph(len(u), frozenset(edges), u, len(u) if u else None)


def inversion_graph_by_value(perm: Sequence[int]) -> Graph:
    """Same graph for a permutation with vertices named by their letters."""
    perm = tuple(perm)
    edges = [(perm[i], perm[j]) for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j]]
    return Graph(len(perm), frozenset(edges), None, perm[-1] if perm else None)


def default_root(u: Sequence[int]) -> int:
    """Vertex holding the last letter; it sits on tier 0 under the tree correspondence."""
    return len(u)


def r_poly(u: Sequence[int]) -> QTPoly:
    """R_u(q) = T_{K_u}(1, q) summed over spanning trees, so 0 when K_u is disconnected.

    The shuffle sums over inversion graphs only balance with this
    convention; ``tutte_at_one`` keeps the multiplicative one.
    """
    G = inversion_graph(word_standardise(u))
    return tutte_at_one(G) if G.is_connected() else QTPoly(0)


def word_standardise(u: Sequence[int]) -> tuple[int, ...]:
    """Replace equal letters by consecutive integers from left to right."""
    order = sorted(range(len(u)), key=lambda i: (u[i], i))
    out = [0] * len(u)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return tuple(out)


def alpha_shuffles(alpha: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Permutations containing each block of consecutive values as an increasing subsequence."""
    alpha = tuple(alpha)
    n = sum(alpha)
    blocks, start = [], 1
    for a in alpha:
        blocks.append(list(range(start, start + a)))
        start += a

    def rec(pointers: list[int], word: list[int]):
        if len(word) == n:
            yield tuple(word)
            return
        for b, block in enumerate(blocks):
            if pointers[b] < len(block):
                word.append(block[pointers[b]])
                pointers[b] += 1
                yield from rec(pointers, word)
                pointers[b] -= 1
                word.pop()

    yield from rec([0] * len(blocks), [])
