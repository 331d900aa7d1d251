"""Tiered trees, rooted tiered trees and their q-enumerators.

A :class:`RootedTieredTree` stores vertices ``0..n`` with a level, a label
and a parent for each.  Trees are generated as spanning trees of the
compatibility graph of every admissible assignment of (level, label) pairs
to vertices, then deduplicated by a canonical form, since vertices sharing
both level and label are interchangeable.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .graphs import EdgeOrder, Graph, activity, kappa_inversions, root_tree, spanning_trees
from .qt import QTPoly
from .shapes import Composition
from .symfunc import SubsetMask, fundamental_content

__all__ = [
    "RootedTieredTree",
    "TieredTree",
    "compatible",
    "inv",
    "reading_order",
    "reading_word",
    "standardise",
    "compatibility_graph",
    "canonical_form",
    "enumerate_rtt",
    "enumerate_standard_rtt",
    "enumerate_rtt_root_j",
    "enumerate_rtt_zero",
    "enumerate_tt",
    "tree_enumerator",
    "tree_enumerator_standard",
    "wt",
    "ides_of_reversal",
    "kappa_of_tree",
]


@dataclass(frozen=True)
class RootedTieredTree:
    root: int
    levels: tuple[int, ...]
    labels: tuple[int, ...]
    parents: tuple[int | None, ...]

    def __post_init__(self):
        n = len(self.levels)
        if not (len(self.labels) == len(self.parents) == n):
            raise ValueError("levels, labels and parents must have equal length")
        if self.parents[self.root] is not None:
            raise ValueError("the root has no parent")
        if any(p is None for v, p in enumerate(self.parents) if v != self.root):
            raise ValueError("every non-root vertex needs a parent")
        # parents must reach the root without cycles
        for v in range(n):
            seen = set()
            while v != self.root:
                if v in seen:
                    raise ValueError("parent map has a cycle")
                seen.add(v)
                v = self.parents[v]

    @classmethod
    def from_edges(cls, root: int, levels: Sequence[int], labels: Sequence[int], edges: Iterable) -> RootedTieredTree:
        """Build from undirected edges on vertices ``0..n``."""
        shifted = [(a + 1, b + 1) for a, b in edges]
        parent = root_tree(len(levels), shifted, root + 1)
        if len(parent) != len(levels):
            raise ValueError("edges do not form a spanning tree")
        parents = [None] * len(levels)
        for v, p in parent.items():
            parents[v - 1] = None if p is None else p - 1
        return cls(root, tuple(levels), tuple(labels), tuple(parents))

    @property
    def size(self) -> int:
        return len(self.levels)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted((v, p))) for v, p in enumerate(self.parents) if p is not None)

    @cached_property
    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in range(self.size)}
        for v, p in enumerate(self.parents):
            if p is not None:
                out[p].append(v)
        return out

    def height(self, v: int) -> int:
        h = 0
        while v != self.root:
            v = self.parents[v]
            h += 1
        return h

    def ancestors(self, v: int) -> Iterator[int]:
        while self.parents[v] is not None:
            v = self.parents[v]
            yield v

    def violations(self, root_level_zero: bool = True) -> list[str]:
        """Broken tiered-tree conditions, empty for a valid tree."""
        out = []
        for a, b in self.edges():
            if self.levels[a] == self.levels[b]:
                out.append(f"edge {a}-{b} joins equal levels")
            lo, hi = (a, b) if self.levels[a] < self.levels[b] else (b, a)
            if self.levels[lo] < self.levels[hi] and not self.labels[lo] < self.labels[hi]:
                out.append(f"edge {lo}-{hi}: lower-level label is not smaller")
        for v, kids in self.children.items():
            seen = Counter((self.levels[c], self.labels[c]) for c in kids)
            if any(k > 1 for k in seen.values()):
                out.append(f"vertex {v} has siblings sharing level and label")
        root_level = self.levels[self.root]
        if sum(1 for lv in self.levels if lv == root_level) != 1:
            out.append("root is not alone on its level")
        if root_level_zero and (root_level != 0 or min(self.levels) != 0):
            out.append("root is not the level-0 vertex")
        return out

    def is_valid(self, root_level_zero: bool = True) -> bool:
        return not self.violations(root_level_zero)

    def tier_profile(self) -> Composition:
        counts = Counter(lv for v, lv in enumerate(self.levels) if v != self.root)
        top = max(counts) if counts else 0
        return Composition(counts[i] for i in range(1, top + 1) if counts[i])

    def content(self) -> Counter:
        return Counter(self.labels)

    def is_standard(self) -> bool:
        return sorted(self.labels) == list(range(1, self.size + 1))

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "levels": list(self.levels),
            "labels": list(self.labels),
            "parents": list(self.parents),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> RootedTieredTree:
        return cls(data["root"], tuple(data["levels"]), tuple(data["labels"]), tuple(data["parents"]))


@dataclass(frozen=True)
class TieredTree:
    """Unrooted standard tiered tree on vertices ``0..n-1``."""

    levels: tuple[int, ...]
    labels: tuple[int, ...]
    edges: frozenset


def compatible(T, i: int, j: int) -> bool:
    li, lj, wi, wj = T.levels[i], T.levels[j], T.labels[i], T.labels[j]
    return (li < lj and wi < wj) or (li > lj and wi > wj)


def inv(T: RootedTieredTree) -> int:
    count = 0
    for j in range(T.size):
        if j == T.root:
            continue
        for i in T.ancestors(j):
            if i == T.root:
                break
            if not compatible(T, j, T.parents[i]):
                continue
            wi, wj = T.labels[i], T.labels[j]
            if wj < wi or (wj == wi and T.levels[j] > T.levels[i]):
                count += 1
    return count


def _order_key(T: RootedTieredTree, v: int, memo: dict) -> tuple:
    if v in memo:
        return memo[v]
    if v == T.root:
        key = (T.levels[v], 0, (), T.labels[v])
    else:
        key = (T.levels[v], -T.height(v), _order_key(T, T.parents[v], memo), T.labels[v])
    memo[v] = key
    return key


def reading_order(T: RootedTieredTree) -> list[int]:
    memo: dict = {}
    return sorted(range(T.size), key=lambda v: _order_key(T, v, memo))


def reading_word(T: RootedTieredTree) -> tuple[int, ...]:
    return tuple(T.labels[v] for v in reading_order(T))


def standardise(T: RootedTieredTree) -> RootedTieredTree:
    """Relabel with 1..n so equal labels become decreasing along the reading word."""
    order = reading_order(T)
    new = [0] * T.size
    nxt = 1
    for value in sorted(set(T.labels)):
        for v in reversed(order):
            if T.labels[v] == value:
                new[v] = nxt
                nxt += 1
    return RootedTieredTree(T.root, T.levels, tuple(new), T.parents)


def compatibility_graph(T) -> Graph:
    """Graph on vertices 1..n (tree vertex v becomes v+1) joining compatible pairs."""
    edges = [(i + 1, j + 1) for i, j in combinations(range(len(T.levels)), 2) if compatible(T, i, j)]
    root = T.root + 1 if isinstance(T, RootedTieredTree) else None
    return Graph(len(T.levels), frozenset(edges), tuple(T.labels), root)


def canonical_form(T: RootedTieredTree) -> tuple:
    def form(v: int) -> tuple:
        return (T.levels[v], T.labels[v], tuple(sorted(form(c) for c in T.children[v])))

    return form(T.root)


def ides_of_reversal(word: Sequence[int]) -> frozenset:
    """Descent set of the inverse of the reversed permutation word."""
    pos = {x: i for i, x in enumerate(word)}
    return frozenset(i for i in range(1, len(word)) if pos[i + 1] > pos[i])


# ---------------------------------------------------------------------------
# generation


def _multisets(counts: tuple[int, ...], size: int, offset: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Sub-multisets of ``size`` labels from ``counts`` (label = offset + index); yields (chosen, rest)."""

    def rec(i: int, left: int, chosen: list[int], rest: list[int]):
        if left == 0:
            yield tuple(chosen), tuple(rest)
            return
        if i == len(rest):
            return
        for take in range(min(left, rest[i]), -1, -1):
            rest[i] -= take
            chosen.extend([offset + i] * take)
            yield from rec(i + 1, left - take, chosen, rest)
            del chosen[len(chosen) - take :]
            rest[i] += take

    yield from rec(0, size, [], list(counts))


def _assignments(alpha: Sequence[int], counts: tuple[int, ...], offset: int) -> Iterator[list[tuple[int, ...]]]:
    if not alpha:
        if not any(counts):
            yield []
        return
    for chosen, rest in _multisets(counts, alpha[0], offset):
        for tail in _assignments(alpha[1:], rest, offset):
            yield [chosen] + tail


def _trees_on(levels: list[int], labels: list[int]) -> Iterator[RootedTieredTree]:
    skeleton = RootedTieredTree(0, tuple(levels), tuple(labels), (None,) + (0,) * (len(levels) - 1))
    G = compatibility_graph(skeleton)
    seen = set()
    for edges in spanning_trees(G):
        T = RootedTieredTree.from_edges(0, levels, labels, [(a - 1, b - 1) for a, b in edges])
        kids_ok = all(
            len({(T.levels[c], T.labels[c]) for c in kids}) == len(kids) for kids in T.children.values()
        )
        if not kids_ok:
            continue
        form = canonical_form(T)
        if form not in seen:
            seen.add(form)
            yield T


def _enumerate(alpha: Sequence[int], counts: tuple[int, ...], root_labels: Iterable[int], offset: int) -> Iterator[RootedTieredTree]:
    alpha = tuple(alpha)
    for r in root_labels:
        rest = list(counts)
        if r >= offset:
            if rest[r - offset] == 0:
                continue
            rest[r - offset] -= 1
        for levels_labels in _assignments(alpha, tuple(rest), offset):
            levels = [0]
            labels = [r]
            for lv, chosen in enumerate(levels_labels, start=1):
                levels.extend([lv] * len(chosen))
                labels.extend(chosen)
            yield from _trees_on(levels, labels)


def enumerate_rtt(alpha: Sequence[int], content: Sequence[int]) -> Iterator[RootedTieredTree]:
    """Rooted alpha-trees whose labels have multiplicities ``content`` (content[j-1] copies of j)."""
    content = tuple(content)
    alpha = Composition(alpha)
    if sum(content) != alpha.size + 1:
        raise ValueError("content must have size |alpha| + 1")
    roots = [j for j, c in enumerate(content, start=1) if c]
    yield from _enumerate(alpha, content, roots, 1)


def enumerate_standard_rtt(alpha: Sequence[int]) -> Iterator[RootedTieredTree]:
    alpha = Composition(alpha)
    yield from enumerate_rtt(alpha, (1,) * (alpha.size + 1))


def enumerate_rtt_root_j(n: int, j: int) -> Iterator[RootedTieredTree]:
    """Standard fully tiered rooted trees on n+1 vertices with root labelled j."""
    counts = (1,) * (n + 1)
    yield from _enumerate((1,) * n, counts, [j], 1)


def enumerate_rtt_zero(alpha: Sequence[int], content: Sequence[int]) -> Iterator[RootedTieredTree]:
    """alpha-trees with an extra root labelled 0; ``content`` covers the non-root labels."""
    content = tuple(content)
    alpha = Composition(alpha)
    if sum(content) != alpha.size:
        raise ValueError("content must have size |alpha|")
    yield from _enumerate(alpha, content, [0], 1)


def tree_enumerator(trees: Iterable[RootedTieredTree]) -> QTPoly:
    counts = Counter((inv(T), 0) for T in trees)
    return QTPoly(dict(counts))


def tree_enumerator_standard(alpha: Sequence[int], content: Sequence[int], standard: list | None = None) -> QTPoly:
    """Sum over standard rooted alpha-trees of q^inv times the fundamental coefficient of x^content."""
    alpha = Composition(alpha)
    size = alpha.size + 1
    trees = standard if standard is not None else list(enumerate_standard_rtt(alpha))
    counts: Counter = Counter()
    for T in trees:
        mask = SubsetMask(size, ides_of_reversal(reading_word(T)))
        if fundamental_content(mask, content):
            counts[(inv(T), 0)] += 1
    return QTPoly(dict(counts))


def enumerate_tt(alpha: Sequence[int]) -> Iterator[TieredTree]:
    """Standard (unrooted) alpha-trees with labels 1..|alpha| and levels 1..len(alpha)."""
    alpha = Composition(alpha)
    n = alpha.size
    for levels_labels in _assignments(tuple(alpha), (1,) * n, 1):
        levels, labels = [], []
        for lv, chosen in enumerate(levels_labels, start=1):
            levels.extend([lv] * len(chosen))
            labels.extend(chosen)
        shell = TieredTree(tuple(levels), tuple(labels), frozenset())
        G = compatibility_graph(shell)
        for edges in spanning_trees(G):
            yield TieredTree(shell.levels, shell.labels, edges)


def wt(T: TieredTree) -> int:
    """External activity inside the compatibility graph, edges ordered by endpoint labels."""
    G = compatibility_graph(T)
    return activity(G, T.edges, EdgeOrder.by_labels(G))[1]


def kappa_of_tree(T: RootedTieredTree) -> int:
    """inv computed as kappa-inversions inside the compatibility graph (standard trees)."""
    G = compatibility_graph(T)
    edges = frozenset((a + 1, b + 1) for a, b in T.edges())
    return kappa_inversions(G, edges, T.root + 1)
