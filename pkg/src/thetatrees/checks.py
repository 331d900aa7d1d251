"""Named verification checks.

Every check expands its parameters into independent cells (plain dicts, so
they can be shipped to worker processes) and evaluates each cell to a
:class:`CheckReport` comparing two independently computed sides.
"""

from __future__ import annotations

import random
from collections import Counter
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Callable

from . import graphs, macdonald, polyomino, sandpile, shapes, trees
from .qt import QTPoly, QTRatio, as_ratio, specialize
from .symfunc import SymF, convert, e, h, hall, one, perp

__all__ = [
    "CheckReport",
    "UsageError",
    "CHECKS",
    "DEFAULT_CAPS",
    "check_names",
    "expand_cells",
    "run_cell",
    "run_check",
]

DEFAULT_CAPS = {"degree": 7, "vertices": 7, "polyomino": 8}


class UsageError(ValueError):
    pass


@dataclass
class CheckReport:
    name: str
    parameters: dict
    status: str
    lhs: str
    rhs: str
    elapsed_ms: float | None = None
    note: str = ""
    series: dict | None = None  # q-coefficient lists of both sides when they are polynomials in q

    def to_json(self, timing: bool = False) -> dict:
        out = {"name": self.name, "parameters": self.parameters, "status": self.status, "lhs": self.lhs, "rhs": self.rhs}
        if self.note:
            out["note"] = self.note
        if timing and self.elapsed_ms is not None:
            out["elapsed_ms"] = round(self.elapsed_ms, 1)
        return out


@dataclass
class Check:
    cells: Callable[[dict], list[dict]]
    evaluate: Callable[[dict], tuple]
    limits: Callable[[dict], dict]  # cell -> {"degree"|"vertices"|"polyomino": size}


CHECKS: dict[str, Check] = {}


def _register(name: str, cells, evaluate, limits) -> None:
    CHECKS[name] = Check(cells, evaluate, limits)


# ---------------------------------------------------------------------------
# small helpers


def _render(x) -> str:
    if isinstance(x, (QTPoly, QTRatio, SymF)):
        return x.render()
    return str(x)


def _same(a, b) -> bool:
    if isinstance(a, SymF) or isinstance(b, SymF):
        return a == b
    return as_ratio(a) == as_ratio(b)


def _fmt(parts) -> str:
    return ",".join(str(p) for p in parts)


def _parse(text) -> tuple[int, ...]:
    if isinstance(text, (tuple, list)):
        return tuple(int(x) for x in text)
    return tuple(int(x) for x in str(text).split(",") if x.strip())


def _range(params: dict, key: str, max_key: str, default: int, lo: int = 1) -> list[int]:
    if params.get(key) is not None:
        return [int(params[key])]
    return list(range(lo, int(params.get(max_key, default)) + 1))


def _compositions_upto(params: dict, default: int) -> list[tuple[int, ...]]:
    if params.get("alpha"):
        return [_parse(params["alpha"])]
    top = int(params.get("max_size", default))
    return [tuple(a) for n in range(1, top + 1) for a in shapes.compositions(n)]


def _size(cell: dict) -> int:
    return sum(_parse(cell["alpha"]))


def _sort_desc(parts) -> tuple[int, ...]:
    return tuple(sorted((p for p in parts if p), reverse=True))


@lru_cache(maxsize=None)
def _theta_e_t1(lam: tuple[int, ...]) -> SymF:
    return macdonald.theta(e(*lam), e(1)).specialize(t=1)


@lru_cache(maxsize=None)
def _theta_ones(n: int) -> SymF:
    return macdonald.theta(macdonald.e_ones(n), e(1))


def _m_expansion(size: int, table: dict) -> SymF:
    return SymF(size, "m", {shapes.Partition(mu): QTRatio(v) for mu, v in table.items() if v})


# ---------------------------------------------------------------------------
# t = 1 tree identities


def _theta_t1_cells(params):
    return [{"n": n} for n in _range(params, "n", "max_n", 5, lo=0)]


def _theta_t1_eval(cell):
    n = cell["n"]
    lhs = _theta_e_t1((1,) * n) if n else convert(e(1), "m")
    alpha = (1,) * n
    direct, standard = {}, {}
    std_trees = list(trees.enumerate_standard_rtt(alpha)) if n else None
    for mu in shapes.partitions(n + 1):
        direct[mu] = trees.tree_enumerator(trees.enumerate_rtt(alpha, mu))
        standard[mu] = trees.tree_enumerator_standard(alpha, mu, std_trees) if n else direct[mu]
    rhs = _m_expansion(n + 1, direct)
    note = "" if direct == standard else "standard-tree route disagrees with direct enumeration"
    return lhs, rhs, lhs == rhs and not note, note


_register("theta-t1", _theta_t1_cells, _theta_t1_eval, lambda c: {"degree": c["n"] + 1, "vertices": c["n"] + 1})


def _hilbert_cells(params):
    return [{"alpha": _fmt(a)} for a in _compositions_upto(params, 5)]


def _hilbert_eval(cell):
    alpha = _parse(cell["alpha"])
    F = _theta_e_t1(_sort_desc(alpha))
    lhs = hall(F, macdonald.e_ones(sum(alpha) + 1))
    rhs = trees.tree_enumerator(trees.enumerate_standard_rtt(alpha))
    return lhs, rhs, _same(lhs, rhs), ""


_register("hilbert", _hilbert_cells, _hilbert_eval, lambda c: {"degree": _size(c) + 1, "vertices": _size(c) + 1})


def _tutte_link_cells(params):
    return [{"n": n} for n in _range(params, "n", "max_n", 6)]


def _tutte_link_eval(cell):
    n = cell["n"]
    A = macdonald.a_series(n)
    table = {}
    for mu in shapes.partitions(n):
        total = QTPoly(0)
        for sigma in graphs.alpha_shuffles(mu):
            total = total + graphs.r_poly(sigma)
        table[mu] = total
    rhs = _m_expansion(n, table)
    theta_side = _theta_e_t1((1,) * (n - 1)) if n > 1 else convert(e(1), "m")
    note = "" if theta_side == A else "series differs from the Theta side at t=1"
    return A, rhs, A == rhs and not note, note


_register("tutte-link", _tutte_link_cells, _tutte_link_eval, lambda c: {"degree": c["n"], "vertices": c["n"]})


def _swap_levels_labels(T: trees.RootedTieredTree) -> trees.RootedTieredTree:
    """Vertex with level l and label w goes to level w-1 with label l+1; the label-1 vertex becomes the root."""
    return trees.RootedTieredTree.from_edges(
        T.labels.index(1),
        [w - 1 for w in T.labels],
        [lv + 1 for lv in T.levels],
        T.edges(),
    )


def _shuffle_tree(u: tuple[int, ...], alpha: tuple[int, ...], edges) -> trees.RootedTieredTree:
    """Spanning tree of K_u (vertices named by value) as a fully tiered tree."""
    n = len(u)
    block = {}
    start = 1
    for b, a in enumerate(alpha, start=1):
        for v in range(start, start + a):
            block[v] = b
        start += a
    pos = {v: i for i, v in enumerate(u, start=1)}
    levels = [n - pos[v] for v in range(1, n + 1)]
    labels = [block[v] for v in range(1, n + 1)]
    return trees.RootedTieredTree.from_edges(u[-1] - 1, levels, labels, [(a - 1, b - 1) for a, b in edges])


def _lemma_cells(params):
    out = []
    for a in _compositions_upto(params, 5):
        for kind in ("content", "standard", "spanning", "swap"):
            out.append({"alpha": _fmt(a), "identity": kind})
    return out


def _lemma_eval(cell):
    alpha = _parse(cell["alpha"])
    n = sum(alpha)
    kind = cell["identity"]
    if kind == "content":
        lhs = sum((graphs.r_poly(u) for u in graphs.alpha_shuffles(alpha)), QTPoly(0))
        rhs = trees.tree_enumerator(trees.enumerate_rtt((1,) * (n - 1), alpha))
        return lhs, rhs, lhs == rhs, ""
    if kind == "standard":
        lhs = sum((graphs.r_poly(u) for u in graphs.alpha_shuffles((1,) + alpha)), QTPoly(0))
        rhs = trees.tree_enumerator(trees.enumerate_standard_rtt(alpha))
        return lhs, rhs, lhs == rhs, ""
    if kind == "spanning":
        # kappa-inversions of each spanning tree against inv of its tiered tree
        bad = total = 0
        for u in graphs.alpha_shuffles(alpha):
            G = graphs.inversion_graph_by_value(u)
            for edges in graphs.spanning_trees(G):
                T = _shuffle_tree(u, alpha, edges)
                total += 1
                if T.violations() or trees.inv(T) != graphs.kappa_inversions(G, edges, u[-1]):
                    bad += 1
        return f"mismatches={bad}", "mismatches=0", bad == 0, f"{total} spanning trees"
    # level/label swap from RTT(1^n) with content (1, alpha) onto stRTT(alpha)
    image, before, moved = set(), Counter(), 0
    for T in trees.enumerate_rtt((1,) * n, (1,) + alpha):
        S = _swap_levels_labels(T)
        if S.violations():
            return "invalid image", "stRTT", False, ""
        image.add(trees.canonical_form(S))
        before[trees.inv(T)] += 1
        moved += trees.inv(S) != trees.inv(T)
    standard = list(trees.enumerate_standard_rtt(alpha))
    target = Counter(trees.inv(T) for T in standard)
    onto = image == {trees.canonical_form(T) for T in standard}
    ok = onto and len(image) == sum(before.values()) and before == target
    # inv is equidistributed, not preserved tree by tree
    return f"image={len(image)} inv={sorted(before.items())}", f"stRTT={sum(target.values())} inv={sorted(target.items())}", ok, f"{moved} trees change inv"


_register("lemma-trees", _lemma_cells, _lemma_eval, lambda c: {"vertices": _size(c) + 1})


def _conj_cells(params):
    return [{"alpha": _fmt(a)} for a in _compositions_upto(params, 5)]


def _conj_eval(cell):
    alpha = _parse(cell["alpha"])
    size = sum(alpha) + 1
    lhs = _theta_e_t1(_sort_desc(alpha))
    table = {mu: trees.tree_enumerator(trees.enumerate_rtt(alpha, mu)) for mu in shapes.partitions(size)}
    rhs = _m_expansion(size, table)
    return lhs, rhs, lhs == rhs, ""


_register("conjecture-theta", _conj_cells, _conj_eval, lambda c: {"degree": _size(c) + 1, "vertices": _size(c) + 1})


def _refined_cells(params):
    ns = _range(params, "n", "max_n", 5)
    return [{"n": n, "j": j} for n in ns for j in ([int(params["j"])] if params.get("j") else range(1, n + 1))]


def _refined_eval(cell):
    n, j = cell["n"], cell["j"]
    inner = _theta_ones(n - j) if n - j else e(1)
    F = macdonald.delta(e(1), inner)
    if j > 1:
        F = macdonald.theta(macdonald.e_ones(j - 1), F)
    lhs = specialize(hall(F, macdonald.e_ones(n)), t=1)
    rhs = trees.tree_enumerator(trees.enumerate_rtt_root_j(n, j))
    return lhs, rhs, _same(lhs, rhs), ""


_register("refined", _refined_cells, _refined_eval, lambda c: {"degree": c["n"], "vertices": c["n"] + 1})


def _symmetric_cells(params):
    return [{"alpha": _fmt(a)} for a in _compositions_upto(params, 5)]


def _symmetric_eval(cell):
    alpha = _parse(cell["alpha"])
    size = sum(alpha)
    lhs = macdonald.theta_symmetric(_sort_desc(alpha)).specialize(t=1)
    table = {mu: trees.tree_enumerator(trees.enumerate_rtt_zero(alpha, mu)) for mu in shapes.partitions(size)}
    rhs = _m_expansion(size, table)
    return lhs, rhs, lhs == rhs, ""


_register("symmetric-theta", _symmetric_cells, _symmetric_eval, lambda c: {"degree": _size(c), "vertices": _size(c) + 1})


# ---------------------------------------------------------------------------
# the row identity and its tableau expansions


def _row_cells(params):
    return [{"n": n} for n in _range(params, "n", "max_n", 6, lo=0)]


def _row_eval(cell):
    lhs, rhs = macdonald.macdonald_row_sides(cell["n"])
    return lhs, rhs, lhs == rhs, ""


_register("macdonald-identity", _row_cells, _row_eval, lambda c: {"degree": c["n"] + 1})


def _syt_cells(params):
    out = [{"size": d, "kind": "expansion"} for d in _range(params, "size", "max_size", 6, lo=0)]
    out += [{"size": d, "kind": "fiber"} for d in _range(params, "size", "max_size", 6)]
    return out


def _syt_eval(cell):
    d = cell["size"]
    if cell["kind"] == "expansion":
        direct = _theta_e_t1((1,) * d) if d else convert(e(1), "m")
        syt = convert(macdonald.theta_t1_syt(d, 0), "m")
        rst = convert(macdonald.theta_t1_rst(d, 0), "m")
        note = "" if syt == rst else "row-strict expansion differs from the tableau expansion"
        return syt, direct, syt == direct and not note, note
    bad = total = 0
    for lam in shapes.partitions(d):
        for T in shapes.syt_of(lam):
            total += 1
            bad += shapes.phi_fiber_size(T) != shapes.fiber_formula(T)
    return f"mismatches={bad}", "mismatches=0", bad == 0, f"{total} tableaux"


_register("syt-rst", _syt_cells, _syt_eval, lambda c: {"degree": c["size"] + 1})


# ---------------------------------------------------------------------------
# full (q, t) identities


def _catalan_cells(params):
    return [{"n": n} for n in _range(params, "n", "max_n", 5)]


def _catalan_eval(cell):
    n = cell["n"]
    lhs = hall(_theta_ones(n), e(n + 1))
    rhs = hall(macdonald.nabla(e(n)), macdonald.e_ones(n))
    return lhs, rhs, _same(lhs, rhs), ""


_register("catalan", _catalan_cells, _catalan_eval, lambda c: {"degree": c["n"] + 1})


def _hmn_cells(params):
    if params.get("m") and params.get("n"):
        return [{"m": int(params["m"]), "n": int(params["n"])}]
    top = int(params.get("max_sum", 7))
    return [{"m": m, "n": n} for s in range(2, top + 1) for m in range(1, s) for n in [s - m] if m >= n]


def _hmn_eval(cell):
    m, n = cell["m"], cell["n"]
    lhs = hall(_theta_ones(m + n - 1), h(*_sort_desc((m, n))))
    rhs = hall(_theta_ones(m + n - 2) if m + n > 2 else convert(e(1), "m"), h(*_sort_desc((m - 1, n - 1, 1))))
    return lhs, rhs, _same(lhs, rhs), ""


_register("hmn", _hmn_cells, _hmn_eval, lambda c: {"degree": c["m"] + c["n"]})


def _theta_e_chain(a: int, b: int, F: SymF) -> SymF | None:
    """Theta_{e_a} Theta_{e_b} F with empty results for negative indices."""
    if a < 0 or b < 0:
        return None
    inner = macdonald.theta(e(b), F) if b else F
    return macdonald.theta(e(a), inner) if a else inner


def _delta_split_cells(params):
    top = int(params.get("max_sum", 6))
    return [{"m": m, "n": n, "j": j} for m in range(top + 1) for n in range(top + 1) for j in range(top + 1) if m + n + j <= top]


def _delta_split_eval(cell):
    m, n, j = cell["m"], cell["n"], cell["j"]
    top = _theta_e_chain(m, n, e(1))
    lhs = perp(h(j), top) if j else convert(top, "m")
    rhs = SymF.zero(lhs.degree, "m")
    for a, b, c in ((m - j, n - j, j + 1), (m - j + 1, n - j, j), (m - j, n - j + 1, j), (m - j + 1, n - j + 1, j - 1)):
        if c < 0:
            continue
        term = _theta_e_chain(a, b, macdonald.nabla(e(c)) if c else one())
        if term is not None:
            rhs = rhs + convert(term, "m")
    return lhs, rhs, lhs == rhs, ""


_register("delta-split", _delta_split_cells, _delta_split_eval, lambda c: {"degree": c["m"] + c["n"] + 1})


def _root_split_cells(params):
    return [{"n": n} for n in _range(params, "n", "max_n", 4)]


def _root_split_eval(cell):
    n = cell["n"]
    lhs = perp(e(1), _theta_ones(n))
    rhs = SymF.zero(n, "m")
    for j in range(1, n + 1):
        F = macdonald.delta(e(1), _theta_ones(n - j) if n - j else e(1))
        if j > 1:
            F = macdonald.theta(macdonald.e_ones(j - 1), F)
        rhs = rhs + convert(F, "m")
    return lhs, rhs, lhs == rhs, ""


_register("root-split", _root_split_cells, _root_split_eval, lambda c: {"degree": c["n"] + 1})


# ---------------------------------------------------------------------------
# polyominoes, sandpiles and graphs


def _mn_cells(params, top_default: int, offset: int = 0):
    if params.get("m") and params.get("n"):
        return [{"m": int(params["m"]), "n": int(params["n"])}]
    top = int(params.get("max_sum", top_default))
    return [{"m": m, "n": s - m} for s in range(2, top + 1) for m in range(1, s)]


def _area_enumerator(m: int, n: int) -> QTPoly:
    counts: dict = {}
    for P in polyomino.enumerate_lpp(m, n):
        a = polyomino.area(P)
        counts[(a, 0)] = counts.get((a, 0), 0) + 1
    return QTPoly(counts)


def _polyomino_cells(params):
    cells = [dict(c, kind="area") for c in _mn_cells(params, 7)]
    cells += [dict(c, kind="zeta") for c in _mn_cells(params, 7)]
    return cells


def _polyomino_eval(cell):
    m, n = cell["m"], cell["n"]
    if cell["kind"] == "area":
        F = _theta_e_chain(m - 1, n - 1, e(1)).specialize(t=1)
        lhs = hall(F, macdonald.e_ones(m + n - 1))
        rhs = _area_enumerator(m, n)
        return lhs, rhs, _same(lhs, rhs), ""
    seen, bad = set(), 0
    for P in polyomino.enumerate_lpp(m, n):
        T = polyomino.zeta(P)
        seen.add(trees.canonical_form(T))
        if T.violations(root_level_zero=False) or polyomino.zeta_inverse(T) != P:
            bad += 1
        elif trees.compatibility_graph(T).edges != _relabelled_pi_edges(P, T):
            bad += 1
    lhs = f"trees={len(seen)} bad={bad}"
    if m > 1 and n > 1:
        expected = sum(1 for _ in trees.enumerate_tt((m - 1, 1, n - 1)))
    else:
        expected = len(seen)
    return lhs, f"trees={expected} bad=0", bad == 0 and len(seen) == expected, ""


def _relabelled_pi_edges(P, T) -> frozenset:
    """Edges of G_pi expressed on the tree's vertex numbering."""
    G = sandpile.pi_graph(P.partition())
    where = {lab: v + 1 for v, lab in enumerate(T.labels)}
    return frozenset(tuple(sorted((where[a], where[b]))) for a, b in G.edges)


_register("polyomino", _polyomino_cells, _polyomino_eval, lambda c: {"degree": c["m"] + c["n"] - 1, "polyomino": c["m"] + c["n"]})


def _sandpile_cells(params):
    top = int(params.get("max_graph", 7))
    cells = [{"vertices": v, "kind": "tutte"} for v in range(1, top + 1)]
    cells += [{"vertices": v, "kind": "complete"} for v in range(2, min(top, 5) + 1)]
    top_b = int(params.get("max_bijection", 6))
    cells += [{"vertices": v, "kind": "bijection"} for v in range(1, top_b + 1)]
    return cells


def _sandpile_eval(cell):
    N, kind = cell["vertices"], cell["kind"]
    if kind == "complete":
        G = graphs.inversion_graph_by_value(tuple(range(N, 0, -1)))
        SG = sandpile.SandpileGraph(G, N)
        lhs, rhs = sandpile.level_enumerator(SG), graphs.tutte_at_one(G)
        return lhs, rhs, lhs == rhs, ""
    lhs_total, rhs_total, bad, count = QTPoly(0), QTPoly(0), [], 0
    for m in range(1, N + 1):
        n = N + 1 - m
        for pi in polyomino.label_partitions(m, n):
            H = sandpile.pi_graph(pi)
            if not H.is_connected():
                continue
            count += 1
            G = sandpile.g_pi(pi)
            if kind == "tutte":
                a, b = sandpile.level_enumerator(G), graphs.tutte_at_one(H)
            else:
                a, b = _bijection_sides(G, pi, m, n)
            lhs_total, rhs_total = lhs_total + a, rhs_total + b
            if a != b:
                bad.append(pi)
    note = f"{count} graphs" + (f"; first mismatch at black={bad[0].black}" if bad else "")
    return lhs_total, rhs_total, not bad, note


def _bijection_sides(G, pi, m, n) -> tuple[QTPoly, QTPoly]:
    """Area over stLPP(pi) against level over Rec(G_pi); image must be all of Rec."""
    area: dict = {}
    images = set()
    for P in polyomino.enumerate_lpp(m, n):
        if P.partition() != pi:
            continue
        G2, c = sandpile.sandpile_encode(P)
        a = polyomino.area(P)
        if sandpile.level(G2, c) != a or sandpile.sandpile_decode(G2, c) != P:
            return QTPoly(0), QTPoly(-1)
        images.add(c.grains)
        area[(a, 0)] = area.get((a, 0), 0) + 1
    rec = {c.grains: sandpile.level(G, c) for c in sandpile.recurrent_configs(G)}
    if images != set(rec):
        return QTPoly(dict(area)), QTPoly(-1)
    levels: dict = {}
    for lv in rec.values():
        levels[(lv, 0)] = levels.get((lv, 0), 0) + 1
    return QTPoly(area), QTPoly(levels)


_register("sandpile", _sandpile_cells, _sandpile_eval, lambda c: {"vertices": c["vertices"]})


def _gessel_cells(params):
    if params.get("word"):
        cell = {"word": str(params["word"])}
        if params.get("root"):
            cell["root"] = int(params["root"])
        return [cell]
    top = int(params.get("max_n", 5))
    cells = [{"n": n} for n in range(1, top + 1)]
    samples = int(params.get("samples", 500))
    if samples:
        cells.append({"n": top + 1, "samples": samples, "seed": int(params.get("seed", 0))})
    return cells


def _gessel_eval(cell):
    if "word" in cell:
        u = graphs.parse_word(cell["word"])
        G = graphs.inversion_graph_by_value(graphs.word_standardise(u))
        root = int(cell["root"]) if cell.get("root") else None
        lhs, rhs = graphs.kappa_distribution(G, root), graphs.tutte_at_one(G)
        return lhs, rhs, lhs == rhs, ""
    n = cell["n"]
    if "samples" in cell:
        rng = random.Random(cell["seed"])
        perms = []
        for _ in range(cell["samples"]):
            p = list(range(1, n + 1))
            rng.shuffle(p)
            perms.append(tuple(p))
    else:
        perms = list(permutations(range(1, n + 1)))
    bad = 0
    for p in perms:
        G = graphs.inversion_graph_by_value(p)
        bad += graphs.kappa_distribution(G) != graphs.tutte_at_one(G)
    return f"mismatches={bad}", "mismatches=0", bad == 0, f"{len(perms)} permutations"


_register("gessel", _gessel_cells, _gessel_eval, lambda c: {"vertices": len(graphs.parse_word(c["word"])) if "word" in c else c["n"]})


# ---------------------------------------------------------------------------
# golden values from worked examples


def sample_tree() -> trees.RootedTieredTree:
    return trees.RootedTieredTree.from_edges(
        0,
        (0, 1, 1, 1, 1, 2, 2, 3, 3),
        (1, 3, 2, 2, 1, 4, 2, 4, 4),
        [(0, 2), (0, 7), (1, 5), (2, 5), (3, 7), (4, 6), (6, 7), (1, 8)],
    )


def area_sample_polyomino() -> polyomino.LabelledPolyomino:
    labels = {
        (0, 0): 4, (0, 1): 7, (0, 2): 8, (1, 0): 3, (2, 0): 1, (2, 3): 3, (3, 1): 6, (4, 1): 5, (5, 3): 2,
        (5, 4): 7, (6, 3): 1, (7, 4): 4, (8, 4): 3, (8, 5): 7, (8, 6): 9, (9, 4): 1, (10, 5): 3,
    }
    return polyomino.LabelledPolyomino.build(11, 7, "NNNEENEEENEEENNEEE", "EEENEENNEENEEENENN", labels)


def sandpile_sample_polyomino() -> polyomino.LabelledPolyomino:
    labels = {
        (0, 0): 8, (0, 1): 12, (1, 2): 9, (1, 3): 10, (3, 4): 6, (1, 0): 3,
        (2, 1): 11, (3, 1): 5, (4, 1): 4, (5, 2): 1, (6, 3): 7, (7, 3): 2,
    }
    return polyomino.LabelledPolyomino.build(8, 5, "NNENNEENEEEEE", "EENEEENENEENN", labels)


SPANNING_SAMPLE_WORD = (4, 5, 2, 1, 6, 3)
SPANNING_SAMPLE_TREE = frozenset([(1, 2), (1, 4), (2, 5), (3, 5), (3, 6)])
GRAIN_TABLE_ORDER = (8, 12, 9, 10, 6, 3, 11, 5, 4, 1, 7, 2)


def _examples_cells(params):
    return [{"example": k} for k in ("tree-inv", "tree-standard", "spanning-tree", "polyomino-area", "sandpile-table")]


def _examples_eval(cell):
    k = cell["example"]
    if k == "tree-inv":
        T = sample_tree()
        word = "".join(map(str, trees.reading_word(T)))
        return f"inv={trees.inv(T)} word={word}", "inv=4 word=131224244", word == "131224244" and trees.inv(T) == 4, ""
    if k == "tree-standard":
        S = trees.standardise(sample_tree())
        word = "".join(map(str, trees.reading_word(S)))
        got = f"inv={trees.inv(S)} word={word}"
        return got, "inv=4 word=261549387", got == "inv=4 word=261549387", ""
    if k == "spanning-tree":
        G = graphs.inversion_graph_by_value(SPANNING_SAMPLE_WORD)
        internal, _ = graphs.active_edges(G, SPANNING_SAMPLE_TREE, graphs.EdgeOrder.lex())
        kappa = graphs.kappa_inversions(G, SPANNING_SAMPLE_TREE, 5)
        got = f"kappa={kappa} active={sorted(internal)}"
        want = "kappa=1 active=[(1, 2), (1, 4), (3, 6)]"
        return got, want, got == want, "rooted at vertex 5"
    if k == "polyomino-area":
        a = polyomino.area(area_sample_polyomino())
        return f"area={a}", "area=10", a == 10, ""
    P = sandpile_sample_polyomino()
    G, c = sandpile.sandpile_encode(P)
    grains = tuple(c[v] for v in GRAIN_TABLE_ORDER)
    order = tuple(sandpile.canonical_toppling(G, c))
    got = f"grains={grains} order={order}"
    want = "grains=(9, 7, 5, 5, 3, 4, 0, 3, 3, 2, 0, 1) order=(8, 3, 12, 9, 10, 11, 5, 4, 1, 7, 2, 6)"
    return got, want, got == want, "grains listed for vertices " + _fmt(GRAIN_TABLE_ORDER)


_register("examples", _examples_cells, _examples_eval, lambda c: {})


# ---------------------------------------------------------------------------
# running


def check_names() -> list[str]:
    return sorted(CHECKS)


def expand_cells(name: str, params: dict, caps: dict | None = None) -> list[dict]:
    if name not in CHECKS:
        raise UsageError(f"unknown check {name!r}; choose from {', '.join(check_names())}")
    caps = {**DEFAULT_CAPS, **(caps or {})}
    try:
        cells = CHECKS[name].cells(params)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad parameters for {name}: {exc}") from exc
    for cell in cells:
        for key, value in CHECKS[name].limits(cell).items():
            if value > caps[key]:
                raise UsageError(f"{name} {cell} exceeds the {key} cap {caps[key]}; raise it with --max-degree")
    return cells


def _q_coefficients(x) -> list[int] | None:
    if isinstance(x, QTRatio):
        if not x.is_polynomial():
            return None
        x = x.as_poly()
    if not isinstance(x, QTPoly) or x.degree("t") > 0:
        return None
    coeffs = [0] * (max(x.degree("q"), 0) + 1)
    for (i, _), c in x.terms.items():
        coeffs[i] = c
    return coeffs


def run_cell(name: str, cell: dict) -> CheckReport:
    start = time.perf_counter()
    lhs, rhs, ok, note = CHECKS[name].evaluate(cell)
    elapsed = (time.perf_counter() - start) * 1000
    a, b = _q_coefficients(lhs), _q_coefficients(rhs)
    series = {"lhs": a, "rhs": b} if a is not None and b is not None else None
    return CheckReport(name, dict(cell), "ok" if ok else "fail", _render(lhs), _render(rhs), elapsed, note, series)


def _run_packed(args) -> CheckReport:
    return run_cell(*args)


def run_check(name: str, params: dict | None = None, caps: dict | None = None, jobs: int = 1) -> list[CheckReport]:
    cells = expand_cells(name, params or {}, caps)
    if jobs <= 1 or len(cells) <= 1:
        return [run_cell(name, cell) for cell in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_packed, [(name, cell) for cell in cells]))
