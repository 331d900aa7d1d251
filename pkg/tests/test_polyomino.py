from collections import Counter
from math import comb

import pytest

from thetatrees.checks import area_sample_polyomino, sandpile_sample_polyomino
from thetatrees.polyomino import (
    LabelledPolyomino,
    area,
    bounce_labels,
    bounce_path,
    enumerate_lpp,
    label_partitions,
    path_pairs,
    zeta,
    zeta_inverse,
)
from thetatrees.trees import enumerate_tt

SHAPES = [(m, n) for m in range(1, 5) for n in range(1, 5) if m + n <= 6]


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 6) for n in range(1, 6)])
def test_path_pairs_narayana(m, n):
    N = m + n - 1
    assert sum(1 for _ in path_pairs(m, n)) == comb(N, m) * comb(N, m - 1) // N


def test_pictured_area():
    # [PAPER]
    assert area(area_sample_polyomino()) == 10


def test_pictured_bounce_order():
    # [PAPER] labels met along the bounce path give the toppling order
    assert tuple(bounce_labels(sandpile_sample_polyomino())) == (8, 3, 12, 9, 10, 11, 5, 4, 1, 7, 2, 6)


def test_bounce_path_ends_at_corner():
    P = sandpile_sample_polyomino()
    assert bounce_path(P)[-1] == (P.m, P.n)


def test_pictured_zeta_roundtrip():
    P = area_sample_polyomino()
    T = zeta(P)
    assert not T.violations(root_level_zero=False)
    assert zeta_inverse(T) == P


def test_small_area_enumerator():
    # [DERIVED] exhaustive count, matched by the tiered-tree side of the polyomino check
    assert Counter(area(P) for P in enumerate_lpp(2, 2)) == {0: 4, 1: 1}


@pytest.mark.parametrize("m,n", SHAPES)
def test_zeta_bijection(m, n):
    polys = list(enumerate_lpp(m, n))
    images = {zeta(P).dumps() for P in polys}
    assert len(images) == len(polys)
    for P in polys:
        assert zeta_inverse(zeta(P)) == P
    # same count as unrooted standard trees with one vertex in the middle tier
    assert len(polys) == sum(1 for _ in enumerate_tt((m - 1, 1, n - 1) if m > 1 and n > 1 else [a for a in (m - 1, 1, n - 1) if a]))


def test_label_partitions_count():
    assert sum(1 for _ in label_partitions(2, 3)) == 4 * 3


def test_json_roundtrip():
    P = sandpile_sample_polyomino()
    assert LabelledPolyomino.from_json(P.to_json()) == P


def test_bad_labels_rejected():
    with pytest.raises(ValueError):
        # column labels must increase upwards
        LabelledPolyomino.build(2, 2, "NNEE", "EENN", {(0, 0): 2, (0, 1): 1, (1, 0): 3})


def test_paths_must_not_touch():
    with pytest.raises(ValueError):
        LabelledPolyomino.build(2, 2, "NENE", "ENEN", {})
