from __future__ import annotations

import json
from math import comb

import pytest

import oracles
from positroid_tilings import fixtures
from positroid_tilings.dlx import ResourceBoundExceeded
from positroid_tilings.subdivision import kermit_family
from positroid_tilings.tiling import (
    CHECKS,
    FailureCertificate,
    Tiling,
    check_all_facet_pairings,
    check_arc_balance,
    check_covering_multiplicity,
    check_facet_pairing,
    check_weight_sum,
    circle_vertices,
    enumerate_tilings,
    is_tiling,
    peel_black_polygons,
    run_checks,
    tiling_size_distribution,
)


def _key(sub) -> frozenset:
    return frozenset((p.color.value, tuple(sorted(p.vertices))) for p in sub.polygons)


def brute_tilings(k: int, n: int) -> set[frozenset]:
    """Exact covers found by plain recursion over brute-force extension sets."""
    ground = list(range(1, n + 1))
    words = {w for w in oracles.brute_D(k, n)}
    tiles = {}
    for sub in oracles.brute_bicolored(n):
        if oracles.black_triangles(sub) != k:
            continue
        chains = oracles.polygon_chains(sub)
        ext = frozenset(tuple(int(c) for c in oracles.canonical_word(cy)) for cy in oracles.brute_extensions(ground, chains))
        tiles[sub] = ext
    out = set()

    def rec(uncovered: frozenset, chosen: list):
        if not uncovered:
            out.add(frozenset(chosen))
            return
        w = min(uncovered)
        for sub, ext in tiles.items():
            if w in ext and ext <= uncovered:
                rec(uncovered - ext, chosen + [sub])

    rec(frozenset(words), [])
    return out


@pytest.mark.parametrize("k,n", [(1, 4), (1, 5), (2, 5), (0, 5), (1, 6), (2, 6), (3, 6)])
def test_search_matches_plain_recursion(k, n):
    mine = {frozenset(_key(s) for s in t.subdivisions) for t in enumerate_tilings(k, n)}
    assert mine == brute_tilings(k, n)
    assert all(len(t) == comb(n - 2, k) for t in mine)


def test_tiling_counts_frozen():
    # cross-checked by the recursion above and by the memoised counter
    counts = {(1, 4): 2, (1, 5): 5, (2, 5): 5, (1, 6): 14, (2, 6): 120, (3, 6): 14}
    for (k, n), c in counts.items():
        assert sum(1 for _ in enumerate_tilings(k, n)) == c
        assert tiling_size_distribution(k, n) == {comb(n - 2, k): c}


def test_search_output_is_deterministic():
    a = [json.dumps(t.to_json()) for t in enumerate_tilings(2, 6)]
    b = [json.dumps(t.to_json()) for t in enumerate_tilings(2, 6)]
    assert a == b


def test_parallel_search_matches_serial():
    serial = [t.to_json() for t in enumerate_tilings(2, 6)]
    parallel = [t.to_json() for t in enumerate_tilings(2, 6, threads=2)]
    assert serial == parallel


def test_limit_and_node_budget():
    assert len(list(enumerate_tilings(2, 6, limit=3))) == 3
    with pytest.raises(ResourceBoundExceeded):
        list(enumerate_tilings(2, 6, max_nodes=3))


def test_size_bound(monkeypatch):
    monkeypatch.setenv("TILER_MAX_N", "5")
    with pytest.raises(ResourceBoundExceeded):
        list(enumerate_tilings(1, 6))


def test_kermit_is_tiling_and_negative_controls():
    fam = kermit_family(7, 3, 1)
    t = is_tiling(fam, 3, 7)
    assert isinstance(t, Tiling) and len(t) == 10 and t.volume() == 302
    cert = is_tiling(fam[1:], 3, 7)
    assert isinstance(cert, FailureCertificate) and cert.kind == "uncovered"
    assert cert.to_json()["failure"] == "uncovered"
    cert = is_tiling(fam + [fam[0]], 3, 7)
    assert cert.kind == "overlap" and len(cert.tiles) == 2
    with pytest.raises(ValueError):
        is_tiling(fam, 2, 7)


def test_tiles_are_sorted():
    t = is_tiling(list(reversed(kermit_family(6, 2, 3))), 2, 6)
    keys = [json.dumps(s.to_json(), sort_keys=True) for s in t.subdivisions]
    assert keys == sorted(keys)


# ---------------------------------------------------------------- necessary conditions


def test_fixture_conditions():
    tiles = fixtures.tiling_tiles()
    assert check_facet_pairing(tiles, 4, 7, 2) == (2, 2, True)
    assert check_facet_pairing(tiles, 4, 7, 1) == (1, 1, True)
    assert check_arc_balance(tiles, 4, 7) == (3, 3, True)
    assert check_all_facet_pairings(tiles, 7, 3) == []
    mult, ok, info = check_covering_multiplicity(tiles)
    assert mult == 6 and ok and info["expected"] == 6


def test_run_checks_on_every_small_tiling():
    for k, n in [(1, 5), (2, 5), (1, 6), (3, 6)]:
        for t in enumerate_tilings(k, n):
            res = run_checks(t, CHECKS, samples=8)
            assert res["pass"], (k, n, res)


def test_conditions_fail_on_broken_collection():
    tiles = kermit_family(7, 3, 1)[1:]
    res = [check_arc_balance(tiles, i, j) for i in range(1, 8) for j in range(i + 2, 8) if (i, j) != (1, 7)]
    assert not all(ok for _, _, ok in res)
    mult, ok, _ = check_covering_multiplicity(tiles, samples=16, n=7, k=3)
    assert not ok
    full = is_tiling(kermit_family(7, 3, 1), 3, 7)
    assert check_weight_sum(full)
    assert not check_weight_sum(Tiling(3, 7, full.tiles[1:], False))


def test_covering_multiplicity_of_kermit_tilings():
    for n in range(4, 8):
        for k in range(1, n - 1):
            mult, ok, _ = check_covering_multiplicity(kermit_family(n, k, 2), samples=6, seed=n)
            assert ok and mult == comb(n - 3, k - 1)


def test_circle_vertices_are_convex_and_clockwise():
    from positroid_tilings.tiling import _orient

    for n in range(3, 10):
        v = circle_vertices(n)
        assert len(set(v)) == n
        for i in range(n):
            assert _orient(v[i], v[(i + 1) % n], v[(i + 2) % n]) < 0


def test_peeling():
    groups = peel_black_polygons(fixtures.tiling_tiles())
    assert groups is not None and len(groups) == comb(4, 2)
    for g in groups:
        assert sum(len(p) - 2 for p in g) == 5
    assert peel_black_polygons(kermit_family(6, 2, 1)[1:]) is None
