from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

import oracles
from positroid_tilings import fixtures
from positroid_tilings.cyclic_order import TotalCyclicOrder
from positroid_tilings.hypersimplex import (
    DimensionMismatch,
    InvalidBaseVertex,
    WSimplex,
    admissible_base_vertices,
    barycenter,
    cyclic_descents,
    decompose_pt_polytope,
    enumerate_D,
    eulerian_number,
    facet_sharing,
    indicator,
    pt_polytope_inequalities,
    rotation_ending_at,
    simplices_in_tile,
    simplices_in_tile_geometric,
    tile_contains_point,
    tile_inequalities,
    tile_volume,
    vertex_sets,
    w_simplex_facets,
)
from positroid_tilings.subdivision import (
    Arc,
    Subdivision,
    enumerate_bicolored,
    enumerate_tricolored,
    kermit_family,
    sigma_order,
)


# ---------------------------------------------------------------- descents and vertex sets


def test_d_2_4_golden():
    data = fixtures.load("d_2_4")
    words = [s.w for s in enumerate_D(1, 4)]
    assert sorted(words) == sorted(tuple(w) for w in data["words"])
    for w, c in zip(data["words"], data["cdes"]):
        assert cyclic_descents(w) == frozenset(c)


def test_vertex_sets_of_1324():
    data = fixtures.load("wsimplex_1324")
    w = tuple(data["w"])
    assert [rotation_ending_at(w, r) for r in range(1, 5)] == [tuple(x) for x in data["rotations"]]
    assert list(vertex_sets(w)) == [frozenset(x) for x in data["vertex_sets"]]


def test_descents_match_definition():
    for n in range(2, 7):
        for w in itertools.permutations(range(1, n + 1)):
            assert cyclic_descents(w) == oracles.cdes(w)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_enumerate_D_matches_scan(n):
    for k in range(n - 1):
        assert [s.w for s in enumerate_D(k, n)] == sorted(oracles.brute_D(k, n))


def test_eulerian_spot_values():
    # |D_{2,4}| = 4 sits at index k = 1 of the alternating-sum formula
    assert eulerian_number(1, 3) == 4 and eulerian_number(2, 3) == 1
    assert eulerian_number(3, 6) == 302
    assert eulerian_number(2, 5) == 66
    assert [eulerian_number(k, 4) for k in range(4)] == [1, 11, 11, 1]


def test_from_word_rotates_and_rejects_bad_input():
    assert WSimplex.from_word((4, 1, 3, 2)).w == (1, 3, 2, 4)
    with pytest.raises(ValueError):
        WSimplex.from_word((1, 1, 2))
    s = WSimplex.from_word((1, 3, 2, 4))
    assert WSimplex.from_json(s.to_json()) == s
    assert s.cycle() == TotalCyclicOrder((1, 3, 2, 4))


def test_vertex_sets_have_k_plus_one_elements():
    for n in range(3, 7):
        for k in range(n - 1):
            for s in enumerate_D(k, n):
                assert all(len(I) == k + 1 for I in vertex_sets(s.w))
                assert len(set(vertex_sets(s.w))) == n


def test_interval_bounds_hold_on_vertices():
    for n in range(3, 7):
        for k in range(n - 1):
            for s in enumerate_D(k, n):
                Is = dict(zip(range(1, n + 1), vertex_sets(s.w)))
                for a, b in itertools.permutations(range(1, n + 1), 2):
                    iv = [(a - 1 + t) % n + 1 for t in range((b - a) % n)]
                    lo = len(Is[b] & set(iv))
                    hi = len(Is[a] & set(iv))
                    for I in Is.values():
                        assert lo <= len(I & set(iv)) <= hi


# ---------------------------------------------------------------- facets


def test_facet_sharing_examples():
    assert facet_sharing(WSimplex.from_word((5, 4, 1, 2, 3, 6)), WSimplex.from_word((5, 1, 4, 2, 3, 6))) == (1, 4, 1)
    assert facet_sharing(WSimplex.from_word((2, 1, 3, 4)), WSimplex.from_word((1, 3, 2, 4))) == (2, 4, 1)
    assert facet_sharing(WSimplex.from_word((1, 3, 2, 4)), WSimplex.from_word((1, 3, 2, 4))) is None


@pytest.mark.parametrize("n", [4, 5, 6])
def test_facet_sharing_agrees_with_shared_vertices(n):
    for k in range(n - 1):
        ws = enumerate_D(k, n)
        verts = {s.w: set(vertex_sets(s.w)) for s in ws}
        for u, w in itertools.combinations(ws, 2):
            shared = len(verts[u.w] & verts[w.w]) == n - 1
            res = facet_sharing(u, w)
            assert (res is not None) == shared
            if res is not None:
                i, j, c = res
                iv = set((i - 1 + t) % n + 1 for t in range((j - i) % n))
                assert {len(I & iv) for I in verts[u.w] & verts[w.w]} == {c}


def test_w_simplex_facets_are_supporting():
    for n in range(4, 7):
        for k in range(n - 1):
            for s in enumerate_D(k, n):
                for arc, bound in w_simplex_facets(s):
                    iv = set((arc.src - 1 + t) % n + 1 for t in range((arc.dst - arc.src) % n))
                    values = [len(I & iv) for I in vertex_sets(s.w)]
                    assert values.count(bound) == n - 1


# ---------------------------------------------------------------- geometry


def test_barycenter_of_1324():
    assert barycenter(WSimplex.from_word((1, 3, 2, 4))) == (Fraction(1, 2), Fraction(3, 4), Fraction(1, 2), Fraction(1, 4))
    assert barycenter(WSimplex.from_word((1, 2, 3, 4, 5))) == tuple([Fraction(1, 5)] * 5)
    assert indicator({1, 3}, 4) == (1, 0, 1, 0)


def test_barycenters_are_distinct():
    for n in range(3, 8):
        for k in range(n - 1):
            pts = [barycenter(s) for s in enumerate_D(k, n)]
            assert len(set(pts)) == len(pts)
            assert all(sum(p) == k + 1 for p in pts)


def test_tile_inequalities_examples():
    sigma = fixtures.subdivision("bicolored_5_9")
    poly = tile_inequalities(sigma)
    assert poly.bound_for(range(3, 7)) == (2, 3)
    facets = {(f.interval, f.bound) for f in poly.facets}
    assert ((5,), 0) in facets
    assert ((6, 7, 8, 9, 1, 2, 3), 5) in facets


def test_all_white_bounds():
    poly = tile_inequalities(Subdivision.on_ngon(5, [("white", range(1, 6))]))
    assert all((b.lower, b.upper) == (0, 1) for b in poly.bounds)


def test_membership():
    sigma = fixtures.subdivision("bicolored_2_6")
    poly = tile_inequalities(sigma)
    assert tile_contains_point(poly, barycenter(WSimplex.from_word((5, 1, 2, 4, 3, 6))), strict=True)
    assert not tile_contains_point(poly, barycenter(WSimplex.from_word((1, 2, 5, 3, 4, 6))), strict=True)
    assert not tile_contains_point(poly, [Fraction(1, 2)] * 5 + [0])
    with pytest.raises(DimensionMismatch):
        tile_contains_point(poly, [0, 0, 1])
    # a vertex of the hypersimplex outside the tile's positroid
    assert not tile_contains_point(poly, indicator({5, 6, 1}, 6), strict=True)


def test_geometric_route_refuses_grey():
    with pytest.raises(ValueError):
        simplices_in_tile_geometric(fixtures.subdivision("tricolored_3_2_8"))


def test_tile_contents_listed():
    sigma = fixtures.subdivision("bicolored_2_6")
    words = {"".join(map(str, s.w)) for s in simplices_in_tile(sigma)}
    assert words == set(fixtures.load("bicolored_2_6")["extensions"])
    assert tile_volume(kermit_family(6, 0)[0]) == 1


def test_volumes_add_up_on_fixture_tiling():
    assert sum(tile_volume(s) for s in fixtures.tiling_tiles()) == 302


# ---------------------------------------------------------------- Parke-Taylor polytope


def test_pt_polytope_of_all_grey_is_unit_cube():
    n = 6
    poly = pt_polytope_inequalities(Subdivision.on_ngon(n, [("grey", range(1, n + 1))]))
    singles = {b.interval: (b.lower, b.upper) for b in poly.bounds if len(b.interval) == 1}
    assert singles == {(i,): (0, 1) for i in range(1, n)}
    for b in poly.bounds:
        assert b.lower == 0 and b.upper >= len(b.interval)
    assert tile_volume(Subdivision.on_ngon(n, [("grey", range(1, n + 1))])) == 120


def test_pt_polytope_examples():
    poly = pt_polytope_inequalities(fixtures.subdivision("tricolored_3_2_8"))
    got = {b.interval: (b.lower, b.upper) for b in poly.bounds}
    for (i, j), lo, hi in fixtures.load("tricolored_3_2_8")["bounds"]:
        assert got[tuple(range(i, j + 1))] == (lo, hi)
    # the remaining listed inequalities
    assert got[(2, 3, 4, 5, 6)] == (1, 4)
    assert got[(1, 2, 3, 4, 5, 6)] == (2, 5)
    assert got[(2, 3, 4, 5, 6, 7)] == (2, 5)
    assert got[(2, 3, 4)] == (0, 3)
    assert all(got[(i,)] == (0, 1) for i in range(1, 8))


def test_pt_polytope_of_bicolored_is_projected_tile():
    for sigma in enumerate_bicolored(2, 6):
        full = tile_inequalities(sigma).bound_map()
        for b in pt_polytope_inequalities(sigma).bounds:
            assert full[b.arc] == (b.lower, b.upper)


# ---------------------------------------------------------------- grey refinement


def test_refinement_of_tricolored_fixture():
    tau = fixtures.subdivision("tricolored_3_2_8")
    data = fixtures.load("tricolored_3_2_8")
    assert admissible_base_vertices(tau) == {(2, 3, 4, 5): 2}
    parts = decompose_pt_polytope(tau)
    assert [p.to_json() for p in parts] == data["refinement"]
    ground = list(range(1, 9))
    vols = []
    seen = set()
    for p in parts:
        chains = oracles.polygon_chains([(q.color.value, q.vertices) for q in p.polygons])
        ext = {oracles.canonical_word(c) for c in oracles.brute_extensions(ground, chains)}
        assert not ext & seen
        seen |= ext
        vols.append(len(ext))
        assert tile_volume(p) == len(ext)
    # exhaustive counts over all 5040 cycles on 8 labels
    assert vols == [55, 127, 134, 62]
    assert len(seen) == tile_volume(tau) == 378


def test_refinement_partitions_extensions_small_n():
    for n in range(3, 7):
        for tau in enumerate_tricolored(n):
            parts = decompose_pt_polytope(tau)
            whole = {s.w for s in simplices_in_tile(tau)}
            pieces = [{s.w for s in simplices_in_tile(p)} for p in parts]
            assert sum(len(x) for x in pieces) == len(whole)
            assert set().union(*pieces) == whole


def test_refinement_degenerate_cases():
    sigma = fixtures.subdivision("bicolored_2_6")
    assert decompose_pt_polytope(sigma) == [sigma]
    grey = Subdivision.on_ngon(6, [("grey", range(1, 7))])
    parts = decompose_pt_polytope(grey)
    kermits = {s for k in range(5) for s in kermit_family(6, k, 1)}
    assert set(parts) == kermits


def test_invalid_base_vertex():
    tau = fixtures.subdivision("tricolored_3_2_8")
    with pytest.raises(InvalidBaseVertex):
        decompose_pt_polytope(tau, {(2, 3, 4, 5): 3})
    with pytest.raises(InvalidBaseVertex):
        decompose_pt_polytope(tau, {(2, 3, 4, 5): 7}, strict=False)
    # a non-admissible base vertex is accepted on request and still covers the volume here
    parts = decompose_pt_polytope(tau, {(2, 3, 4, 5): 4}, strict=False)
    assert len(parts) == 4
