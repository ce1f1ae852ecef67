"""Positroid tilings as exact covers of w-simplices, and necessary conditions on them."""

from __future__ import annotations

import math
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from .cyclic_order import enumerate_extensions
from .dlx import DancingLinks, ResourceBoundExceeded
from .hypersimplex import WSimplex, enumerate_D
from .parke_taylor import _pt_sum, pt_eval, random_point
from .subdivision import (
    Arc,
    Color,
    Subdivision,
    area,
    enumerate_bicolored,
    facet_defining_arcs,
    sigma_order,
    validate,
)

__all__ = [
    "ResourceBoundExceeded",
    "TileCandidate",
    "Tiling",
    "FailureCertificate",
    "max_n",
    "candidates",
    "is_tiling",
    "enumerate_tilings",
    "tiling_size_distribution",
    "check_facet_pairing",
    "check_arc_balance",
    "check_covering_multiplicity",
    "peel_black_polygons",
    "check_weight_sum",
    "run_checks",
]


def max_n() -> int:
    return int(os.environ.get("TILER_MAX_N", "8"))


def _check_bound(n: int) -> None:
    if n > max_n():
        raise ResourceBoundExceeded(f"n={n} exceeds TILER_MAX_N={max_n()}")


@dataclass(frozen=True)
class TileCandidate:
    subdivision: Subdivision
    extension_set: frozenset[int]

    def volume(self) -> int:
        return len(self.extension_set)


@dataclass(frozen=True)
class Tiling:
    k: int
    n: int
    tiles: tuple[TileCandidate, ...]
    combinatorial: bool = False

    def __len__(self) -> int:
        return len(self.tiles)

    @property
    def subdivisions(self) -> list[Subdivision]:
        return [t.subdivision for t in self.tiles]

    def volume(self) -> int:
        return sum(t.volume() for t in self.tiles)

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "n": self.n,
            "size": len(self.tiles),
            "tiles": [t.subdivision.to_json() for t in self.tiles],
        }
        if self.combinatorial:
            out["kind"] = "combinatorial"
        return out


@dataclass(frozen=True)
class FailureCertificate:
    kind: str  # "uncovered" or "overlap"
    witness: WSimplex
    tiles: tuple[int, ...]

    def to_json(self) -> dict:
        return {"failure": self.kind, "witness": self.witness.to_json(), "tiles": list(self.tiles)}


@lru_cache(maxsize=None)
def _simplex_index(k: int, n: int) -> tuple[tuple[WSimplex, ...], dict]:
    ws = tuple(enumerate_D(k, n))
    return ws, {s.w: idx for idx, s in enumerate(ws)}


def _tile_key(sub: Subdivision) -> str:
    import json

    return json.dumps(sub.to_json(), sort_keys=True)


def make_candidate(sub: Subdivision, k: int, n: int) -> TileCandidate:
    _, index = _simplex_index(k, n)
    ext = frozenset(index[t.cycle] for t in enumerate_extensions(sigma_order(sub)))
    return TileCandidate(sub, ext)


@lru_cache(maxsize=None)
def candidates(k: int, n: int) -> tuple[TileCandidate, ...]:
    """Every bicolored subdivision of type (k, n) with its extension set."""
    _check_bound(n)
    return tuple(make_candidate(s, k, n) for s in enumerate_bicolored(k, n))


def _sorted_tiling(k: int, n: int, tiles: Iterable[TileCandidate], combinatorial: bool = False) -> Tiling:
    return Tiling(k, n, tuple(sorted(tiles, key=lambda t: _tile_key(t.subdivision))), combinatorial)


def is_tiling(subs: Sequence[Subdivision], k: int, n: int) -> Tiling | FailureCertificate:
    """Decide whether the extension sets of ``subs`` partition D_{k+1,n}."""
    for s in subs:
        t = validate(s, allow_grey=False)
        if t != (k, n):
            raise ValueError(f"candidate of type {t} among type {(k, n)}")
    ws, _ = _simplex_index(k, n)
    cands = [make_candidate(s, k, n) for s in subs]
    cover: dict[int, list[int]] = {}
    for idx, c in enumerate(cands):
        for w in c.extension_set:
            cover.setdefault(w, []).append(idx)
    for w in range(len(ws)):
        owners = cover.get(w, [])
        if len(owners) > 1:
            return FailureCertificate("overlap", ws[w], tuple(owners))
    for w in range(len(ws)):
        if not cover.get(w):
            return FailureCertificate("uncovered", ws[w], ())
    return _sorted_tiling(k, n, cands)


def _build(k: int, n: int, region: frozenset[int] | None):
    cands = candidates(k, n)
    ws, _ = _simplex_index(k, n)
    if region is None:
        cols = list(range(len(ws)))
        rows = list(cands)
    else:
        cols = sorted(region)
        rows = [c for c in cands if c.extension_set <= region]
    colmap = {w: p for p, w in enumerate(cols)}
    dlx = DancingLinks(len(cols), [[colmap[w] for w in c.extension_set] for c in rows])
    return rows, dlx


def _branch(args) -> list[list[int]]:
    k, n, region, first_rows = args
    _, dlx = _build(k, n, region)
    return list(dlx.solutions(first_rows=first_rows))


def _region_indices(k: int, n: int, region) -> frozenset[int] | None:
    if region is None:
        return None
    _, index = _simplex_index(k, n)
    out = set()
    for w in region:
        key = w.w if isinstance(w, WSimplex) else tuple(w)
        out.add(index[key])
    return frozenset(out)


def enumerate_tilings(
    k: int,
    n: int,
    limit: int | None = None,
    region: Iterable | None = None,
    max_nodes: int | None = None,
    threads: int | None = None,
) -> Iterator[Tiling]:
    """Exact covers of D_{k+1,n} (or of ``region``) by tile extension sets.

    Tilings come out in the depth-first order of the search, which is fixed.
    Every emitted tiling of the whole hypersimplex is checked to have
    C(n-2, k) tiles. With more than one thread the top-level branches run in
    worker processes and are merged back in branch order.
    """
    _check_bound(n)
    reg = _region_indices(k, n, region)
    rows, dlx = _build(k, n, reg)
    magic = comb(n - 2, k)
    if threads is None:
        threads = int(os.environ.get("TILER_THREADS", "1"))

    def emit(sol: list[int]) -> Tiling:
        t = _sorted_tiling(k, n, [rows[r] for r in sol], combinatorial=reg is not None)
        if reg is None and len(t) != magic:
            raise AssertionError(f"tiling with {len(t)} tiles, expected {magic}")
        return t

    if threads > 1 and limit is None and max_nodes is None:
        branches = dlx.top_level_rows()
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for sols in pool.map(_branch, [(k, n, reg, [r]) for r in branches]):
                for sol in sols:
                    yield emit(sol)
        return
    for sol in dlx.solutions(limit=limit, max_nodes=max_nodes):
        yield emit(sol)


def tiling_size_distribution(k: int, n: int) -> Counter:
    """Number of tilings of each size, over all exact covers, without listing them.

    Memoized on the set of covered w-simplices; branches on the uncovered
    w-simplex of smallest index.
    """
    _check_bound(n)
    cands = candidates(k, n)
    ws, _ = _simplex_index(k, n)
    full = (1 << len(ws)) - 1
    masks = [sum(1 << w for w in c.extension_set) for c in cands]
    by_col: list[list[int]] = [[] for _ in ws]
    for m in masks:
        low = (m & -m).bit_length() - 1
        by_col[low].append(m)
    memo: dict[int, Counter] = {}

    def rec(covered: int) -> Counter:
        if covered == full:
            return Counter({0: 1})
        if covered in memo:
            return memo[covered]
        free = ~covered & full
        col = (free & -free).bit_length() - 1
        out: Counter = Counter()
        for m in by_col[col]:
            if m & covered:
                continue
            for size, cnt in rec(covered | m).items():
                out[size + 1] += cnt
        memo[covered] = out
        return out

    return rec(0)


# ---------------------------------------------------------------- necessary conditions


def _subs(t) -> list[Subdivision]:
    if isinstance(t, Tiling):
        return t.subdivisions
    return list(t)


def check_facet_pairing(t, i: int, j: int, c: int) -> tuple[int, int, bool]:
    """Tiles with i->j facet-defining of area c versus tiles with j->i facet-defining
    and area(i->j) = c - 1."""
    above = below = 0
    fwd, back = Arc(i, j), Arc(j, i)
    for s in _subs(t):
        arcs = facet_defining_arcs(s)
        if fwd in arcs and area(s, fwd) == c:
            above += 1
        if back in arcs and area(s, fwd) == c - 1:
            below += 1
    return above, below, above == below


def check_arc_balance(t, i: int, j: int) -> tuple[int, int, bool]:
    fwd = back = 0
    for s in _subs(t):
        arcs = facet_defining_arcs(s)
        fwd += Arc(i, j) in arcs
        back += Arc(j, i) in arcs
    return fwd, back, fwd == back


def diagonals(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 2, n + 1) if not (i == 1 and j == n)]


def check_all_facet_pairings(t, n: int, k: int) -> list[tuple[int, int, int, int, int]]:
    """All (i, j, c, above, below) with a mismatch."""
    bad = []
    for a, b in diagonals(n):
        for i, j in ((a, b), (b, a)):
            for c in range(1, k + 1):
                above, below, ok = check_facet_pairing(t, i, j, c)
                if not ok:
                    bad.append((i, j, c, above, below))
    return bad


def circle_vertices(n: int) -> list[tuple[Fraction, Fraction]]:
    """n points on the unit circle in clockwise order, with exact rational coordinates."""
    pts = []
    for i in range(1, n + 1):
        theta = math.pi - 2 * math.pi * (i - 0.5) / n
        t = Fraction(math.tan(theta / 2)).limit_denominator(10**4)
        d = 1 + t * t
        pts.append(((1 - t * t) / d, 2 * t / d))
    return pts


def _orient(a, b, c) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _inside(poly: Sequence, q) -> bool:
    signs = {(_orient(poly[t], poly[(t + 1) % len(poly)], q) > 0) for t in range(len(poly))}
    return len(signs) == 1


def check_covering_multiplicity(t, samples: int = 32, seed: int = 0,
                                n: int | None = None, k: int | None = None) -> tuple[int | None, bool, dict]:
    """Count black polygons over random interior points of the n-gon.

    Returns (multiplicity, pass, info). The multiplicity is None when samples
    disagree; info records the per-sample counts and how many draws landed on
    a chord and were redrawn.
    """
    subs = _subs(t)
    if isinstance(t, Tiling):
        n, k = t.n, t.k
    if n is None or k is None:
        n, k = subs[0].n, subs[0].k
    expected = comb(n - 3, k - 1) if k >= 1 else 0
    verts = circle_vertices(n)
    rng = random.Random(seed)
    polys = [
        [verts[v - 1] for v in p.vertices]
        for s in subs for p in s.polygons if p.color is Color.BLACK
    ]
    chords = [(verts[a], verts[b]) for a in range(n) for b in range(a + 1, n)]
    counts = []
    redrawn = 0
    while len(counts) < samples:
        weights = [rng.randrange(1, 10**6) for _ in range(n)]
        total = sum(weights)
        q = (sum(w * v[0] for w, v in zip(weights, verts)) / total,
             sum(w * v[1] for w, v in zip(weights, verts)) / total)
        if any(_orient(a, b, q) == 0 for a, b in chords):
            redrawn += 1
            continue
        counts.append(sum(_inside(p, q) for p in polys))
    distinct = set(counts)
    mult = counts[0] if len(distinct) == 1 else None
    return mult, mult == expected, {"expected": expected, "counts": counts, "redrawn": redrawn}


def peel_black_polygons(t, n: int | None = None) -> list[list[tuple[int, ...]]] | None:
    """Partition the multiset of black polygons into subdivisions of the n-gon.

    Grows each subdivision from an uncovered boundary edge, then repeatedly
    covers an exposed chord from its other side, backtracking when stuck.
    Returns the groups, or None if no partition exists.
    """
    subs = _subs(t)
    if n is None:
        n = subs[0].n
    pool = Counter(p.vertices for s in subs for p in s.polygons if p.color is Color.BLACK)
    if not pool:
        return []

    def edges(vs):
        return [frozenset((vs[a], vs[(a + 1) % len(vs)])) for a in range(len(vs))]

    def side_of(vs, chord):
        """+1 if vs lies on the [a..b] side of chord (a<b), else -1."""
        a, b = sorted(chord)
        return 1 if all(a <= v <= b for v in vs) else -1

    def boundary(e):
        a, b = sorted(e)
        return b - a == 1 or (a == 1 and b == n)

    def grow(group: list, open_chords: dict) -> Iterator[list]:
        if not open_chords:
            if sum(len(g) - 2 for g in group) == n - 2:
                yield list(group)
            return
        chord, need_side = next(iter(sorted(open_chords.items(), key=lambda x: sorted(x[0]))))
        for vs in sorted(pool):
            if pool[vs] == 0 or chord not in edges(vs) or side_of(vs, chord) != need_side:
                continue
            new_open = dict(open_chords)
            del new_open[chord]
            clash = False
            for e in edges(vs):
                if e == chord or boundary(e):
                    continue
                s = -side_of(vs, e)
                if e in new_open:
                    if new_open[e] != -s:
                        clash = True
                        break
                    del new_open[e]
                else:
                    new_open[e] = s
            if clash:
                continue
            pool[vs] -= 1
            group.append(vs)
            yield from grow(group, new_open)
            group.pop()
            pool[vs] += 1

    def start() -> Iterator[list]:
        if sum(pool.values()) == 0:
            yield []
            return
        # every subdivision has a polygon on the boundary edge (1, 2)
        first = frozenset((1, 2))
        for vs in sorted(pool):
            if pool[vs] == 0 or first not in edges(vs):
                continue
            open_chords = {e: -side_of(vs, e) for e in edges(vs) if not boundary(e)}
            pool[vs] -= 1
            # while grow is suspended at a yield, the group is out of the pool
            for group in grow([vs], open_chords):
                rest = next(start(), None)
                if rest is not None:
                    yield [group] + rest
                    return
            pool[vs] += 1

    return next(start(), None)


def check_weight_sum(t: Tiling, trials: int = 3, seed: int = 0) -> bool:
    """Sum of tile weights equals C(n-2, k) (-1)^k PT(1..n)."""
    rng = random.Random(seed)
    ws, _ = _simplex_index(t.k, t.n)
    sign = -1 if t.k % 2 else 1
    ident = tuple(range(1, t.n + 1))
    for _ in range(trials):
        pt = random_point(ident, rng)
        total = sum(_pt_sum([ws[w].w for w in c.extension_set], pt) for c in t.tiles)
        if total != comb(t.n - 2, t.k) * sign * pt_eval(ident, pt):
            return False
    return True


CHECKS = ("cover", "facet-pairing", "arc-balance", "covering", "weights")


def run_checks(t: Tiling, checks: Iterable[str] = CHECKS, seed: int = 0, samples: int = 32) -> dict:
    """Run the necessary conditions on a tiling; returns a JSON-ready summary."""
    checks = set(checks)
    out: dict = {}
    if "cover" in checks:
        res = is_tiling(t.subdivisions, t.k, t.n)
        out["cover"] = {"pass": isinstance(res, Tiling), "size": len(t), "magic": comb(t.n - 2, t.k),
                        "volume": t.volume()}
        if not isinstance(res, Tiling):
            out["cover"]["certificate"] = res.to_json()
    if "facet-pairing" in checks:
        bad = check_all_facet_pairings(t, t.n, t.k)
        out["facet-pairing"] = {"pass": not bad, "failures": [list(b) for b in bad]}
    if "arc-balance" in checks:
        bad = [[i, j, a, b] for i, j in diagonals(t.n) for a, b, ok in [check_arc_balance(t, i, j)] if not ok]
        out["arc-balance"] = {"pass": not bad, "failures": bad}
    if "covering" in checks:
        mult, ok, info = check_covering_multiplicity(t, samples, seed)
        out["covering"] = {"pass": ok, "multiplicity": mult, "expected": info["expected"],
                           "redrawn": info["redrawn"]}
    if "weights" in checks:
        out["weights"] = {"pass": check_weight_sum(t, 3, seed)}
    out["pass"] = all(v["pass"] for v in out.values() if isinstance(v, dict))
    return out
