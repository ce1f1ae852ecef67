"""w-simplices of the hypersimplex and tiles as inequality systems."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .cyclic_order import TotalCyclicOrder, enumerate_extensions
from .labels import half_open_interval
from .subdivision import (
    Arc,
    Color,
    Subdivision,
    area,
    compatible_arcs,
    facet_defining_arcs,
    from_triangles,
    fan_triangles,
    grey_area,
    kermit_triangles,
    sigma_order,
    validate,
)

RationalVector = tuple[Fraction, ...]


def _check_permutation(word: Sequence[int]) -> int:
    n = len(word)
    if sorted(word) != list(range(1, n + 1)):
        raise ValueError(f"{list(word)!r} is not a permutation of [{n}]")
    return n


def cyclic_descents(word: Sequence[int]) -> frozenset[int]:
    """Letters i < n standing right of i+1, plus n when 1 stands left of n."""
    n = _check_permutation(word)
    pos = {x: p for p, x in enumerate(word)}
    out = {i for i in range(1, n) if pos[i] > pos[i + 1]}
    if pos[1] < pos[n]:
        out.add(n)
    return frozenset(out)


def rotation_ending_at(word: Sequence[int], r: int) -> tuple[int, ...]:
    p = list(word).index(r)
    return tuple(word[p + 1:]) + tuple(word[: p + 1])


def vertex_sets(word: Sequence[int]) -> tuple[frozenset[int], ...]:
    """I_1, ..., I_n where I_r is the cyclic descent set of the rotation ending at r."""
    n = _check_permutation(word)
    return tuple(cyclic_descents(rotation_ending_at(word, r)) for r in range(1, n + 1))


def eulerian_number(k: int, m: int) -> int:
    """Permutations of [m] with k descents, via the alternating sum with n = m + 1."""
    n = m + 1
    return sum((-1) ** l * comb(n, l) * (k + 1 - l) ** m for l in range(k + 2))


@dataclass(frozen=True)
class WSimplex:
    w: tuple[int, ...]
    k: int
    I: tuple[frozenset[int], ...]

    @classmethod
    def from_word(cls, word: Iterable[int]) -> WSimplex:
        w = tuple(word)
        n = _check_permutation(w)
        if w[-1] != n:
            w = TotalCyclicOrder(w).cycle
        I = vertex_sets(w)
        return cls(w, len(I[0]) - 1, I)

    @property
    def n(self) -> int:
        return len(self.w)

    def word(self) -> str:
        return "".join(map(str, self.w))

    def cycle(self) -> TotalCyclicOrder:
        return TotalCyclicOrder(self.w)

    def to_json(self) -> dict:
        return {"w": list(self.w), "k": self.k, "I": [sorted(s) for s in self.I]}

    @classmethod
    def from_json(cls, data: dict) -> WSimplex:
        s = cls.from_word(data["w"])
        if "k" in data and data["k"] != s.k:
            raise ValueError("k does not match w")
        if "I" in data and [sorted(x) for x in s.I] != [sorted(x) for x in data["I"]]:
            raise ValueError("vertex sets do not match w")
        return s


@lru_cache(maxsize=None)
def _D(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(p + (n,) for p in itertools.permutations(range(1, n)))


def enumerate_D(k: int, n: int) -> list[WSimplex]:
    """Permutations ending in n with k+1 cyclic descents, in lexicographic order."""
    if n < 2 or not 0 <= k <= n - 2:
        raise ValueError(f"need 0 <= k <= n-2, got k={k}, n={n}")
    return [WSimplex.from_word(w) for w in _D(n) if len(cyclic_descents(w)) == k + 1]


def enumerate_all_D(n: int) -> list[WSimplex]:
    return [WSimplex.from_word(w) for w in _D(n)]


def interval_count(I: Iterable[int], a: int, b: int, n: int) -> int:
    return len(set(I).intersection(half_open_interval(a, b, n)))


def w_simplex_facets(s: WSimplex) -> list[tuple[Arc, int]]:
    """Facets x_[a,b-1] >= |I_b ∩ [a,b-1]| for each a immediately before b in (w)."""
    n = s.n
    out = []
    for p in range(n):
        a, b = s.w[p], s.w[(p + 1) % n]
        out.append((Arc(a, b), interval_count(s.I[b - 1], a, b, n)))
    return out


def facet_sharing(u: WSimplex, w: WSimplex) -> tuple[int, int, int] | None:
    """If (w) = (A i j B) and (u) = (A j i B) with j != i±1, return (i, j, c).

    The shared facet lies on x_[i,j-1] = c.
    """
    n = w.n
    if u.n != n or u.w == w.w:
        return None
    cw = w.w
    for p in range(n):
        i, j = cw[p], cw[(p + 1) % n]
        if (j - i) % n in (1, n - 1):
            continue
        swapped = list(cw)
        swapped[p], swapped[(p + 1) % n] = j, i
        if TotalCyclicOrder(tuple(swapped)).cycle == u.w:
            return i, j, interval_count(w.I[j - 1], i, j, n)
    return None


def barycenter(s: WSimplex) -> RationalVector:
    n = s.n
    counts = [0] * n
    for I in s.I:
        for x in I:
            counts[x - 1] += 1
    return tuple(Fraction(c, n) for c in counts)


def indicator(I: Iterable[int], n: int) -> RationalVector:
    I = set(I)
    return tuple(Fraction(int(i in I)) for i in range(1, n + 1))


# ---------------------------------------------------------------- tiles


@dataclass(frozen=True)
class Bound:
    arc: Arc
    interval: tuple[int, ...]
    lower: int
    upper: int

    def to_json(self) -> dict:
        return {"arc": [self.arc.src, self.arc.dst], "interval": list(self.interval),
                "lower": self.lower, "upper": self.upper}


@dataclass(frozen=True)
class Facet:
    """The inequality sum of x over ``interval`` >= ``bound``."""

    interval: tuple[int, ...]
    bound: int
    arc: Arc | None = None


@dataclass(frozen=True)
class TilePolytope:
    n: int
    k: int
    bounds: tuple[Bound, ...]
    facets: tuple[Facet, ...]
    projected: bool = False

    @property
    def dim(self) -> int:
        return self.n - 1 if self.projected else self.n

    def bound_map(self) -> dict[Arc, tuple[int, int]]:
        return {b.arc: (b.lower, b.upper) for b in self.bounds}

    def bound_for(self, interval: Iterable[int]) -> tuple[int, int] | None:
        target = tuple(sorted(interval))
        for b in self.bounds:
            if tuple(sorted(b.interval)) == target:
                return b.lower, b.upper
        return None

    def to_json(self) -> list[dict]:
        return [b.to_json() for b in self.bounds]


def tile_inequalities(sub: Subdivision) -> TilePolytope:
    """area(i->j) <= x_[i,j-1] <= area(i->j) + 1 on every compatible arc, with x_[n] = k+1."""
    validate(sub, allow_grey=False)
    if not sub.is_standard:
        raise ValueError("tile inequalities need the labels 1..n")
    n = sub.n
    bounds = []
    for arc in compatible_arcs(sub):
        a = area(sub, arc)
        bounds.append(Bound(arc, half_open_interval(arc.src, arc.dst, n), a, a + 1))
    facets = []
    white = sorted({v for p in sub.polygons if p.color is Color.WHITE for v in p.vertices})
    facets.extend(Facet((i,), 0) for i in white)
    for arc in facet_defining_arcs(sub):
        facets.append(Facet(half_open_interval(arc.src, arc.dst, n), area(sub, arc), arc))
    return TilePolytope(n, sub.k, tuple(bounds), tuple(facets))


def pt_polytope_inequalities(sub: Subdivision) -> TilePolytope:
    """The projected polytope: area <= x_[i,j-1] <= area + grey area + 1 for compatible i < j."""
    validate(sub)
    if not sub.is_standard:
        raise ValueError("polytope inequalities need the labels 1..n")
    n = sub.n
    bounds = []
    for arc in compatible_arcs(sub):
        if arc.src >= arc.dst:
            continue
        a, g = area(sub, arc), grey_area(sub, arc)
        bounds.append(Bound(arc, tuple(range(arc.src, arc.dst)), a, a + g + 1))
    return TilePolytope(n, sub.k, tuple(bounds), (), projected=True)


class DimensionMismatch(ValueError):
    pass


def tile_contains_point(poly: TilePolytope, p: Sequence[Fraction], strict: bool = False) -> bool:
    if len(p) != poly.dim:
        raise DimensionMismatch(f"expected {poly.dim} coordinates, got {len(p)}")
    if not poly.projected and sum(p) != poly.k + 1:
        return False
    for b in poly.bounds:
        s = sum(p[i - 1] for i in b.interval)
        if strict:
            if not b.lower < s < b.upper:
                return False
        elif not b.lower <= s <= b.upper:
            return False
    return True


def project(p: Sequence[Fraction]) -> RationalVector:
    """Drop the last coordinate."""
    return tuple(p[:-1])


def simplices_in_tile(sub: Subdivision) -> list[WSimplex]:
    """The w-simplices whose cycles extend the subdivision's cyclic order."""
    validate(sub)
    if not sub.is_standard:
        raise ValueError("w-simplices need the labels 1..n")
    return [WSimplex.from_word(t.cycle) for t in enumerate_extensions(sigma_order(sub))]


def simplices_in_tile_geometric(sub: Subdivision) -> list[WSimplex]:
    """Same set, found by testing barycenters against the inequality description.

    Only bicolored subdivisions are accepted: the grey-area bounds alone do not
    cut out the union of the refined tiles (already for a grey triangle next to
    a black one on four vertices), so there is no barycenter test for them.
    """
    if not sub.is_bicolored:
        raise ValueError("the barycenter test needs a bicolored subdivision")
    poly = tile_inequalities(sub)
    return [s for s in enumerate_D(sub.k, sub.n) if tile_contains_point(poly, barycenter(s), strict=True)]


def tile_volume(sub: Subdivision) -> int:
    from .cyclic_order import count_extensions

    validate(sub)
    return count_extensions(sigma_order(sub))


# ---------------------------------------------------------------- grey refinement


class InvalidBaseVertex(ValueError):
    pass


def admissible_base_vertices(sub: Subdivision) -> dict[tuple[int, ...], int]:
    """Base vertices following an admissible ordering of the grey polygons.

    A grey polygon p with vertices v_1 < ... < v_r has exactly one boundary
    arc i -> j with i < j and p on its left, namely v_1 -> v_r. Polygons are
    taken innermost first: p is ready once every other grey polygon to the
    left of v_1 -> v_r has been taken. The base vertex is the tail v_1.
    """
    greys = [p for p in sub.polygons if p.color is Color.GREY]
    pending = {p.vertices for p in greys}
    order: dict[tuple[int, ...], int] = {}
    while pending:
        progressed = False
        for vs in sorted(pending):
            lo, hi = min(vs), max(vs)
            inside = [q for q in pending if q != vs and lo <= min(q) and max(q) <= hi]
            if not inside:
                order[vs] = lo
                pending.discard(vs)
                progressed = True
                break
        if not progressed:  # pragma: no cover - nested intervals always admit an innermost polygon
            raise InvalidBaseVertex("no admissible ordering of grey polygons")
    return order


def decompose_pt_polytope(
    sub: Subdivision,
    base_vertices: dict[tuple[int, ...], int] | None = None,
    strict: bool = True,
) -> list[Subdivision]:
    """Replace every grey polygon by all kermit subdivisions based at its base vertex.

    With ``strict`` the base vertices must be the admissible ones; otherwise
    any vertex of each grey polygon is accepted.
    """
    validate(sub)
    greys = [p for p in sub.polygons if p.color is Color.GREY]
    admissible = admissible_base_vertices(sub)
    if base_vertices is None:
        base_vertices = admissible
    base_vertices = {tuple(sorted(k)): v for k, v in base_vertices.items()}
    for p in greys:
        key = tuple(sorted(p.vertices))
        if key not in base_vertices:
            raise InvalidBaseVertex(f"no base vertex for grey polygon {p.vertices}")
        v = base_vertices[key]
        if v not in p.vertices:
            raise InvalidBaseVertex(f"{v} is not a vertex of {p.vertices}")
        if strict and admissible[p.vertices] != v:
            raise InvalidBaseVertex(f"{v} is not the admissible base vertex of {p.vertices}")
    fixed = [(p.color, t) for p in sub.polygons if p.color is not Color.GREY for t in fan_triangles(p)]
    choices = []
    for p in greys:
        v = base_vertices[tuple(sorted(p.vertices))]
        m = len(p.vertices)
        pv = p.vertices.index(v)
        fan = [p.vertices[(pv + t) % m] for t in range(1, m - 1)]
        options = []
        for size in range(len(fan) + 1):
            for I in itertools.combinations(fan, size):
                options.append(kermit_triangles(p.vertices, v, I))
        choices.append(options)
    out = []
    for combo in itertools.product(*choices):
        tris = fixed + [t for part in combo for t in part]
        out.append(from_triangles(sub.labels, tris))
    return out
