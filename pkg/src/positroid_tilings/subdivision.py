"""Bicolored and tricolored subdivisions of a labeled polygon.

The ambient polygon has its labels listed clockwise in ``labels``; for the
usual n-gon these are 1..n. Contracted polygons carry ``STAR`` as well.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .cyclic_order import PartialCyclicOrder, chain_from_sequence, union
from .labels import STAR, Label, check_distinct, label_from_json, label_to_json


class Color(str, Enum):
    BLACK = "black"
    WHITE = "white"
    GREY = "grey"


class ValidationError(ValueError):
    pass


class InvalidPolygon(ValidationError):
    pass


class CrossingChords(ValidationError):
    pass


class ColorClash(ValidationError):
    pass


class CoverageError(ValidationError):
    """Gap or overlap in the partition."""


class IncompatibleArc(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Arc:
    src: Label
    dst: Label

    def __post_init__(self) -> None:
        if self.src == self.dst:
            raise ValueError("an arc needs distinct endpoints")

    def reversed(self) -> Arc:
        return Arc(self.dst, self.src)

    def __str__(self) -> str:
        return f"{self.src}->{self.dst}"


@dataclass(frozen=True)
class Polygon:
    color: Color
    vertices: tuple[Label, ...]

    def area(self) -> int:
        return len(self.vertices) - 2

    def edges(self) -> list[tuple[Label, Label]]:
        vs = self.vertices
        return [(vs[t], vs[(t + 1) % len(vs)]) for t in range(len(vs))]


@dataclass(frozen=True)
class Subdivision:
    """A partition of the polygon ``labels`` into colored polygons.

    Polygon vertex lists are stored clockwise starting from the vertex that
    comes first in ``labels``; polygons are sorted by that first vertex.
    """

    labels: tuple[Label, ...]
    polygons: tuple[Polygon, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        check_distinct(labels)
        pos = {x: p for p, x in enumerate(labels)}
        polys = []
        for poly in self.polygons:
            color = Color(poly.color)
            vs = tuple(poly.vertices)
            if any(v not in pos for v in vs):
                raise InvalidPolygon(f"polygon {vs!r} uses labels outside {labels!r}")
            check_distinct(vs, "polygon vertices")
            polys.append(Polygon(color, tuple(sorted(vs, key=pos.__getitem__))))
        polys.sort(key=lambda p: ([pos[v] for v in p.vertices], p.color.value))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "polygons", tuple(polys))

    @classmethod
    def on_ngon(cls, n: int, polygons: Iterable[tuple[str, Sequence[int]]]) -> Subdivision:
        return cls(tuple(range(1, n + 1)), tuple(Polygon(Color(c), tuple(vs)) for c, vs in polygons))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def position(self) -> dict[Label, int]:
        return {x: p for p, x in enumerate(self.labels)}

    @property
    def k(self) -> int:
        return sum(p.area() for p in self.polygons if p.color is Color.BLACK)

    @property
    def grey_total(self) -> int:
        return sum(p.area() for p in self.polygons if p.color is Color.GREY)

    @property
    def is_bicolored(self) -> bool:
        return all(p.color is not Color.GREY for p in self.polygons)

    @property
    def is_standard(self) -> bool:
        return self.labels == tuple(range(1, self.n + 1))

    def type(self) -> tuple[int, ...]:
        if self.is_bicolored:
            return (self.k, self.n)
        return (self.k, self.grey_total, self.n)

    def interval(self, i: Label, j: Label) -> tuple[Label, ...]:
        """Labels from i clockwise to j inclusive."""
        pi, pj = self.position[i], self.position[j]
        n = self.n
        return tuple(self.labels[(pi + t) % n] for t in range((pj - pi) % n + 1))

    def is_boundary_edge(self, a: Label, b: Label) -> bool:
        return (self.position[a] - self.position[b]) % self.n in (1, self.n - 1)

    def to_json(self) -> dict:
        out: dict = {"n": self.n}
        if not self.is_standard:
            out["labels"] = [label_to_json(x) for x in self.labels]
        out["polygons"] = [
            {"color": p.color.value, "vertices": [label_to_json(v) for v in p.vertices]}
            for p in self.polygons
        ]
        return out

    @classmethod
    def from_json(cls, data: dict) -> Subdivision:
        n = data["n"]
        if "labels" in data:
            labels = tuple(label_from_json(x) for x in data["labels"])
        else:
            labels = tuple(range(1, n + 1))
        if len(labels) != n:
            raise ValidationError("label count does not match n")
        polys = tuple(
            Polygon(Color(p["color"]), tuple(label_from_json(v) for v in p["vertices"]))
            for p in data["polygons"]
        )
        return cls(labels, polys)

    def __str__(self) -> str:
        parts = [f"{p.color.value[0].upper()}{{{','.join(map(str, p.vertices))}}}" for p in self.polygons]
        return f"<{self.type()} " + " ".join(parts) + ">"


# ---------------------------------------------------------------- validation


def _crosses(pos: dict, e: tuple[Label, Label], f: tuple[Label, Label], n: int) -> bool:
    a, b = sorted((pos[e[0]], pos[e[1]]))
    c, d = sorted((pos[f[0]], pos[f[1]]))
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def fan_triangles(poly: Polygon) -> list[tuple[Label, Label, Label]]:
    vs = poly.vertices
    return [(vs[0], vs[t], vs[t + 1]) for t in range(1, len(vs) - 1)]


def validate(sub: Subdivision, allow_grey: bool = True) -> tuple[int, ...]:
    """Check the partition and coloring rules and return the type."""
    n = sub.n
    if n < 3:
        raise ValidationError("need at least 3 boundary vertices")
    pos = sub.position
    for p in sub.polygons:
        if len(p.vertices) < 3:
            raise InvalidPolygon(f"polygon {p.vertices!r} has fewer than 3 vertices")
        if p.color is Color.GREY and not allow_grey:
            raise ValidationError("grey polygon in a bicolored subdivision")
    segments = set()
    triangles = []
    for p in sub.polygons:
        for tri in fan_triangles(p):
            triangles.append(frozenset(tri))
            segments.update(frozenset(e) for e in itertools.combinations(tri, 2))
    segs = [tuple(s) for s in segments]
    for e, f in itertools.combinations(segs, 2):
        if _crosses(pos, e, f, n):
            raise CrossingChords(f"segments {e} and {f} cross")
    if len(set(triangles)) != len(triangles):
        raise CoverageError("overlapping polygons")
    if len(triangles) != n - 2:
        kind = "gap" if len(triangles) < n - 2 else "overlap"
        raise CoverageError(f"polygons cover {len(triangles)} of {n - 2} triangles ({kind})")
    owner: dict[frozenset, list[Polygon]] = {}
    for p in sub.polygons:
        for e in p.edges():
            owner.setdefault(frozenset(e), []).append(p)
    for e, ps in owner.items():
        if len(ps) == 2 and ps[0].color is ps[1].color:
            raise ColorClash(f"two {ps[0].color.value} polygons share the edge {tuple(e)}")
    return sub.type()


def is_valid(sub: Subdivision, allow_grey: bool = True) -> bool:
    try:
        validate(sub, allow_grey)
    except ValidationError:
        return False
    return True


# ---------------------------------------------------------------- construction


def from_triangles(labels: Sequence[Label], triangles: Iterable[tuple[Color, Sequence[Label]]]) -> Subdivision:
    """Merge same-colored triangles across shared edges into maximal polygons."""
    tris = [(Color(c), frozenset(t)) for c, t in triangles]
    parent = list(range(len(tris)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_edge: dict[frozenset, list[int]] = {}
    for idx, (_, t) in enumerate(tris):
        for e in itertools.combinations(sorted(t, key=labels.index), 2):
            by_edge.setdefault(frozenset(e), []).append(idx)
    for idxs in by_edge.values():
        if len(idxs) == 2 and tris[idxs[0]][0] is tris[idxs[1]][0]:
            parent[find(idxs[0])] = find(idxs[1])
    groups: dict[int, set] = {}
    colors: dict[int, Color] = {}
    for idx, (c, t) in enumerate(tris):
        r = find(idx)
        groups.setdefault(r, set()).update(t)
        colors[r] = c
    return Subdivision(tuple(labels), tuple(Polygon(colors[r], tuple(vs)) for r, vs in groups.items()))


def kermit_triangles(vertices: Sequence[Label], v: Label, I: Iterable[Label]) -> list[tuple[Color, tuple]]:
    """Fan triangles {v, i, i+} of a polygon, black for i in I and white otherwise.

    ``i+`` is the clockwise successor of i among ``vertices``. I may not
    contain v or its counterclockwise neighbour, whose triangles degenerate.
    """
    vs = tuple(vertices)
    m = len(vs)
    if v not in vs:
        raise ValueError(f"base vertex {v!r} is not a vertex")
    p = vs.index(v)
    fan = [vs[(p + t) % m] for t in range(1, m)]
    I = set(I)
    allowed = set(fan[:-1])
    if not I <= allowed:
        raise ValueError(f"invalid kermit set {sorted(I)!r}: entries must lie in {sorted(allowed)!r}")
    return [
        (Color.BLACK if fan[t] in I else Color.WHITE, (v, fan[t], fan[t + 1]))
        for t in range(m - 2)
    ]


def kermit(n: int, k: int, v: int, I: Iterable[int]) -> Subdivision:
    """Black triangles {v, i, i+1} for i in I, merged maximally; the rest white."""
    I = tuple(I)
    if len(set(I)) != k:
        raise ValueError(f"kermit set must have {k} distinct elements")
    if not 1 <= v <= n:
        raise ValueError("base vertex out of range")
    labels = tuple(range(1, n + 1))
    return from_triangles(labels, kermit_triangles(labels, v, I))


def kermit_index_sets(n: int, k: int, v: int) -> list[tuple[int, ...]]:
    """The k-subsets of [n] without v and v-1 (cyclically)."""
    allowed = [(v + t - 1) % n + 1 for t in range(1, n - 1)]
    return [tuple(c) for c in itertools.combinations(sorted(allowed), k)]


def kermit_family(n: int, k: int, v: int = 1) -> list[Subdivision]:
    return [kermit(n, k, v, I) for I in kermit_index_sets(n, k, v)]


# ---------------------------------------------------------------- enumeration


def _dissections(vs: tuple) -> Iterator[list[tuple]]:
    """Dissections of the region bounded by ``vs`` and the chord vs[0]-vs[-1]."""
    if len(vs) < 3:
        yield []
        return
    inner = vs[1:-1]
    for size in range(1, len(inner) + 1):
        for chosen in itertools.combinations(range(1, len(vs) - 1), size):
            corners = (0,) + chosen + (len(vs) - 1,)
            parts = [_dissections(vs[corners[t]: corners[t + 1] + 1]) for t in range(len(corners) - 1)]
            poly = tuple(vs[c] for c in corners)
            for combo in itertools.product(*[list(p) for p in parts]):
                yield [poly] + [q for part in combo for q in part]


def enumerate_dissections(labels: Sequence[Label]) -> list[list[tuple]]:
    """All dissections of the polygon into polygons, by noncrossing diagonals."""
    vs = tuple(labels)
    if len(vs) < 3:
        raise ValueError("need at least 3 vertices")
    return list(_dissections(vs))


def _dual_adjacency(polys: Sequence[tuple]) -> list[list[int]]:
    owner: dict[frozenset, list[int]] = {}
    for idx, vs in enumerate(polys):
        for t in range(len(vs)):
            owner.setdefault(frozenset((vs[t], vs[(t + 1) % len(vs)])), []).append(idx)
    adj: list[list[int]] = [[] for _ in polys]
    for idxs in owner.values():
        if len(idxs) == 2:
            a, b = idxs
            adj[a].append(b)
            adj[b].append(a)
    return adj


def _proper_colorings(polys: Sequence[tuple], palette: Sequence[Color]) -> Iterator[list[Color]]:
    """Colorings of the dual tree in which neighbours differ."""
    adj = _dual_adjacency(polys)
    order: list[int] = []
    parent = [-1] * len(polys)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                parent[y] = x
                stack.append(y)
    colors: list[Color | None] = [None] * len(polys)

    def rec(t: int) -> Iterator[list[Color]]:
        if t == len(order):
            yield list(colors)  # type: ignore[arg-type]
            return
        x = order[t]
        for c in palette:
            if parent[x] >= 0 and colors[parent[x]] is c:
                continue
            colors[x] = c
            yield from rec(t + 1)
        colors[x] = None

    yield from rec(0)


def _sort_key(sub: Subdivision):
    return [(p.vertices, p.color.value) for p in sub.polygons]


def enumerate_bicolored(k: int, n: int) -> list[Subdivision]:
    """All bicolored subdivisions of type (k, n), in a fixed order."""
    if n < 3 or not 0 <= k <= n - 2:
        raise ValueError(f"need n >= 3 and 0 <= k <= n-2, got k={k}, n={n}")
    labels = tuple(range(1, n + 1))
    out = []
    for polys in enumerate_dissections(labels):
        for colors in _proper_colorings(polys, (Color.WHITE, Color.BLACK)):
            area = sum(len(p) - 2 for p, c in zip(polys, colors) if c is Color.BLACK)
            if area == k:
                out.append(Subdivision(labels, tuple(Polygon(c, p) for p, c in zip(polys, colors))))
    out.sort(key=_sort_key)
    return out


def enumerate_tricolored(n: int, k: int | None = None, grey: int | None = None) -> list[Subdivision]:
    """All tricolored subdivisions of the n-gon, optionally of fixed black/grey area."""
    labels = tuple(range(1, n + 1))
    palette = (Color.WHITE, Color.BLACK, Color.GREY)
    out = []
    for polys in enumerate_dissections(labels):
        for colors in _proper_colorings(polys, palette):
            sub = Subdivision(labels, tuple(Polygon(c, p) for p, c in zip(polys, colors)))
            if (k is None or sub.k == k) and (grey is None or sub.grey_total == grey):
                out.append(sub)
    out.sort(key=_sort_key)
    return out


# ---------------------------------------------------------------- arcs and areas


def _polygons_with(sub: Subdivision, i: Label, j: Label) -> list[Polygon]:
    return [p for p in sub.polygons if i in p.vertices and j in p.vertices]


def _is_polygon_edge(p: Polygon, i: Label, j: Label) -> bool:
    return frozenset((i, j)) in {frozenset(e) for e in p.edges()}


def is_compatible(sub: Subdivision, arc: Arc) -> bool:
    """The arc is an edge of some polygon or lies inside a black or white one."""
    for p in _polygons_with(sub, arc.src, arc.dst):
        if p.color is not Color.GREY or _is_polygon_edge(p, arc.src, arc.dst):
            return True
    return False


def compatible_arcs(sub: Subdivision) -> list[Arc]:
    out = set()
    for p in sub.polygons:
        if p.color is Color.GREY:
            for a, b in p.edges():
                out.add(Arc(a, b))
                out.add(Arc(b, a))
        else:
            for a, b in itertools.permutations(p.vertices, 2):
                out.add(Arc(a, b))
    pos = sub.position
    return sorted(out, key=lambda e: (pos[e.src], pos[e.dst]))


def _left_area(sub: Subdivision, arc: Arc, color: Color) -> int:
    if not is_compatible(sub, arc):
        raise IncompatibleArc(f"{arc} is not compatible with {sub}")
    left = set(sub.interval(arc.src, arc.dst))
    return sum(
        max(0, len(left.intersection(p.vertices)) - 2) for p in sub.polygons if p.color is color
    )


def area(sub: Subdivision, arc: Arc) -> int:
    """Black triangles to the left of the arc, the left side being [src, dst]."""
    return _left_area(sub, arc, Color.BLACK)


def grey_area(sub: Subdivision, arc: Arc) -> int:
    return _left_area(sub, arc, Color.GREY)


def facet_defining_arcs(sub: Subdivision, internal_only: bool = False) -> list[Arc]:
    """Arcs having a black polygon immediately to their left.

    These are the edges of black polygons traversed counterclockwise.
    """
    out = []
    for p in sub.polygons:
        if p.color is not Color.BLACK:
            continue
        for a, b in p.edges():
            arc = Arc(b, a)
            if internal_only and sub.is_boundary_edge(a, b):
                continue
            out.append(arc)
    pos = sub.position
    return sorted(out, key=lambda e: (pos[e.src], pos[e.dst]))


def is_internal(sub: Subdivision, arc: Arc) -> bool:
    return not sub.is_boundary_edge(arc.src, arc.dst)


def is_facet_defining(sub: Subdivision, arc: Arc) -> bool:
    return arc in facet_defining_arcs(sub)


# ---------------------------------------------------------------- orders


def polygon_chain(p: Polygon) -> tuple[Label, ...] | None:
    """Clockwise vertex order for white, counterclockwise for black, none for grey."""
    if p.color is Color.WHITE:
        return p.vertices
    if p.color is Color.BLACK:
        return (p.vertices[0],) + tuple(reversed(p.vertices[1:]))
    return None


def sigma_order(sub: Subdivision) -> PartialCyclicOrder:
    chains = []
    for p in sub.polygons:
        seq = polygon_chain(p)
        if seq is not None:
            chains.append(chain_from_sequence(seq, sub.labels))
    return union(chains, ground=sub.labels)


# ---------------------------------------------------------------- contraction


def contract_arc(sub: Subdivision, arc: Arc) -> tuple[Subdivision, Subdivision]:
    """Split along an internal facet-defining arc and identify its ends with STAR.

    Returns the contracted left side on [i+1, j-1] + STAR and the contracted
    right side on [j+1, i-1] + STAR.
    """
    i, j = arc.src, arc.dst
    if STAR in sub.labels:
        raise ValueError("subdivision already carries a contracted vertex")
    if not is_internal(sub, arc):
        raise ValueError(f"{arc} is a boundary edge")
    if not is_facet_defining(sub, arc):
        raise ValueError(f"{arc} is not facet-defining")

    def side(a: Label, b: Label) -> Subdivision:
        region = sub.interval(a, b)
        inside = set(region)
        labels = region[1:-1] + (STAR,)
        tris = []
        for p in sub.polygons:
            if not inside.issuperset(p.vertices):
                continue
            for tri in fan_triangles(p):
                renamed = {STAR if x in (i, j) else x for x in tri}
                if len(renamed) == 3:
                    tris.append((p.color, tuple(renamed)))
        return from_triangles(labels, tris)

    return side(i, j), side(j, i)
