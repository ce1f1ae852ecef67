"""Partial and total cyclic orders and their circular extensions."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .labels import Label, check_distinct, label_from_json, label_to_json

Triple = tuple[Label, Label, Label]


class ConflictError(ValueError):
    """A closure contains both (a,b,c) and (c,b,a)."""


def _rotations(t: Triple) -> tuple[Triple, Triple, Triple]:
    a, b, c = t
    return (a, b, c), (b, c, a), (c, a, b)


def _canonical_triple(t: Triple) -> Triple:
    return min(_rotations(t))


def close_triples(triples: Iterable[Triple]) -> frozenset[Triple]:
    """Smallest set containing ``triples`` closed under cyclicity and transitivity.

    Raises ConflictError if the closure violates asymmetry.
    """
    closed: set[Triple] = set()
    for t in triples:
        if len(set(t)) != 3:
            raise ValueError(f"triple {t!r} has repeated labels")
        closed.update(_rotations(t))
    # succ[a][b] holds every c with (a, b, c)
    succ: dict[Label, dict[Label, set[Label]]] = defaultdict(lambda: defaultdict(set))
    for a, b, c in closed:
        succ[a][b].add(c)
    frontier = list(closed)
    while frontier:
        new: set[Triple] = set()
        for a, b, c in frontier:
            rel = succ[a]
            # (a,b,c) with (a,c,d) gives (a,b,d)
            for d in rel.get(c, ()):
                if d != b and (a, b, d) not in closed:
                    new.add((a, b, d))
            # (a,x,b) with (a,b,c) gives (a,x,c)
            for x, ys in rel.items():
                if b in ys and x != c and (a, x, c) not in closed:
                    new.add((a, x, c))
        frontier = []
        for t in new:
            for r in _rotations(t):
                if r not in closed:
                    closed.add(r)
                    succ[r[0]][r[1]].add(r[2])
                    frontier.append(r)
    for a, b, c in closed:
        if (c, b, a) in closed:
            raise ConflictError(f"both {(a, b, c)} and {(c, b, a)} are forced")
    return frozenset(closed)


@dataclass(frozen=True)
class PartialCyclicOrder:
    """A cyclically and transitively closed set of ordered triples."""

    ground: tuple[Label, ...]
    triples: frozenset[Triple] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        ground = tuple(sorted(self.ground))
        check_distinct(ground)
        object.__setattr__(self, "ground", ground)
        gs = set(ground)
        for t in self.triples:
            if not gs.issuperset(t):
                raise ValueError(f"triple {t!r} uses labels outside the ground set")

    @classmethod
    def from_triples(cls, ground: Iterable[Label], triples: Iterable[Triple]) -> PartialCyclicOrder:
        return cls(tuple(ground), close_triples(triples))

    @classmethod
    def empty(cls, ground: Iterable[Label]) -> PartialCyclicOrder:
        return cls(tuple(ground), frozenset())

    def __contains__(self, t: object) -> bool:
        return t in self.triples

    def __len__(self) -> int:
        return len(self.triples)

    def canonical_triples(self) -> list[Triple]:
        """One representative per cyclic class, minimum label first, sorted."""
        return sorted({_canonical_triple(t) for t in self.triples})

    def is_total(self) -> bool:
        m = len(self.ground)
        return len(self.triples) == m * (m - 1) * (m - 2) // 2

    def to_json(self) -> dict:
        return {
            "ground": [label_to_json(x) for x in self.ground],
            "triples": [[label_to_json(x) for x in t] for t in self.canonical_triples()],
        }

    @classmethod
    def from_json(cls, data: dict) -> PartialCyclicOrder:
        ground = [label_from_json(x) for x in data["ground"]]
        triples = [tuple(label_from_json(x) for x in t) for t in data.get("triples", [])]
        return cls.from_triples(ground, triples)


@dataclass(frozen=True, order=True)
class TotalCyclicOrder:
    """A cyclic arrangement of all ground labels, rotated to end at the maximum."""

    cycle: tuple[Label, ...]

    def __post_init__(self) -> None:
        cyc = tuple(self.cycle)
        check_distinct(cyc)
        if not cyc:
            object.__setattr__(self, "cycle", cyc)
            return
        top = cyc.index(max(cyc))
        object.__setattr__(self, "cycle", cyc[top + 1:] + cyc[: top + 1])

    @property
    def ground(self) -> tuple[Label, ...]:
        return tuple(sorted(self.cycle))

    def __len__(self) -> int:
        return len(self.cycle)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.cycle)

    def positions(self) -> dict[Label, int]:
        return {x: p for p, x in enumerate(self.cycle)}

    def has_triple(self, a: Label, b: Label, c: Label) -> bool:
        pos = self.positions()
        m = len(self.cycle)
        return (pos[b] - pos[a]) % m < (pos[c] - pos[a]) % m

    def successor(self, x: Label) -> Label:
        p = self.cycle.index(x)
        return self.cycle[(p + 1) % len(self.cycle)]

    def adjacent(self, i: Label, j: Label) -> bool:
        """True when i is immediately followed by j."""
        return self.successor(i) == j

    def triples(self) -> frozenset[Triple]:
        cyc = self.cycle
        m = len(cyc)
        out = set()
        for p in range(m):
            for q in range(p + 1, m):
                for r in range(q + 1, m):
                    out.update(_rotations((cyc[p], cyc[q], cyc[r])))
        return frozenset(out)

    def as_partial(self) -> PartialCyclicOrder:
        return PartialCyclicOrder(self.ground, self.triples())

    def word(self) -> str:
        return "".join(str(x) for x in self.cycle)

    def to_json(self) -> dict:
        return {"cycle": [label_to_json(x) for x in self.cycle]}

    @classmethod
    def from_json(cls, data: dict) -> TotalCyclicOrder:
        return cls(tuple(label_from_json(x) for x in data["cycle"]))


def chain_from_sequence(seq: Sequence[Label], ground: Iterable[Label]) -> PartialCyclicOrder:
    """The chain order: (x_i, x_j, x_l) for i < j < l, closed under rotation."""
    seq = tuple(seq)
    ground = tuple(ground)
    check_distinct(seq)
    if len(seq) < 3:
        raise ValueError("a chain needs at least 3 labels")
    if not set(seq) <= set(ground):
        raise ValueError(f"{seq!r} is not contained in the ground set")
    m = len(seq)
    triples = set()
    for p in range(m):
        for q in range(p + 1, m):
            for r in range(q + 1, m):
                triples.update(_rotations((seq[p], seq[q], seq[r])))
    return PartialCyclicOrder(ground, frozenset(triples))


def union(orders: Sequence[PartialCyclicOrder], ground: Iterable[Label] | None = None) -> PartialCyclicOrder:
    labels: set[Label] = set(ground) if ground is not None else set()
    triples: set[Triple] = set()
    for o in orders:
        labels.update(o.ground)
        triples.update(o.triples)
    return PartialCyclicOrder.from_triples(labels, triples)


def is_extension(total: TotalCyclicOrder, partial: PartialCyclicOrder) -> bool:
    if total.ground != partial.ground:
        raise ValueError("ground sets differ")
    pos = total.positions()
    m = len(total)
    return all((pos[b] - pos[a]) % m < (pos[c] - pos[a]) % m for a, b, c in partial.triples)


def restrict(partial: PartialCyclicOrder, subset: Iterable[Label]) -> PartialCyclicOrder:
    sub = set(subset)
    if not sub <= set(partial.ground):
        raise ValueError("subset is not contained in the ground set")
    return PartialCyclicOrder(tuple(sub), frozenset(t for t in partial.triples if sub.issuperset(t)))


def _constraints(partial: PartialCyclicOrder) -> dict[Label, list[tuple[Label, Label]]]:
    """For each label x, the pairs (y, z) with (x, y, z) in the order."""
    cons: dict[Label, list[tuple[Label, Label]]] = defaultdict(list)
    for a, b, c in partial.triples:
        cons[a].append((b, c))
    return cons


def _search(partial: PartialCyclicOrder, emit) -> None:
    """Insert labels in increasing order into a growing cycle, pruning violations.

    Only triples whose newest label is the one being inserted need checking,
    since inserting a label never changes the relative order of the others.
    """
    ground = partial.ground
    m = len(ground)
    if m == 0:
        emit(())
        return
    if m <= 2:
        emit(tuple(ground))
        return
    rank = {x: r for r, x in enumerate(ground)}
    cons = _constraints(partial)
    # keep only (y, z) already placed when x is inserted
    checks = [
        [(y, z) for (y, z) in cons.get(x, ()) if rank[y] < r and rank[z] < r]
        for r, x in enumerate(ground)
    ]
    cycle = [ground[0], ground[1]]

    def rec(r: int) -> None:
        if r == m:
            emit(tuple(cycle))
            return
        x = ground[r]
        need = checks[r]
        size = len(cycle) + 1
        for gap in range(1, size):
            cycle.insert(gap, x)
            if need:
                pos = {lab: p for p, lab in enumerate(cycle)}
                ok = True
                for y, z in need:
                    if (pos[y] - gap) % size >= (pos[z] - gap) % size:
                        ok = False
                        break
            else:
                ok = True
            if ok:
                rec(r + 1)
            del cycle[gap]

    rec(2)


def enumerate_extensions(partial: PartialCyclicOrder) -> list[TotalCyclicOrder]:
    """All circular extensions, sorted by canonical cycle word."""
    found: list[TotalCyclicOrder] = []
    _search(partial, lambda cyc: found.append(TotalCyclicOrder(cyc)))
    found.sort()
    return found


def count_extensions(partial: PartialCyclicOrder) -> int:
    count = 0

    def tick(_cyc) -> None:
        nonlocal count
        count += 1

    _search(partial, tick)
    return count


def extensions_with_adjacent_pair(partial: PartialCyclicOrder, i: Label, j: Label) -> list[TotalCyclicOrder]:
    """Extensions in which i is immediately followed by j."""
    if i == j:
        raise ValueError("i and j must differ")
    if i not in partial.ground or j not in partial.ground:
        raise ValueError("labels outside the ground set")
    return [t for t in enumerate_extensions(partial) if t.adjacent(i, j)]


def all_total_orders(ground: Iterable[Label]) -> list[TotalCyclicOrder]:
    return enumerate_extensions(PartialCyclicOrder.empty(ground))
