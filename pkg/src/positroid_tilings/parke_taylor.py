"""Exact evaluation of Parke-Taylor functions and the weight identities they satisfy.

Everything is evaluated in the gauge where the 2 x n matrix has top row all
ones, so the Plücker coordinate P_ij is z_j - z_i.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .cyclic_order import TotalCyclicOrder, enumerate_extensions
from .hypersimplex import WSimplex, enumerate_all_D
from .labels import STAR, Label, check_distinct, label_from_json, label_to_json
from .subdivision import Arc, Color, Subdivision, contract_arc, is_facet_defining, is_internal, sigma_order, validate


class CoincidentPoints(ValueError):
    pass


@dataclass(frozen=True)
class EvaluationPoint:
    z: Mapping[Label, Fraction]

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", {x: Fraction(v) for x, v in dict(self.z).items()})

    def __getitem__(self, x: Label) -> Fraction:
        return self.z[x]

    @property
    def ground(self) -> tuple[Label, ...]:
        return tuple(sorted(self.z))

    def is_generic(self) -> bool:
        return len(set(self.z.values())) == len(self.z)

    def to_json(self) -> list:
        return [[label_to_json(x), str(self.z[x])] for x in self.ground]

    @classmethod
    def from_values(cls, labels: Sequence[Label], values: Sequence) -> EvaluationPoint:
        return cls(dict(zip(labels, values)))

    @classmethod
    def from_json(cls, data: list) -> EvaluationPoint:
        return cls({label_from_json(x): Fraction(v) for x, v in data})


def random_point(labels: Iterable[Label], rng: random.Random, spread: int = 10**12) -> EvaluationPoint:
    """Distinct rationals with numerators drawn without replacement from a large range."""
    labels = tuple(labels)
    nums = rng.sample(range(-spread, spread), len(labels))
    den = rng.randrange(1, 10**6)
    return EvaluationPoint({x: Fraction(a, den) for x, a in zip(labels, nums)})


def _cycle_labels(cycle) -> tuple[Label, ...]:
    if isinstance(cycle, TotalCyclicOrder):
        return cycle.cycle
    if isinstance(cycle, WSimplex):
        return cycle.w
    return tuple(cycle)


def pt_eval(cycle, point: EvaluationPoint) -> Fraction:
    """1 / prod (z_{w_{i+1}} - z_{w_i}) around the cycle."""
    w = _cycle_labels(cycle)
    check_distinct(w)
    if len(w) < 2:
        raise ValueError("Parke-Taylor functions need at least 2 labels")
    z = point.z
    den = Fraction(1)
    for a, b in zip(w, w[1:] + w[:1]):
        d = z[b] - z[a]
        if d == 0:
            raise CoincidentPoints(f"z_{a} = z_{b}")
        den *= d
    return 1 / den


def _pt_sum(cycles: Iterable, point: EvaluationPoint) -> Fraction:
    """Sum of PT over many cycles on one common denominator."""
    z = point.z
    total = Fraction(0)
    for cyc in cycles:
        w = _cycle_labels(cyc)
        den = 1
        for a, b in zip(w, w[1:] + w[:1]):
            den *= z[b] - z[a]
        total += 1 / den
    return total


def simplex_weight(s: WSimplex, point: EvaluationPoint) -> Fraction:
    return pt_eval(s.w, point)


def identity_cycle(sub: Subdivision) -> tuple[Label, ...]:
    return sub.labels


def tile_extensions(sub: Subdivision) -> list[TotalCyclicOrder]:
    if sub.n == 2 and not sub.polygons:
        # a contracted side with one label besides STAR: a single 2-cycle
        return [TotalCyclicOrder(sub.labels)]
    validate(sub)
    return enumerate_extensions(sigma_order(sub))


def tile_weight(sub: Subdivision, point: EvaluationPoint, extensions: Sequence | None = None) -> Fraction:
    """Sum of PT over the circular extensions of the subdivision's order."""
    if extensions is None:
        extensions = tile_extensions(sub)
    return _pt_sum(extensions, point)


# ---------------------------------------------------------------- reports


@dataclass
class Trial:
    point: EvaluationPoint
    residual: Fraction

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "residual": str(self.residual)}


@dataclass
class VerificationReport:
    family: str
    params: dict
    seed: int
    trials: list[Trial] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(t.residual == 0 for t in self.trials)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "seed": self.seed,
            "trials": [t.to_json() for t in self.trials],
            "pass": self.passed,
        }


def _run(family: str, params: dict, labels: Sequence[Label], trials: int, seed: int,
         residual: Callable[[EvaluationPoint], Fraction]) -> VerificationReport:
    rng = random.Random(seed)
    report = VerificationReport(family, params, seed)
    for _ in range(trials):
        pt = random_point(labels, rng)
        report.trials.append(Trial(pt, residual(pt)))
    return report


def verify_tile_weight(sub: Subdivision, trials: int = 5, seed: int = 0,
                       extensions: Sequence | None = None) -> VerificationReport:
    """Check that the tile weight equals (-1)^k PT(1, 2, ..., n)."""
    if extensions is None:
        extensions = tile_extensions(sub)
    sign = -1 if sub.k % 2 else 1
    ident = identity_cycle(sub)
    return _run("tile_weight", {"subdivision": sub.to_json()}, sub.labels, trials, seed,
                lambda pt: _pt_sum(extensions, pt) - sign * pt_eval(ident, pt))


# ---------------------------------------------------------------- facets


def split_at_pair(w, i: int, j: int) -> tuple[TotalCyclicOrder, TotalCyclicOrder]:
    """Cut (w) at the adjacent pair i, j into cycles on [i+1, j-1] + STAR and [j+1, i-1] + STAR."""
    cyc = TotalCyclicOrder(_cycle_labels(w))
    n = len(cyc)
    if cyc.ground != tuple(range(1, n + 1)):
        raise ValueError("split_at_pair needs a cycle on 1..n")
    if not (cyc.adjacent(i, j) or cyc.adjacent(j, i)):
        raise ValueError(f"{i} and {j} are not adjacent in {cyc.word()}")

    def side(a: int, b: int) -> TotalCyclicOrder:
        region = {(a - 1 + t) % n + 1 for t in range((b - a) % n + 1)}
        if len(region) < 3:
            raise ValueError(f"side [{a},{b}] has no interior label")
        word = []
        for x in cyc.cycle:
            if x in region:
                y = STAR if x in (i, j) else x
                if not (y is STAR and word and word[-1] is STAR):
                    word.append(y)
        if word[0] is STAR and word[-1] is STAR:
            word.pop()
        return TotalCyclicOrder(tuple(word))

    return side(i, j), side(j, i)


def facet_extensions(sub: Subdivision, arc: Arc) -> list[TotalCyclicOrder]:
    return [t for t in tile_extensions(sub) if t.adjacent(arc.src, arc.dst)]


def _check_facet_arc(sub: Subdivision, arc: Arc) -> None:
    if not is_internal(sub, arc) or not is_facet_defining(sub, arc):
        raise ValueError(f"{arc} is not an internal facet-defining arc")


def facet_weight(sub: Subdivision, arc: Arc, point_left: EvaluationPoint, point_right: EvaluationPoint) -> Fraction:
    """Sum over extensions with src immediately before dst of PT(w_L) PT(w_R)."""
    _check_facet_arc(sub, arc)
    total = Fraction(0)
    for t in facet_extensions(sub, arc):
        wl, wr = split_at_pair(t, arc.src, arc.dst)
        total += pt_eval(wl, point_left) * pt_eval(wr, point_right)
    return total


def facet_weight_formula(sub: Subdivision, arc: Arc, point_left: EvaluationPoint,
                         point_right: EvaluationPoint) -> Fraction:
    """(-1)^(k-1) C(n-2, |N_L|-1) PT(N_L in order) PT(N_R in order)."""
    _check_facet_arc(sub, arc)
    n = sub.n
    i, j = arc.src, arc.dst
    left = tuple((i + t - 1) % n + 1 for t in range(1, (j - i) % n)) + (STAR,)
    right = tuple((j + t - 1) % n + 1 for t in range(1, (i - j) % n)) + (STAR,)
    sign = -1 if (sub.k - 1) % 2 else 1
    return sign * comb(n - 2, len(left) - 1) * pt_eval(left, point_left) * pt_eval(right, point_right)


def facet_weight_factored(sub: Subdivision, arc: Arc, point_left: EvaluationPoint,
                          point_right: EvaluationPoint) -> Fraction:
    """C(n-2, |N_L|-1) times the tile weights of the two contracted sides."""
    left, right = contract_arc(sub, arc)
    return comb(sub.n - 2, left.n - 1) * tile_weight(left, point_left) * tile_weight(right, point_right)


# ---------------------------------------------------------------- residues


def pt_residue(w, i: Label, j: Label, point: EvaluationPoint) -> Fraction:
    """Limit of (z_j - z_i) PT(w) as z_j -> z_i.

    Zero unless i and j are adjacent in the cycle; z_i = z_j is allowed.
    """
    cyc = _cycle_labels(w)
    m = len(cyc)
    z = point.z
    pairs = list(zip(cyc, cyc[1:] + cyc[:1]))
    if (i, j) in pairs:
        sign, skip = 1, (i, j)
    elif (j, i) in pairs:
        sign, skip = -1, (j, i)
    else:
        return Fraction(0)
    den = Fraction(1)
    for a, b in pairs:
        if (a, b) == skip:
            continue
        d = z[b] - z[a]
        if d == 0:
            raise CoincidentPoints(f"z_{a} = z_{b}")
        den *= d
    if m < 3:
        raise ValueError("need at least 3 labels")
    return sign / den


# ---------------------------------------------------------------- identity families


def shuffles(u: Sequence[int], v: Sequence[int]) -> list[tuple[int, ...]]:
    """Interleavings of u and v keeping each in order."""
    u, v = tuple(u), tuple(v)
    total = len(u) + len(v)
    out = []
    for spots in itertools.combinations(range(total), len(u)):
        it_u, it_v = iter(u), iter(v)
        chosen = set(spots)
        out.append(tuple(next(it_u) if p in chosen else next(it_v) for p in range(total)))
    return out


def shuffle_family(n: int, u: Sequence[int], v: Sequence[int]) -> list[tuple[int, ...]]:
    if sorted(tuple(u) + tuple(v)) != list(range(1, n)):
        raise ValueError("u and v must split [n-1]")
    return [w + (n,) for w in shuffles(u, v)]


def u1_family(n: int) -> list[tuple[int, ...]]:
    """1 inserted in every slot of 2, 3, ..., n-1, followed by n."""
    rest = list(range(2, n))
    return [tuple(rest[:p] + [1] + rest[p:]) + (n,) for p in range(n - 1)]


def subset_family(n: int, subset: Iterable[int]) -> list[WSimplex]:
    """w in D_n in which the elements of a proper subset of [n-1] appear in increasing order."""
    s = sorted(set(subset))
    if not set(s) < set(range(1, n)):
        raise ValueError("subset must be a proper subset of [n-1]")
    return [w for w in enumerate_all_D(n) if [x for x in w.w if x in s] == s]


FAMILIES = ("tile_weight", "grey_vanishing", "shuffle", "u1", "subset")


def verify_identity(family: str, params: dict, trials: int = 5, seed: int = 0) -> VerificationReport:
    """Build the permutation set of an identity family and check its PT sum exactly."""
    if family == "tile_weight":
        sub = params["subdivision"]
        if not isinstance(sub, Subdivision):
            sub = Subdivision.from_json(sub)
        return verify_tile_weight(sub, trials, seed)
    if family == "grey_vanishing":
        sub = params["subdivision"]
        if not isinstance(sub, Subdivision):
            sub = Subdivision.from_json(sub)
        validate(sub)
        if all(p.color is not Color.GREY for p in sub.polygons):
            raise ValueError("grey_vanishing needs at least one grey polygon")
        ext = tile_extensions(sub)
        return _run(family, {"subdivision": sub.to_json()}, sub.labels, trials, seed,
                    lambda pt: _pt_sum(ext, pt))
    if family == "shuffle":
        n = int(params["n"])
        u, v = tuple(params["u"]), tuple(params["v"])
        ws = shuffle_family(n, u, v)
        return _run(family, {"n": n, "u": list(u), "v": list(v)}, range(1, n + 1), trials, seed,
                    lambda pt: _pt_sum(ws, pt))
    if family == "u1":
        n = int(params["n"])
        if n < 3:
            raise ValueError("u1 needs n >= 3")
        ws = u1_family(n)
        return _run(family, {"n": n}, range(1, n + 1), trials, seed, lambda pt: _pt_sum(ws, pt))
    if family == "subset":
        n = int(params["n"])
        subset = sorted(set(params["subset"]))
        ws = subset_family(n, subset)
        return _run(family, {"n": n, "subset": subset}, range(1, n + 1), trials, seed,
                    lambda pt: _pt_sum(ws, pt))
    raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
