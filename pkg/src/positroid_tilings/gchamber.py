"""Sign chambers of 2 x n matrices indexed by w-simplices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hypersimplex import WSimplex, enumerate_D, interval_count, rotation_ending_at


class ZeroMinor(ValueError):
    """Some Plücker coordinate vanishes, so chamber membership is undecided."""


@dataclass(frozen=True)
class SignPattern:
    n: int
    signs: dict[tuple[int, int], int]

    def __getitem__(self, ab: tuple[int, int]) -> int:
        return self.signs[ab]


def chamber_sign_pattern(s: WSimplex) -> SignPattern:
    """sgn P_ab = (-1)^(|I_a ∩ [a, b-1]| - 1) for a < b."""
    n = s.n
    signs = {}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            signs[(a, b)] = -1 if (interval_count(s.I[a - 1], a, b, n) - 1) % 2 else 1
    return SignPattern(n, signs)


@dataclass(frozen=True)
class ChamberMatrix:
    rows: tuple[tuple[Fraction, ...], tuple[Fraction, ...]]

    def __post_init__(self) -> None:
        top, bottom = (tuple(Fraction(x) for x in r) for r in self.rows)
        if len(top) != len(bottom):
            raise ValueError("rows differ in length")
        object.__setattr__(self, "rows", (top, bottom))

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def minor(self, a: int, b: int) -> Fraction:
        top, bottom = self.rows
        return top[a - 1] * bottom[b - 1] - top[b - 1] * bottom[a - 1]

    def minors(self) -> dict[tuple[int, int], Fraction]:
        n = self.n
        return {(a, b): self.minor(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)}

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence]) -> ChamberMatrix:
        return cls((tuple(Fraction(x) for x in data[0]), tuple(Fraction(x) for x in data[1])))


def construct_chamber_point(s: WSimplex, slopes: Sequence | None = None) -> ChamberMatrix:
    """Columns (1, slope) laid out in the order 1, w^(1)_1, ..., w^(1)_{n-1}, then sign-flipped.

    Column b gets the sign (-1)^(|I_1 ∩ [1, b-1]| - 1) for b >= 2.
    """
    n = s.n
    if slopes is None:
        slopes = range(1, n + 1)
    slopes = [Fraction(x) for x in slopes]
    if len(slopes) != n:
        raise ValueError(f"need {n} slopes")
    if any(slopes[t] >= slopes[t + 1] for t in range(n - 1)):
        raise ValueError("slopes must be strictly increasing")
    order = (1,) + rotation_ending_at(s.w, 1)[:-1]
    slope_of = {label: slopes[p] for p, label in enumerate(order)}
    top, bottom = [], []
    for b in range(1, n + 1):
        sign = 1 if b == 1 else (-1 if (interval_count(s.I[0], 1, b, n) - 1) % 2 else 1)
        top.append(Fraction(sign))
        bottom.append(sign * slope_of[b])
    return ChamberMatrix((tuple(top), tuple(bottom)))


def verify_point_in_chamber(m: ChamberMatrix, s: WSimplex) -> bool:
    """Compare minor signs with the chamber pattern; raises ZeroMinor if any minor is 0."""
    if m.n != s.n:
        raise ValueError("size mismatch")
    pattern = chamber_sign_pattern(s)
    minors = m.minors()
    for ab, v in minors.items():
        if v == 0:
            raise ZeroMinor(f"P_{ab[0]}{ab[1]} = 0")
    return all((1 if minors[ab] > 0 else -1) == sg for ab, sg in pattern.signs.items())


def var(seq: Sequence[Fraction]) -> int:
    """Sign changes in a sequence, ignoring zeros."""
    signs = [x > 0 for x in seq if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def amplituhedron_k(m: ChamberMatrix) -> int | None:
    """The k for which m satisfies P_{i,i+1} > 0, var(P_12, ..., P_1n) = k, (-1)^k P_1n > 0."""
    n = m.n
    if any(m.minor(i, i + 1) <= 0 for i in range(1, n)):
        return None
    k = var([m.minor(1, b) for b in range(2, n + 1)])
    last = m.minor(1, n)
    if last == 0 or (last > 0) != (k % 2 == 0):
        return None
    return k


def matching_chambers(m: ChamberMatrix) -> list[WSimplex]:
    """Every w whose pattern the matrix realizes, over all k."""
    out = []
    for k in range(m.n - 1):
        for s in enumerate_D(k, m.n):
            if verify_point_in_chamber(m, s):
                out.append(s)
    return out
