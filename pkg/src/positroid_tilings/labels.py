"""Vertex labels and cyclic interval helpers.

Labels are positive integers plus one distinguished label ``STAR`` that
stands for two identified vertices after an arc is contracted. ``STAR``
sorts above every integer and serializes as ``"*"``.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence, Union


class _Star:
    __slots__ = ()

    def __repr__(self) -> str:
        return "STAR"

    def __str__(self) -> str:
        return "*"

    def __hash__(self) -> int:
        return hash("positroid_tilings.STAR")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        if other is self or isinstance(other, int):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if other is self:
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if other is self or isinstance(other, int):
            return True
        return NotImplemented

    def __reduce__(self):
        return "STAR"


STAR = _Star()

Label = Union[int, _Star]


def label_to_json(x: Label) -> int | str:
    return "*" if x is STAR else x


def label_from_json(x: int | str) -> Label:
    if x == "*":
        return STAR
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"bad label {x!r}")
    return x


def cyclic_interval(a: int, b: int, n: int) -> tuple[int, ...]:
    """Labels a, a+1, ..., b of [n] read cyclically, both ends included."""
    steps = (b - a) % n
    return tuple((a - 1 + t) % n + 1 for t in range(steps + 1))


def half_open_interval(a: int, b: int, n: int) -> tuple[int, ...]:
    """The cyclic interval [a, b-1]; empty when a == b."""
    steps = (b - a) % n
    return tuple((a - 1 + t) % n + 1 for t in range(steps))


def open_interval(a: int, b: int, n: int) -> tuple[int, ...]:
    """Labels strictly between a and b going clockwise."""
    steps = (b - a) % n
    return tuple((a - 1 + t) % n + 1 for t in range(1, steps))


def check_distinct(seq: Sequence[Hashable], what: str = "labels") -> None:
    if len(set(seq)) != len(seq):
        raise ValueError(f"duplicate {what} in {list(seq)!r}")


def sorted_labels(labels: Iterable[Label]) -> tuple[Label, ...]:
    return tuple(sorted(labels))
