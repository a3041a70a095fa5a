"""Origamis (square-tiled surfaces) as transitive permutation pairs.

``sigma_a`` maps a square to its right neighbour, ``sigma_b`` to its upper
neighbour.  Two pairs describe the same surface iff they are simultaneously
conjugate, so most comparisons go through :func:`canonical_form`.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .perm import CycleType, Permutation, commutator, compose, cycle_type, is_transitive
from .sl2 import Word


class Stratum(tuple):
    """Orders of the zeros, sorted ascending; regular points are omitted."""

    def __new__(cls, alphas: Iterable[int] = ()):
        alphas = sorted(int(a) for a in alphas)
        if any(a < 1 for a in alphas):
            raise ValueError("stratum entries must be >= 1")
        if sum(alphas) % 2:
            raise ValueError(
                f"{tuple(alphas)} has odd total; the number of odd entries must be even"
            )
        return super().__new__(cls, alphas)

    def genus(self) -> int:
        return 1 + sum(self) // 2

    def __str__(self) -> str:
        return "H(" + ",".join(map(str, self)) + ")"


class Direction(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class CylinderDecomposition:
    direction: Direction
    lengths: CycleType


class ActionConvention(str, Enum):
    """How the generator S acts on ``(sigma_a, sigma_b)``.

    T always acts as ``(a, b) -> (a, b a^-1)``.

    ``ROTATION``  S: (a, b) -> (b^-1, a).  This is a genuine SL(2,Z)-action
                  (S^2 = -I acts by simultaneous inversion) and is the default.
    ``PRINTED``   S: (a, b) -> (b^-1, a^-1).  S^2 acts trivially, but the
                  relation (ST)^3 = S^2 does not hold on pairs, so matrix
                  membership computed with it depends on the chosen word.
    ``ALTERNATE`` S: (a, b) -> (b, a^-1), the inverse of ROTATION.
    """

    ROTATION = "rotation"
    PRINTED = "printed"
    ALTERNATE = "alternate"


DEFAULT_CONVENTION = ActionConvention.ROTATION


class Origami:
    __slots__ = ("sigma_a", "sigma_b", "_key")

    def __init__(self, sigma_a: Permutation, sigma_b: Permutation, check: bool = True):
        if sigma_a.d != sigma_b.d:
            raise ValueError("sigma_a and sigma_b act on different numbers of squares")
        if check and not is_transitive([sigma_a, sigma_b]):
            raise ValueError("the pair does not act transitively; the surface is disconnected")
        self.sigma_a = sigma_a
        self.sigma_b = sigma_b
        self._key = (sigma_a.images, sigma_b.images)

    @classmethod
    def from_cycles(cls, a: str, b: str, d: int) -> "Origami":
        return cls(Permutation.parse(a, d), Permutation.parse(b, d))

    @classmethod
    def from_images(cls, a: Iterable[int], b: Iterable[int]) -> "Origami":
        """1-based image lists."""
        return cls(Permutation.from_images(list(a)), Permutation.from_images(list(b)))

    @classmethod
    def torus(cls, d: int = 1) -> "Origami":
        """Single horizontal cylinder of ``d`` squares with trivial vertical gluing."""
        a = Permutation([(i + 1) % d for i in range(d)])
        return cls(a, Permutation.identity(d))

    @property
    def d(self) -> int:
        return self.sigma_a.d

    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Origami) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Origami({self.to_text()!r})"

    def relabel(self, w: Permutation) -> "Origami":
        """Rename square ``i`` to ``w(i)``."""
        return Origami(self.sigma_a.conjugate_by(w), self.sigma_b.conjugate_by(w), check=False)

    # text and JSON -------------------------------------------------------

    def to_text(self) -> str:
        return f"{self.d}; sigma_a={self.sigma_a.cycle_string()}; sigma_b={self.sigma_b.cycle_string()}"

    @classmethod
    def from_text(cls, text: str) -> "Origami":
        m = re.fullmatch(
            r"\s*(\d+)\s*;\s*sigma_a\s*=\s*([^;]*);\s*sigma_b\s*=\s*([^;]*?)\s*", text
        )
        if not m:
            raise ValueError(f"cannot parse origami text {text!r}")
        d = int(m.group(1))
        return cls.from_cycles(m.group(2), m.group(3), d)

    def to_dict(self) -> dict:
        return {
            "schema": "origami/v1",
            "d": self.d,
            "sigma_a": self.sigma_a.images1,
            "sigma_b": self.sigma_b.images1,
            "sigma_a_cycles": self.sigma_a.cycle_string(),
            "sigma_b_cycles": self.sigma_b.cycle_string(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Origami":
        if "origami" in data and isinstance(data["origami"], dict):
            data = data["origami"]
        o = cls.from_images(data["sigma_a"], data["sigma_b"])
        if "d" in data and int(data["d"]) != o.d:
            raise ValueError(f"declared d={data['d']} but permutations have size {o.d}")
        return o

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# --------------------------------------------------------------------------
# invariants


def stratum(o: Origami) -> Stratum:
    """Zero orders read off the cycles of ``[sigma_b^-1, sigma_a^-1]``.

    A commutator cycle of length k is a cone point of angle 2 pi k; cycles
    of length one are regular points and are dropped.
    """
    c = commutator(o.sigma_b.inverse(), o.sigma_a.inverse())
    return Stratum(k - 1 for k in cycle_type(c) if k > 1)


def genus(o: Origami) -> int:
    return stratum(o).genus()


def cylinders(o: Origami, direction: Direction | str = Direction.HORIZONTAL) -> CylinderDecomposition:
    direction = Direction(direction)
    if direction is Direction.HORIZONTAL:
        p = o.sigma_a
    elif direction is Direction.VERTICAL:
        p = o.sigma_b
    else:
        p = compose(o.sigma_b, o.sigma_a)
    return CylinderDecomposition(direction, cycle_type(p))


# --------------------------------------------------------------------------
# SL(2,Z) action


_GENERATORS = ("S", "S^-1", "T", "T^-1")


def _act_S(a: Permutation, b: Permutation, conv: ActionConvention, inverse: bool):
    if conv is ActionConvention.PRINTED:
        return b.inverse(), a.inverse()
    rot = conv is ActionConvention.ROTATION
    if rot != inverse:
        return b.inverse(), a
    return b, a.inverse()


def _act_T_power(a: Permutation, b: Permutation, k: int):
    # T^k: (a, b) -> (a, b a^-k)
    return a, compose(b, a**-k)


def apply_generator(
    o: Origami, g: str, convention: ActionConvention | str = DEFAULT_CONVENTION
) -> Origami:
    """Apply one of ``"S"``, ``"S^-1"``, ``"T"``, ``"T^-1"``."""
    conv = ActionConvention(convention)
    a, b = o.sigma_a, o.sigma_b
    if g == "S":
        a, b = _act_S(a, b, conv, inverse=False)
    elif g == "S^-1":
        a, b = _act_S(a, b, conv, inverse=True)
    elif g == "T":
        a, b = _act_T_power(a, b, 1)
    elif g == "T^-1":
        a, b = _act_T_power(a, b, -1)
    else:
        raise ValueError(f"unknown generator {g!r}; expected one of {_GENERATORS}")
    return Origami(a, b, check=False)


def apply_word(
    o: Origami, w: Word | str, convention: ActionConvention | str = DEFAULT_CONVENTION
) -> Origami:
    """Act by the matrix product of ``w``; the rightmost syllable acts first."""
    conv = ActionConvention(convention)
    if isinstance(w, str):
        w = Word.parse(w)
    a, b = o.sigma_a, o.sigma_b
    for letter, exp in reversed(w):
        if letter == "T":
            a, b = _act_T_power(a, b, exp)
        else:
            for _ in range(abs(exp)):
                a, b = _act_S(a, b, conv, inverse=exp < 0)
    return Origami(a, b, check=False)


# --------------------------------------------------------------------------
# canonical form


def _relabel_from(a: tuple, ai: tuple, b: tuple, bi: tuple, start: int, d: int):
    """BFS numbering from ``start`` following a, a^-1, b, b^-1; returns the
    relabeled (a, b) image tuples."""
    label = [-1] * d
    order = [start]
    label[start] = 0
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in (a[x], ai[x], b[x], bi[x]):
            if label[y] < 0:
                label[y] = len(order)
                order.append(y)
    ra = tuple(label[a[x]] for x in order)
    rb = tuple(label[b[x]] for x in order)
    return ra, rb


def canonical_key(o: Origami) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lexicographically smallest ``(sigma_a, sigma_b)`` image pair over all
    BFS relabelings; a complete invariant for simultaneous conjugacy."""
    a = o.sigma_a.images
    b = o.sigma_b.images
    ai = o.sigma_a.inverse().images
    bi = o.sigma_b.inverse().images
    d = o.d
    best = None
    for start in range(d):
        cand = _relabel_from(a, ai, b, bi, start, d)
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(o: Origami) -> Origami:
    ka, kb = canonical_key(o)
    return Origami(Permutation(ka), Permutation(kb), check=False)


def is_conjugate(o1: Origami, o2: Origami) -> bool:
    return o1.d == o2.d and canonical_key(o1) == canonical_key(o2)


# --------------------------------------------------------------------------
# reducedness


class Reducedness(str, Enum):
    REDUCED = "reduced"
    UNDETERMINED = "undetermined"


def singular_corners(o: Origami) -> list[bool]:
    """``result[i]`` is True iff the lower-left vertex of square ``i`` is a
    cone point.

    A cycle of ``c = [sigma_b^-1, sigma_a^-1]`` through square ``j`` winds
    around the upper-right vertex of ``j``; that vertex is the lower-left
    vertex of ``sigma_b(sigma_a(j))``.
    """
    c = commutator(o.sigma_b.inverse(), o.sigma_a.inverse())
    clen = [0] * o.d
    for cyc in c.cycles(singletons=True):
        for x in cyc:
            clen[x] = len(cyc)
    ba = compose(o.sigma_b, o.sigma_a)
    out = [False] * o.d
    for j in range(o.d):
        out[ba(j)] = clen[j] >= 2
    return out


def _gaps_along(p: Permutation, marked: list[bool]) -> list[int]:
    gaps = []
    for cyc in p.cycles(singletons=True):
        pos = [i for i, x in enumerate(cyc) if marked[x]]
        if not pos:
            continue
        n = len(cyc)
        for i, x in enumerate(pos):
            nxt = pos[(i + 1) % len(pos)]
            gaps.append((nxt - x) % n or n)
    return gaps


def saddle_connection_gaps(o: Origami) -> tuple[list[int], list[int]]:
    """Lengths of horizontal and vertical saddle connections."""
    marked = singular_corners(o)
    return _gaps_along(o.sigma_a, marked), _gaps_along(o.sigma_b, marked)


def is_reduced_sufficient(o: Origami) -> Reducedness:
    """One-sided reducedness test: horizontal and vertical saddle connections
    with gcd 1 in each direction already generate Z^2."""
    if o.d == 1:
        return Reducedness.REDUCED
    hor, ver = saddle_connection_gaps(o)
    if hor and ver and math.gcd(*hor) == 1 and math.gcd(*ver) == 1:
        return Reducedness.REDUCED
    return Reducedness.UNDETERMINED
