"""Permutations of {1, ..., d}.

Internally a permutation is stored 0-based as a tuple of images; everything
that talks to the outside world (cycle notation, ``images1``) is 1-based.
Composition applies the rightmost factor first: ``(u * v)(x) = u(v(x))``.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import reduce
from typing import Iterable, Sequence


class Permutation:
    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int]):
        img = tuple(int(x) for x in images)
        if len(img) == 0:
            raise ValueError("a permutation needs d >= 1")
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a bijection of {{0..{len(img) - 1}}}: {img}")
        self._img = img
        self._hash = hash(img)

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(d))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Permutation":
        """Build from 1-based images, ``images[i-1] = image of i``."""
        return cls([x - 1 for x in images])

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], d: int) -> "Permutation":
        """Build from 1-based cycles; cycles are composed right to left.

        Disjoint cycles are the common case, but overlapping cycles are
        accepted and multiplied as written, ``(1,2)(2,3)`` meaning apply
        ``(2,3)`` first.
        """
        result = cls.identity(d)
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            if any(x < 1 or x > d for x in cyc):
                raise ValueError(f"cycle {cyc} has labels outside 1..{d}")
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"cycle {cyc} repeats a label")
            img = list(range(d))
            for i, x in enumerate(cyc):
                img[x - 1] = cyc[(i + 1) % len(cyc)] - 1
            result = result * cls(img)
        return result

    @classmethod
    def parse(cls, text: str, d: int) -> "Permutation":
        """Parse cycle notation such as ``"(1,2,3)(4,5)"`` or ``"()"``."""
        text = "".join(text.split())
        if text in ("", "()", "id"):
            return cls.identity(d)
        if not re.fullmatch(r"(\((\d+(,\d+)*)?\))+", text):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = [c.split(",") for c in re.findall(r"\(([^()]*)\)", text) if c]
        return cls.from_cycles(cycles, d)

    # basic accessors ----------------------------------------------------

    @property
    def d(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """0-based image tuple."""
        return self._img

    @property
    def images1(self) -> list[int]:
        """1-based image list, as used in the JSON formats."""
        return [x + 1 for x in self._img]

    def __call__(self, x: int) -> int:
        return self._img[x]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, d={self.d})"

    def __str__(self) -> str:
        return self.cycle_string()

    # group operations ---------------------------------------------------

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.d
        for i, x in enumerate(self._img):
            inv[x] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        # reduce modulo the order first; orders of permutations in S_d stay small
        # relative to the exponents we see (T^L, T^{15}, ...)
        order = self.order()
        k %= order
        result = Permutation.identity(self.d)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def cycles(self, singletons: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, 0-based, each starting at its smallest element."""
        seen = [False] * self.d
        out = []
        for start in range(self.d):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self._img[x]
            if singletons or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> "CycleType":
        return cycle_type(self)

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles(singletons=True)))

    def sign(self) -> int:
        even_cycles = sum(1 for c in self.cycles() if len(c) % 2 == 0)
        return -1 if even_cycles % 2 else 1

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycs)

    def conjugate_by(self, w: "Permutation") -> "Permutation":
        """``w * self * w^-1``: relabel every square ``i`` as ``w(i)``."""
        return w * self * w.inverse()


class CycleType(tuple):
    """Sorted (descending) multiset of cycle lengths, fixed points included."""

    def __new__(cls, lengths: Iterable[int]):
        lengths = sorted((int(x) for x in lengths), reverse=True)
        if any(x < 1 for x in lengths):
            raise ValueError("cycle lengths must be positive")
        return super().__new__(cls, lengths)

    @property
    def d(self) -> int:
        return sum(self)

    def counter(self) -> Counter:
        return Counter(self)


def _check_same_size(*perms: Permutation) -> None:
    ds = {p.d for p in perms}
    if len(ds) > 1:
        raise ValueError(f"permutations act on different sets: sizes {sorted(ds)}")


def compose(u: Permutation, v: Permutation) -> Permutation:
    """``compose(u, v)(x) = u(v(x))``."""
    _check_same_size(u, v)
    ui = u.images
    return Permutation(tuple(ui[x] for x in v.images))


def compose_all(perms: Sequence[Permutation]) -> Permutation:
    return reduce(compose, perms)


def inverse(u: Permutation) -> Permutation:
    return u.inverse()


def commutator(u: Permutation, v: Permutation) -> Permutation:
    """``[u, v] = u v u^-1 v^-1`` (rightmost applied first)."""
    _check_same_size(u, v)
    return compose_all([u, v, u.inverse(), v.inverse()])


def cycle_type(u: Permutation) -> CycleType:
    return CycleType(len(c) for c in u.cycles(singletons=True))


def is_transitive(perms: Sequence[Permutation], d: int | None = None) -> bool:
    """True iff the group generated by ``perms`` has one orbit.

    ``d`` is only needed for an empty generator list.
    """
    if perms:
        _check_same_size(*perms)
        d = perms[0].d
    if d is None:
        raise ValueError("d is required when no permutations are given")
    if d == 1:
        return True
    seen = [False] * d
    seen[0] = True
    stack = [0]
    count = 1
    imgs = [p.images for p in perms]
    invs = [p.inverse().images for p in perms]
    while stack:
        x = stack.pop()
        for img in imgs + invs:
            y = img[x]
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == d
