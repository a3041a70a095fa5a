"""2x2 integer matrices of determinant one, words in S and T, and finite
matrix groups over Z/nZ.

Python integers are arbitrary precision, so MatZ arithmetic never wraps.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint

DEFAULT_CLOSURE_CAP = 10**7


class ClosureCapError(RuntimeError):
    """Raised when a modular closure would exceed the configured size cap."""


@dataclass(frozen=True)
class MatZ:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "MatZ":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def parse(cls, text: str) -> "MatZ":
        nums = re.findall(r"-?\d+", text)
        if len(nums) != 4:
            raise ValueError(f"expected [[a,b],[c,d]], got {text!r}")
        return cls(*(int(x) for x in nums))

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def first_column(self) -> tuple[int, int]:
        return (self.a, self.c)

    def __mul__(self, o: "MatZ") -> "MatZ":
        return MatZ(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "MatZ":
        return MatZ(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "MatZ":
        return MatZ(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> "MatZ":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = IDENTITY
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, m: "MatZ") -> "MatZ":
        """``self * m * self^-1``."""
        return self * m * self.inverse()

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = MatZ(1, 0, 0, 1)
MINUS_IDENTITY = MatZ(-1, 0, 0, -1)
S = MatZ(0, -1, 1, 0)
T = MatZ(1, 1, 0, 1)
T_PRIME = MatZ(1, 0, 1, 1)
T_DOUBLE_PRIME = T_PRIME * T * T_PRIME.inverse()


def constants() -> tuple[MatZ, MatZ, MatZ, MatZ]:
    """``(S, T, T', T'')`` with ``T'' = T' T T'^-1``."""
    return S, T, T_PRIME, T_DOUBLE_PRIME


def mul(m1: MatZ, m2: MatZ) -> MatZ:
    return m1 * m2


def inv(m: MatZ) -> MatZ:
    return m.inverse()


def mat_pow(m: MatZ, k: int) -> MatZ:
    return m**k


# --------------------------------------------------------------------------
# matrices mod n


@dataclass(frozen=True)
class MatMod:
    """A 2x2 matrix over Z/nZ with unit determinant (an element of GL(2, Z/nZ))."""

    n: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be >= 1")
        n = self.n
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % n)
        if math.gcd(self.det(), n) != 1:
            raise ValueError(f"determinant {self.det()} is not a unit mod {n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: int) -> "MatMod":
        (a, b), (c, d) = rows
        return cls(n, a, b, c, d)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.n

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def is_identity(self) -> bool:
        return self.entries() == (1 % self.n, 0, 0, 1 % self.n)

    def __mul__(self, o: "MatMod") -> "MatMod":
        if o.n != self.n:
            raise ValueError("moduli differ")
        return MatMod(
            self.n,
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "MatMod":
        n = self.n
        di = pow(self.det(), -1, n) if n > 1 else 0
        return MatMod(n, di * self.d, -di * self.b, -di * self.c, di * self.a)

    def __pow__(self, k: int) -> "MatMod":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = MatMod(self.n, 1, 0, 0, 1)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        return ((self.a * v[0] + self.b * v[1]) % self.n, (self.c * v[0] + self.d * v[1]) % self.n)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.n}"


def reduce_mod(m: MatZ, n: int) -> MatMod:
    return MatMod(n, m.a, m.b, m.c, m.d)


def t_power_mod(a: int, n: int) -> MatMod:
    """``T^a`` for ``a`` in Z/nZ; the exponent is reduced before powering."""
    return MatMod(n, 1, a % n, 0, 1)


# --------------------------------------------------------------------------
# words in S and T


_LETTERS = ("S", "T")


class Word(tuple):
    """A word in the generators S and T, stored as ``((letter, exponent), ...)``.

    Evaluation multiplies the syllables left to right.  Words are kept
    normalized: no zero exponents, no equal adjacent letters, and S
    exponents reduced into {-1, 1, 2} using S^4 = I.
    """

    def __new__(cls, syllables: Iterable[tuple[str, int]] = ()):
        return super().__new__(cls, _normalize(syllables))

    @classmethod
    def parse(cls, text: str) -> "Word":
        syl = []
        for tok in text.split():
            m = re.fullmatch(r"([ST])(?:\^(-?\d+))?", tok)
            if not m:
                raise ValueError(f"bad word token {tok!r}")
            syl.append((m.group(1), int(m.group(2) or 1)))
        return cls(syl)

    def __str__(self) -> str:
        if not self:
            return "1"
        return " ".join(l if e == 1 else f"{l}^{e}" for l, e in self)

    def __mul__(self, other: "Word") -> "Word":
        return Word(tuple.__add__(self, other))

    def inverse(self) -> "Word":
        return Word((l, -e) for l, e in reversed(self))

    def matrix(self) -> MatZ:
        return evaluate(self)


def _normalize(syllables: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[list] = []
    for letter, exp in syllables:
        if letter not in _LETTERS:
            raise ValueError(f"unknown generator {letter!r}")
        exp = int(exp)
        if out and out[-1][0] == letter:
            out[-1][1] += exp
        else:
            out.append([letter, exp])
        # normalize the tail; merges can cascade after a syllable vanishes
        while out:
            l, e = out[-1]
            if l == "S":
                e %= 4
                e = -1 if e == 3 else e
                out[-1][1] = e
            if out[-1][1] != 0:
                break
            out.pop()
            if len(out) >= 2 and out[-1][0] == out[-2][0]:
                out[-2][1] += out.pop()[1]
            else:
                break
    return tuple((l, e) for l, e in out)


def evaluate(w: Word) -> MatZ:
    m = IDENTITY
    for letter, exp in w:
        m = m * ((S if letter == "S" else T) ** exp)
    return m


def decompose_word(m: MatZ) -> Word:
    """Write ``m`` as a word in S and T by Euclidean reduction of the lower row.

    Each step peels off ``T^q S`` on the left, where ``q`` is the floor of
    a/c, so |c| strictly decreases.  A leftover ``-T^k`` becomes ``S^2 T^-k``.
    """
    if m.det() != 1:
        raise ValueError("decompose_word needs determinant 1")
    syl: list[tuple[str, int]] = []
    a, b, c, d = m.a, m.b, m.c, m.d
    while c != 0:
        q = a // c
        a, b = a - q * c, b - q * d
        syl.append(("T", q))
        syl.append(("S", 1))
        # residual := S^-1 * residual
        a, b, c, d = c, d, -a, -b
    if a == 1:
        syl.append(("T", b))
    else:
        syl.append(("S", 2))
        syl.append(("T", -b))
    return Word(syl)


# --------------------------------------------------------------------------
# finite groups SL(2, Z/nZ)


def sl2_order_mod(n: int) -> int:
    """``|SL(2, Z/nZ)| = n^3 prod_{p | n} (1 - p^-2)``."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    order = n**3
    for p in factorint(n):
        order = order // (p * p) * (p * p - 1)
    return order


def _encode(a, b, c, d, n):
    return ((a * n + b) * n + c) * n + d


def _decode(codes: np.ndarray, n: int):
    d = codes % n
    codes = codes // n
    c = codes % n
    codes = codes // n
    b = codes % n
    a = codes // n
    return a, b, c, d


def group_closure_mod(
    gens: Sequence[MatMod],
    n: int,
    cap: int = DEFAULT_CLOSURE_CAP,
    stop_at: int | None = None,
) -> int:
    """Order of the subgroup of GL(2, Z/nZ) generated by ``gens``.

    Breadth-first search from the identity, right-multiplying by each
    generator in list order.  ``stop_at`` ends the search early once that
    many elements are known (useful when the expected maximum is the whole
    group).
    """
    if sl2_order_mod(n) > cap:
        raise ClosureCapError(f"|SL(2,Z/{n}Z)| = {sl2_order_mod(n)} exceeds closure cap {cap}")
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator {g} does not have modulus {n}")
    if n == 1:
        return 1
    # n^4 must fit in int64
    if n > 50000:
        raise ClosureCapError(f"modulus {n} too large for encoded closure")

    gen_entries = [(g.a, g.b, g.c, g.d) for g in gens]
    ident = np.array([_encode(1, 0, 0, 1, n)], dtype=np.int64)
    use_bitmap = n**4 <= 64_000_000
    if use_bitmap:
        seen = np.zeros(n**4, dtype=bool)
        seen[ident] = True
    else:
        seen_sorted = ident.copy()
    size = 1
    frontier = ident
    while frontier.size:
        if stop_at is not None and size >= stop_at:
            break
        a, b, c, d = _decode(frontier, n)
        new_parts = []
        for ga, gb, gc, gd in gen_entries:
            na = (a * ga + b * gc) % n
            nb = (a * gb + b * gd) % n
            nc = (c * ga + d * gc) % n
            nd = (c * gb + d * gd) % n
            new_parts.append(_encode(na, nb, nc, nd, n))
        if not new_parts:
            break
        cand = np.unique(np.concatenate(new_parts))
        if use_bitmap:
            cand = cand[~seen[cand]]
            seen[cand] = True
        else:
            cand = cand[~np.isin(cand, seen_sorted, assume_unique=True)]
            seen_sorted = np.union1d(seen_sorted, cand)
        size += int(cand.size)
        if size > cap * max(1, _unit_count(n)):
            raise ClosureCapError(f"closure mod {n} exceeded cap")
        frontier = cand
    return size


def _unit_count(n: int) -> int:
    return sum(1 for x in range(n) if math.gcd(x, n) == 1)


def enumerate_sl2_mod(n: int) -> list[MatMod]:
    """All elements of SL(2, Z/nZ) by brute force; for small ``n`` only."""
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if (a * d - b * c - 1) % n == 0:
                        out.append(MatMod(n, a, b, c, d))
    return out
