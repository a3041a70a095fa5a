"""Explicit one-cylinder origamis in every stratum.

Each building block is a horizontal row of squares (``sigma_a`` is one long
cycle) whose vertical gluings ``sigma_b`` are short cycles of length 3 or 5.
Even zeros come from blocks of 3-cycles; a pair of odd zeros uses one extra
5-cycle.  Blocks are cut open along their left edge and glued in a row, and
the final block carries ``l - 1`` additional squares.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .origami import Origami
from .perm import Permutation


class StratumParityError(ValueError):
    pass


PARITY_RULE = "the number of odd entries of a stratum must be even"


def _three_cycles(start: int, k: int) -> list[tuple[int, ...]]:
    """``(start, start+1, start+2)(start+3, ...)``: k consecutive 3-cycles, 1-based."""
    return [(start + 3 * i, start + 3 * i + 1, start + 3 * i + 2) for i in range(k)]


def even_block_cycles(alpha: int) -> tuple[int, list[tuple[int, ...]]]:
    """Length and ``sigma_b`` cycles (1-based, unshifted) of the even block."""
    k = alpha // 2
    return 3 * k + 1, _three_cycles(1, k)


def odd_pair_block_cycles(alpha1: int, alpha2: int) -> tuple[int, list[tuple[int, ...]]]:
    k1 = (alpha1 - 1) // 2
    k2 = (alpha2 - 1) // 2
    base = 3 * k1
    cycles = _three_cycles(1, k1)
    cycles.append((base + 1, base + 5, base + 2, base + 3, base + 4))
    cycles += _three_cycles(base + 6, k2)
    return 3 * (k1 + k2) + 6, cycles


def _check_even(alpha: int) -> None:
    if alpha < 2 or alpha % 2:
        raise ValueError(f"expected an even zero order >= 2, got {alpha}")


def _check_odd(alpha: int) -> None:
    if alpha < 1 or alpha % 2 == 0:
        raise ValueError(f"expected an odd zero order >= 1, got {alpha}")


def _check_l(l: int) -> None:
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")


def _one_cylinder(d: int, cycles: Sequence[Sequence[int]]) -> Origami:
    sigma_a = Permutation([(i + 1) % d for i in range(d)])
    return Origami(sigma_a, Permutation.from_cycles(cycles, d))


def build_even(alpha: int, l: int = 1) -> Origami:
    _check_even(alpha)
    _check_l(l)
    n, cycles = even_block_cycles(alpha)
    return _one_cylinder(n + l - 1, cycles)


def build_odd_pair(alpha1: int, alpha2: int, l: int = 1) -> Origami:
    _check_odd(alpha1)
    _check_odd(alpha2)
    _check_l(l)
    n, cycles = odd_pair_block_cycles(alpha1, alpha2)
    return _one_cylinder(n + l - 1, cycles)


@dataclass(frozen=True)
class BuildSpec:
    """Block layout of the glued origami.

    ``block_lengths`` holds one entry per glued block (an even zero or an
    odd pair), ``offsets`` the number of squares before each block, and
    ``L`` the total square count including the ``l - 1`` trailing squares.
    """

    evens: tuple[int, ...]
    odd_pairs: tuple[tuple[int, int], ...]
    l: int
    block_lengths: tuple[int, ...] = field(init=False)
    offsets: tuple[int, ...] = field(init=False)
    L: int = field(init=False)

    def __post_init__(self):
        lengths = [3 * a // 2 + 1 for a in self.evens]
        lengths += [3 * (a1 + a2) // 2 + 3 for a1, a2 in self.odd_pairs]
        offsets, acc = [], 0
        for s in lengths:
            offsets.append(acc)
            acc += s
        object.__setattr__(self, "block_lengths", tuple(lengths))
        object.__setattr__(self, "offsets", tuple(offsets))
        # the empty stratum is the l-square torus cover
        object.__setattr__(self, "L", acc + self.l - 1 if lengths else self.l)

    @property
    def p(self) -> int:
        return len(self.evens)

    @property
    def q(self) -> int:
        return len(self.odd_pairs)

    @classmethod
    def from_stratum(cls, alphas: Sequence[int], l: int) -> "BuildSpec":
        """Split ``alphas`` into evens and consecutive odd pairs, keeping input order."""
        _check_l(l)
        alphas = [int(a) for a in alphas]
        if any(a < 1 for a in alphas):
            raise ValueError(f"stratum entries must be >= 1: {alphas}")
        evens = tuple(a for a in alphas if a % 2 == 0)
        odds = [a for a in alphas if a % 2 == 1]
        if len(odds) % 2:
            raise StratumParityError(f"{tuple(alphas)}: {PARITY_RULE}")
        pairs = tuple((odds[i], odds[i + 1]) for i in range(0, len(odds), 2))
        return cls(evens, pairs, l)


def expected_size(alphas: Sequence[int], l: int) -> int:
    """``3/2 sum(alpha) + p + 3q + l - 1`` squares (``l`` for the empty stratum)."""
    return BuildSpec.from_stratum(alphas, l).L


def build_stratum_origami(alphas: Sequence[int], l: int = 1) -> Origami:
    """The glued one-cylinder origami whose stratum is ``alphas``."""
    spec = BuildSpec.from_stratum(alphas, l)
    if not spec.block_lengths:
        return Origami.torus(l)
    cycles: list[tuple[int, ...]] = []
    blocks = [even_block_cycles(a) for a in spec.evens]
    blocks += [odd_pair_block_cycles(a1, a2) for a1, a2 in spec.odd_pairs]
    for (_, block), shift in zip(blocks, spec.offsets):
        cycles += [tuple(x + shift for x in c) for c in block]
    return _one_cylinder(spec.L, cycles)
