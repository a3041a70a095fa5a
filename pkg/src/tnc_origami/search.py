"""Choosing the tail length ``l`` so that the glued origami is certifiably
totally non-congruence, plus harvesting parabolic witnesses from cylinder
decompositions in other directions."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from sympy import isprime

from .builders import BuildSpec
from .congruence import ParabolicWitness
from .origami import DEFAULT_CONVENTION, ActionConvention, Origami, apply_word, cylinders
from .sl2 import IDENTITY, S, MatZ, Word, evaluate

log = logging.getLogger(__name__)

MAX_L = 2**63 - 1

Q_ZERO_DIAGNOSTIC = (
    "stratum has no odd entries (q = 0): the condition gcd(L, 30q) = gcd(L, 0) = L "
    "can only hold for L = 1, so no l is accepted"
)


@dataclass(frozen=True)
class SearchResult:
    stratum: tuple[int, ...]
    l: int
    L: int
    q: int
    gcd_L_30q: int
    rem3: int  # (L - 4q) mod 3
    rem5: int  # (L - 4q) mod 5
    is_prime: bool | None = None

    @property
    def accepted(self) -> bool:
        return self.gcd_L_30q == 1 and self.rem3 != 0 and self.rem5 != 0

    def to_dict(self) -> dict:
        return {
            "stratum": list(self.stratum),
            "l": self.l,
            "L": self.L,
            "q": self.q,
            "conditions": {
                "gcd_L_30q": self.gcd_L_30q,
                "L_minus_4q_mod_3": self.rem3,
                "L_minus_4q_mod_5": self.rem5,
                "L_is_prime": self.is_prime,
            },
            "accepted": self.accepted,
        }


class SearchResults(list):
    """A list of results that may carry a diagnostic explaining why it is empty."""

    def __init__(self, items=(), diagnostic: str | None = None):
        super().__init__(items)
        self.diagnostic = diagnostic


def check_conditions(L: int, q: int) -> bool:
    """``gcd(L, 30q) = 1`` and neither 3 nor 5 divides ``L - 4q``."""
    if L <= 0 or q < 0:
        raise ValueError("need L > 0 and q >= 0")
    return math.gcd(L, 30 * q) == 1 and (L - 4 * q) % 3 != 0 and (L - 4 * q) % 5 != 0


def _result(alphas, spec: BuildSpec, with_prime: bool = False) -> SearchResult:
    L, q = spec.L, spec.q
    return SearchResult(
        stratum=tuple(alphas),
        l=spec.l,
        L=L,
        q=q,
        gcd_L_30q=math.gcd(L, 30 * q),
        rem3=(L - 4 * q) % 3,
        rem5=(L - 4 * q) % 5,
        is_prime=bool(isprime(L)) if with_prime else None,
    )


def find_l(alphas: Sequence[int], l_max: int) -> SearchResults:
    """All ``l`` in ``1..l_max`` whose square count passes :func:`check_conditions`."""
    spec = BuildSpec.from_stratum(alphas, 1)
    if spec.q == 0:
        log.warning(Q_ZERO_DIAGNOSTIC)
        return SearchResults(diagnostic=Q_ZERO_DIAGNOSTIC)
    out = SearchResults()
    for l in range(1, l_max + 1):
        spec_l = BuildSpec(spec.evens, spec.odd_pairs, l)
        if check_conditions(spec_l.L, spec_l.q):
            out.append(_result(alphas, spec_l))
    return out


def prime_residues(q: int) -> tuple[int, int]:
    """Target residues of L mod 3 and mod 5: ``4q+1`` unless that is 0, else ``4q+2``."""
    r3 = (4 * q + 1) % 3 or (4 * q + 2) % 3
    r5 = (4 * q + 1) % 5 or (4 * q + 2) % 5
    return r3, r5


def find_prime_l(alphas: Sequence[int], count: int, max_L: int = MAX_L) -> SearchResults:
    """The first ``count`` values of ``l`` making ``L`` a prime above ``4q`` in
    the prescribed classes mod 3 and 5.

    If the scan passes ``max_L`` first, the partial list is returned with a
    diagnostic.
    """
    spec = BuildSpec.from_stratum(alphas, 1)
    q = spec.q
    if q == 0:
        raise ValueError(Q_ZERO_DIAGNOSTIC)
    r3, r5 = prime_residues(q)
    # L = offset + l with l >= 1
    offset = spec.L - 1
    r15 = next(x for x in range(15) if x % 3 == r3 and x % 5 == r5)
    L = max(offset + 1, 4 * q + 1)
    L += (r15 - L) % 15
    out = SearchResults()
    while len(out) < count:
        if L > max_L:
            out.diagnostic = f"scan exhausted at L > {max_L} after {len(out)} results"
            log.warning(out.diagnostic)
            break
        if isprime(L):
            spec_l = BuildSpec(spec.evens, spec.odd_pairs, L - offset)
            out.append(_result(alphas, spec_l, with_prime=True))
        L += 15
    return out


# --------------------------------------------------------------------------
# harvesting


def _normal_witness_matrix(A: MatZ) -> MatZ:
    """A simple representative of ``{±A T^k}``; ``A T^m A^-1`` only depends on
    the first column of ``A`` up to sign."""
    a, c = A.a, A.c
    if a < 0 or (a == 0 and c < 0):
        a, c = -a, -c
    b, d = (A.b, A.d) if (a, c) == (A.a, A.c) else (-A.b, -A.d)
    # all completions are (b + k a, d + k c); pick the smallest one
    if a or c:
        k0 = -round((b * a + d * c) / (a * a + c * c))
        best = min(
            ((b + k * a, d + k * c) for k in range(k0 - 2, k0 + 3)),
            key=lambda bd: (abs(bd[0]) + abs(bd[1]), abs(bd[0]), -bd[1], bd[0]),
        )
        b, d = best
    return MatZ(a, b, c, d)


def _words_up_to(radius: int) -> list[Word]:
    letters = [Word([("S", 1)]), Word([("S", -1)]), Word([("T", 1)]), Word([("T", -1)])]
    seen = {IDENTITY}
    out = [Word()]
    frontier = [Word()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in letters:
                wx = w * x
                m = evaluate(wx)
                if m in seen:
                    continue
                seen.add(m)
                out.append(wx)
                nxt.append(wx)
        frontier = nxt
    return out


def harvest_parabolics(
    o: Origami,
    radius: int = 1,
    convention: ActionConvention | str = DEFAULT_CONVENTION,
) -> list[ParabolicWitness]:
    """Cylinder witnesses in the directions ``B e1`` and ``B e2`` for every
    ``B`` given by an S/T word of length at most ``radius``.

    If ``B^-1 o`` has horizontal cylinders of lengths ``m_i`` then
    ``B T^lcm(m_i) B^-1`` is in the Veech group of ``o``; vertical cylinders
    give ``(B S) T^m (B S)^-1`` in the same way.
    """
    found: dict[tuple[int, int], ParabolicWitness] = {}
    order: list[tuple[int, int]] = []
    for w in _words_up_to(radius):
        B = evaluate(w)
        ob = apply_word(o, w.inverse(), convention)
        for direction, A in (("horizontal", B), ("vertical", B * S)):
            m = math.lcm(*cylinders(ob, direction).lengths)
            A = _normal_witness_matrix(A)
            if w:
                prov = "harvested"
            else:
                prov = direction
            if (A.a, A.c) == (1, 1) and prov == "harvested":
                prov = "diagonal"
            key = (A.a, A.c)
            if key not in found:
                order.append(key)
                found[key] = ParabolicWitness(A, m, prov)
            elif m < found[key].m:
                found[key] = ParabolicWitness(A, m, found[key].provenance)
    return [found[k] for k in order]
