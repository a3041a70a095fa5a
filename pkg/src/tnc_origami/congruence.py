"""Congruence-property checks for finite-index subgroups of SL(2,Z).

Two independent routes:

* finite closures of the generators modulo n (brute force, bounded n), and
* parabolic certificates: matrices ``A T^m A^-1`` known to lie in the group.
  If for every prime p two such elements have first columns that are not
  proportional mod p and exponents prime to p, the group surjects onto
  every SL(2, Z/nZ), i.e. it is totally non-congruence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from sympy import isprime, primefactors

from .sl2 import (
    DEFAULT_CLOSURE_CAP,
    IDENTITY,
    MINUS_IDENTITY,
    S,
    T,
    T_PRIME,
    ClosureCapError,
    MatZ,
    group_closure_mod,
    reduce_mod,
    sl2_order_mod,
)
from .veech import CosetGraph, contains_matrix, cusp_data, stabilizer_generators, veech_index

PROVENANCES = ("horizontal", "vertical", "diagonal", "harvested", "user")


@dataclass(frozen=True)
class ParabolicWitness:
    """Claims ``A T^m A^-1`` lies in the group."""

    A: MatZ
    m: int
    provenance: str = "user"

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("witness exponent must be positive")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def element(self) -> MatZ:
        return self.A.conjugate(T**self.m)

    def to_dict(self) -> dict:
        return {"A": self.A.rows(), "m": self.m, "provenance": self.provenance}

    @classmethod
    def from_dict(cls, data: dict) -> "ParabolicWitness":
        return cls(MatZ.from_rows(data["A"]), int(data["m"]), data.get("provenance", "user"))


def column_det(A1: MatZ, A2: MatZ) -> int:
    """det of the 2x2 matrix with columns ``A1 e1`` and ``A2 e1``."""
    return A1.a * A2.c - A1.c * A2.a


def condition_A_holds(A1: MatZ, A2: MatZ, p: int) -> bool:
    """``A1 e1`` is not a multiple of ``A2 e1`` modulo the prime ``p``.

    Both columns are nonzero mod p (they are columns of unimodular
    matrices), and two nonzero vectors over F_p are proportional iff their
    determinant vanishes.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return column_det(A1, A2) % p != 0


def standard_witnesses(L: int, q: int) -> list[ParabolicWitness]:
    """The three cylinder witnesses of a glued one-cylinder origami.

    Horizontal: one cylinder of length L.  Vertical: cylinders of length
    1, 3, 5, so ``T'^15``, written as ``S T^15 S^-1 = T'^-15``.  Diagonal:
    cylinders of length L - 4q and 2, conjugated by T'.
    """
    if L <= 4 * q or q < 0:
        raise ValueError(f"need L > 4q >= 0, got L={L}, q={q}")
    return [
        ParabolicWitness(IDENTITY, L, "horizontal"),
        ParabolicWitness(S, 15, "vertical"),
        ParabolicWitness(T_PRIME, 2 * (L - 4 * q), "diagonal"),
    ]


@dataclass
class TncCertificate:
    witnesses: list[ParabolicWitness]
    pair_dets: dict[tuple[int, int], int] = field(default_factory=dict)
    checked_primes: dict[int, tuple[int, int] | None] = field(default_factory=dict)
    valid: bool | None = None
    reason: str | None = None

    @property
    def verdict(self) -> str:
        if self.valid is None:
            return "unchecked"
        return "valid" if self.valid else "invalid"

    def to_dict(self) -> dict:
        return {
            "witnesses": [w.to_dict() for w in self.witnesses],
            "pair_dets": {f"{i},{j}": D for (i, j), D in sorted(self.pair_dets.items())},
            "checked_primes": {
                str(p): (list(pair) if pair is not None else None)
                for p, pair in sorted(self.checked_primes.items())
            },
            "verdict": self.verdict,
            "reason": self.reason,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TncCertificate":
        return cls([ParabolicWitness.from_dict(w) for w in data["witnesses"]])


def verify_certificate(cert: TncCertificate | Sequence[ParabolicWitness]) -> TncCertificate:
    """Check the per-prime conditions and fill in the certificate's verdict.

    Only finitely many primes need an explicit check: those dividing some
    exponent, and those dividing every nonzero pair determinant.  Any other
    prime is handled by a pair with nonzero determinant it does not divide.
    """
    if not isinstance(cert, TncCertificate):
        cert = TncCertificate(list(cert))
    ws = cert.witnesses
    if not ws:
        raise ValueError("a certificate needs at least one witness")
    dets = {(i, j): column_det(ws[i].A, ws[j].A) for i, j in combinations(range(len(ws)), 2)}
    cert.pair_dets = dets
    cert.checked_primes = {}
    nonzero = [D for D in dets.values() if D != 0]
    if not nonzero:
        cert.valid = False
        cert.reason = "all witness pairs have proportional first columns (every pair determinant is 0)"
        return cert

    primes: set[int] = set()
    for w in ws:
        primes.update(primefactors(w.m))
    primes.update(primefactors(math.gcd(*nonzero)))

    failed = []
    for p in sorted(primes):
        found = None
        for (i, j), D in dets.items():
            if ws[i].m % p and ws[j].m % p and D % p:
                found = (i, j)
                break
        cert.checked_primes[p] = found
        if found is None:
            failed.append(p)
    cert.valid = not failed
    cert.reason = None if not failed else f"no witness pair works at p = {', '.join(map(str, failed))}"
    return cert


def deficiency_criterion(
    C1: MatZ, m1: int, m1p: int, C2: MatZ, m2: int, m2p: int
) -> tuple[bool, TncCertificate | None]:
    """Coprime-product criterion; on success also returns the equivalent certificate
    with witnesses ``(C1, m1), (C1 S, m1'), (C2, m2), (C2 S, m2')``."""
    if min(m1, m1p, m2, m2p) < 1:
        raise ValueError("exponents must be positive")
    if math.gcd(m1 * m1p, m2 * m2p) != 1:
        return False, None
    cert = TncCertificate(
        [
            ParabolicWitness(C1, m1, "user"),
            ParabolicWitness(C1 * S, m1p, "user"),
            ParabolicWitness(C2, m2, "user"),
            ParabolicWitness(C2 * S, m2p, "user"),
        ]
    )
    return True, verify_certificate(cert)


def image_is_full_mod(
    gens: Iterable[MatZ],
    n: int,
    include_minus_identity: bool = True,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> bool:
    """Does the group generated by ``gens`` (and -I by default) map onto SL(2, Z/nZ)?"""
    target = sl2_order_mod(n)
    if target > cap:
        raise ClosureCapError(f"|SL(2,Z/{n}Z)| = {target} exceeds cap {cap}")
    gens = list(gens)
    if include_minus_identity:
        gens.append(MINUS_IDENTITY)
    reduced = list(dict.fromkeys(reduce_mod(g, n) for g in gens))
    return group_closure_mod(reduced, n, cap=cap, stop_at=target) == target


def image_index_mod(gens: Iterable[MatZ], n: int, cap: int = DEFAULT_CLOSURE_CAP) -> int:
    """Index of the image of ``<gens>`` in SL(2, Z/nZ)."""
    reduced = list(dict.fromkeys(reduce_mod(g, n) for g in gens))
    return sl2_order_mod(n) // group_closure_mod(reduced, n, cap=cap)


class CongruenceVerdict(str, Enum):
    CONGRUENCE = "congruence"
    NON_CONGRUENCE = "non_congruence"
    UNDECIDED = "undecided(cap)"


def is_congruence_at_level(
    g: CosetGraph,
    cap: int = DEFAULT_CLOSURE_CAP,
    certificate: TncCertificate | None = None,
) -> CongruenceVerdict:
    """Congruence test at the generalized level (lcm of cusp widths).

    The group is congruence iff it contains the principal congruence
    subgroup of that level, iff its image mod the level has the same index
    as the group itself.  The group's own generators are used, without -I.

    A valid certificate means the image mod the level is everything, so any
    group of index > 1 is then non-congruence without a closure run.
    """
    _, level = cusp_data(g)
    index = veech_index(g)
    if certificate is not None:
        if certificate.valid is None:
            verify_certificate(certificate)
        if certificate.valid:
            return CongruenceVerdict.CONGRUENCE if index == 1 else CongruenceVerdict.NON_CONGRUENCE
    if sl2_order_mod(level) > cap:
        return CongruenceVerdict.UNDECIDED
    image_index = image_index_mod(stabilizer_generators(g), level, cap=cap)
    if image_index == index:
        return CongruenceVerdict.CONGRUENCE
    return CongruenceVerdict.NON_CONGRUENCE


def witness_in_group(g: CosetGraph, w: ParabolicWitness) -> bool:
    return contains_matrix(g, w.element())
