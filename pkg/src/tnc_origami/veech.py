"""Veech groups of origamis as stabilizers in SL(2,Z).

The SL(2,Z)-orbit of an origami is finite; a breadth-first search over
canonical forms gives the coset graph, whose S- and T-edges are the
permutation representation of SL(2,Z) on cosets of the Veech group.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

from .origami import (
    DEFAULT_CONVENTION,
    ActionConvention,
    Origami,
    apply_generator,
    canonical_form,
    canonical_key,
)
from .perm import Permutation
from .sl2 import IDENTITY, MINUS_IDENTITY, MatZ, Word, decompose_word, evaluate

DEFAULT_ORBIT_CAP = 10**6

_BFS_ORDER = (("S", Word([("S", 1)])), ("S^-1", Word([("S", -1)])),
              ("T", Word([("T", 1)])), ("T^-1", Word([("T", -1)])))


class OrbitCapError(RuntimeError):
    def __init__(self, cap: int, found: int):
        super().__init__(f"orbit exceeded cap of {cap} vertices ({found} found so far)")
        self.cap = cap
        self.found = found


@dataclass
class CosetGraph:
    vertices: list[Origami]
    s_edges: tuple[int, ...]
    t_edges: tuple[int, ...]
    tree_words: list[Word]
    convention: ActionConvention = DEFAULT_CONVENTION
    base: int = 0
    _s_inv: tuple[int, ...] = field(default=(), repr=False)
    _t_cycle: list[tuple[int, int]] = field(default_factory=list, repr=False)
    _t_cycles: list[tuple[int, ...]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        s_inv = [0] * len(self.s_edges)
        for v, w in enumerate(self.s_edges):
            s_inv[w] = v
        self._s_inv = tuple(s_inv)
        cycles = Permutation(self.t_edges).cycles(singletons=True)
        self._t_cycles = cycles
        self._t_cycle = [(0, 0)] * len(self.t_edges)
        for ci, cyc in enumerate(cycles):
            for pos, v in enumerate(cyc):
                self._t_cycle[v] = (ci, pos)

    def __len__(self) -> int:
        return len(self.vertices)

    def act(self, v: int, w: Word) -> int:
        """Vertex reached from ``v`` under ``w`` (rightmost syllable first)."""
        for letter, exp in reversed(w):
            if letter == "T":
                ci, pos = self._t_cycle[v]
                cyc = self._t_cycles[ci]
                v = cyc[(pos + exp) % len(cyc)]
            else:
                table = self.s_edges if exp > 0 else self._s_inv
                for _ in range(abs(exp)):
                    v = table[v]
        return v

    def t_cycles(self) -> list[tuple[int, ...]]:
        return list(self._t_cycles)

    def to_dot(self) -> str:
        lines = ["digraph coset_graph {"]
        for v in range(len(self)):
            shape = ' [shape=doublecircle]' if v == self.base else ""
            lines.append(f"  v{v}{shape};")
        for v, w in enumerate(self.s_edges):
            lines.append(f'  v{v} -> v{w} [label="S", style=solid];')
        for v, w in enumerate(self.t_edges):
            lines.append(f'  v{v} -> v{w} [label="T", style=dashed];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def orbit_coset_graph(
    o: Origami,
    cap: int = DEFAULT_ORBIT_CAP,
    convention: ActionConvention | str = DEFAULT_CONVENTION,
) -> CosetGraph:
    """Breadth-first orbit of ``o`` under S, S^-1, T, T^-1 (in that order)."""
    conv = ActionConvention(convention)
    base = canonical_form(o)
    index = {base.key(): 0}
    vertices = [base]
    words = [Word()]
    s_edges: list[int] = []
    t_edges: list[int] = []
    queue = deque([0])
    # edges are filled in BFS order, which equals vertex order
    while queue:
        v = queue.popleft()
        vert = vertices[v]
        for g, gw in _BFS_ORDER:
            img = apply_generator(vert, g, conv)
            key = canonical_key(img)
            w = index.get(key)
            if w is None:
                if len(vertices) >= cap:
                    raise OrbitCapError(cap, len(vertices))
                w = len(vertices)
                index[key] = w
                vertices.append(Origami(_perm(key[0]), _perm(key[1]), check=False))
                words.append(gw * words[v])
                queue.append(w)
            if g == "S":
                s_edges.append(w)
            elif g == "T":
                t_edges.append(w)
    return CosetGraph(vertices, tuple(s_edges), tuple(t_edges), words, conv)


def _perm(images) -> Permutation:
    return Permutation(images)


def veech_index(g: CosetGraph) -> int:
    return len(g.vertices)


def stabilizer_generators(g: CosetGraph) -> list[MatZ]:
    """Schreier generators ``tree[w]^-1 * x * tree[v]`` for every edge v -x-> w.

    Trivial ones (tree edges) are dropped and duplicates removed, keeping
    first occurrence.
    """
    out: list[MatZ] = []
    seen = set()
    mats = [evaluate(w) for w in g.tree_words]
    inv_mats = [m.inverse() for m in mats]
    S = evaluate(Word([("S", 1)]))
    T = evaluate(Word([("T", 1)]))
    for edges, x in ((g.s_edges, S), (g.t_edges, T)):
        for v, w in enumerate(edges):
            h = inv_mats[w] * x * mats[v]
            if h == IDENTITY or h in seen:
                continue
            seen.add(h)
            out.append(h)
    return out


def stabilizer_generator_words(g: CosetGraph) -> list[Word]:
    """The Schreier generators as words (not deduplicated)."""
    out = []
    for edges, x in ((g.s_edges, Word([("S", 1)])), (g.t_edges, Word([("T", 1)]))):
        for v, w in enumerate(edges):
            h = g.tree_words[w].inverse() * x * g.tree_words[v]
            if h:
                out.append(h)
    return out


def contains_matrix(g: CosetGraph, m: MatZ) -> bool:
    return g.act(g.base, decompose_word(m)) == g.base


def cusp_data(g: CosetGraph) -> tuple[list[int], int]:
    widths = sorted(len(c) for c in g.t_cycles())
    return widths, math.lcm(*widths)


@dataclass
class VeechData:
    index: int
    generators: list[MatZ]
    cusp_widths: list[int]
    level: int
    convention: ActionConvention
    contains_minus_identity: bool

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "generators": [m.rows() for m in self.generators],
            "generator_count": len(self.generators),
            "cusp_widths": self.cusp_widths,
            "level": self.level,
            "convention": self.convention.value,
            "contains_minus_identity": self.contains_minus_identity,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def veech_data(g: CosetGraph) -> VeechData:
    widths, level = cusp_data(g)
    return VeechData(
        index=veech_index(g),
        generators=stabilizer_generators(g),
        cusp_widths=widths,
        level=level,
        convention=g.convention,
        contains_minus_identity=contains_matrix(g, MINUS_IDENTITY),
    )
