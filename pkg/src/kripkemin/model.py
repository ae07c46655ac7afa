"""Finite pointed multi-modal Kripke models.

A model is a finite set of worlds, one accessibility relation per modality
index, a valuation assigning each atomic proposition the set of worlds where
it holds, and a designated world at which formulas are evaluated.  The order
of the ``worlds`` tuple is meaningful: it is the default total order used by
every construction that needs to break ties between worlds.

All values are immutable after construction and every operation in this
module is a pure function, so everything here is safe to share across
threads.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Mapping

from .errors import InputError, InvalidModelError

#: Depth marker for worlds with no path from the designated world.
UNREACHABLE = math.inf

#: Bound marker for unreachable worlds.
NEG_INF = -math.inf


def _freeze_relations(relations) -> dict[str, frozenset[tuple[str, str]]]:
    return {str(i): frozenset((str(u), str(v)) for (u, v) in edges)
            for i, edges in relations.items()}


def _freeze_valuation(valuation) -> dict[str, frozenset[str]]:
    # Atoms with empty extension behave exactly like absent atoms (false
    # everywhere), so they are normalized away; this keeps serialization
    # round trips exact.
    out = {}
    for p, ws in valuation.items():
        ws = frozenset(str(w) for w in ws)
        if ws:
            out[str(p)] = ws
    return out


@dataclass(frozen=True)
class PointedModel:
    """A finite multi-modal Kripke model with a designated world.

    ``worlds`` is an ordered tuple of distinct identifiers; its order defines
    the default total order on worlds.  ``relations`` maps each modality
    index to a set of directed edges, ``valuation`` maps each atom to the set
    of worlds where it holds, and ``designated`` names the evaluation point.
    """

    worlds: tuple[str, ...]
    relations: Mapping[str, frozenset[tuple[str, str]]]
    valuation: Mapping[str, frozenset[str]]
    designated: str

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(str(w) for w in self.worlds))
        object.__setattr__(self, "relations", _freeze_relations(self.relations))
        object.__setattr__(self, "valuation", _freeze_valuation(self.valuation))
        object.__setattr__(self, "designated", str(self.designated))
        if not self.worlds:
            raise InvalidModelError("world set must be non-empty")
        seen = set(self.worlds)
        if len(seen) != len(self.worlds):
            raise InvalidModelError("duplicate world identifiers")
        if self.designated not in seen:
            raise InvalidModelError(f"designated world {self.designated!r} is not a world")
        for i, edges in self.relations.items():
            for (u, v) in edges:
                if u not in seen or v not in seen:
                    raise InvalidModelError(f"edge ({u!r}, {v!r}) of index {i!r} has an endpoint outside the world set")
        for p, ws in self.valuation.items():
            for w in ws:
                if w not in seen:
                    raise InvalidModelError(f"valuation of {p!r} contains unknown world {w!r}")

    @cached_property
    def position(self) -> dict[str, int]:
        """World -> index in the default total order."""
        return {w: n for n, w in enumerate(self.worlds)}

    @cached_property
    def _succ(self) -> dict[str, dict[str, tuple[str, ...]]]:
        out = {i: {w: [] for w in self.worlds} for i in self.relations}
        for i, edges in self.relations.items():
            for (u, v) in sorted(edges, key=lambda e: (self.position[e[0]], self.position[e[1]])):
                out[i][u].append(v)
        return {i: {w: tuple(vs) for w, vs in per.items()} for i, per in out.items()}

    def successors(self, index: str, world: str) -> tuple[str, ...]:
        """Successors of ``world`` along ``index``, in world order."""
        if index not in self.relations:
            raise InputError(f"unknown modality index {index!r}")
        if world not in self.position:
            raise InputError(f"unknown world {world!r}")
        return self._succ[index][world]

    def atoms_at(self, world: str) -> frozenset[str]:
        """The set of atoms true at ``world``."""
        if world not in self.position:
            raise InputError(f"unknown world {world!r}")
        return frozenset(p for p, ws in self.valuation.items() if world in ws)

    @property
    def world_count(self) -> int:
        return len(self.worlds)

    @property
    def edge_count(self) -> int:
        """Total number of edges over all modality indices."""
        return sum(len(edges) for edges in self.relations.values())

    def indices(self) -> tuple[str, ...]:
        return tuple(sorted(self.relations))

    def atoms(self) -> tuple[str, ...]:
        return tuple(sorted(self.valuation))


@dataclass(frozen=True)
class DepthBoundMap:
    """Per-world depth and bound for a fixed budget ``k``.

    ``depth[w]`` is the length of the shortest path from the designated world
    (``UNREACHABLE`` if there is none) and ``bound[w] = k - depth[w]``
    (``NEG_INF`` when unreachable).  The bound of a world is the equivalence
    level it must preserve for the designated world to stay ``k``-equivalent.
    """

    k: int
    depth: Mapping[str, float] = field(repr=False)
    bound: Mapping[str, float] = field(repr=False)

    def reachable(self, world: str) -> bool:
        return self.depth[world] != UNREACHABLE


def shortest_depths(m: PointedModel) -> dict[str, float]:
    """Breadth-first distances from the designated world over all indices."""
    depth: dict[str, float] = {w: UNREACHABLE for w in m.worlds}
    depth[m.designated] = 0
    queue = deque([m.designated])
    while queue:
        u = queue.popleft()
        for i in m.relations:
            for v in m._succ[i][u]:
                if depth[v] == UNREACHABLE:
                    depth[v] = depth[u] + 1
                    queue.append(v)
    return depth


def compute_depth_bound(m: PointedModel, k: int) -> DepthBoundMap:
    """Depth and bound of every world for budget ``k``.

    Unreachable worlds get depth ``UNREACHABLE`` and bound ``NEG_INF``; they
    are treated by the contraction machinery exactly like worlds of negative
    bound.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    depth = shortest_depths(m)
    bound = {w: (k - d) if d != UNREACHABLE else NEG_INF for w, d in depth.items()}
    return DepthBoundMap(k=k, depth=depth, bound=bound)


def restrict(m: PointedModel, k: int) -> PointedModel:
    """Sub-model on the worlds of depth at most ``k``.

    All edges between surviving worlds are kept and the designated world
    (depth 0) always survives.
    """
    depth = shortest_depths(m)
    keep = {w for w in m.worlds if depth[w] <= k}
    return _submodel(m, keep)


def prune_unreachable(m: PointedModel) -> PointedModel:
    """Sub-model on the worlds reachable from the designated world."""
    depth = shortest_depths(m)
    keep = {w for w in m.worlds if depth[w] != UNREACHABLE}
    return _submodel(m, keep)


def _submodel(m: PointedModel, keep: set[str]) -> PointedModel:
    return PointedModel(
        worlds=tuple(w for w in m.worlds if w in keep),
        relations={i: {(u, v) for (u, v) in edges if u in keep and v in keep}
                   for i, edges in m.relations.items()},
        valuation={p: ws & keep for p, ws in m.valuation.items()},
        designated=m.designated,
    )


def isomorphic(a: PointedModel, b: PointedModel) -> bool:
    """Exact structural equality up to a renaming of worlds.

    The bijection must map designated to designated and preserve every
    relation and the valuation of every atom.  Backtracking search; meant
    for the small models this package works with.
    """
    if a.world_count != b.world_count or a.edge_count != b.edge_count:
        return False
    if set(a.relations) != set(b.relations) or set(a.valuation) != set(b.valuation):
        return False
    if any(len(a.relations[i]) != len(b.relations[i]) for i in a.relations):
        return False

    indices = sorted(a.relations)

    def profile(m: PointedModel, w: str):
        return (
            m.atoms_at(w),
            tuple(len(m._succ[i][w]) for i in indices),
            tuple(sum(1 for (u, v) in m.relations[i] if v == w) for i in indices),
        )

    prof_a = {w: profile(a, w) for w in a.worlds}
    prof_b = {w: profile(b, w) for w in b.worlds}
    if sorted(prof_a.values()) != sorted(prof_b.values()):
        return False

    candidates = {w: [x for x in b.worlds if prof_b[x] == prof_a[w]] for w in a.worlds}
    candidates[a.designated] = [b.designated] if prof_b[b.designated] == prof_a[a.designated] else []

    order = sorted(a.worlds, key=lambda w: (len(candidates[w]), a.position[w]))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(w: str, x: str) -> bool:
        for i in indices:
            for (u, v) in a.relations[i]:
                if u == w and v in mapping and (x, mapping[v]) not in b.relations[i]:
                    return False
                if v == w and u in mapping and (mapping[u], x) not in b.relations[i]:
                    return False
        return True

    def assign(n: int) -> bool:
        if n == len(order):
            return True
        w = order[n]
        for x in candidates[w]:
            if x in used or not consistent(w, x):
                continue
            mapping[w] = x
            used.add(x)
            if assign(n + 1):
                return True
            del mapping[w]
            used.discard(x)
        return False

    return assign(0)
