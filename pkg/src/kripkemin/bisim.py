"""Bounded and full bisimulation equivalence via partition refinement.

The central object is the refinement sequence P0, P1, ..., Pk over the world
set of one model: P0 groups worlds by their exact atomic valuation, and each
Ph+1 splits the blocks of Ph by the per-index sets of Ph-blocks reachable in
one step.  Two worlds share a block of Ph exactly when they are equivalent to
depth h, so the whole ladder of depth-bounded equivalences comes out of one
pass.  Iterating to a fixpoint yields unbounded bisimilarity.

Cross-model questions are answered on a disjoint union of the two models
with renamed worlds, which realizes the two-model definition without a
second code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import InputError
from .model import PointedModel

# Partitions are stored as world -> block id maps; block ids are assigned in
# canonical order (by the order-least member of each block), so equal
# partitions get identical numberings and results are deterministic.
Partition = Mapping[str, int]


@dataclass(frozen=True)
class PartitionSequence:
    """The chain P0, P1, ..., Pk of successively finer world partitions.

    ``levels[h]`` maps each world to its block id at level h.  Once two
    consecutive levels coincide the partition has stabilized; the remaining
    levels repeat it, and ``stable_level`` records the first stable index
    (``None`` if stability was not reached within k).
    """

    k: int
    levels: tuple[Partition, ...]
    stable_level: int | None = field(default=None)

    def block_id(self, world: str, h: int) -> int:
        return self.levels[h][world]

    def same_block(self, w: str, v: str, h: int) -> bool:
        """True iff ``w`` and ``v`` are equivalent to depth ``h``."""
        lvl = self.levels[h]
        return lvl[w] == lvl[v]

    def blocks(self, h: int) -> tuple[frozenset[str], ...]:
        """The level-h blocks in canonical order."""
        by_id: dict[int, set[str]] = {}
        for w, b in self.levels[h].items():
            by_id.setdefault(b, set()).add(w)
        return tuple(frozenset(by_id[b]) for b in sorted(by_id))

    def block_count(self, h: int) -> int:
        return len(set(self.levels[h].values()))


def _canonical_ids(m: PointedModel, signature: dict[str, object]) -> dict[str, int]:
    groups: dict[object, list[str]] = {}
    for w in m.worlds:
        groups.setdefault(signature[w], []).append(w)
    ordered = sorted(groups.values(), key=lambda ws: min(m.position[w] for w in ws))
    ids: dict[str, int] = {}
    for bid, ws in enumerate(ordered):
        for w in ws:
            ids[w] = bid
    return ids


def refine(m: PointedModel, k: int) -> PartitionSequence:
    """Signature refinement producing the full level sequence P0..Pk.

    Stops splitting once a level equals its predecessor and replicates the
    stable partition up to level k.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    indices = sorted(m.relations)
    sig0: dict[str, object] = {w: m.atoms_at(w) for w in m.worlds}
    levels = [_canonical_ids(m, sig0)]
    stable = None
    for h in range(1, k + 1):
        prev = levels[-1]
        sig: dict[str, object] = {
            w: (prev[w], tuple(frozenset(prev[v] for v in m._succ[i][w]) for i in indices))
            for w in m.worlds
        }
        nxt = _canonical_ids(m, sig)
        if len(set(nxt.values())) == len(set(prev.values())):
            # splitting only refines, so equal block counts mean a fixpoint
            stable = h - 1
            levels.extend([prev] * (k - h + 1))
            break
        levels.append(nxt)
    return PartitionSequence(k=k, levels=tuple(levels), stable_level=stable)


def refine_full(m: PointedModel) -> PartitionSequence:
    """Refine until the partition stabilizes: the fixpoint is unbounded
    bisimilarity.  At most ``|W| - 1`` splits can happen, so the fixpoint is
    always reached within ``len(worlds)`` levels."""
    ps = refine(m, len(m.worlds))
    assert ps.stable_level is not None
    return ps


def disjoint_union(a: PointedModel, b: PointedModel) -> tuple[PointedModel, dict[str, str], dict[str, str]]:
    """Combine two models over renamed, disjoint world sets.

    Returns the union model plus the two renaming maps.  Indices present in
    only one model get an empty relation on the other side, which matches
    the convention that a missing modality has no successors.
    """
    ra = {w: f"a.{w}" for w in a.worlds}
    rb = {w: f"b.{w}" for w in b.worlds}
    indices = set(a.relations) | set(b.relations)
    atoms = set(a.valuation) | set(b.valuation)
    union = PointedModel(
        worlds=tuple(ra[w] for w in a.worlds) + tuple(rb[w] for w in b.worlds),
        relations={
            i: {(ra[u], ra[v]) for (u, v) in a.relations.get(i, frozenset())}
               | {(rb[u], rb[v]) for (u, v) in b.relations.get(i, frozenset())}
            for i in indices
        },
        valuation={
            p: {ra[w] for w in a.valuation.get(p, frozenset())}
               | {rb[w] for w in b.valuation.get(p, frozenset())}
            for p in atoms
        },
        designated=ra[a.designated],
    )
    return union, ra, rb


def k_bisimilar(a: PointedModel, b: PointedModel, k: int) -> bool:
    """True iff the designated worlds are equivalent to depth ``k``."""
    union, ra, rb = disjoint_union(a, b)
    ps = refine(union, k)
    return ps.same_block(ra[a.designated], rb[b.designated], k)


def bisimilar(a: PointedModel, b: PointedModel) -> bool:
    """True iff the designated worlds are bisimilar (no depth bound)."""
    union, ra, rb = disjoint_union(a, b)
    ps = refine_full(union)
    return ps.same_block(ra[a.designated], rb[b.designated], ps.k)
