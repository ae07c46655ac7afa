"""Model contractions: quotients and the rooted depth-bounded constructions.

Two classic quotients come first: the quotient by full bisimilarity and the
quotient by depth-k equivalence ("standard" contractions).  The standard
depth-k quotient preserves depth-k equivalence but is far from minimal.

The rooted constructions exploit the designated world.  A world at depth d
only needs to keep its behaviour to depth k - d (its *bound*) for the
designated world to stay k-equivalent, so a world y can be dropped whenever
some world x of at least equal bound matches y to y's bound (x *represents*
y).  The worlds that survive this pruning are the *maximal representatives*;
the rooted k-contraction has one world per representative class (the class
of a maximal representative at its own bound) and is world-minimal among all
models k-equivalent to the input.  A refinement picks one canonical edge
target per equivalence class of successors (the order-least maximal
representative), which additionally makes the edge set minimal.

Everything here is a pure function of (model, k, order) and therefore
deterministic and thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .bisim import PartitionSequence, refine, refine_full
from .errors import InputError, NoCandidateError, PreconditionError
from .model import (DepthBoundMap, PointedModel, compute_depth_bound,
                    prune_unreachable, restrict)


@dataclass(frozen=True)
class RepresentativeStructure:
    """Representative machinery of a model for a fixed budget ``k``.

    ``max_representatives`` are the worlds of non-negative bound that no
    other world strictly represents, listed in ``order``.  ``repr_class``
    maps each world of non-negative bound to its class at its own bound.
    ``bounds`` and ``levels`` carry the underlying depth/bound map and the
    refinement ladder so that representative lookups need no recomputation.
    """

    k: int
    order: tuple[str, ...]
    max_representatives: tuple[str, ...]
    repr_class: Mapping[str, frozenset[str]]
    bounds: DepthBoundMap = field(repr=False)
    levels: PartitionSequence = field(repr=False)

    def is_max_representative(self, world: str) -> bool:
        return world in self._max_set

    @property
    def _max_set(self) -> frozenset[str]:
        return frozenset(self.max_representatives)


@dataclass(frozen=True)
class ContractionResult:
    """A contracted pointed model plus the world-to-class witness map.

    ``witness`` sends each original world that takes part in the contraction
    to the contraction world standing for it; the designated world of
    ``model`` is always ``witness`` of the original designated world.
    """

    model: PointedModel
    witness: Mapping[str, str]
    mode: str
    k: int | None = None


def _resolve_order(m: PointedModel, order: Sequence[str] | None) -> tuple[str, ...]:
    if order is None:
        return m.worlds
    order = tuple(order)
    if sorted(order) != sorted(m.worlds):
        raise InputError("order must be a permutation of the model's worlds")
    return order


def representative_structure(m: PointedModel, k: int,
                             order: Sequence[str] | None = None) -> RepresentativeStructure:
    """Maximal representatives and representative classes of ``m`` at ``k``.

    A world x represents y when x's bound is at least y's and the two are
    equivalent to depth bound(y); strict representation additionally needs a
    strictly larger bound.  x is a maximal representative when it has a
    non-negative bound and nothing strictly represents it, which by the
    ladder structure is equivalent to: no world of strictly larger bound
    shares x's block at level bound(x).
    """
    order = _resolve_order(m, order)
    db = compute_depth_bound(m, k)
    ps = refine(m, k)

    # per level, the largest bound present in each block
    max_bound_in_block: list[dict[int, float]] = []
    for h in range(k + 1):
        level: dict[int, float] = {}
        for w in m.worlds:
            b = ps.block_id(w, h)
            level[b] = max(level.get(b, float("-inf")), db.bound[w])
        max_bound_in_block.append(level)

    pos = {w: n for n, w in enumerate(order)}
    max_reprs = []
    for w in sorted(m.worlds, key=pos.__getitem__):
        bw = db.bound[w]
        if bw < 0:
            continue
        if max_bound_in_block[int(bw)][ps.block_id(w, int(bw))] == bw:
            max_reprs.append(w)

    repr_class = {
        w: frozenset(v for v in m.worlds
                     if ps.same_block(v, w, int(db.bound[w])))
        for w in m.worlds if db.bound[w] >= 0
    }
    return RepresentativeStructure(
        k=k, order=order, max_representatives=tuple(max_reprs),
        repr_class=repr_class, bounds=db, levels=ps)


def least_representative(rs: RepresentativeStructure, world: str, h: int) -> str:
    """The order-least maximal representative equivalent to ``world`` at
    depth ``h``.

    Raises ``NoCandidateError`` when no maximal representative matches; that
    cannot happen for h <= bound(world), so an empty candidate set signals a
    call outside the machinery's domain.
    """
    if not 0 <= h <= rs.k:
        raise InputError(f"h must be within 0..{rs.k}")
    pos = {w: n for n, w in enumerate(rs.order)}
    best = None
    for v in rs.max_representatives:
        if rs.levels.same_block(v, world, h) and (best is None or pos[v] < pos[best]):
            best = v
    if best is None:
        raise NoCandidateError(
            f"no maximal representative is {h}-equivalent to {world!r}")
    return best


def _class_name(rs: RepresentativeStructure, cls: frozenset[str], bound: int) -> str:
    pos = {w: n for n, w in enumerate(rs.order)}
    least = min(cls, key=pos.__getitem__)
    return f"c({least},{bound})"


def _class_worlds(rs: RepresentativeStructure):
    """One contraction world per representative class of a maximal
    representative.  Returns (name map over class keys, ordered world tuple,
    member map, class key per maximal representative)."""
    pos = {w: n for n, w in enumerate(rs.order)}
    key_of: dict[str, tuple[int, int]] = {}
    members: dict[tuple[int, int], frozenset[str]] = {}
    for x in rs.max_representatives:
        b = int(rs.bounds.bound[x])
        key = (b, rs.levels.block_id(x, b))
        key_of[x] = key
        members.setdefault(key, rs.repr_class[x])
    names = {key: _class_name(rs, cls, key[0]) for key, cls in members.items()}
    ordered = sorted(members, key=lambda key: min(pos[w] for w in members[key]))
    worlds = tuple(names[key] for key in ordered)
    return names, worlds, members, key_of


def _lift_valuation(m: PointedModel, names, key_of) -> dict[str, set[str]]:
    val: dict[str, set[str]] = {p: set() for p in m.valuation}
    for x, key in key_of.items():
        for p, ws in m.valuation.items():
            if x in ws:
                val[p].add(names[key])
    return val


def _witness(rs: RepresentativeStructure, names, key_of) -> dict[str, str]:
    out = {}
    for w in rs.order:
        if rs.bounds.bound[w] >= 0:
            rep = least_representative(rs, w, int(rs.bounds.bound[w]))
            out[w] = names[key_of[rep]]
    return out


def rooted_k_contraction(m: PointedModel, k: int,
                         order: Sequence[str] | None = None) -> ContractionResult:
    """World-minimal contraction preserving depth-k equivalence.

    Worlds are the representative classes of the maximal representatives.
    There is an i-edge from class(x) to class(y) precisely when x has
    positive bound and some i-successor z of x matches y at level
    bound(x) - 1; this closure (rather than plain edge lifting) is what
    keeps dropped worlds' behaviour reachable through their representatives.
    The outcome does not depend on which maximal representative names each
    class.
    """
    rs = representative_structure(m, k, order)
    names, worlds, members, key_of = _class_worlds(rs)
    ps, db = rs.levels, rs.bounds

    # per (level, block): the contraction worlds of the maximal
    # representatives lying in that block
    targets: dict[tuple[int, int], frozenset[str]] = {}

    def targets_at(h: int, block: int) -> frozenset[str]:
        key = (h, block)
        if key not in targets:
            targets[key] = frozenset(
                names[key_of[y]] for y in rs.max_representatives
                if ps.block_id(y, h) == block)
        return targets[key]

    relations: dict[str, set[tuple[str, str]]] = {i: set() for i in m.relations}
    for x in rs.max_representatives:
        bx = int(db.bound[x])
        if bx <= 0:
            continue
        src = names[key_of[x]]
        for i in m.relations:
            for z in m.successors(i, x):
                for tgt in targets_at(bx - 1, ps.block_id(z, bx - 1)):
                    relations[i].add((src, tgt))

    model = PointedModel(
        worlds=worlds,
        relations=relations,
        valuation=_lift_valuation(m, names, key_of),
        designated=names[key_of[m.designated]],
    )
    return ContractionResult(model=model, witness=_witness(rs, names, key_of),
                             mode="rooted-k", k=k)


def rooted_k_contraction_edge_min(m: PointedModel, k: int,
                                  order: Sequence[str] | None = None) -> ContractionResult:
    """World- and edge-minimal contraction preserving depth-k equivalence.

    Same worlds as ``rooted_k_contraction``, but each original edge (x, y)
    with bound(x) > 0 contributes exactly one edge: from class(x) to the
    class of the order-least maximal representative matching y at level
    bound(x) - 1.  Successors falling into the same equivalence class at
    that level therefore share a single canonical target, which is what
    makes the edge set minimal.
    """
    rs = representative_structure(m, k, order)
    names, worlds, members, key_of = _class_worlds(rs)
    ps, db = rs.levels, rs.bounds

    least_cache: dict[tuple[int, int], str] = {}

    def least_target(h: int, y: str) -> str:
        key = (h, ps.block_id(y, h))
        if key not in least_cache:
            least_cache[key] = names[key_of[least_representative(rs, y, h)]]
        return least_cache[key]

    relations: dict[str, set[tuple[str, str]]] = {i: set() for i in m.relations}
    for x in rs.max_representatives:
        bx = int(db.bound[x])
        if bx <= 0:
            continue
        src = names[key_of[x]]
        for i in m.relations:
            for y in m.successors(i, x):
                relations[i].add((src, least_target(bx - 1, y)))

    model = PointedModel(
        worlds=worlds,
        relations=relations,
        valuation=_lift_valuation(m, names, key_of),
        designated=names[key_of[m.designated]],
    )
    return ContractionResult(model=model, witness=_witness(rs, names, key_of),
                             mode="rooted-k-edge-min", k=k)


def _quotient(m: PointedModel, block_of: Mapping[str, int]) -> tuple[PointedModel, dict[str, str]]:
    members: dict[int, list[str]] = {}
    for w in m.worlds:
        members.setdefault(block_of[w], []).append(w)
    names = {b: f"c({min(ws, key=m.position.__getitem__)})" for b, ws in members.items()}
    worlds = tuple(names[b] for b in sorted(
        members, key=lambda b: min(m.position[w] for w in members[b])))
    relations = {
        i: {(names[block_of[u]], names[block_of[v]]) for (u, v) in edges}
        for i, edges in m.relations.items()
    }
    valuation = {p: {names[block_of[w]] for w in ws} for p, ws in m.valuation.items()}
    model = PointedModel(worlds=worlds, relations=relations, valuation=valuation,
                         designated=names[block_of[m.designated]])
    witness = {w: names[block_of[w]] for w in m.worlds}
    return model, witness


def standard_contraction(m: PointedModel, *, prune: bool = True) -> ContractionResult:
    """Quotient by full bisimilarity.

    By default worlds whose class is unreachable from the designated class
    are pruned afterwards; pass ``prune=False`` to keep them.
    """
    ps = refine_full(m)
    model, witness = _quotient(m, ps.levels[ps.k])
    if prune:
        model = prune_unreachable(model)
        witness = {w: c for w, c in witness.items() if c in model.position}
    return ContractionResult(model=model, witness=witness, mode="standard-bisim", k=None)


def standard_k_contraction(m: PointedModel, k: int, *, prune: bool = True) -> ContractionResult:
    """Quotient by depth-k equivalence.

    By default classes that end up at depth greater than ``k`` (or
    unreachable) in the quotient are dropped, since they contribute nothing
    to depth-k equivalence of the designated world; pass ``prune=False`` to
    keep the full quotient.
    """
    ps = refine(m, k)
    model, witness = _quotient(m, ps.levels[k])
    if prune:
        model = restrict(model, k)
        witness = {w: c for w, c in witness.items() if c in model.position}
    return ContractionResult(model=model, witness=witness, mode="standard-k", k=k)


def redirect_and_delete(m: PointedModel, k: int, x: str, y: str) -> PointedModel:
    """Delete ``y`` and point its incoming edges at ``x`` instead.

    Sound whenever x and y are distinct non-designated worlds, both of
    non-negative bound with bound(x) >= bound(y), and x matches y at level
    bound(y): the result is then k-equivalent to the input.  Each
    precondition is checked and a violation raises ``PreconditionError``
    naming the failed clause.
    """
    for w, label in ((x, "x"), (y, "y")):
        if w not in m.position:
            raise InputError(f"unknown world {w!r}")
        if w == m.designated:
            raise PreconditionError(f"{label}-not-designated",
                                    f"{label} = {w!r} is the designated world")
    if x == y:
        raise PreconditionError("x-distinct-from-y", f"x and y are both {x!r}")
    db = compute_depth_bound(m, k)
    if db.bound[y] < 0:
        raise PreconditionError("bound-y-non-negative",
                                f"bound({y!r}) = {db.bound[y]} is negative")
    if db.bound[x] < db.bound[y]:
        raise PreconditionError(
            "bound-x-at-least-bound-y",
            f"bound({x!r}) = {db.bound[x]} < bound({y!r}) = {db.bound[y]}")
    ps = refine(m, k)
    if not ps.same_block(x, y, int(db.bound[y])):
        raise PreconditionError(
            "x-equivalent-to-y-at-bound-y",
            f"{x!r} and {y!r} are not {int(db.bound[y])}-equivalent")

    keep = set(m.worlds) - {y}
    relations = {}
    for i, edges in m.relations.items():
        kept = {(u, v) for (u, v) in edges if u != y and v != y}
        redirected = {(u, x) for (u, v) in edges if v == y and u != y}
        relations[i] = kept | redirected
    return PointedModel(
        worlds=tuple(w for w in m.worlds if w != y),
        relations=relations,
        valuation={p: ws & keep for p, ws in m.valuation.items()},
        designated=m.designated,
    )
