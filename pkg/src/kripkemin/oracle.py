"""Brute-force oracles: the recursive equivalence game and exhaustive
minimality searches.

``naive_k_bisim`` plays the depth-bounded back-and-forth game directly from
its definition (memoized, but with no partition refinement), so it is an
independent check on the refinement-based fast path.

The exhaustive searches enumerate every pointed model up to a budget --
all relation sets, valuations and world counts over the input's signature,
up to renaming of non-designated worlds -- and report the smallest world
count (or edge count at a fixed world count) among the candidates found
equivalent to the input by the game.  They exist to spot-check, at tiny
scale, that the rooted contractions really are minimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Sequence

from .errors import BudgetExceededError, InputError
from .model import PointedModel


@dataclass(frozen=True)
class EnumerationBudget:
    """Caps for the exhaustive searches.

    ``max_models`` bounds the number of candidates examined across one call;
    the search aborts cleanly (raising ``BudgetExceededError``) when it is
    passed.
    """

    max_worlds: int = 4
    max_indices: int = 2
    max_atoms: int = 2
    max_models: int = 2_000_000

    def __post_init__(self):
        if min(self.max_worlds, self.max_indices, self.max_atoms, self.max_models) < 1:
            raise InputError("all budget fields must be positive")


def _game(atoms1: Callable[[int], int], succ1,
          atoms2: Callable[[int], int], succ2,
          n_indices: int, w: int, v: int, h: int,
          memo: dict[tuple[int, int, int], bool]) -> bool:
    """The back-and-forth game between two encoded models.

    Worlds are integers, atoms are bitmasks, successors are index-keyed
    tuples.  Depth 0 compares valuations; depth h+1 additionally requires
    every move on one side to be answered on the other at depth h.
    """
    if atoms1(w) != atoms2(v):
        return False
    if h <= 0:
        return True
    key = (w, v, h)
    if key in memo:
        return memo[key]
    ok = True
    for i in range(n_indices):
        for w2 in succ1(i, w):
            if not any(_game(atoms1, succ1, atoms2, succ2, n_indices,
                             w2, v2, h - 1, memo) for v2 in succ2(i, v)):
                ok = False
                break
        if not ok:
            break
        for v2 in succ2(i, v):
            if not any(_game(atoms1, succ1, atoms2, succ2, n_indices,
                             w2, v2, h - 1, memo) for w2 in succ1(i, w)):
                ok = False
                break
        if not ok:
            break
    memo[key] = ok
    return ok


def _encode(m: PointedModel, atoms: Sequence[str], indices: Sequence[str]):
    pos = m.position
    masks = []
    for w in m.worlds:
        mask = 0
        for bit, p in enumerate(atoms):
            if w in m.valuation.get(p, frozenset()):
                mask |= 1 << bit
        masks.append(mask)
    succ = [
        [tuple(pos[v] for v in m._succ[i][w]) if i in m.relations else ()
         for w in m.worlds]
        for i in indices
    ]
    return masks, succ


def naive_k_bisim(m1: PointedModel, w: str, m2: PointedModel, v: str, h: int) -> bool:
    """Direct recursive decision of depth-h equivalence between (m1, w) and
    (m2, v): valuation agreement at depth 0 plus matched moves above."""
    if h < 0:
        raise InputError("h must be non-negative")
    if w not in m1.position:
        raise InputError(f"unknown world {w!r}")
    if v not in m2.position:
        raise InputError(f"unknown world {v!r}")
    atoms = tuple(sorted(set(m1.valuation) | set(m2.valuation)))
    indices = tuple(sorted(set(m1.relations) | set(m2.relations)))
    masks1, succ1 = _encode(m1, atoms, indices)
    masks2, succ2 = _encode(m2, atoms, indices)
    memo: dict[tuple[int, int, int], bool] = {}
    return _game(masks1.__getitem__, lambda i, x: succ1[i][x],
                 masks2.__getitem__, lambda i, x: succ2[i][x],
                 len(indices), m1.position[w], m2.position[v], h, memo)


# --- exhaustive candidate enumeration ------------------------------------
#
# Candidates are encoded as (relation masks per index, valuation masks per
# atom) over worlds 0..n-1 with designated world 0.  Renaming symmetry is
# cut by keeping only candidates that are lexicographically minimal among
# all permutations of the non-designated worlds.


def _perm_tables(n: int):
    """Bit permutation tables for all non-identity permutations fixing
    world 0: one table for the n*n relation bits, one for the n world bits."""
    tables = []
    for perm in permutations(range(1, n)):
        p = (0, *perm)
        rel = [p[u] * n + p[v] for u in range(n) for v in range(n)]
        tables.append((rel, list(p)))
    return tables[1:]


def _apply_bits(mask: int, table: list[int]) -> int:
    out = 0
    b = 0
    while mask:
        if mask & 1:
            out |= 1 << table[b]
        mask >>= 1
        b += 1
    return out


def _is_canonical(rels: tuple[int, ...], vals: tuple[int, ...], tables) -> bool:
    own = (rels, vals)
    for rel_table, val_table in tables:
        permuted = (
            tuple(_apply_bits(r, rel_table) for r in rels),
            tuple(_apply_bits(v, val_table) for v in vals),
        )
        if permuted < own:
            return False
    return True


class _Counter:
    __slots__ = ("n", "cap")

    def __init__(self, cap: int):
        self.n = 0
        self.cap = cap

    def tick(self):
        self.n += 1
        if self.n > self.cap:
            raise BudgetExceededError(f"candidate enumeration exceeded {self.cap} models")


def _candidate_succ(rels: tuple[int, ...], n: int):
    return [
        [tuple(v for v in range(n) if r >> (u * n + v) & 1) for u in range(n)]
        for r in rels
    ]


def _candidate_masks(vals: tuple[int, ...], n: int) -> list[int]:
    return [sum(((vals[a] >> w) & 1) << a for a in range(len(vals))) for w in range(n)]


def _relation_masks_by_edges(n: int) -> list[list[int]]:
    """All n*n-bit masks grouped by population count."""
    by_count: list[list[int]] = [[] for _ in range(n * n + 1)]
    for mask in range(1 << (n * n)):
        by_count[mask.bit_count()].append(mask)
    return by_count


def _check_signature(m: PointedModel, budget: EnumerationBudget):
    atoms = tuple(sorted(m.valuation))
    indices = tuple(sorted(m.relations))
    if len(atoms) > budget.max_atoms:
        raise BudgetExceededError(f"{len(atoms)} atoms exceed the budget of {budget.max_atoms}")
    if len(indices) > budget.max_indices:
        raise BudgetExceededError(f"{len(indices)} indices exceed the budget of {budget.max_indices}")
    return atoms, indices


def _bisimilar_to_candidate(m_enc, rels, vals, n, n_indices, k) -> bool:
    masks_m, succ_m = m_enc[0], m_enc[1]
    succ_c = _candidate_succ(rels, n)
    masks_c = _candidate_masks(vals, n)
    memo: dict[tuple[int, int, int], bool] = {}
    return _game(masks_m.__getitem__, lambda i, x: succ_m[i][x],
                 masks_c.__getitem__, lambda i, x: succ_c[i][x],
                 n_indices, m_enc[2], 0, k, memo)


def exhaustive_min_worlds(m: PointedModel, k: int, budget: EnumerationBudget) -> int:
    """Smallest world count among all pointed models k-equivalent to ``m``.

    Enumerates every candidate over m's atoms and indices with up to
    ``budget.max_worlds`` worlds (designated world fixed, renaming symmetry
    cut) and returns the first world count at which the game succeeds.
    Raises ``BudgetExceededError`` if the cap is hit or no candidate within
    the budget matches.
    """
    atoms, indices = _check_signature(m, budget)
    masks_m, succ_m = _encode(m, atoms, indices)
    m_enc = (masks_m, succ_m, m.position[m.designated])
    desig_mask = masks_m[m.position[m.designated]]
    counter = _Counter(budget.max_models)

    for n in range(1, budget.max_worlds + 1):
        tables = _perm_tables(n)
        val_space = list(range(1 << n))
        for rels in _rel_space(n, len(indices)):
            for vals in _val_space(val_space, len(atoms)):
                counter.tick()
                if sum((vals[a] & 1) << a for a in range(len(atoms))) != desig_mask:
                    continue
                if tables and not _is_canonical(rels, vals, tables):
                    continue
                if _bisimilar_to_candidate(m_enc, rels, vals, n, len(indices), k):
                    return n
    raise BudgetExceededError(
        f"no k-equivalent model with at most {budget.max_worlds} worlds was found")


def exhaustive_min_edges(m: PointedModel, k: int, n_worlds: int,
                         budget: EnumerationBudget) -> int:
    """Smallest total edge count among the k-equivalent models with exactly
    ``n_worlds`` worlds.

    Candidates are visited in order of increasing total edge count, so the
    first success is the minimum.
    """
    if n_worlds < 1 or n_worlds > budget.max_worlds:
        raise InputError("n_worlds must lie within the budget")
    atoms, indices = _check_signature(m, budget)
    masks_m, succ_m = _encode(m, atoms, indices)
    m_enc = (masks_m, succ_m, m.position[m.designated])
    desig_mask = masks_m[m.position[m.designated]]
    counter = _Counter(budget.max_models)

    n = n_worlds
    tables = _perm_tables(n)
    by_count = _relation_masks_by_edges(n)
    val_space = list(range(1 << n))
    max_edges = len(indices) * n * n
    for total in range(max_edges + 1):
        for rels in _rel_space_with_count(by_count, len(indices), total):
            for vals in _val_space(val_space, len(atoms)):
                counter.tick()
                if sum((vals[a] & 1) << a for a in range(len(atoms))) != desig_mask:
                    continue
                if tables and not _is_canonical(rels, vals, tables):
                    continue
                if _bisimilar_to_candidate(m_enc, rels, vals, n, len(indices), k):
                    return total
    raise BudgetExceededError(
        f"no k-equivalent model with {n_worlds} worlds was found")


def _rel_space(n: int, n_indices: int):
    if n_indices == 0:
        yield ()
        return
    for rest in _rel_space(n, n_indices - 1):
        for mask in range(1 << (n * n)):
            yield rest + (mask,)


def _rel_space_with_count(by_count: list[list[int]], n_indices: int, total: int):
    if n_indices == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, len(by_count) - 1) + 1):
        for rest in _rel_space_with_count(by_count, n_indices - 1, total - first):
            for mask in by_count[first]:
                yield rest + (mask,)


def _val_space(val_space: list[int], n_atoms: int):
    if n_atoms == 0:
        yield ()
        return
    for rest in _val_space(val_space, n_atoms - 1):
        for mask in val_space:
            yield rest + (mask,)
