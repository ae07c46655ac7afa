"""Multi-modal formulas: syntax, modal depth, and truth evaluation.

The language has atoms, negation, conjunction and one box operator per
modality index.  Disjunction, top, bottom and the diamonds are first-class
nodes but carry their usual definitions (a diamond is the dual of the box),
and evaluation treats them accordingly.

``agree_to_depth`` is the semantic side of the depth-k equivalence story:
two pointed models are equivalent to depth k exactly when they agree on
every formula of modal depth at most k over their (finite) signature.  It
decides that agreement by building, for every world, a formula that pins
the world down up to depth h over the given atoms and indices, and checking
the two designated worlds against the collected formulas.  This route goes
through formula evaluation only, so it is independent of the partition
refinement machinery it is used to validate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import BudgetExceededError, InputError
from .model import PointedModel


class Formula:
    """Base class for formula nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    def __str__(self):
        return "top"


@dataclass(frozen=True)
class Bot(Formula):
    def __str__(self):
        return "bot"


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula

    def __str__(self):
        return f"~{self.sub}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Box(Formula):
    index: str
    sub: Formula

    def __str__(self):
        return f"[{self.index}]{self.sub}"


@dataclass(frozen=True)
class Diamond(Formula):
    index: str
    sub: Formula

    def __str__(self):
        return f"<{self.index}>{self.sub}"


def modal_depth(phi: Formula) -> int:
    """Maximum nesting of modal operators.

    Atoms and constants have depth 0, negation preserves depth, binary
    connectives take the maximum, and each box or diamond adds one.
    """
    match phi:
        case Atom() | Top() | Bot():
            return 0
        case Not(sub=s):
            return modal_depth(s)
        case And(left=l, right=r) | Or(left=l, right=r):
            return max(modal_depth(l), modal_depth(r))
        case Box(sub=s) | Diamond(sub=s):
            return 1 + modal_depth(s)
    raise InputError(f"not a formula: {phi!r}")


def evaluate(m: PointedModel, world: str, phi: Formula) -> bool:
    """Truth of ``phi`` at ``world``.

    A box is true when all successors along its index satisfy the body; a
    diamond when some successor does.  Unknown worlds and unknown modality
    indices are rejected.
    """
    if world not in m.position:
        raise InputError(f"unknown world {world!r}")
    match phi:
        case Top():
            return True
        case Bot():
            return False
        case Atom(name=p):
            return world in m.valuation.get(p, frozenset())
        case Not(sub=s):
            return not evaluate(m, world, s)
        case And(left=l, right=r):
            return evaluate(m, world, l) and evaluate(m, world, r)
        case Or(left=l, right=r):
            return evaluate(m, world, l) or evaluate(m, world, r)
        case Box(index=i, sub=s):
            return all(evaluate(m, v, s) for v in m.successors(i, world))
        case Diamond(index=i, sub=s):
            return any(evaluate(m, v, s) for v in m.successors(i, world))
    raise InputError(f"not a formula: {phi!r}")


def conjoin(parts: Sequence[Formula]) -> Formula:
    """Right-nested conjunction; empty input gives top."""
    if not parts:
        return Top()
    return reduce(And, parts)


def disjoin(parts: Sequence[Formula]) -> Formula:
    """Right-nested disjunction; empty input gives bot."""
    if not parts:
        return Bot()
    return reduce(Or, parts)


class _FormulaBudget:
    def __init__(self, max_nodes: int):
        self.max_nodes = max_nodes
        self.nodes = 0

    def charge(self, n: int = 1):
        self.nodes += n
        if self.nodes > self.max_nodes:
            raise BudgetExceededError(
                f"formula enumeration exceeded {self.max_nodes} nodes")


def _pinning_formulas(m: PointedModel, k: int, atoms: Sequence[str],
                      indices: Sequence[str], budget: _FormulaBudget) -> dict[tuple[str, int], Formula]:
    """For every world w and level h <= k, a formula true exactly at the
    worlds that behave like w up to depth h over the given signature.

    Level 0 fixes the valuation; level h+1 additionally demands, per index,
    a successor matching each of w's successors at level h (diamonds) and no
    successor matching none of them (a box over their disjunction).
    Subformulas are shared, so the result is a DAG.
    """
    memo: dict[tuple[str, int], Formula] = {}

    def literals(w: str) -> list[Formula]:
        out: list[Formula] = []
        true_atoms = m.atoms_at(w)
        for p in atoms:
            budget.charge(2)
            a = Atom(p)
            out.append(a if p in true_atoms else Not(a))
        return out

    def build(w: str, h: int) -> Formula:
        key = (w, h)
        if key in memo:
            return memo[key]
        parts = literals(w)
        if h > 0:
            for i in indices:
                kids = []
                seen: set[int] = set()
                for v in m.successors(i, w):
                    kid = build(v, h - 1)
                    if id(kid) not in seen:
                        seen.add(id(kid))
                        kids.append(kid)
                for kid in kids:
                    budget.charge()
                    parts.append(Diamond(i, kid))
                budget.charge(max(1, len(kids)))
                parts.append(Box(i, disjoin(kids)))
        budget.charge(max(1, len(parts)))
        phi = conjoin(parts)
        memo[key] = phi
        return phi

    for w in m.worlds:
        for h in range(k + 1):
            build(w, h)
    return memo


def _truth_sets(m: PointedModel, roots: Iterable[Formula]) -> dict[int, frozenset[str]]:
    """Truth set of every subformula of ``roots``, computed bottom-up over
    the shared DAG (one pass per node, not per occurrence)."""
    all_worlds = frozenset(m.worlds)
    truth: dict[int, frozenset[str]] = {}
    stack = list(roots)
    while stack:
        phi = stack[-1]
        if id(phi) in truth:
            stack.pop()
            continue
        match phi:
            case Top():
                truth[id(phi)] = all_worlds
            case Bot():
                truth[id(phi)] = frozenset()
            case Atom(name=p):
                truth[id(phi)] = m.valuation.get(p, frozenset())
            case Not(sub=s):
                if id(s) not in truth:
                    stack.append(s)
                    continue
                truth[id(phi)] = all_worlds - truth[id(s)]
            case And(left=l, right=r) | Or(left=l, right=r):
                missing = [c for c in (l, r) if id(c) not in truth]
                if missing:
                    stack.extend(missing)
                    continue
                if isinstance(phi, And):
                    truth[id(phi)] = truth[id(l)] & truth[id(r)]
                else:
                    truth[id(phi)] = truth[id(l)] | truth[id(r)]
            case Box(index=i, sub=s) | Diamond(index=i, sub=s):
                if id(s) not in truth:
                    stack.append(s)
                    continue
                ts = truth[id(s)]
                if isinstance(phi, Box):
                    truth[id(phi)] = frozenset(
                        w for w in m.worlds if all(v in ts for v in m._succ[i][w]))
                else:
                    truth[id(phi)] = frozenset(
                        w for w in m.worlds if any(v in ts for v in m._succ[i][w]))
            case _:
                raise InputError(f"not a formula: {phi!r}")
        stack.pop()
    return truth


def _with_indices(m: PointedModel, indices: Iterable[str]) -> PointedModel:
    """Extend the relation map with empty relations for missing indices."""
    relations = dict(m.relations)
    changed = False
    for i in indices:
        if i not in relations:
            relations[i] = frozenset()
            changed = True
    if not changed:
        return m
    return PointedModel(worlds=m.worlds, relations=relations,
                        valuation=m.valuation, designated=m.designated)


def agree_to_depth(m1: PointedModel, m2: PointedModel, k: int,
                   atoms: Iterable[str], *, max_nodes: int = 500_000) -> bool:
    """Do the designated worlds agree on every formula of modal depth <= k?

    ``atoms`` must cover every atom used by either model; the modality
    signature is the union of the two index sets, with a missing index read
    as an empty relation.  The check enumerates one pinning formula per
    (world, level) pair of both models, which is decisive: agreement on that
    finite set settles agreement on the whole depth-k fragment over the
    signature.  Intended for small instances; raises ``BudgetExceededError``
    when the formula DAG outgrows ``max_nodes``.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    atoms = tuple(sorted(set(atoms)))
    used = set(m1.valuation) | set(m2.valuation)
    if not used <= set(atoms):
        raise InputError(f"atom set must cover both models' atoms; missing {sorted(used - set(atoms))}")
    indices = tuple(sorted(set(m1.relations) | set(m2.relations)))
    m1 = _with_indices(m1, indices)
    m2 = _with_indices(m2, indices)

    budget = _FormulaBudget(max_nodes)
    formulas: list[Formula] = []
    for m in (m1, m2):
        formulas.extend(_pinning_formulas(m, k, atoms, indices, budget).values())

    t1 = _truth_sets(m1, formulas)
    t2 = _truth_sets(m2, formulas)
    d1, d2 = m1.designated, m2.designated
    return all((d1 in t1[id(phi)]) == (d2 in t2[id(phi)]) for phi in formulas)
