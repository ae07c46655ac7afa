"""Model constructors: worked examples, scaling families, random fuel.

``gen_chain`` and ``gen_succinctness_tree`` build the two families used to
exercise the contraction bounds: the chain collapses to a single looping
world under the rooted construction, and the labelled binary tree keeps all
of its exponentially many worlds under the standard depth-k quotient while
the rooted one retains a single path.

``gen_figure`` rebuilds three small fixed models used across the test suite,
and ``gen_random`` produces seeded random models for property tests.  All
generators are pure functions of their arguments.
"""

from __future__ import annotations

import random

from .errors import InputError
from .model import PointedModel


def gen_chain(k: int) -> PointedModel:
    """A simple path c0 -> c1 -> ... -> ck where every world satisfies p.

    The designated world is c0, so the chain has k + 1 worlds and k edges.
    """
    if k < 0:
        raise InputError("k must be non-negative")
    worlds = tuple(f"c{n}" for n in range(k + 1))
    edges = {(f"c{n}", f"c{n + 1}") for n in range(k)}
    return PointedModel(worlds=worlds, relations={"1": edges},
                        valuation={"p": set(worlds)}, designated="c0")


def gen_succinctness_tree(k: int) -> PointedModel:
    """The height-k binary tree with depth-revealing back edges.

    Worlds are the strings over {l, r} of length at most k (the empty string
    is named "e"); each world at depth n satisfies exactly the atom p<n>.
    Index "s" holds the tree edges.  Index "d" connects each leaf
    a1...ak to the leftmost world l^n at every depth n whose next letter
    a<n+1> is l, so distinct leaves see distinct subsets of the leftmost
    branch and no two same-depth worlds stay equivalent beyond depth k - n.
    """
    if k < 0:
        raise InputError("k must be non-negative")

    def name(s: str) -> str:
        return s if s else "e"

    strings, frontier = [""], [""]
    for _ in range(k):
        frontier = [s + a for s in frontier for a in "lr"]
        strings.extend(frontier)

    solid = {(name(s), name(s + a)) for s in strings if len(s) < k for a in "lr"}
    dashed = {
        (name(s), name("l" * n))
        for s in strings if len(s) == k
        for n in range(k) if s[n] == "l"
    }
    valuation = {f"p{n}": {name(s) for s in strings if len(s) == n} for n in range(k + 1)}
    return PointedModel(
        worlds=tuple(name(s) for s in strings),
        relations={"s": solid, "d": dashed},
        valuation=valuation,
        designated="e",
    )


_FIGURES = {
    # five worlds over {p, q}; w1 and w3 point at each other and w2 loops
    "fig2": dict(
        worlds=("wd", "w1", "w2", "w3", "w4"),
        edges={("wd", "w1"), ("wd", "w2"), ("w1", "w3"), ("w3", "w1"),
               ("w2", "w4"), ("w3", "w2"), ("w2", "w2")},
        valuation={"p": {"wd", "w1", "w2"}, "q": {"w3", "w4"}},
    ),
    # five worlds over {p, q, r} ending in a p-world behind the r-chain
    "n1": dict(
        worlds=("wd", "w1", "w2", "w3", "w4"),
        edges={("wd", "w1"), ("wd", "w2"), ("w1", "w3"), ("w2", "w2"), ("w3", "w4")},
        valuation={"p": {"wd", "w4"}, "q": {"w1"}, "r": {"w2", "w3"}},
    ),
    # the three-world collapse of n1: the r-chain is folded into the loop
    "n2": dict(
        worlds=("wd", "w1", "w2"),
        edges={("wd", "w1"), ("wd", "w2"), ("w1", "w2"), ("w2", "w2")},
        valuation={"p": {"wd"}, "q": {"w1"}, "r": {"w2"}},
    ),
}


def gen_figure(name: str) -> PointedModel:
    """One of the fixed example models: ``fig2``, ``n1`` or ``n2``."""
    try:
        spec = _FIGURES[name]
    except KeyError:
        raise InputError(f"unknown figure {name!r}; choose from {sorted(_FIGURES)}") from None
    return PointedModel(worlds=spec["worlds"], relations={"1": spec["edges"]},
                        valuation=spec["valuation"], designated=spec["worlds"][0])


def gen_random(n_worlds: int, n_indices: int, n_atoms: int,
               edge_density: float, seed: int) -> PointedModel:
    """A seeded random pointed model; identical arguments give identical
    models.

    Every ordered world pair becomes an edge with probability
    ``edge_density`` per index, and every (atom, world) pair holds with
    probability one half.  The designated world is the first one;
    reachability of the rest is *not* guaranteed, which is deliberate fuel
    for the unreachable-world code paths.
    """
    if n_worlds < 1:
        raise InputError("need at least one world")
    if not 0.0 <= edge_density <= 1.0:
        raise InputError("edge_density must lie in [0, 1]")
    rng = random.Random(seed)
    worlds = tuple(f"w{n}" for n in range(n_worlds))
    relations = {}
    for i in range(1, n_indices + 1):
        edges = set()
        for u in worlds:
            for v in worlds:
                if rng.random() < edge_density:
                    edges.add((u, v))
        relations[str(i)] = edges
    valuation = {}
    for a in range(1, n_atoms + 1):
        valuation[f"p{a}"] = {w for w in worlds if rng.random() < 0.5}
    return PointedModel(worlds=worlds, relations=relations,
                        valuation=valuation, designated=worlds[0])
