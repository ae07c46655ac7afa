"""Pointed-model construction, depth/bound maps, restriction, pruning."""

import math

import pytest

from kripkemin import (InputError, InvalidModelError, PointedModel,
                       compute_depth_bound, gen_chain, gen_figure, isomorphic,
                       prune_unreachable, redirect_and_delete, restrict,
                       NEG_INF, UNREACHABLE)

from conftest import random_models


def singleton(loop=False):
    return PointedModel(worlds=("w",), relations={"1": {("w", "w")} if loop else set()},
                        valuation={}, designated="w")


class TestConstruction:
    def test_empty_world_set_rejected(self):
        with pytest.raises(InvalidModelError):
            PointedModel(worlds=(), relations={}, valuation={}, designated="w")

    def test_duplicate_world_rejected(self):
        with pytest.raises(InvalidModelError):
            PointedModel(worlds=("w", "w"), relations={}, valuation={}, designated="w")

    def test_dangling_edge_rejected(self):
        with pytest.raises(InvalidModelError):
            PointedModel(worlds=("w",), relations={"1": {("w", "v")}},
                         valuation={}, designated="w")

    def test_unknown_designated_rejected(self):
        with pytest.raises(InvalidModelError):
            PointedModel(worlds=("w",), relations={}, valuation={}, designated="v")

    def test_valuation_over_unknown_world_rejected(self):
        with pytest.raises(InvalidModelError):
            PointedModel(worlds=("w",), relations={}, valuation={"p": {"v"}},
                         designated="w")

    def test_vacuous_atoms_are_normalized_away(self):
        m = PointedModel(worlds=("w",), relations={}, valuation={"p": set()},
                         designated="w")
        assert "p" not in m.valuation

    def test_successor_queries_validate_input(self, fig2):
        with pytest.raises(InputError):
            fig2.successors("nope", "wd")
        with pytest.raises(InputError):
            fig2.successors("1", "nope")


class TestDepthBound:
    def test_fig2_bounds_k2(self, fig2):
        db = compute_depth_bound(fig2, 2)
        assert db.bound == {"wd": 2, "w1": 1, "w2": 1, "w3": 0, "w4": 0}

    def test_fig2_bounds_k1(self, fig2):
        db = compute_depth_bound(fig2, 1)
        assert db.bound["w3"] == -1
        assert db.bound["w4"] == -1

    def test_singleton_any_k(self):
        db = compute_depth_bound(singleton(), 7)
        assert db.depth == {"w": 0}
        assert db.bound == {"w": 7}

    def test_unreachable_world_markers(self):
        m = PointedModel(worlds=("a", "b"), relations={"1": set()},
                         valuation={}, designated="a")
        db = compute_depth_bound(m, 3)
        assert db.depth["b"] == UNREACHABLE
        assert db.bound["b"] == NEG_INF
        assert not db.reachable("b")
        assert db.reachable("a")

    def test_edge_bound_inequality_on_random_models(self):
        # along every edge the target's bound drops by at most one
        for m in random_models(120):
            db = compute_depth_bound(m, 3)
            for edges in m.relations.values():
                for (x, y) in edges:
                    if db.reachable(x) and db.reachable(y):
                        assert db.bound[y] >= db.bound[x] - 1


class TestRestrict:
    def test_n1_restrict_2_drops_w4(self, n1):
        expected = PointedModel(
            worlds=("wd", "w1", "w2", "w3"),
            relations={"1": {("wd", "w1"), ("wd", "w2"), ("w1", "w3"), ("w2", "w2")}},
            valuation={"p": {"wd"}, "q": {"w1"}, "r": {"w2", "w3"}},
            designated="wd")
        assert restrict(n1, 2) == expected

    def test_identity_when_k_covers_model(self, fig2):
        assert restrict(fig2, 2) == fig2
        assert restrict(fig2, 99) == fig2

    def test_chain_prefix(self):
        assert restrict(gen_chain(5), 2) == PointedModel(
            worlds=("c0", "c1", "c2"),
            relations={"1": {("c0", "c1"), ("c1", "c2")}},
            valuation={"p": {"c0", "c1", "c2"}}, designated="c0")

    def test_depths_unchanged_and_designated_kept(self):
        for m in random_models(60):
            for k in (0, 1, 2):
                sub = restrict(m, k)
                assert sub.designated == m.designated
                d_orig = compute_depth_bound(m, k).depth
                d_sub = compute_depth_bound(sub, k).depth
                for w in sub.worlds:
                    assert d_orig[w] <= k
                    assert d_sub[w] == d_orig[w]


class TestPruneUnreachable:
    def test_redirect_on_n1_gives_n2(self, n1, n2):
        redirected = redirect_and_delete(n1, 2, "w2", "w3")
        assert prune_unreachable(redirected) == PointedModel(
            worlds=("wd", "w1", "w2"),
            relations={"1": {("wd", "w1"), ("wd", "w2"), ("w1", "w2"), ("w2", "w2")}},
            valuation={"p": {"wd"}, "q": {"w1"}, "r": {"w2"}},
            designated="wd")
        assert isomorphic(prune_unreachable(redirected), n2)

    def test_fully_reachable_unchanged(self, fig2):
        assert prune_unreachable(fig2) == fig2

    def test_isolated_world_removed(self):
        m = PointedModel(worlds=("a", "u"), relations={"1": set()},
                         valuation={"p": {"u"}}, designated="a")
        pruned = prune_unreachable(m)
        assert pruned.worlds == ("a",)
        assert "p" not in pruned.valuation

    def test_idempotent(self):
        for m in random_models(60):
            once = prune_unreachable(m)
            assert prune_unreachable(once) == once


class TestIsomorphic:
    def test_renaming_is_isomorphic(self, fig2):
        renamed = PointedModel(
            worlds=tuple(f"x_{w}" for w in fig2.worlds),
            relations={i: {(f"x_{u}", f"x_{v}") for (u, v) in es}
                       for i, es in fig2.relations.items()},
            valuation={p: {f"x_{w}" for w in ws} for p, ws in fig2.valuation.items()},
            designated="x_wd")
        assert isomorphic(fig2, renamed)

    def test_designated_must_correspond(self):
        a = PointedModel(worlds=("u", "v"), relations={"1": {("u", "v")}},
                         valuation={}, designated="u")
        b = PointedModel(worlds=("u", "v"), relations={"1": {("u", "v")}},
                         valuation={}, designated="v")
        assert not isomorphic(a, b)

    def test_structurally_different(self, n1, n2):
        assert not isomorphic(n1, n2)
