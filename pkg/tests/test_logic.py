"""Formula syntax, modal depth, evaluation, and depth-bounded agreement."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kripkemin import (And, Atom, Bot, Box, BudgetExceededError, Diamond,
                       InputError, Not, Or, Top, agree_to_depth, evaluate,
                       gen_chain, gen_figure, gen_random, k_bisimilar,
                       modal_depth, parse_formula, refine)

from conftest import random_models


def nested_diamond_box_bot(h: int):
    """h diamonds wrapped around a box over bottom."""
    phi = Box("1", Bot())
    for _ in range(h):
        phi = Diamond("1", phi)
    return phi


class TestModalDepth:
    def test_atom_is_zero(self):
        assert modal_depth(Atom("p")) == 0

    @pytest.mark.parametrize("h", [0, 1, 2, 5])
    def test_nested_modalities(self, h):
        assert modal_depth(nested_diamond_box_bot(h)) == h + 1

    def test_conjunction_takes_max(self):
        assert modal_depth(And(Box("1", Atom("p")), Atom("q"))) == 1

    def test_negation_preserves(self):
        phi = Not(Diamond("1", And(Atom("p"), Atom("q"))))
        assert modal_depth(phi) == modal_depth(phi.sub) == 1

    def test_constants_are_zero(self):
        assert modal_depth(Top()) == 0
        assert modal_depth(Bot()) == 0


class TestEvaluate:
    def test_diamond_r_at_w1_of_n1(self, n1):
        assert evaluate(n1, "w1", parse_formula("<1>r"))

    def test_top_everywhere(self, fig2):
        for w in fig2.worlds:
            assert evaluate(fig2, w, Top())

    @pytest.mark.parametrize("k", [0, 1, 3, 6])
    def test_chain_head_sees_deadlock_at_depth_k(self, k):
        # the unique path of length k ends in a world without successors
        chain = gen_chain(k)
        assert evaluate(chain, "c0", nested_diamond_box_bot(k))
        if k >= 1:
            assert not evaluate(chain, "c0", nested_diamond_box_bot(k - 1))

    def test_unknown_world_rejected(self, fig2):
        with pytest.raises(InputError):
            evaluate(fig2, "nope", Atom("p"))

    def test_unknown_index_rejected(self, fig2):
        with pytest.raises(InputError):
            evaluate(fig2, "wd", Box("missing", Top()))

    def test_absent_atom_is_false(self, fig2):
        assert not evaluate(fig2, "wd", Atom("z"))


formulas = st.deferred(lambda: st.one_of(
    st.sampled_from([Atom("p1"), Atom("p2"), Top(), Bot()]),
    st.builds(Not, formulas),
    st.builds(And, formulas, formulas),
    st.builds(Or, formulas, formulas),
    st.builds(Box, st.sampled_from(["1", "2"]), formulas),
    st.builds(Diamond, st.sampled_from(["1", "2"]), formulas),
))


class TestAbbreviations:
    @settings(max_examples=60, deadline=None)
    @given(formulas, st.integers(0, 30), st.integers(0, 7))
    def test_diamond_is_dual_of_box(self, phi, seed, world):
        m = gen_random(8, 2, 2, 0.3, seed)
        w = m.worlds[world]
        for i in ("1", "2"):
            assert evaluate(m, w, Diamond(i, phi)) == evaluate(m, w, Not(Box(i, Not(phi))))

    @settings(max_examples=60, deadline=None)
    @given(formulas, st.integers(0, 30), st.integers(0, 7))
    def test_or_and_constants_are_the_usual_abbreviations(self, phi, seed, world):
        m = gen_random(8, 2, 2, 0.3, seed)
        w = m.worlds[world]
        psi = Diamond("1", Atom("p1"))
        assert evaluate(m, w, Or(phi, psi)) == evaluate(m, w, Not(And(Not(phi), Not(psi))))
        assert evaluate(m, w, Top()) == evaluate(m, w, Not(Bot()))

    @settings(max_examples=80, deadline=None)
    @given(formulas, formulas)
    def test_depth_laws(self, phi, psi):
        assert modal_depth(And(phi, psi)) == max(modal_depth(phi), modal_depth(psi))
        assert modal_depth(Or(phi, psi)) == max(modal_depth(phi), modal_depth(psi))
        assert modal_depth(Not(phi)) == modal_depth(phi)
        assert modal_depth(Diamond("1", phi)) == modal_depth(Not(Box("1", Not(phi))))


class TestAgreeToDepth:
    def test_n1_n2_agree_to_depth_2(self, n1, n2):
        assert agree_to_depth(n1, n2, 2, atoms=("p", "q", "r"))

    def test_reflexive(self, fig2):
        for k in range(4):
            assert agree_to_depth(fig2, fig2, k, atoms=("p", "q"))

    def test_n1_n2_disagree_at_depth_3(self, n1, n2):
        assert not agree_to_depth(n1, n2, 3, atoms=("p", "q", "r"))
        # a depth-3 separating formula, checked directly on both models
        phi = parse_formula("<1>(q & <1>(r & <1>p))")
        assert evaluate(n1, "wd", phi)
        assert not evaluate(n2, "wd", phi)

    def test_atom_cover_is_required(self, n1, n2):
        with pytest.raises(InputError):
            agree_to_depth(n1, n2, 1, atoms=("p",))

    def test_budget_exceeded(self):
        m = gen_random(6, 2, 2, 0.8, seed=1)
        with pytest.raises(BudgetExceededError):
            agree_to_depth(m, m, 3, atoms=("p1", "p2"), max_nodes=50)

    def test_matches_partition_equivalence_on_random_pairs(self):
        # formula-agreement and refinement must decide alike (both directions)
        models = list(random_models(40, max_worlds=4, seed_base=500))
        atoms = ("p1", "p2")
        for a, b in zip(models[::2], models[1::2]):
            for k in (0, 1, 2, 3):
                assert agree_to_depth(a, b, k, atoms=atoms) == k_bisimilar(a, b, k)


class TestFormulaParsing:
    @pytest.mark.parametrize("text,expected", [
        ("top", Top()),
        ("bot", Bot()),
        ("p", Atom("p")),
        ("~p", Not(Atom("p"))),
        ("p & q | r", Or(And(Atom("p"), Atom("q")), Atom("r"))),
        ("p | q & r", Or(Atom("p"), And(Atom("q"), Atom("r")))),
        ("[1]p & q", And(Box("1", Atom("p")), Atom("q"))),
        ("<2>~p", Diamond("2", Not(Atom("p")))),
        ("~[1](p | q)", Not(Box("1", Or(Atom("p"), Atom("q"))))),
        ("( p )", Atom("p")),
    ])
    def test_grammar(self, text, expected):
        assert parse_formula(text) == expected

    @pytest.mark.parametrize("bad", ["", "p &", "[1", "<>", "p q", "(p", "&p"])
    def test_rejects_malformed(self, bad):
        from kripkemin import ParseError
        with pytest.raises(ParseError):
            parse_formula(bad)

    @settings(max_examples=80, deadline=None)
    @given(formulas)
    def test_round_trip_through_text(self, phi):
        assert parse_formula(str(phi)) == phi
