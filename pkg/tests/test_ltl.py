"""Parser, NNF, and lasso-semantics tests for the LTL core."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from softltl.ltl import (
    And,
    Atom,
    Eventually,
    FalseF,
    Globally,
    Implies,
    LassoWord,
    LtlSyntaxError,
    Next,
    Not,
    Or,
    Release,
    TrueF,
    UnknownAtomError,
    Until,
    eval_lasso,
    format_ltl,
    parse_ltl,
    satisfied_set,
    to_nnf,
)

from oracles import all_lasso_words, random_formula, shift_word


def w(prefix, cycle):
    return LassoWord.make(prefix, cycle)


class TestParser:
    def test_globally_eventually(self):
        assert parse_ltl("G F p", {"p"}) == Globally(Eventually(Atom("p")))

    def test_until_binds_tighter_than_and(self):
        got = parse_ltl("p U (q & X r)", {"p", "q", "r"})
        assert got == Until(Atom("p"), And(Atom("q"), Next(Atom("r"))))

    def test_incomplete_until_is_positional_syntax_error(self):
        with pytest.raises(LtlSyntaxError) as err:
            parse_ltl("p U", {"p"})
        assert err.value.position == 3

    def test_unknown_atom_named(self):
        with pytest.raises(UnknownAtomError) as err:
            parse_ltl("p & q", {"p"})
        assert err.value.name == "q"

    def test_empty_input(self):
        with pytest.raises(LtlSyntaxError):
            parse_ltl("   ", {"p"})

    def test_bad_character_positions(self):
        with pytest.raises(LtlSyntaxError) as err:
            parse_ltl("p @ q", {"p", "q"})
        assert err.value.position == 2

    def test_trailing_garbage(self):
        with pytest.raises(LtlSyntaxError):
            parse_ltl("p q", {"p", "q"})

    def test_implies_right_associative(self):
        got = parse_ltl("p -> q -> r", {"p", "q", "r"})
        assert got == Implies(Atom("p"), Implies(Atom("q"), Atom("r")))

    def test_until_right_associative(self):
        got = parse_ltl("p U q U r", {"p", "q", "r"})
        assert got == Until(Atom("p"), Until(Atom("q"), Atom("r")))

    def test_precedence_chain(self):
        got = parse_ltl("!p & q U r | s -> t", {"p", "q", "r", "s", "t"})
        expected = Implies(
            Or(And(Not(Atom("p")), Until(Atom("q"), Atom("r"))), Atom("s")),
            Atom("t"),
        )
        assert got == expected

    def test_constants(self):
        assert parse_ltl("true U false", set()) == Until(TrueF(), FalseF())


def _ast_strategy():
    atoms = st.sampled_from([Atom("p"), Atom("q"), TrueF(), FalseF()])
    return st.recursive(
        atoms,
        lambda children: st.one_of(
            st.builds(Not, children),
            st.builds(Next, children),
            st.builds(Eventually, children),
            st.builds(Globally, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Implies, children, children),
            st.builds(Until, children, children),
        ),
        max_leaves=12,
    )


class TestPrinter:
    @settings(max_examples=300, deadline=None)
    @given(_ast_strategy())
    def test_print_parse_round_trip(self, f):
        assert parse_ltl(format_ltl(f), {"p", "q"}) == f

    def test_minimal_parens(self):
        f = Or(And(Atom("p"), Atom("q")), Atom("r"))
        assert format_ltl(f) == "p & q | r"


class TestNnf:
    def test_not_eventually(self):
        f = Not(Eventually(Atom("p")))
        assert to_nnf(f) == Release(FalseF(), Not(Atom("p")))

    def test_not_next(self):
        assert to_nnf(Not(Next(Atom("p")))) == Next(Not(Atom("p")))

    def test_not_until(self):
        f = Not(Until(Atom("p"), Atom("q")))
        assert to_nnf(f) == Release(Not(Atom("p")), Not(Atom("q")))

    def test_implies_rewritten(self):
        f = Implies(Atom("p"), Atom("q"))
        assert to_nnf(f) == Or(Not(Atom("p")), Atom("q"))

    def test_globally_rewritten(self):
        assert to_nnf(Globally(Atom("p"))) == Release(FalseF(), Atom("p"))

    def test_eventually_rewritten(self):
        assert to_nnf(Eventually(Atom("p"))) == Until(TrueF(), Atom("p"))

    def test_nnf_preserves_semantics_exhaustive_words(self):
        # random formulas of depth <= 4 over two atoms, all lassos up to
        # total length 5
        rng = random.Random(7)
        formulas = [random_formula(rng, ["p", "q"], 4) for _ in range(20)]
        words = all_lasso_words(["p", "q"], 5)
        for f in formulas:
            g = to_nnf(f)
            for word in words:
                assert eval_lasso(f, word) == eval_lasso(g, word), (f, word)


class TestEvalLasso:
    def test_eventually_on_later_cycle(self):
        assert eval_lasso(Eventually(Atom("p")), w([set()], [{"p"}])) is True

    def test_globally_fails_in_cycle(self):
        assert eval_lasso(Globally(Atom("p")), w([{"p"}], [set()])) is False

    def test_retirement_soft3_violated_by_v1_solution(self):
        # the optimal retirement-home trajectory performs balloons in room 2,
        # so "never balloons in room 2" must evaluate false on its trace
        soft3 = parse_ltl("G (r2 -> !b)", {"r1", "r2", "t", "g", "b"})
        trace = w(
            [],
            [
                set(),
                {"r1", "g"},
                set(),
                {"r1", "b"},
                set(),
                {"r2", "b"},
                set(),
                {"r2", "g"},
                set(),
                {"t"},
            ],
        )
        assert eval_lasso(soft3, trace) is False

    def test_empty_prefix_wraps(self):
        assert eval_lasso(Globally(Eventually(Atom("p"))), w([], [set(), {"p"}])) is True
        assert eval_lasso(Globally(Eventually(Atom("p"))), w([{"p"}], [set()])) is False

    def test_until_needs_witness(self):
        f = Until(Atom("p"), Atom("q"))
        assert eval_lasso(f, w([{"p"}], [{"p"}])) is False
        assert eval_lasso(f, w([{"p"}], [{"q"}])) is True
        assert eval_lasso(f, w([], [{"q"}])) is True

    def test_release_held_forever(self):
        f = Release(FalseF(), Atom("p"))
        assert eval_lasso(f, w([], [{"p"}])) is True
        assert eval_lasso(f, w([], [{"p"}, set()])) is False


def _word_strategy():
    label = st.sets(st.sampled_from(["p", "q"]), max_size=2)
    return st.builds(
        lambda p, c: LassoWord.make(p, c),
        st.lists(label, max_size=3),
        st.lists(label, min_size=1, max_size=3),
    )


class TestSemanticRules:
    """Directed checks of the satisfaction rules, one per connective."""

    @settings(max_examples=200, deadline=None)
    @given(_word_strategy())
    def test_rule_true_and_atom(self, word):
        assert eval_lasso(TrueF(), word) is True
        assert eval_lasso(Atom("p"), word) == ("p" in word.letters()[0])

    @settings(max_examples=200, deadline=None)
    @given(_ast_strategy(), _word_strategy())
    def test_rule_negation(self, f, word):
        assert eval_lasso(Not(f), word) == (not eval_lasso(f, word))

    @settings(max_examples=200, deadline=None)
    @given(_ast_strategy(), _ast_strategy(), _word_strategy())
    def test_rule_disjunction(self, f, g, word):
        expected = eval_lasso(f, word) or eval_lasso(g, word)
        assert eval_lasso(Or(f, g), word) == expected

    @settings(max_examples=200, deadline=None)
    @given(_ast_strategy(), _word_strategy())
    def test_rule_next_is_shift(self, f, word):
        assert eval_lasso(Next(f), word) == eval_lasso(f, shift_word(word))

    @settings(max_examples=150, deadline=None)
    @given(_ast_strategy(), _ast_strategy(), _word_strategy())
    def test_rule_until_via_shifts(self, f, g, word):
        # a witness position within one prefix+cycle unrolling is sufficient
        # for ultimately periodic words
        horizon = len(word.prefix) + len(word.cycle)
        shifted = [word]
        for _ in range(horizon):
            shifted.append(shift_word(shifted[-1]))
        expected = any(
            eval_lasso(g, shifted[j]) and all(eval_lasso(f, shifted[i]) for i in range(j))
            for j in range(horizon)
        )
        assert eval_lasso(Until(f, g), word) == expected

    @settings(max_examples=150, deadline=None)
    @given(_ast_strategy(), _ast_strategy(), _word_strategy())
    def test_release_dual_of_until(self, f, g, word):
        expected = not eval_lasso(Until(Not(f), Not(g)), word)
        assert eval_lasso(Release(f, g), word) == expected

    @settings(max_examples=150, deadline=None)
    @given(_ast_strategy(), _word_strategy())
    def test_derived_operators(self, f, word):
        assert eval_lasso(Eventually(f), word) == eval_lasso(Until(TrueF(), f), word)
        assert eval_lasso(Globally(f), word) == (not eval_lasso(Eventually(Not(f)), word))


class TestSatisfiedSet:
    def test_empty(self):
        assert satisfied_set(w([], [{"p"}]), []) == ()

    def test_two_formulas(self):
        word = w([], [{"p"}])
        softs = [Eventually(Atom("p")), Globally(Atom("p"))]
        assert satisfied_set(word, softs) == (True, True)

    def test_mixed(self):
        word = w([], [{"p"}, set()])
        softs = [Eventually(Atom("p")), Globally(Atom("p"))]
        assert satisfied_set(word, softs) == (True, False)
