"""Translation, degeneralization, completion, and membership cross-checks.

The load-bearing property: automaton membership must agree with the direct
lasso semantics on exhaustive families of small words.
"""

import pytest

from softltl.automata import (
    BuchiAutomaton,
    GeneralizedBuchiAutomaton,
    accepts_lasso,
    automaton_to_dot,
    automaton_to_json,
    degeneralize,
    label_universe,
    ltl_to_gba,
    make_nonblocking,
    prune_unproductive,
)
from softltl.ltl import LassoWord, eval_lasso, parse_ltl, to_nnf

from oracles import all_lasso_words, gba_accepts_lasso_naive

AP1 = {"p"}
AP2 = {"p", "q"}


def pipeline(text, ap):
    f = parse_ltl(text, ap)
    return make_nonblocking(degeneralize(ltl_to_gba(to_nnf(f), ap)))


def assert_language_matches(text, ap, max_total=5, automaton=None):
    f = parse_ltl(text, ap)
    b = automaton if automaton is not None else pipeline(text, ap)
    for word in all_lasso_words(ap, max_total):
        assert accepts_lasso(b, word) == eval_lasso(f, word), (text, word)


class TestLtlToGba:
    def test_true_is_single_state_universal(self):
        g = ltl_to_gba(to_nnf(parse_ltl("true", AP1)), AP1)
        assert g.n_states == 1
        assert g.accepting_family == ()
        for a in label_universe(AP1):
            assert g.successors(0, a) == (0,)

    def test_false_is_empty(self):
        g = ltl_to_gba(to_nnf(parse_ltl("false", AP1)), AP1)
        b = make_nonblocking(degeneralize(g))
        for word in all_lasso_words(AP1, 3):
            assert not accepts_lasso(b, word)

    def test_requires_nnf(self):
        with pytest.raises(ValueError):
            ltl_to_gba(parse_ltl("!(p U p)", AP1), AP1)

    def test_eventually_matches_oracle_exhaustively(self):
        assert_language_matches("F p", AP1)

    def test_globally_eventually_matches_oracle_exhaustively(self):
        assert_language_matches("G F p", AP1)
        b = pipeline("G F p", AP1)
        assert not accepts_lasso(b, LassoWord.make([], [set()]))
        assert accepts_lasso(b, LassoWord.make([], [set(), {"p"}]))

    def test_one_acceptance_set_per_until(self):
        g = ltl_to_gba(to_nnf(parse_ltl("F p & F q & (p U q)", AP2)), AP2)
        assert len(g.accepting_family) == 3

    def test_small_corpus_two_atoms(self):
        for text in ["G p", "p U q", "G (p -> X q)", "F (p & q)", "!(p U q)"]:
            assert_language_matches(text, AP2, max_total=4)


class TestDegeneralize:
    def test_single_set_is_isomorphic_copy(self):
        g = ltl_to_gba(to_nnf(parse_ltl("F p", AP1)), AP1)
        assert len(g.accepting_family) == 1
        b = degeneralize(g)
        assert b.n_states == g.n_states
        assert b.init == g.init
        assert b.accepting == g.accepting_family[0]
        assert {t for t in b.transitions()} == {t for t in g.transitions()}

    def test_empty_family_accepts_all_runs(self):
        g = ltl_to_gba(to_nnf(parse_ltl("G p", AP1)), AP1)
        assert g.accepting_family == ()
        b = degeneralize(g)
        assert b.accepting == frozenset(range(b.n_states))
        assert b.n_states == g.n_states

    def test_two_set_counter_construction(self):
        # 2-state generalized automaton: state 0 in F_1, state 1 in F_2;
        # free movement on any label
        labels = label_universe(AP1)
        delta = {
            0: {a: (0, 1) for a in labels},
            1: {a: (0, 1) for a in labels},
        }
        g = GeneralizedBuchiAutomaton(
            frozenset(AP1), 2, 0, delta, (frozenset([0]), frozenset([1]))
        )
        b = degeneralize(g)
        assert b.n_states <= g.n_states * 2
        for word in all_lasso_words(AP1, 5):
            assert accepts_lasso(b, word) == gba_accepts_lasso_naive(g, word), word

    def test_counter_equivalence_on_translated_formula(self):
        g = ltl_to_gba(to_nnf(parse_ltl("G F p & G F q", AP2)), AP2)
        assert len(g.accepting_family) == 2
        b = degeneralize(g)
        for word in all_lasso_words(AP2, 4):
            assert accepts_lasso(b, word) == gba_accepts_lasso_naive(g, word), word


class TestMakeNonblocking:
    def test_total_automaton_returned_unchanged(self):
        b = pipeline("true", AP1)
        assert make_nonblocking(b) is b

    def test_single_state_without_transitions(self):
        b = BuchiAutomaton(frozenset(AP1), 1, 0, {}, frozenset())
        total = make_nonblocking(b)
        assert total.n_states == 2
        trap = 1
        for a in label_universe(AP1):
            assert total.successors(0, a) == (trap,)
            assert total.successors(trap, a) == (trap,)
        assert trap not in total.accepting

    def test_language_preserved(self):
        f = parse_ltl("F p", AP1)
        b = degeneralize(ltl_to_gba(to_nnf(f), AP1))
        total = make_nonblocking(b)
        for word in all_lasso_words(AP1, 5):
            assert accepts_lasso(total, word) == eval_lasso(f, word), word

    def test_totality_structural(self):
        for text, ap in [("F p", AP1), ("p U q", AP2), ("G (p -> F q)", AP2)]:
            b = pipeline(text, ap)
            assert b.is_total()

    def test_trap_never_reaches_accepting(self):
        # G p blocks on the empty label, so completion must add a trap
        b = degeneralize(ltl_to_gba(to_nnf(parse_ltl("G p", AP1)), AP1))
        total = make_nonblocking(b)
        assert total.n_states == b.n_states + 1
        trap = b.n_states
        reachable = {trap}
        frontier = [trap]
        while frontier:
            q = frontier.pop()
            for a, targets in total.delta.get(q, {}).items():
                for t in targets:
                    if t not in reachable:
                        reachable.add(t)
                        frontier.append(t)
        assert not (reachable & total.accepting)


class TestAcceptsLasso:
    def test_universal_accepts_everything(self):
        b = pipeline("true", AP1)
        for word in all_lasso_words(AP1, 3):
            assert accepts_lasso(b, word)

    def test_eventually_rejects_empty_labels(self):
        b = pipeline("F p", AP1)
        assert not accepts_lasso(b, LassoWord.make([], [set()]))

    def test_rejects_stray_atoms(self):
        b = pipeline("F p", AP1)
        with pytest.raises(ValueError):
            accepts_lasso(b, LassoWord.make([], [{"zz"}]))


class TestPrune:
    def test_language_preserved_and_no_growth(self):
        for text, ap in [("F p", AP1), ("G F p", AP1), ("p U q", AP2), ("false", AP1)]:
            f = parse_ltl(text, ap)
            b = degeneralize(ltl_to_gba(to_nnf(f), ap))
            pruned = prune_unproductive(b)
            assert pruned.n_states <= b.n_states
            for word in all_lasso_words(ap, 4):
                assert accepts_lasso(pruned, word) == eval_lasso(f, word), (text, word)


class TestExports:
    def test_json_dump_fields(self):
        b = pipeline("F p", AP1)
        dump = automaton_to_json(b)
        assert set(dump) >= {"states", "init", "accepting", "transitions"}
        assert dump["states"] == b.n_states
        entry = dump["transitions"][0]
        assert set(entry) == {"src", "label", "dst"}
        assert isinstance(entry["label"], list)

    def test_dot_dump(self):
        text = automaton_to_dot(pipeline("F p", AP1))
        assert text.startswith("digraph")
        assert "doublecircle" in text
