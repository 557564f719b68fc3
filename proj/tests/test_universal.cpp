#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <vector>

#include "monaut/encoding.hpp"
#include "monaut/universal.hpp"
#include "support/figures.hpp"

using namespace monaut;
using fixtures::lasso;
using fixtures::make_system;
using fixtures::same_on_lassos;
using fixtures::word;

namespace {

using WordPredicate = std::function<bool(const std::vector<Symbol>&)>;

/// Compares a finite automaton against a predicate on every word up to the
/// given length, over the automaton's full alphabet.
void check_finite_language(const FiniteAutomaton& a, std::size_t max_len,
                           const WordPredicate& expect) {
    const std::uint32_t width = a.signature().width();
    const std::uint64_t alphabet = std::uint64_t{1} << width;
    for (std::size_t len = 0; len <= max_len; ++len) {
        std::vector<std::uint64_t> digits(len, 0);
        while (true) {
            std::vector<Symbol> w;
            w.reserve(len);
            for (std::uint64_t d : digits) {
                w.push_back(Symbol(d, width));
            }
            CHECK(finite_membership(a, w) == expect(w));
            std::size_t i = 0;
            while (i < len && ++digits[i] == alphabet) {
                digits[i] = 0;
                ++i;
            }
            if (i == len) {
                break;
            }
        }
    }
}

bool contains_one(const std::vector<Symbol>& w) {
    return std::any_of(w.begin(), w.end(), [](const Symbol& s) { return s.bit(0); });
}

bool one_past_start(const std::vector<Symbol>& w) {
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i].bit(0)) {
            return true;
        }
    }
    return false;
}

std::vector<std::tuple<StateId, std::string, StateId>> edge_list(
    const TransitionSystem& ts) {
    std::vector<std::tuple<StateId, std::string, StateId>> out;
    for (const Transition& t : ts.transitions) {
        out.push_back({t.src, t.label.to_string(), t.dst});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// One state, both symbols self-loop; the variable can fire any number of
/// times, so the raw language contains invalid encodings.
BuchiAutomaton greedy_loop() {
    return BuchiAutomaton(make_system(VariableSignature({"x1"}, {}), 1, {0}, {0},
                                      {{0, "0", 0}, {0, "1", 0}}));
}

}  // namespace

TEST_CASE("normalization restricts to valid encodings") {
    auto agrees_with_intersection = [](const BuchiAutomaton& a, std::size_t max_u,
                                       std::size_t max_v) {
        BuchiAutomaton expected =
            buchi_intersection(a, valid_encodings_automaton(a.signature()));
        return same_on_lassos(acyclic_fo_normalize(a), expected, max_u, max_v);
    };

    CHECK(agrees_with_intersection(fixtures::fig_exists(), 3, 3));
    CHECK(agrees_with_intersection(greedy_loop(), 4, 3));
    CHECK(agrees_with_intersection(fixtures::fig_formula(), 2, 2));

    SUBCASE("already-acyclic firing keeps its shape") {
        BuchiAutomaton n = acyclic_fo_normalize(fixtures::fig_exists());
        CHECK(n.state_count() == 3);
        CHECK(edge_list(n.core()) == edge_list(fixtures::fig_exists().core()));
    }

    SUBCASE("a repeatable firing loop splits into layers") {
        BuchiAutomaton n = acyclic_fo_normalize(greedy_loop());
        CHECK(n.state_count() == 2);
        CHECK(lasso_membership(n, lasso("1", "0")));
        CHECK(lasso_membership(n, lasso("0 1", "0")));
        CHECK(!lasso_membership(n, lasso("", "1")));
        CHECK(!lasso_membership(n, lasso("0", "0")));
        CHECK(!lasso_membership(n, lasso("1 1", "0")));
    }

    SUBCASE("no first-order variables: unchanged") {
        BuchiAutomaton n = acyclic_fo_normalize(fixtures::inf_often());
        CHECK(n.state_count() == fixtures::inf_often().state_count());
        CHECK(edge_list(n.core()) == edge_list(fixtures::inf_often().core()));
    }
}

TEST_CASE("subset construction mirrors the drawn figure") {
    SubsetAutomaton sub = subset_construction(fixtures::fig_exists(), "x1");
    const BuchiAutomaton& a = sub.automaton;

    CHECK(a.state_count() == 5);
    CHECK(sub.members == std::vector<std::vector<StateId>>{
                             {0}, {0, 1}, {0, 1, 2}, {1}, {1, 2}});
    CHECK(a.core().state_labels == std::vector<std::string>{
                                       "{q0}", "{q0,q1}", "{q0,q1,q2}", "{q1}", "{q1,q2}"});
    CHECK(a.initial_states() == std::vector<StateId>{0});
    CHECK(a.accepting_states() == std::vector<StateId>{0, 1, 2, 3, 4});
    CHECK(a.signature().width() == 1);
    CHECK(!a.signature().has_variable("x1"));

    CHECK(edge_list(a.core()) ==
          std::vector<std::tuple<StateId, std::string, StateId>>{
              {0, "0", 1}, {0, "0", 3}, {0, "1", 1}, {0, "1", 3},
              {1, "0", 1}, {1, "0", 3}, {1, "1", 1}, {1, "1", 2}, {1, "1", 3}, {1, "1", 4},
              {2, "0", 2}, {2, "0", 4}, {2, "1", 2}, {2, "1", 4}});

    SUBCASE("full exploration adds the unreachable subsets") {
        SubsetAutomaton full =
            subset_construction(fixtures::fig_exists(), "x1", SubsetExploration::Full);
        CHECK(full.members == std::vector<std::vector<StateId>>{
                                  {0}, {0, 1}, {0, 1, 2}, {0, 2}, {1}, {1, 2}, {2}});
        auto edges = edge_list(full.automaton.core());
        auto has = [&](StateId s, const std::string& l, StateId d) {
            return std::find(edges.begin(), edges.end(), std::make_tuple(s, l, d)) !=
                   edges.end();
        };
        // {q0,q2} can fire via q0 while q2 idles; {q2} alone cannot fire.
        CHECK(has(3, "0", 5));
        CHECK(has(3, "0", 2));
        CHECK(has(3, "1", 5));
        CHECK(has(3, "1", 2));
        for (const auto& [s, l, d] : edges) {
            CHECK(s != 6);
        }
    }

    SUBCASE("second-order variables are rejected") {
        CHECK_THROWS_AS(subset_construction(fixtures::fig_exists(), "X1"),
                        NotFirstOrderError);
    }

    SUBCASE("epsilon transitions both keep and move the source") {
        BuchiAutomaton e(make_system(VariableSignature({"x1"}, {"X1"}), 3, {0}, {2},
                                     {{0, "eps", 1}, {1, "10", 2}, {2, "00", 2}}));
        SubsetAutomaton sube = subset_construction(e, "x1");
        CHECK(sube.members ==
              std::vector<std::vector<StateId>>{{0}, {0, 1}, {1}, {2}});
        CHECK(edge_list(sube.automaton.core()) ==
              std::vector<std::tuple<StateId, std::string, StateId>>{
                  {0, "eps", 1}, {0, "eps", 2},
                  {1, "eps", 1}, {1, "eps", 2},
                  {2, "0", 3}});
    }

    SUBCASE("initial states seed every non-empty combination") {
        TransitionSystem two = fixtures::fig_exists().core();
        two.initial = {0, 1};
        SubsetAutomaton sub2 = subset_construction(BuchiAutomaton(std::move(two)), "x1");
        CHECK(sub2.automaton.initial_states().size() == 3);
        std::set<std::vector<StateId>> seeds;
        for (StateId s : sub2.automaton.initial_states()) {
            seeds.insert(sub2.members[s]);
        }
        CHECK(seeds == std::set<std::vector<StateId>>{{0}, {1}, {0, 1}});
    }
}

TEST_CASE("cycle languages need a read symbol and an accepting visit") {
    BuchiAutomaton a = fixtures::fig_exists();
    CHECK(finite_is_empty(cycle_language_with_accept(a, 0, "x1")));
    CHECK(finite_is_empty(cycle_language_with_accept(a, 1, "x1")));
    check_finite_language(cycle_language_with_accept(a, 2, "x1"), 5,
                          [](const std::vector<Symbol>& w) { return !w.empty(); });

    SUBCASE("the accepting state may sit mid-cycle") {
        BuchiAutomaton pair(make_system(VariableSignature({"x1"}, {"X1"}), 2, {0}, {1},
                                        {{0, "00", 1}, {1, "00", 0}}));
        auto even_zeros = [](const std::vector<Symbol>& w) {
            return !w.empty() && w.size() % 2 == 0 && !contains_one(w);
        };
        check_finite_language(cycle_language_with_accept(pair, 0, "x1"), 5, even_zeros);
        check_finite_language(cycle_language_with_accept(pair, 1, "x1"), 5, even_zeros);
    }

    SUBCASE("a cycle of only epsilon transitions is not a period") {
        BuchiAutomaton e(make_system(VariableSignature({"x1"}, {"X1"}), 1, {0}, {0},
                                     {{0, "eps", 0}, {0, "00", 0}}));
        FiniteAutomaton cycles = cycle_language_with_accept(e, 0, "x1");
        CHECK(!finite_accepts_epsilon(cycles));
        CHECK(finite_membership(cycles, word("0")));
        CHECK(finite_membership(cycles, word("0 0")));
        CHECK(!finite_membership(cycles, word("1")));
    }

    SUBCASE("unknown state") {
        CHECK_THROWS_AS(cycle_language_with_accept(a, 99, "x1"), UnknownStateError);
    }
}

TEST_CASE("continuable period words of the running example") {
    BuchiAutomaton a = fixtures::fig_exists();
    check_finite_language(u_language(a, 0, "x1"), 5, one_past_start);
    check_finite_language(u_language(a, 1, "x1"), 5, contains_one);
    check_finite_language(u_language(a, 2, "x1"), 5,
                          [](const std::vector<Symbol>& w) { return !w.empty(); });
    CHECK_THROWS_AS(u_language(a, 99, "x1"), UnknownStateError);
}

TEST_CASE("pipeline artifacts expose every stage") {
    QuantPipelineArtifacts art = universal_quantify_artifacts(fixtures::fig_exists(), "x1");

    CHECK(art.variable == "x1");
    CHECK(art.normalized.state_count() == 3);
    CHECK(art.subset.automaton.state_count() == 5);
    CHECK(art.cycle_automata.size() == 3);
    CHECK(art.u_languages.size() == 3);
    CHECK(art.path_automata.size() == 9);

    SUBCASE("path languages match the hand computation") {
        auto any_word = [](const std::vector<Symbol>&) { return true; };
        check_finite_language(art.path_automata.at({0, 0}), 4, any_word);
        check_finite_language(art.path_automata.at({1, 1}), 4, any_word);
        check_finite_language(art.path_automata.at({2, 2}), 4, any_word);
        check_finite_language(art.path_automata.at({0, 1}), 4,
                              [](const std::vector<Symbol>& w) { return !w.empty(); });
        check_finite_language(art.path_automata.at({0, 2}), 4, one_past_start);
        check_finite_language(art.path_automata.at({1, 2}), 4, contains_one);
        CHECK(finite_is_empty(art.path_automata.at({1, 0})));
        CHECK(finite_is_empty(art.path_automata.at({2, 0})));
        CHECK(finite_is_empty(art.path_automata.at({2, 1})));
    }

    SUBCASE("only subsets with an accepting member get widgets") {
        REQUIRE(art.widget_languages.size() == 2);
        CHECK(art.widget_languages.count(2) == 1);
        CHECK(art.widget_languages.count(4) == 1);
        CHECK(finite_is_empty(art.widget_languages.at(4)));
        check_finite_language(art.widget_languages.at(2), 5, one_past_start);
    }

    SUBCASE("widget preconditions") {
        CHECK_THROWS_AS(
            widget_language(art.subset, 0, art.normalized, art.u_languages),
            NoAcceptingMemberError);
        CHECK_THROWS_AS(
            widget_language(art.subset, 2, art.normalized, {}),
            UnknownStateError);
    }

    SUBCASE("assembly uses exactly the non-empty widgets") {
        BuchiAutomaton rebuilt = assemble(art.subset, art.widget_languages);
        CHECK(same_on_lassos(rebuilt, art.result, 3, 3));
        BuchiAutomaton none = assemble(art.subset, {});
        CHECK(buchi_is_empty(none));
        CHECK(none.state_count() == 0);
    }
}

TEST_CASE("universal quantification matches the figure") {
    BuchiAutomaton result = universal_quantify(fixtures::fig_exists(), "x1");

    CHECK(same_on_lassos(result, fixtures::fig_result(), 4, 4));
    CHECK(same_on_lassos(result, fixtures::inf_often(), 4, 4));
    CHECK(buchi_witness(result).has_value());

    SUBCASE("the live subset states survive the trim") {
        const std::vector<std::string>& labels = result.core().state_labels;
        for (const char* want : {"{q0}", "{q0,q1}", "{q0,q1,q2}", "rep:{q0,q1,q2}"}) {
            CHECK(std::count(labels.begin(), labels.end(), want) == 1);
        }
        CHECK(std::count(labels.begin(), labels.end(), "{q1}") == 0);
        CHECK(std::count(labels.begin(), labels.end(), "{q1,q2}") == 0);
    }

    SUBCASE("full exploration changes nothing about the language") {
        QuantPipelineArtifacts full = universal_quantify_artifacts(
            fixtures::fig_exists(), "x1", SubsetExploration::Full);
        CHECK(full.subset.automaton.state_count() == 7);
        CHECK(same_on_lassos(full.result, result, 3, 3));
    }
}

TEST_CASE("universal quantification, small closed cases") {
    SUBCASE("an unsatisfiable input stays unsatisfiable") {
        TransitionSystem dead = fixtures::fig_exists().core();
        dead.accepting.clear();
        BuchiAutomaton result = universal_quantify(BuchiAutomaton(std::move(dead)), "x1");
        CHECK(buchi_is_empty(result));
        CHECK(result.state_count() == 0);
    }

    SUBCASE("a tautology accepts every remaining interpretation") {
        VariableSignature sig({"x1"}, {"X1"});
        BuchiAutomaton result = universal_quantify(valid_encodings_automaton(sig), "x1");
        bool all = true;
        fixtures::for_each_lasso(1, 2, 2, [&](const LassoWord& w) {
            all = all && lasso_membership(result, w);
        });
        CHECK(all);
    }

    SUBCASE("membership at every position forces the full set") {
        // X1(x1) as an automaton; for all x1 it holds only when X1 = N.
        BuchiAutomaton member(make_system(
            VariableSignature({"x1"}, {"X1"}), 2, {0}, {1},
            {{0, "00", 0}, {0, "01", 0}, {0, "11", 1}, {1, "00", 1}, {1, "01", 1}}));
        BuchiAutomaton result = universal_quantify(member, "x1");
        CHECK(lasso_membership(result, lasso("", "1")));
        CHECK(lasso_membership(result, lasso("1 1", "1")));
        CHECK(!lasso_membership(result, lasso("0", "1")));
        CHECK(!lasso_membership(result, lasso("1", "0 1")));
        CHECK(!lasso_membership(result, lasso("", "0")));
    }

    SUBCASE("no universal witness when the bound variable must vary") {
        // x1 < x2 with X1(x2): no single x2 works for every x1.
        CHECK(buchi_is_empty(universal_quantify(fixtures::fig_formula(), "x2")));
        CHECK(buchi_is_empty(universal_quantify(fixtures::fig_formula(), "x1")));
    }
}
