#include <doctest.h>

#include <algorithm>
#include <vector>

#include "monaut/encoding.hpp"
#include "monaut/oracle.hpp"
#include "monaut/universal.hpp"
#include "support/figures.hpp"

using namespace monaut;
using fixtures::lasso;
using fixtures::make_system;
using fixtures::word;

TEST_CASE("inserting a first-order track into a lasso") {
    SUBCASE("position beyond the prefix unrolls the period") {
        LassoWord w = lasso_with_fo_track(lasso("", "1"), 0, 2);
        CHECK(w == lasso("01 01 11", "01"));
    }
    SUBCASE("position inside the prefix leaves the shape alone") {
        LassoWord w = lasso_with_fo_track(lasso("0 1", "0"), 0, 0);
        CHECK(w == lasso("10 01", "00"));
    }
    SUBCASE("unrolling keeps whole periods") {
        LassoWord w = lasso_with_fo_track(lasso("1", "0 1"), 0, 5);
        CHECK(w.prefix().size() == 7);
        CHECK(w == lasso("01 00 01 00 01 10 01", "00 01"));
    }
    SUBCASE("the track index picks the insertion point") {
        LassoWord w = lasso_with_fo_track(lasso("1", "0"), 1, 0);
        CHECK(w == lasso("11", "00"));
    }
}

TEST_CASE("universal membership search bound") {
    BuchiAutomaton a = fixtures::fig_exists();

    SUBCASE("the running example settles immediately") {
        CHECK(universal_candidate_bound(a, lasso("", "1"), 0) == 1);
        CHECK(universal_candidate_bound(a, lasso("1", "0"), 0) == 2);
    }

    SUBCASE("width is checked") {
        CHECK_THROWS_AS(universal_candidate_bound(a, lasso("11", "00"), 0),
                        WidthMismatchError);
    }

    SUBCASE("verdicts are stable past the bound") {
        RandomAutomatonOptions options;
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            options.seed = seed;
            BuchiAutomaton r =
                random_model_automaton(VariableSignature({"x1"}, {"X1"}), options);
            for (const LassoWord& w :
                 {lasso("", "1"), lasso("1", "0"), lasso("0 1", "1 0"), lasso("", "0")}) {
                const std::size_t bound = universal_candidate_bound(r, w, 0);
                bool all = true;
                for (std::size_t n = 0; all && n <= bound; ++n) {
                    all = lasso_membership(r, lasso_with_fo_track(w, 0, n));
                }
                bool still = all;
                for (std::size_t n = bound + 1; still && n <= bound + 8; ++n) {
                    still = lasso_membership(r, lasso_with_fo_track(w, 0, n));
                }
                CHECK(all == still);
            }
        }
    }
}

TEST_CASE("brute-force universal membership") {
    BuchiAutomaton a = fixtures::fig_exists();

    CHECK(brute_force_universal_membership(a, "x1", lasso("", "1")));
    CHECK(!brute_force_universal_membership(a, "x1", lasso("1", "0")));
    CHECK(brute_force_universal_membership(a, "x1", lasso("0", "0 1")));
    CHECK(!brute_force_universal_membership(a, "x1", lasso("1 1 1", "0")));

    SUBCASE("a tautology holds for every placement") {
        BuchiAutomaton top = valid_encodings_automaton(VariableSignature({"x1"}, {"X1"}));
        bool all = true;
        fixtures::for_each_lasso(1, 2, 2, [&](const LassoWord& w) {
            all = all && brute_force_universal_membership(top, "x1", w);
        });
        CHECK(all);
    }

    SUBCASE("rejects second-order variables and bad widths") {
        CHECK_THROWS_AS(brute_force_universal_membership(a, "X1", lasso("", "1")),
                        NotFirstOrderError);
        CHECK_THROWS_AS(brute_force_universal_membership(a, "x1", lasso("11", "00")),
                        WidthMismatchError);
    }
}

TEST_CASE("bounded language equality") {
    SUBCASE("an automaton equals itself") {
        BuchiAutomaton a = fixtures::fig_exists();
        CHECK(!languages_equal_on_lassos(a, a, 3, 3).has_value());
    }

    SUBCASE("the quantified figure matches the infinitely-often automaton") {
        CHECK(!languages_equal_on_lassos(fixtures::fig_result(), fixtures::inf_often(),
                                         3, 3)
                   .has_value());
    }

    SUBCASE("projection of the two-variable figure matches the drawn one") {
        BuchiAutomaton projected = project_variable(fixtures::fig_formula(), "x2");
        CHECK(!languages_equal_on_lassos(projected, fixtures::fig_exists(), 3, 3)
                   .has_value());
    }

    SUBCASE("the first mismatch in enumeration order comes back") {
        BuchiAutomaton all(make_system(VariableSignature({}, {"X1"}), 1, {0}, {0},
                                       {{0, "0", 0}, {0, "1", 0}}));
        std::optional<LassoWord> cex =
            languages_equal_on_lassos(all, fixtures::inf_often(), 2, 2);
        REQUIRE(cex.has_value());
        CHECK(*cex == lasso("", "0"));
    }

    SUBCASE("signatures must match exactly") {
        CHECK_THROWS_AS(
            languages_equal_on_lassos(fixtures::fig_exists(), fixtures::inf_often(), 1, 1),
            SignatureMismatchError);
    }
}

TEST_CASE("random model automata") {
    VariableSignature sig({"x1"}, {"X1"});
    RandomAutomatonOptions options;
    options.seed = 7;

    SUBCASE("the same seed reproduces the same automaton") {
        BuchiAutomaton a = random_model_automaton(sig, options);
        BuchiAutomaton b = random_model_automaton(sig, options);
        CHECK(a.core().transitions == b.core().transitions);
        CHECK(a.core().initial == b.core().initial);
        CHECK(a.core().accepting == b.core().accepting);
    }

    SUBCASE("different seeds explore different shapes") {
        options.seed = 1;
        BuchiAutomaton a = random_model_automaton(sig, options);
        options.seed = 2;
        BuchiAutomaton b = random_model_automaton(sig, options);
        CHECK(a.core().transitions != b.core().transitions);
    }

    SUBCASE("results are already normalized") {
        for (std::uint64_t seed : {0, 3, 11}) {
            options.seed = seed;
            BuchiAutomaton a = random_model_automaton(sig, options);
            BuchiAutomaton again = acyclic_fo_normalize(a);
            CHECK(!languages_equal_on_lassos(a, again, 3, 3).has_value());
        }
    }
}

TEST_CASE("pipeline output agrees with the oracle on random automata") {
    VariableSignature sig({"x1"}, {"X1"});
    RandomAutomatonOptions options;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        options.seed = seed;
        BuchiAutomaton a = random_model_automaton(sig, options);
        BuchiAutomaton quantified = universal_quantify(a, "x1");
        BuchiAutomaton projected = project_variable(a, "x1");
        fixtures::for_each_lasso(1, 2, 2, [&](const LassoWord& w) {
            const bool oracle = brute_force_universal_membership(a, "x1", w);
            CHECK(lasso_membership(quantified, w) == oracle);
            if (oracle) {
                CHECK(lasso_membership(projected, w));
            }
        });
    }
}

TEST_CASE("accepted lassos of the quantified figure pass the oracle") {
    BuchiAutomaton a = fixtures::fig_exists();
    BuchiAutomaton quantified = universal_quantify(a, "x1");
    std::vector<LassoWord> accepted = enumerate_accepted_lassos(quantified, 2, 2);
    CHECK(!accepted.empty());
    for (const LassoWord& w : accepted) {
        CHECK(brute_force_universal_membership(a, "x1", w));
    }
}
