#include <span>
#include <string>
#include <vector>

#include "doctest.h"
#include "monaut/errors.hpp"
#include "monaut/formula.hpp"
#include "monaut/parser.hpp"

using namespace monaut;

namespace {

FormulaRef running_example() {
    return forall("x1", exists("x2", conj(less("x1", "x2"), member("X1", "x2"))));
}

std::vector<std::string> names(std::span<const std::string> vars) {
    return {vars.begin(), vars.end()};
}

}  // namespace

TEST_CASE("formula builders validate their variable names") {
    SUBCASE("kind mismatches") {
        CHECK_THROWS_AS(eq_fo("X1", "x2"), NotFirstOrderError);
        CHECK_THROWS_AS(member("X1", "X2"), NotFirstOrderError);
        CHECK_THROWS_AS(exists("X1", truth()), NotFirstOrderError);
        CHECK_THROWS_AS(forall("X1", truth()), NotFirstOrderError);
        CHECK_THROWS_AS(member("x1", "x2"), ScopeError);
        CHECK_THROWS_AS(eq_so("x1", "X1"), ScopeError);
    }

    SUBCASE("malformed names") {
        CHECK_THROWS_AS(less("x1", "2x"), ScopeError);
        CHECK_THROWS_AS(less("", "x1"), ScopeError);
        CHECK_THROWS_AS(member("X 1", "x1"), ScopeError);
        CHECK_THROWS_AS(custom_atom("3bad", {}, {}), ScopeError);
    }

    SUBCASE("underscores and digits are fine after the first letter") {
        CHECK_NOTHROW(less("pos_1", "pos_2"));
        CHECK_NOTHROW(member("Evens", "n0"));
    }

    SUBCASE("offset constants start at one") {
        CHECK_THROWS_AS(offset_eq("x2", "x1", 0), Error);
        CHECK_NOTHROW(offset_eq("x2", "x1", 1));
    }

    SUBCASE("structural equality") {
        CHECK(*running_example() == *running_example());
        CHECK(*eq_fo("x1", "x2") != *eq_fo("x2", "x1"));
        CHECK(*offset_eq("x2", "x1", 2) != *offset_eq("x2", "x1", 3));
        CHECK(*neg(truth()) != *truth());

        FormulaRef shared = member("X1", "x1");
        CHECK(*conj(shared, shared) == *conj(member("X1", "x1"), member("X1", "x1")));
    }
}

TEST_CASE("free variables form the automaton signature") {
    SUBCASE("closed up to predicates") {
        VariableSignature sig = signature_for(*running_example());
        CHECK(sig.fo_count() == 0);
        CHECK(names(sig.so_vars()) == std::vector<std::string>{"X1"});
    }

    SUBCASE("open formulas keep their first-order variables") {
        VariableSignature sig =
            signature_for(*conj(less("x2", "x1"), member("X1", "x1")));
        CHECK(names(sig.fo_vars()) == std::vector<std::string>{"x1", "x2"});
        CHECK(names(sig.so_vars()) == std::vector<std::string>{"X1"});
    }

    SUBCASE("bound variables are not free") {
        VariableSignature sig = signature_for(*exists("x2", less("x1", "x2")));
        CHECK(names(sig.fo_vars()) == std::vector<std::string>{"x1"});
    }

    SUBCASE("custom atoms contribute both kinds") {
        VariableSignature sig =
            signature_for(*custom_atom("between", {"x3", "x1"}, {"X2"}));
        CHECK(names(sig.fo_vars()) == std::vector<std::string>{"x1", "x3"});
        CHECK(names(sig.so_vars()) == std::vector<std::string>{"X2"});
    }

    SUBCASE("names sort as strings") {
        VariableSignature sig =
            signature_for(*conj(less("y", "x10"), less("x10", "x2")));
        CHECK(names(sig.fo_vars()) == std::vector<std::string>{"x10", "x2", "y"});
    }
}

TEST_CASE("scope checking rejects ambiguous variable use") {
    CHECK_NOTHROW(check_scopes(*running_example()));

    SUBCASE("rebinding in scope") {
        FormulaRef f = forall("x1", exists("x1", less("x1", "x1")));
        CHECK_THROWS_AS(check_scopes(*f), ScopeError);
    }

    SUBCASE("free and bound at once") {
        FormulaRef f =
            conj(member("X1", "x1"), exists("x1", member("X1", "x1")));
        CHECK_THROWS_AS(check_scopes(*f), ScopeError);
    }

    SUBCASE("disjoint subtrees may reuse a name") {
        FormulaRef f = conj(exists("x1", member("X1", "x1")),
                            exists("x1", member("X2", "x1")));
        CHECK_NOTHROW(check_scopes(*f));
    }
}

TEST_CASE("negation normal form") {
    FormulaRef a = member("X1", "x1");
    FormulaRef b = less("x1", "x2");

    SUBCASE("negation distributes over connectives") {
        CHECK(*to_nnf(neg(conj(a, b))) == *disj(neg(a), neg(b)));
        CHECK(*to_nnf(neg(disj(a, b))) == *conj(neg(a), neg(b)));
    }

    SUBCASE("negation flips quantifiers") {
        FormulaRef f = neg(forall("x1", member("X1", "x1")));
        CHECK(*to_nnf(f) == *exists("x1", neg(member("X1", "x1"))));

        FormulaRef g = neg(exists("x1", conj(a, neg(b))));
        CHECK(*to_nnf(g) == *forall("x1", disj(neg(a), b)));
    }

    SUBCASE("equivalence expands before negations are pushed") {
        CHECK(*to_nnf(iff(a, b)) == *disj(conj(a, b), conj(neg(a), neg(b))));
        CHECK(*to_nnf(neg(iff(a, b))) == *disj(conj(a, neg(b)), conj(neg(a), b)));
    }

    SUBCASE("double negation cancels") {
        CHECK(*to_nnf(neg(neg(a))) == *a);
        CHECK(*to_nnf(neg(truth())) == *falsity());
        CHECK(*to_nnf(neg(falsity())) == *truth());
    }

    SUBCASE("idempotent once in normal form") {
        FormulaRef f = neg(forall("x1", iff(member("X1", "x1"), neg(b))));
        FormulaRef once = to_nnf(f);
        CHECK(*to_nnf(once) == *once);
    }
}

TEST_CASE("parsing the concrete syntax") {
    SUBCASE("the running example") {
        FormulaRef f = parse_formula("forall x1. exists x2. (x1 < x2 & X1(x2))");
        CHECK(*f == *running_example());
    }

    SUBCASE("offsets and equivalences") {
        FormulaRef f = parse_formula(
            "forall x1. exists x2. (x2 = x1 + 2 & (X1(x1) <-> X1(x2)))");
        FormulaRef expected =
            forall("x1", exists("x2", conj(offset_eq("x2", "x1", 2),
                                           iff(member("X1", "x1"),
                                               member("X1", "x2")))));
        CHECK(*f == *expected);
    }

    SUBCASE("operator precedence, tightest first: !, &, |, <->") {
        FormulaRef f =
            parse_formula("!X1(x1) & X2(x1) | X3(x1) <-> X4(x1)");
        FormulaRef expected =
            iff(disj(conj(neg(member("X1", "x1")), member("X2", "x1")),
                     member("X3", "x1")),
                member("X4", "x1"));
        CHECK(*f == *expected);
    }

    SUBCASE("quantifier scope runs right as far as possible") {
        FormulaRef f = parse_formula("exists x1. X1(x1) & X2(x1)");
        CHECK(*f == *exists("x1", conj(member("X1", "x1"), member("X2", "x1"))));

        FormulaRef cut = parse_formula("(exists x1. X1(x1)) & X2(x2)");
        CHECK(*cut == *conj(exists("x1", member("X1", "x1")), member("X2", "x2")));
    }

    SUBCASE("each atom form") {
        CHECK(*parse_formula("x1 = x2") == *eq_fo("x1", "x2"));
        CHECK(*parse_formula("X1 = X2") == *eq_so("X1", "X2"));
        CHECK(*parse_formula("X1(x1)") == *member("X1", "x1"));
        CHECK(*parse_formula("x1 < x2") == *less("x1", "x2"));
        CHECK(*parse_formula("x2 = x1 + 7") == *offset_eq("x2", "x1", 7));
        CHECK(*parse_formula("true") == *truth());
        CHECK(*parse_formula("false") == *falsity());
    }

    SUBCASE("whitespace is free-form") {
        CHECK(*parse_formula("forall   x1 .x1=x1") == *forall("x1", eq_fo("x1", "x1")));
    }
}

TEST_CASE("parse errors carry byte offsets") {
    auto position_of = [](std::string_view text,
                          const ParseOptions& options = {}) -> std::size_t {
        try {
            parse_formula(text, options);
        } catch (const SyntaxError& e) {
            return e.position();
        }
        return SIZE_MAX;
    };

    SUBCASE("truncated input") {
        CHECK(position_of("x1 <") == 4);
        CHECK(position_of("") == 0);
        CHECK(position_of("(x1 < x2") == 8);
    }

    SUBCASE("kind misuse") {
        CHECK(position_of("forall X1. true") == 7);
        CHECK(position_of("X1(X2)") == 3);
        CHECK(position_of("x1(x2)") == 2);
        CHECK(position_of("x1 = X2") == 5);
    }

    SUBCASE("offset limits") {
        CHECK(position_of("x1 = x2 + 0") == 10);
        CHECK(position_of("x1 = x2 + 65") == 10);
        CHECK(*parse_formula("x1 = x2 + 65", {.max_offset = 100}) ==
              *offset_eq("x1", "x2", 65));
        CHECK(position_of("x1 = x2 + 99999999999999999999") == 10);
    }

    SUBCASE("stray input") {
        CHECK(position_of("true true") == 5);
        CHECK(position_of("x1 # x2") == 3);
    }

    SUBCASE("scope violations surface as ScopeError") {
        CHECK_THROWS_AS(parse_formula("forall x1. exists x1. x1 < x1"), ScopeError);
        CHECK_THROWS_AS(parse_formula("X1(x1) & exists x1. X1(x1)"), ScopeError);
    }
}

TEST_CASE("printing round-trips through the parser") {
    SUBCASE("pinned renderings") {
        CHECK(to_string(*running_example()) ==
              "forall x1. exists x2. x1 < x2 & X1(x2)");
        CHECK(to_string(*offset_eq("x2", "x1", 2)) == "x2 = x1 + 2");
        CHECK(to_string(*neg(less("x1", "x2"))) == "!(x1 < x2)");
        CHECK(to_string(*neg(member("X1", "x1"))) == "!X1(x1)");
        CHECK(to_string(*conj(truth(), iff(falsity(), truth()))) ==
              "true & (false <-> true)");
    }

    SUBCASE("parse of the rendering rebuilds the tree") {
        std::vector<FormulaRef> corpus = {
            running_example(),
            to_nnf(neg(running_example())),
            iff(disj(member("X1", "x1"), neg(member("X2", "x1"))),
                conj(less("x1", "x2"), eq_so("X1", "X2"))),
            conj(conj(truth(), falsity()), conj(truth(), truth())),
            disj(member("X1", "x1"), disj(member("X2", "x1"), member("X3", "x1"))),
            forall("x1", disj(neg(member("X1", "x1")),
                              exists("x2", conj(offset_eq("x2", "x1", 3),
                                                member("X1", "x2"))))),
            neg(neg(member("X1", "x1"))),
            iff(iff(truth(), falsity()), truth()),
        };
        for (const FormulaRef& f : corpus) {
            CAPTURE(to_string(*f));
            CHECK(*parse_formula(to_string(*f)) == *f);
        }
    }
}
