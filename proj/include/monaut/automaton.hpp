#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monaut/signature.hpp"

namespace monaut {

using StateId = std::uint32_t;

/// Transition label: either a concrete symbol or epsilon (reads nothing).
class Label {
public:
    static Label epsilon() { return Label(); }
    static Label symbol(Symbol s) {
        Label l;
        l.sym_ = s;
        return l;
    }

    bool is_epsilon() const { return !sym_.has_value(); }
    const Symbol& symbol() const { return *sym_; }

    std::string to_string() const { return sym_ ? sym_->to_string() : "eps"; }

    friend bool operator==(const Label& a, const Label& b) = default;

    /// Epsilon sorts before every symbol.
    friend bool operator<(const Label& a, const Label& b) {
        if (a.is_epsilon() != b.is_epsilon()) {
            return a.is_epsilon();
        }
        return !a.is_epsilon() && a.symbol() < b.symbol();
    }

private:
    std::optional<Symbol> sym_;
};

struct Transition {
    StateId src = 0;
    Label label;
    StateId dst = 0;

    friend bool operator==(const Transition& a, const Transition& b) = default;
    friend bool operator<(const Transition& a, const Transition& b) {
        if (a.src != b.src) return a.src < b.src;
        if (!(a.label == b.label)) return a.label < b.label;
        return a.dst < b.dst;
    }
};

/// The shared structure of both automaton kinds. States are 0..state_count-1.
/// `state_labels` is optional debug metadata: either empty or one string per
/// state; it never affects any language.
struct TransitionSystem {
    VariableSignature signature;
    std::size_t state_count = 0;
    std::vector<Transition> transitions;
    std::vector<StateId> initial;
    std::vector<StateId> accepting;
    std::vector<std::string> state_labels;

    /// Sorts and deduplicates transitions and state sets.
    void canonicalize();

    /// Throws MalformedAutomatonError / WidthMismatchError on dangling state
    /// ids, label width disagreements, or mis-sized state_labels.
    void validate() const;
};

/// Automaton over infinite words. A run is an infinite transition sequence
/// from an initial state; it accepts when it visits an accepting state
/// infinitely often AND takes infinitely many non-epsilon transitions (so a
/// run that eventually reads nothing accepts no word).
class BuchiAutomaton {
public:
    explicit BuchiAutomaton(TransitionSystem core);

    const VariableSignature& signature() const { return core_.signature; }
    std::size_t state_count() const { return core_.state_count; }
    const std::vector<Transition>& transitions() const { return core_.transitions; }
    const std::vector<StateId>& initial_states() const { return core_.initial; }
    const std::vector<StateId>& accepting_states() const { return core_.accepting; }
    bool is_initial(StateId q) const;
    bool is_accepting(StateId q) const;
    const TransitionSystem& core() const { return core_; }

private:
    TransitionSystem core_;
};

/// Automaton over finite words; epsilon transitions read nothing. A word is
/// accepted when some path from an initial to an accepting state spells it.
class FiniteAutomaton {
public:
    explicit FiniteAutomaton(TransitionSystem core);

    const VariableSignature& signature() const { return core_.signature; }
    std::size_t state_count() const { return core_.state_count; }
    const std::vector<Transition>& transitions() const { return core_.transitions; }
    const std::vector<StateId>& initial_states() const { return core_.initial; }
    const std::vector<StateId>& accepting_states() const { return core_.accepting; }
    bool is_initial(StateId q) const;
    bool is_accepting(StateId q) const;
    const TransitionSystem& core() const { return core_; }

private:
    TransitionSystem core_;
};

/// An ultimately periodic word u * v^omega, given by finite prefix u and
/// non-empty period v of uniform width. Two different (u, v) pairs may spell
/// the same word; operations on lasso words depend only on the spelled word.
class LassoWord {
public:
    LassoWord(std::vector<Symbol> prefix, std::vector<Symbol> period);

    std::uint32_t width() const { return width_; }
    const std::vector<Symbol>& prefix() const { return prefix_; }
    const std::vector<Symbol>& period() const { return period_; }

    /// The n-th letter of the spelled infinite word.
    const Symbol& symbol_at(std::size_t n) const;

    std::string to_string() const;

    friend bool operator==(const LassoWord& a, const LassoWord& b) = default;

private:
    std::vector<Symbol> prefix_;
    std::vector<Symbol> period_;
    std::uint32_t width_ = 0;
};

/// True iff the automaton accepts no word. Decided on strongly connected
/// components: the language is non-empty iff some component reachable from an
/// initial state contains an accepting state and an internal non-epsilon
/// transition (two cycles inside one component combine into a single run, and
/// the non-epsilon edge guarantees an infinite word is read).
bool buchi_is_empty(const BuchiAutomaton& a);

/// Membership of the spelled word u * v^omega. Throws WidthMismatchError when
/// the word width differs from the automaton width.
bool lasso_membership(const BuchiAutomaton& a, const LassoWord& w);

/// Removes states that are unreachable or from which no accepting run exists,
/// renumbering the survivors in order. The language is unchanged; an automaton
/// with empty language trims to one with no states.
BuchiAutomaton trim(const BuchiAutomaton& a);

/// Removes states that are unreachable or cannot reach an accepting state.
FiniteAutomaton trim(const FiniteAutomaton& a);

/// Merges bisimilar states: two states are merged when they agree on
/// acceptance and have matching successors, class for class, under every
/// label (epsilon treated as a label). The language is unchanged and the
/// result is never larger; intermediate products shrink a lot. State labels
/// are dropped.
FiniteAutomaton reduce(const FiniteAutomaton& a);
BuchiAutomaton reduce(const BuchiAutomaton& a);

/// Classic subset construction: the result has no epsilon transitions and at
/// most one successor per symbol, and misses transitions instead of moving
/// to a dead state. reduce() of a determinized automaton is the minimal
/// partial DFA, which is how intersections of path languages are kept small.
/// May be exponentially larger than the input in the worst case.
FiniteAutomaton determinize(const FiniteAutomaton& a);

/// Language intersection. States are (state, state, phase) triples where the
/// phase cycles 0 -> 1 -> 2 -> 0 as the factors' accepting sets are seen;
/// epsilon transitions interleave (one side moves while the other stays).
/// Throws SignatureMismatchError.
BuchiAutomaton buchi_intersection(const BuchiAutomaton& a, const BuchiAutomaton& b);

/// Language union by disjoint juxtaposition. Throws SignatureMismatchError.
BuchiAutomaton buchi_union(const BuchiAutomaton& a, const BuchiAutomaton& b);

FiniteAutomaton finite_intersection(const FiniteAutomaton& a, const FiniteAutomaton& b);
FiniteAutomaton finite_union(const FiniteAutomaton& a, const FiniteAutomaton& b);

bool finite_is_empty(const FiniteAutomaton& a);

/// Membership of a finite word. Throws WidthMismatchError.
bool finite_membership(const FiniteAutomaton& a, std::span<const Symbol> word);

bool finite_accepts_epsilon(const FiniteAutomaton& a);

/// The finite-word path language L(A, q1, q2): same states, transitions and
/// signature, with q1 the only initial and q2 the only accepting state. The
/// empty word is included exactly when q1 == q2. Throws UnknownStateError.
FiniteAutomaton paths_automaton(const BuchiAutomaton& a, StateId q1, StateId q2);
FiniteAutomaton paths_automaton(const FiniteAutomaton& a, StateId q1, StateId q2);

/// L(N)^omega for a finite-word automaton N with epsilon not in L(N): adds a
/// fresh state `repeat` that is the sole initial and accepting state, with
/// epsilon transitions repeat -> initial(N) and accepting(N) -> repeat.
/// Every accepting loop through `repeat` reads one L(N) word, so the result
/// accepts exactly the infinite concatenations. Throws EpsilonInLanguageError.
BuchiAutomaton omega_closure(const FiniteAutomaton& n);

/// A deterministic witness for non-emptiness: the lasso found by breadth
/// first search with transitions expanded in canonical (sorted) order, so
/// identical automata always yield the identical witness. nullopt iff empty.
std::optional<LassoWord> buchi_witness(const BuchiAutomaton& a);

/// All accepted lasso representations with |u| <= max_prefix and
/// 1 <= |v| <= max_period, in enumeration order. Intended for tests and
/// bounded language comparisons; the count grows as (2^width)^(|u|+|v|).
std::vector<LassoWord> enumerate_accepted_lassos(const BuchiAutomaton& a,
                                                 std::size_t max_prefix,
                                                 std::size_t max_period,
                                                 std::size_t limit = SIZE_MAX);

}  // namespace monaut
